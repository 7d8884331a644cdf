#pragma once
// Self-similar profile connecting distinct far-field volumes. In the variable
// xi = (x - x0)/sqrt(1+t) the profile solves the two-point problem
//
//   (mu(W) W')' + (xi/2) W' = 0,   W(-inf) = v_minus,  W(+inf) = v_plus,
//
// with mu(W) = -p'(W)/alpha_bar, truncated to [-xi_max, xi_max] and solved by
// single shooting on the edge flux q = mu(W) W' with bisection. Tables of
// (W, W') on a uniform xi-grid back a cubic Hermite interpolant; second and
// higher derivatives always come from differentiating the ODE relation,
// never from differencing the table.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "psdamp/models.hpp"

namespace psdamp {

enum class SimQuantity { V, V_x, V_xx, V_xxx, V_t, U, U_t };

// Space/time derivatives of the profile pair (V, U = mu(V) V_x) at a point.
struct SimDerivs {
    double V = 0, Vx = 0, Vxx = 0, Vxxx = 0;
    double Vt = 0, Vtx = 0, Vtxx = 0, Vtt = 0, Vttx = 0, Vttxx = 0;
    double U = 0, Ux = 0, Ut = 0, Utx = 0, Utt = 0, Uttx = 0;
};

// Result of the Gaussian-tail certification: the largest c in the scan grid
// {0.01 k} for which a single constant C_fit <= 100 makes all five bounds
// |W - v_-+|, |W'|, |W''|, |W'''| <= C delta0 exp(-c xi^2) hold on the table.
struct BoundFit {
    double C_fit = 0.0;
    double c_fit = 0.0;
    bool pass = false;
};

class SimilarityProfile {
public:
    SimilarityProfile(PressureLaw law, double alpha_bar, EndStates ends, double xi_max,
                      std::vector<double> table_V, std::vector<double> table_Vp, double x0 = 0.0);

    const PressureLaw& law() const { return law_; }
    double alpha_bar() const { return alpha_bar_; }
    const EndStates& ends() const { return ends_; }
    double xi_max() const { return xi_max_; }
    std::size_t n_nodes() const { return V_.size(); }
    double x0() const { return x0_; }
    const std::vector<double>& table_V() const { return V_; }
    const std::vector<double>& table_Vp() const { return Vp_; }

    double mu_of(double v) const { return -law_.d1(v) / alpha_bar_; }

    // Hermite-interpolated W(xi) clamped to the end states outside the table.
    double value_at_xi(double xi) const;
    // (W, W') at xi.
    void interp(double xi, double& W, double& W1) const;

    double eval(double t, double x, SimQuantity what) const;
    SimDerivs derivs(double t, double x) const;

    // Central-difference residual of (mu(W)W')' + (xi/2)W' at the table
    // nodes (zero at the two end nodes).
    std::vector<double> residual_table() const;

    SimilarityProfile with_shift(double x0) const;

    void record_bound_fit(const BoundFit& fit) { fit_ = fit; }
    const BoundFit& bound_fit() const { return fit_; }

private:
    PressureLaw law_;
    double alpha_bar_;
    EndStates ends_;
    double xi_max_;
    double x0_;
    std::vector<double> V_;
    std::vector<double> Vp_;
    BoundFit fit_;
};

// Shooting + bisection solve. tol bounds the far-end mismatch |W(xi_max)-v_plus|.
// Requires exp(-xi_max^2 / (4 mu_max)) < tol so the truncation is consistent.
SimilarityProfile similarity_solve(const PressureLaw& law, double alpha_bar, const EndStates& ends,
                                   double xi_max = 12.0, std::size_t n_nodes = 4096,
                                   double tol = 1e-8);

BoundFit gaussian_bound_check(const SimilarityProfile& prof);

// Selects the shift x0 so that the trapezoid integral of v0 - W(x - x0)
// equals -(u_plus - u_minus)/alpha_bar, by bisection over [-L/2, L/2].
double shift_select(std::span<const double> v0, const SimilarityProfile& prof, const Grid1D& grid);

void export_profile_csv(const SimilarityProfile& prof, const std::string& path);
SimilarityProfile import_profile_csv(const std::string& path);

namespace detail {

// ODE machinery kept generic in mu so tests can freeze mu to a constant and
// compare against the error-function solution.
std::pair<std::vector<double>, std::vector<double>> solve_similarity_tables(
    const std::function<double(double)>& mu, double v_minus, double v_plus, double xi_max,
    std::size_t n_nodes, double tol);

} // namespace detail

} // namespace psdamp
