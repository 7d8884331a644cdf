#pragma once
// Physical ingredients of the damped p-system in Lagrangian coordinates:
//
//   v_t - u_x = 0
//   u_t + p(v)_x = -alpha(x) u
//
// p is a gamma-law pressure, alpha a space-dependent damping coefficient that
// approaches a positive constant alpha_bar at infinity. Types here are
// immutable after construction and safe to share across threads.

#include <cstddef>
#include <vector>

#include "psdamp/errors.hpp"

namespace psdamp {

// p(v) = p_ref * v^(-gamma_p), smooth and decreasing for v > 0.
class PressureLaw {
public:
    PressureLaw(double p_ref, double gamma_p);

    double p_ref() const { return p_ref_; }
    double gamma_p() const { return gamma_p_; }

    double value(double v) const;  // p
    double d1(double v) const;     // p'   (< 0)
    double d2(double v) const;     // p''  (> 0)
    double d3(double v) const;     // p'''
    double d4(double v) const;     // used internally by forcing derivatives

    // order in 0..3; throws std::invalid_argument otherwise, std::domain_error
    // for v <= 0.
    double eval(double v, int order) const;

private:
    void check_v(double v) const;
    double p_ref_;
    double gamma_p_;
};

// alpha(x) = alpha_bar + sum of Gaussian bumps a_i * exp(-((x-c_i)/w_i)^2).
// The certified lower bound alpha0 = alpha_bar - sum|a_i| must be positive.
class DampingField {
public:
    struct Bump {
        double a;
        double w;
        double c;
    };

    static DampingField constant(double alpha_bar);
    static DampingField gaussian_bump(double alpha_bar, double a, double w, double c);
    static DampingField double_bump(double alpha_bar, double a1, double w1, double c1,
                                    double a2, double w2, double c2);

    double alpha_bar() const { return alpha_bar_; }
    double alpha0() const { return alpha0_; }
    const std::vector<Bump>& bumps() const { return bumps_; }
    bool is_constant() const { return bumps_.empty(); }

    // order in 0..2; throws std::invalid_argument otherwise.
    double eval(double x, int order) const;

    double value(double x) const { return eval(x, 0); }
    double d1(double x) const { return eval(x, 1); }
    double d2(double x) const { return eval(x, 2); }
    double d3(double x) const;  // bumps are smooth; used by correction derivatives

private:
    DampingField(double alpha_bar, std::vector<Bump> bumps);
    double alpha_bar_;
    double alpha0_;
    std::vector<Bump> bumps_;
};

// Far-field states (v-, u-) and (v+, u+); v's positive.
struct EndStates {
    double v_minus = 1.0;
    double v_plus = 1.0;
    double u_minus = 0.0;
    double u_plus = 0.0;

    double dv() const { return v_plus - v_minus; }
    double du() const { return u_plus - u_minus; }
    void validate() const;
};

// Uniform cell-centered grid on [-half_length, half_length].
class Grid1D {
public:
    Grid1D(double half_length, std::size_t n_cells, std::size_t n_ghost = 2);

    double half_length() const { return half_length_; }
    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_ghost() const { return n_ghost_; }
    double dx() const { return dx_; }
    double center(std::size_t i) const { return -half_length_ + (double(i) + 0.5) * dx_; }

    std::vector<double> centers() const;

private:
    double half_length_;
    std::size_t n_cells_;
    std::size_t n_ghost_;
    double dx_;
};

// Discrete state at one time level. Specific volume must stay positive.
struct FlowState {
    double t = 0.0;
    std::vector<double> v;
    std::vector<double> u;

    FlowState() = default;
    FlowState(double t, std::vector<double> v, std::vector<double> u);
    std::size_t size() const { return v.size(); }
};

// Weighted norms of alpha - alpha_bar used by the damping hypotheses:
// L1, L2, L2 with weight |x|^(1/2), and L2 of (1+|x|)(|alpha'| + |alpha''|).
struct IntegrabilityReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double sqrt_x_weighted_l2 = 0.0;
    double deriv_weighted_l2 = 0.0;
};

// Quadrature over the grid. Throws TruncationError when a bump has not
// decayed below 1e-12 at the nearer domain edge.
IntegrabilityReport damping_integrability_report(const DampingField& field, const Grid1D& grid);

} // namespace psdamp
