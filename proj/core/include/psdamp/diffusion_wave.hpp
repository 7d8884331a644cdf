#pragma once
// Self-similar heat-kernel profile that the damped p-system approaches when
// both far-field volumes agree. With mu = |p'(v_bar)| / alpha_bar,
//
//   V(t,x) = v_bar + delta0 * (4 pi mu (1+t))^(-1/2) * exp(-x^2 / (4 mu (1+t)))
//   U(t,x) = mu * V_x(t,x)
//
// V solves V_t = mu V_xx exactly, so V_t - U_x = 0 holds by construction.
// Note the factor mu in U: it is forced by the conservation-of-mass equation
// (U = V_x alone does not satisfy V_t = U_x) and is kept explicit everywhere.

#include <span>

#include "psdamp/models.hpp"

namespace psdamp {

enum class WaveQuantity { V, V_x, V_xx, V_xxx, V_t, U, U_x, U_t };

class DiffusionWave {
public:
    DiffusionWave(double v_bar, double mu, double delta0);

    double v_bar() const { return v_bar_; }
    double mu() const { return mu_; }
    double delta0() const { return delta0_; }

    double eval(double t, double x, WaveQuantity what) const;

    // k-th spatial derivative of V - v_bar, k in 0..6 (Hermite closed form).
    // Time derivatives reduce to these through d/dt = mu d2/dx2.
    double space_derivative(double t, double x, int k) const;

    // Independent d/dt route (differentiates the kernel in its variance
    // parameter); used to cross-check the heat identity V_t = mu V_xx.
    double time_derivative(double t, double x) const;

private:
    double v_bar_;
    double mu_;
    double delta0_;
};

// mu = -p'(v_bar) / alpha_bar.
double mu_const(const PressureLaw& law, double v_bar, double alpha_bar);

// Mass selection: delta0 = integral(v0 - v_bar) + (u_plus - u_minus)/alpha_bar
// (trapezoid quadrature). The correction carries mass -(du)/alpha_bar, so this
// choice zeroes the initial mass defect. Requires |v0 - v_bar| <= 1e-12 at
// both grid ends (TruncationError otherwise).
double select_delta0(std::span<const double> v0, double v_bar, const EndStates& ends,
                     double alpha_bar, const Grid1D& grid);

} // namespace psdamp
