#pragma once
// Correction pair absorbing the far-field velocity mismatch. With a
// compactly supported unit-mass bump m0 and M0(x) = u_minus + du * int m0,
//
//   u_hat(t,x) = exp(-alpha(x) t) M0(x)
//   v_hat(t,x) = d/dx [ exp(-alpha(x) t) M0(x) / (-alpha(x)) ]
//
// so that u_hat_t = -alpha u_hat and v_hat_t = u_hat_x hold as exact
// identities and int v_hat(0) dx = -du / alpha_bar. Both decay like
// exp(-alpha0 t) uniformly in x.

#include "psdamp/models.hpp"

namespace psdamp {

// Polynomial bump (1 - ((x-c)/w)^2)^4 on |x-c| <= w, normalized to unit mass.
// C^3 smooth with a closed-form antiderivative; that regularity is enough for
// every derivative the forcing terms take.
class Mollifier {
public:
    explicit Mollifier(double width = 1.0, double center = 0.0);

    double width() const { return width_; }
    double center() const { return center_; }

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    // int_{-inf}^{x} m0, in [0, 1].
    double cumulative(double x) const;

private:
    double width_;
    double center_;
};

// Bundle of the v_hat/u_hat values and derivatives used by forcing terms.
// Time derivatives of v_hat reduce to x-derivatives of u_hat through the
// exact identity v_hat_t = u_hat_x.
struct CorrectionDerivs {
    double u_hat = 0.0;
    double u_hat_x = 0.0;
    double u_hat_xx = 0.0;
    double u_hat_xxx = 0.0;
    double u_hat_t = 0.0;
    double v_hat = 0.0;
    double v_hat_x = 0.0;
    double v_hat_xx = 0.0;
    double v_hat_t = 0.0;    // independent product-rule route, == u_hat_x
    double v_hat_tx = 0.0;   // == u_hat_xx
    double v_hat_txx = 0.0;  // == u_hat_xxx
};

class CorrectionFunction {
public:
    CorrectionFunction(Mollifier mollifier, EndStates ends, DampingField field);

    const Mollifier& mollifier() const { return mollifier_; }
    const EndStates& ends() const { return ends_; }
    const DampingField& field() const { return field_; }

    // M0(x) = u_minus + du * cumulative(x).
    double M0(double x) const;

    double u_hat(double t, double x) const;
    double v_hat(double t, double x) const;
    CorrectionDerivs derivs(double t, double x) const;

    // Trapezoid quadrature of v_hat(0,.) over the grid; equals
    // -du/alpha_bar up to quadrature error. Requires the grid to cover the
    // mollifier support and the damping bumps.
    double mass_check(const Grid1D& grid) const;

private:
    Mollifier mollifier_;
    EndStates ends_;
    DampingField field_;
};

} // namespace psdamp
