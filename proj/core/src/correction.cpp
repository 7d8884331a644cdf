#include "psdamp/correction.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "psdamp/norms.hpp"

namespace psdamp {
namespace {

// Antiderivative of (1-u^2)^4 with P(-1) = -128/315, P(1) = 128/315.
double bump_antiderivative(double u) {
    const double u2 = u * u;
    return u * (1.0 + u2 * (-4.0 / 3.0 + u2 * (6.0 / 5.0 + u2 * (-4.0 / 7.0 + u2 / 9.0))));
}

constexpr double kBumpNorm = 315.0 / 256.0; // 1 / int_{-1}^{1} (1-u^2)^4 du

} // namespace

Mollifier::Mollifier(double width, double center) : width_(width), center_(center) {
    if (!(width > 0.0)) throw std::invalid_argument("Mollifier: width must be positive");
}

double Mollifier::value(double x) const {
    const double u = (x - center_) / width_;
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return kBumpNorm / width_ * q * q * q * q;
}

double Mollifier::d1(double x) const {
    const double u = (x - center_) / width_;
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return kBumpNorm / (width_ * width_) * (-8.0) * u * q * q * q;
}

double Mollifier::d2(double x) const {
    const double u = (x - center_) / width_;
    if (std::abs(u) >= 1.0) return 0.0;
    const double q = 1.0 - u * u;
    return kBumpNorm / (width_ * width_ * width_) * (-8.0 * q * q * q + 48.0 * u * u * q * q);
}

double Mollifier::cumulative(double x) const {
    const double u = (x - center_) / width_;
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return kBumpNorm * (bump_antiderivative(u) + 128.0 / 315.0);
}

CorrectionFunction::CorrectionFunction(Mollifier mollifier, EndStates ends, DampingField field)
    : mollifier_(std::move(mollifier)), ends_(ends), field_(std::move(field)) {
    ends_.validate();
}

double CorrectionFunction::M0(double x) const {
    return ends_.u_minus + ends_.du() * mollifier_.cumulative(x);
}

double CorrectionFunction::u_hat(double t, double x) const {
    return std::exp(-field_.value(x) * t) * M0(x);
}

double CorrectionFunction::v_hat(double t, double x) const { return derivs(t, x).v_hat; }

CorrectionDerivs CorrectionFunction::derivs(double t, double x) const {
    const double du = ends_.du();
    const double A = field_.value(x);
    const double A1 = field_.d1(x);
    const double A2 = field_.d2(x);
    const double A3 = field_.d3(x);

    // x-derivative arrays of the three factors of exp(-A t) * M0 * (-1/A)
    const std::array<double, 4> E = {
        std::exp(-A * t),
        -A1 * t * std::exp(-A * t),
        (A1 * A1 * t * t - A2 * t) * std::exp(-A * t),
        (3.0 * A1 * A2 * t * t - A3 * t - A1 * A1 * A1 * t * t * t) * std::exp(-A * t),
    };
    const std::array<double, 4> M = {
        M0(x),
        du * mollifier_.value(x),
        du * mollifier_.d1(x),
        du * mollifier_.d2(x),
    };
    const double iA = 1.0 / A;
    const std::array<double, 4> R = {
        -iA,
        A1 * iA * iA,
        A2 * iA * iA - 2.0 * A1 * A1 * iA * iA * iA,
        A3 * iA * iA - 6.0 * A1 * A2 * iA * iA * iA + 6.0 * A1 * A1 * A1 * iA * iA * iA * iA,
    };

    CorrectionDerivs d;
    d.u_hat = E[0] * M[0];
    d.u_hat_x = E[1] * M[0] + E[0] * M[1];
    d.u_hat_xx = E[2] * M[0] + 2.0 * E[1] * M[1] + E[0] * M[2];
    d.u_hat_xxx = E[3] * M[0] + 3.0 * E[2] * M[1] + 3.0 * E[1] * M[2] + E[0] * M[3];
    d.u_hat_t = -A * d.u_hat;

    // psi = u_hat * (-1/A); v_hat and its x-derivatives are psi', psi'', psi'''
    d.v_hat = d.u_hat_x * R[0] + d.u_hat * R[1];
    d.v_hat_x = d.u_hat_xx * R[0] + 2.0 * d.u_hat_x * R[1] + d.u_hat * R[2];
    d.v_hat_xx = d.u_hat_xxx * R[0] + 3.0 * d.u_hat_xx * R[1] + 3.0 * d.u_hat_x * R[2] + d.u_hat * R[3];

    // product-rule route for v_hat_t; cancels to u_hat_x in exact arithmetic
    const double C = du * mollifier_.value(x) - A1 * M[0] * (iA + t);
    d.v_hat_t = E[0] * (C + A1 * M[0] * iA);
    d.v_hat_tx = d.u_hat_xx;
    d.v_hat_txx = d.u_hat_xxx;
    return d;
}

double CorrectionFunction::mass_check(const Grid1D& grid) const {
    const double L = grid.half_length();
    const double reach = std::abs(mollifier_.center()) + mollifier_.width();
    if (reach >= L)
        throw TruncationError("CorrectionFunction::mass_check: mollifier support exceeds grid", reach);
    for (const auto& b : field_.bumps()) {
        const double dist = L - std::abs(b.c);
        const double tail = std::abs(b.a) * std::exp(-(dist / b.w) * (dist / b.w));
        if (!(dist > 0.0) || tail >= 1e-12)
            throw TruncationError("CorrectionFunction::mass_check: damping bump not covered by grid", tail);
    }
    std::vector<double> vals(grid.n_cells());
    for (std::size_t i = 0; i < grid.n_cells(); ++i) vals[i] = v_hat(0.0, grid.center(i));
    return trapezoid(vals, grid.dx());
}

} // namespace psdamp
