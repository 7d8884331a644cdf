#include "psdamp/models.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace psdamp {

// ---------------------------------------------------------------- pressure

PressureLaw::PressureLaw(double p_ref, double gamma_p) : p_ref_(p_ref), gamma_p_(gamma_p) {
    if (!(p_ref > 0.0)) throw std::invalid_argument("PressureLaw: p_ref must be positive");
    if (!(gamma_p >= 1.0)) throw std::invalid_argument("PressureLaw: gamma_p must be >= 1");
}

void PressureLaw::check_v(double v) const {
    if (!(v > 0.0)) throw std::domain_error("PressureLaw: v must be positive, got " + std::to_string(v));
}

double PressureLaw::value(double v) const {
    check_v(v);
    return p_ref_ * std::pow(v, -gamma_p_);
}

double PressureLaw::d1(double v) const {
    check_v(v);
    return -p_ref_ * gamma_p_ * std::pow(v, -gamma_p_ - 1.0);
}

double PressureLaw::d2(double v) const {
    check_v(v);
    return p_ref_ * gamma_p_ * (gamma_p_ + 1.0) * std::pow(v, -gamma_p_ - 2.0);
}

double PressureLaw::d3(double v) const {
    check_v(v);
    return -p_ref_ * gamma_p_ * (gamma_p_ + 1.0) * (gamma_p_ + 2.0) * std::pow(v, -gamma_p_ - 3.0);
}

double PressureLaw::d4(double v) const {
    check_v(v);
    return p_ref_ * gamma_p_ * (gamma_p_ + 1.0) * (gamma_p_ + 2.0) * (gamma_p_ + 3.0) *
           std::pow(v, -gamma_p_ - 4.0);
}

double PressureLaw::eval(double v, int order) const {
    switch (order) {
        case 0: return value(v);
        case 1: return d1(v);
        case 2: return d2(v);
        case 3: return d3(v);
        default:
            throw std::invalid_argument("PressureLaw::eval: order must be in 0..3, got " +
                                        std::to_string(order));
    }
}

// ----------------------------------------------------------------- damping

DampingField::DampingField(double alpha_bar, std::vector<Bump> bumps)
    : alpha_bar_(alpha_bar), bumps_(std::move(bumps)) {
    if (!(alpha_bar > 0.0)) throw std::invalid_argument("DampingField: alpha_bar must be positive");
    double dip = 0.0;
    for (const auto& b : bumps_) {
        if (!(b.w > 0.0)) throw std::invalid_argument("DampingField: bump width must be positive");
        dip += std::abs(b.a);
    }
    alpha0_ = alpha_bar_ - dip;
    if (!(alpha0_ > 0.0))
        throw std::invalid_argument("DampingField: alpha_bar - sum|a_i| = " + std::to_string(alpha0_) +
                                    " must be positive");
    // The closed-form bound is also checked by direct minimization so a bad
    // bump combination cannot sneak below it through cancellation errors.
    for (const auto& b : bumps_) {
        for (int k = -2000; k <= 2000; ++k) {
            const double x = b.c + 5.0 * b.w * double(k) / 2000.0;
            if (value(x) < alpha0_ - 1e-12)
                throw std::invalid_argument("DampingField: sampled alpha below certified alpha0");
        }
    }
}

DampingField DampingField::constant(double alpha_bar) { return DampingField(alpha_bar, {}); }

DampingField DampingField::gaussian_bump(double alpha_bar, double a, double w, double c) {
    return DampingField(alpha_bar, {Bump{a, w, c}});
}

DampingField DampingField::double_bump(double alpha_bar, double a1, double w1, double c1,
                                       double a2, double w2, double c2) {
    return DampingField(alpha_bar, {Bump{a1, w1, c1}, Bump{a2, w2, c2}});
}

double DampingField::eval(double x, int order) const {
    if (order < 0 || order > 2)
        throw std::invalid_argument("DampingField::eval: order must be in 0..2, got " +
                                    std::to_string(order));
    double acc = (order == 0) ? alpha_bar_ : 0.0;
    for (const auto& b : bumps_) {
        const double y = (x - b.c) / b.w;
        const double g = std::exp(-y * y);
        switch (order) {
            case 0: acc += b.a * g; break;
            case 1: acc += b.a * (-2.0 * y) * g / b.w; break;
            case 2: acc += b.a * (4.0 * y * y - 2.0) * g / (b.w * b.w); break;
        }
    }
    return acc;
}

double DampingField::d3(double x) const {
    double acc = 0.0;
    for (const auto& b : bumps_) {
        const double y = (x - b.c) / b.w;
        const double g = std::exp(-y * y);
        acc += b.a * (12.0 * y - 8.0 * y * y * y) * g / (b.w * b.w * b.w);
    }
    return acc;
}

// -------------------------------------------------------------- end states

void EndStates::validate() const {
    if (!(v_minus > 0.0) || !(v_plus > 0.0))
        throw std::invalid_argument("EndStates: v_minus and v_plus must be positive");
}

// -------------------------------------------------------------------- grid

Grid1D::Grid1D(double half_length, std::size_t n_cells, std::size_t n_ghost)
    : half_length_(half_length), n_cells_(n_cells), n_ghost_(n_ghost) {
    if (!(half_length > 0.0)) throw std::invalid_argument("Grid1D: half_length must be positive");
    if (n_cells == 0) throw std::invalid_argument("Grid1D: n_cells must be positive");
    if (n_ghost < 2) throw std::invalid_argument("Grid1D: n_ghost must be >= 2");
    dx_ = 2.0 * half_length / double(n_cells);
}

std::vector<double> Grid1D::centers() const {
    std::vector<double> xs(n_cells_);
    for (std::size_t i = 0; i < n_cells_; ++i) xs[i] = center(i);
    return xs;
}

// ------------------------------------------------------------------- state

FlowState::FlowState(double t, std::vector<double> v_in, std::vector<double> u_in)
    : t(t), v(std::move(v_in)), u(std::move(u_in)) {
    if (v.size() != u.size()) throw std::invalid_argument("FlowState: v and u sizes differ");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0))
            throw std::domain_error("FlowState: non-positive v at cell " + std::to_string(i));
}

// ----------------------------------------------------- integrability report

IntegrabilityReport damping_integrability_report(const DampingField& field, const Grid1D& grid) {
    for (const auto& b : field.bumps()) {
        const double dist = grid.half_length() - std::abs(b.c);
        const double tail = std::abs(b.a) * std::exp(-(dist / b.w) * (dist / b.w));
        if (!(dist > 0.0) || tail >= 1e-12)
            throw TruncationError("damping_integrability_report: bump tail not resolved by grid", tail);
    }

    const std::size_t n = grid.n_cells();
    const double dx = grid.dx();
    IntegrabilityReport r;
    double l1 = 0.0, l2 = 0.0, xw = 0.0, dw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(i);
        const double d = field.value(x) - field.alpha_bar();
        const double dd = std::abs(field.d1(x)) + std::abs(field.d2(x));
        const double wgt = (1.0 + std::abs(x)) * dd;
        // trapezoid weights: cell centers carry full weight except the ends
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        l1 += w * std::abs(d);
        l2 += w * d * d;
        xw += w * std::abs(x) * d * d;
        dw += w * wgt * wgt;
    }
    r.l1 = l1 * dx;
    r.l2 = std::sqrt(l2 * dx);
    r.sqrt_x_weighted_l2 = std::sqrt(xw * dx);
    r.deriv_weighted_l2 = std::sqrt(dw * dx);
    return r;
}

} // namespace psdamp
