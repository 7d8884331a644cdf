#include "psdamp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace psdamp {
namespace {

double kahan_sum(const std::vector<double>& v, std::size_t begin, std::size_t end) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double y = v[i] - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

} // namespace

double max_wave_speed(const FlowState& state, const PressureLaw& law) {
    double m = 0.0;
    for (double v : state.v) m = std::max(m, -law.d1(v));
    return std::sqrt(m);
}

std::pair<double, double> rusanov_flux(double v_l, double u_l, double v_r, double u_r,
                                       const PressureLaw& law) {
    const double s = std::sqrt(std::max(-law.d1(v_l), -law.d1(v_r)));
    const double fv = 0.5 * (-u_l - u_r) - 0.5 * s * (v_r - v_l);
    const double fu = 0.5 * (law.value(v_l) + law.value(v_r)) - 0.5 * s * (u_r - u_l);
    return {fv, fu};
}

void damping_substep(FlowState& state, double dt, const DampingField& field, const Grid1D& grid) {
    for (std::size_t i = 0; i < state.u.size(); ++i)
        state.u[i] *= std::exp(-field.value(grid.center(i)) * dt);
}

Stepper::Stepper(PressureLaw law, DampingField field, Grid1D grid, EndStates ends,
                 SolverConfig config)
    : law_(law), field_(std::move(field)), grid_(grid), ends_(ends), config_(config) {
    ends_.validate();
    if (!(config_.cfl > 0.0) || !(config_.cfl < 1.0))
        throw std::invalid_argument("Stepper: cfl must lie in (0, 1)");
    const std::size_t padded = grid_.n_cells() + 2 * grid_.n_ghost();
    vg_.assign(padded, ends_.v_minus);
    ug_.assign(padded, 0.0);
    fv_.assign(grid_.n_cells() + 1, 0.0);
    fu_.assign(grid_.n_cells() + 1, 0.0);
}

void Stepper::fill_ghosts(double t) {
    const std::size_t gh = grid_.n_ghost();
    const std::size_t n = grid_.n_cells();
    switch (config_.boundary) {
        case BoundaryMode::farfield_decay: {
            const double decay = std::exp(-field_.alpha_bar() * t);
            for (std::size_t g = 0; g < gh; ++g) {
                vg_[g] = ends_.v_minus;
                ug_[g] = ends_.u_minus * decay;
                vg_[gh + n + g] = ends_.v_plus;
                ug_[gh + n + g] = ends_.u_plus * decay;
            }
            break;
        }
        case BoundaryMode::extrapolation: {
            for (std::size_t g = 0; g < gh; ++g) {
                vg_[g] = vg_[gh];
                ug_[g] = ug_[gh];
                vg_[gh + n + g] = vg_[gh + n - 1];
                ug_[gh + n + g] = ug_[gh + n - 1];
            }
            break;
        }
    }
}

StepInfo Stepper::step(FlowState& state, double dt_cap) {
    const std::size_t n = grid_.n_cells();
    const std::size_t gh = grid_.n_ghost();
    if (state.size() != n) throw std::invalid_argument("Stepper::step: state size mismatch");

    const double smax = max_wave_speed(state, law_);
    double dt = config_.cfl * grid_.dx() / smax;
    dt = std::min(dt, dt_cap);

    // Strang: half damping, full hyperbolic step, half damping
    damping_substep(state, 0.5 * dt, field_, grid_);

    std::copy(state.v.begin(), state.v.end(), vg_.begin() + gh);
    std::copy(state.u.begin(), state.u.end(), ug_.begin() + gh);
    fill_ghosts(state.t + 0.5 * dt);

    // per-cell pressure and wave speed, then Rusanov interface fluxes
    const std::size_t padded = n + 2 * gh;
    static thread_local std::vector<double> pg, sg;
    pg.resize(padded);
    sg.resize(padded);
    for (std::size_t i = 0; i < padded; ++i) {
        if (!(vg_[i] > 0.0))
            throw BlowupError("positivity loss in ghost padding", state.t,
                              grid_.center(i >= gh ? i - gh : 0), i);
        pg[i] = law_.value(vg_[i]);
        sg[i] = std::sqrt(-law_.d1(vg_[i]));
    }
    for (std::size_t f = 0; f <= n; ++f) {
        const std::size_t l = gh + f - 1;
        const std::size_t r = gh + f;
        const double s = std::max(sg[l], sg[r]);
        fv_[f] = 0.5 * (-ug_[l] - ug_[r]) - 0.5 * s * (vg_[r] - vg_[l]);
        fu_[f] = 0.5 * (pg[l] + pg[r]) - 0.5 * s * (ug_[r] - ug_[l]);
    }

    const double lam = dt / grid_.dx();
    for (std::size_t i = 0; i < n; ++i) {
        state.v[i] -= lam * (fv_[i + 1] - fv_[i]);
        state.u[i] -= lam * (fu_[i + 1] - fu_[i]);
        if (!(state.v[i] > 0.0) || !std::isfinite(state.u[i]))
            throw BlowupError("positivity loss at t = " + std::to_string(state.t + dt),
                              state.t + dt, grid_.center(i), i);
    }

    damping_substep(state, 0.5 * dt, field_, grid_);
    state.t += dt;

    StepInfo info;
    info.dt = dt;
    info.v_flux_right = fv_[n] * dt;
    info.v_flux_left = fv_[0] * dt;
    return info;
}

RunTotals run(FlowState& state, const PressureLaw& law, const DampingField& field,
              const Grid1D& grid, const EndStates& ends, const SolverConfig& config,
              const std::function<void(const FlowState&, const RunTotals&)>& on_snapshot) {
    RunTotals totals;

    // ballistic-reach warning: damped dynamics stay well inside this bound, but flag it
    double v_min = *std::min_element(state.v.begin(), state.v.end());
    double support = 0.0;
    for (const auto& b : field.bumps()) support = std::max(support, std::abs(b.c) + 5.0 * b.w);
    const double reach = std::sqrt(-law.d1(v_min)) * config.t_final + support;
    if (grid.half_length() <= reach) {
        totals.domain_warning = true;
        std::fprintf(stderr,
                     "run: half_length %g below ballistic reach %g at t_final %g "
                     "(damping keeps the actual propagation shorter)\n",
                     grid.half_length(), reach, config.t_final);
    }

    Stepper stepper(law, field, grid, ends, config);
    if (on_snapshot) on_snapshot(state, totals);
    if (config.t_final <= 0.0) return totals;

    const double stride = (config.snapshot_stride > 0.0) ? config.snapshot_stride : config.t_final;
    std::uint64_t k = 1;
    while (state.t < config.t_final - 1e-12) {
        const double t_next = std::min(double(k) * stride, config.t_final);
        while (state.t < t_next - 1e-12) {
            const double mass_before = kahan_sum(state.v, 0, state.v.size()) * grid.dx();
            const StepInfo info = stepper.step(state, t_next - state.t);
            const double mass_after = kahan_sum(state.v, 0, state.v.size()) * grid.dx();
            const double tele =
                std::abs(mass_after - mass_before + (info.v_flux_right - info.v_flux_left));
            totals.max_telescope_error = std::max(totals.max_telescope_error, tele);
            totals.boundary_v_flux -= info.v_flux_right - info.v_flux_left;
            ++totals.steps;
        }
        state.t = t_next; // land exactly; the residual gap is below 1e-12
        if (on_snapshot) on_snapshot(state, totals);
        ++k;
    }
    return totals;
}

} // namespace psdamp
