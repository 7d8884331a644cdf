#pragma once
// First-order Godunov-type finite-volume scheme for the damped p-system,
// conservative flux f(v,u) = (-u, p(v)) with the Rusanov (local
// Lax-Friedrichs) numerical flux, and the damping source integrated exactly
// (u <- u exp(-alpha dt)) in a Strang splitting around the hyperbolic step.

#include <cstdint>
#include <functional>
#include <utility>

#include "psdamp/models.hpp"

namespace psdamp {

enum class BoundaryMode {
    farfield_decay,  // ghosts hold (v_pm, u_pm * exp(-alpha_bar t))
    extrapolation,   // zero-gradient copy of the nearest interior cell
};

struct SolverConfig {
    double cfl = 0.45;
    double t_final = 0.0;
    double snapshot_stride = 1.0;
    BoundaryMode boundary = BoundaryMode::farfield_decay;
};

struct StepInfo {
    double dt = 0.0;
    // time-integrated v-flux through the right/left domain edges this step
    double v_flux_right = 0.0;
    double v_flux_left = 0.0;
};

// Largest characteristic speed sqrt(-p'(v)) over the state.
double max_wave_speed(const FlowState& state, const PressureLaw& law);

// Rusanov interface flux for left/right states; returns (f_v, f_u).
std::pair<double, double> rusanov_flux(double v_l, double u_l, double v_r, double u_r,
                                       const PressureLaw& law);

// Exact damping substep over dt, in place.
void damping_substep(FlowState& state, double dt, const DampingField& field, const Grid1D& grid);

class Stepper {
public:
    Stepper(PressureLaw law, DampingField field, Grid1D grid, EndStates ends, SolverConfig config);

    // One Strang step with dt = min(cfl dx / max speed, dt_cap). Throws
    // BlowupError on positivity loss.
    StepInfo step(FlowState& state, double dt_cap);

    const Grid1D& grid() const { return grid_; }
    const SolverConfig& config() const { return config_; }

private:
    void fill_ghosts(double t);
    PressureLaw law_;
    DampingField field_;
    Grid1D grid_;
    EndStates ends_;
    SolverConfig config_;
    std::vector<double> vg_, ug_;   // state with ghost cells
    std::vector<double> fv_, fu_;   // interface fluxes
};

struct RunTotals {
    std::uint64_t steps = 0;
    double boundary_v_flux = 0.0;          // time integral of net u-flux into the domain
    double max_telescope_error = 0.0;      // per-step conservation bookkeeping residual
    bool domain_warning = false;           // L too small for ballistic reach at t_final
};

// Advances to t_final, landing exactly on each multiple of snapshot_stride
// and invoking on_snapshot there (including t = 0 and t_final). Returns totals.
RunTotals run(FlowState& state, const PressureLaw& law, const DampingField& field,
              const Grid1D& grid, const EndStates& ends, const SolverConfig& config,
              const std::function<void(const FlowState&, const RunTotals&)>& on_snapshot);

} // namespace psdamp
