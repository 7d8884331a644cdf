#pragma once
// Experiment configuration: INI-style key/value document, one per experiment.
// Parsing validates everything it can and reports all violations at once;
// unknown sections or keys are hard errors so typos cannot silently fall back
// to defaults. A FNV-1a hash of the canonical re-emission stamps every output
// file for provenance.

#include <cstdint>
#include <string>

#include "psdamp/diagnostics.hpp"
#include "psdamp/models.hpp"

namespace psdamp {

enum class InitKind { profile_plus_perturbation, gaussian_hump, custom_table };

struct ExperimentConfig {
    CaseKind case_kind = CaseKind::const_state;

    // [pressure]
    double p_ref = 1.0;
    double gamma_p = 2.0;

    // [damping] shape in {constant, gaussian_bump, double_bump}
    double alpha_bar = 1.0;
    std::string shape = "constant";
    double a = 0.0, w = 1.0, x_c = 0.0;
    double a2 = 0.0, w2 = 1.0, x_c2 = 0.0;

    // [end_states]
    EndStates ends;

    // [grid]
    double half_length = 200.0;
    std::size_t n_cells = 2048;

    // [time]
    double t_final = 10.0;
    double cfl = 0.45;
    double snapshot_stride = 1.0;
    std::string boundary = "farfield_decay";

    // [init]
    InitKind init_kind = InitKind::profile_plus_perturbation;
    double amplitude = 0.0;
    double width = 1.0;

    // [profile] correction mollifier and similarity solve controls
    double w_m = 1.0;
    double x_m = 0.0;
    double xi_max = 12.0;
    std::size_t n_nodes = 4096;
    double profile_tol = 1e-8;

    // [verify]
    double gamma_w = 0.75;
    double fit_window_lo = 40.0;
    double fit_window_hi = 400.0;
    double tolerances = 0.15;

    // [output]
    std::string directory = "out";
    std::size_t stride = 1;
};

// Parse + validate; throws ValidationError listing every violation, or
// DataError for malformed syntax / unknown keys (named).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical emission; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

// Aggregated constraint check (also run by parse_config).
void validate_config(const ExperimentConfig& config);

// FNV-1a over the canonical emission.
std::uint64_t config_hash(const ExperimentConfig& config);
std::string config_hash_hex(const ExperimentConfig& config);

// Materialized model objects.
PressureLaw make_law(const ExperimentConfig& config);
DampingField make_field(const ExperimentConfig& config);
Grid1D make_grid(const ExperimentConfig& config);

} // namespace psdamp
