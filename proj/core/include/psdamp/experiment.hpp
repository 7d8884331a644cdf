#pragma once
// Experiment orchestration: config -> profiles with selected delta0/x0 ->
// initial data -> time integration -> assembled diagnostics series, plus the
// four CLI entry points (simulate / verify / profile / check-forcing) with
// the exit-code contract 0 = success, 1 = validation or verdict failure,
// 2 = blow-up, 3 = I/O failure.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psdamp/config.hpp"
#include "psdamp/csv.hpp"
#include "psdamp/diagnostics.hpp"
#include "psdamp/solver.hpp"

namespace psdamp {

struct ExperimentSetup {
    ExperimentConfig config;
    PressureLaw law;
    DampingField field;
    Grid1D grid;
    ProfileSet profiles;
    FlowState initial;
    double delta1 = 0.0;
    double delta0 = 0.0;  // const case mass parameter (0 in similarity case)
    double x0 = 0.0;      // similarity shift (0 in const case)
};

// Builds profiles and initial data so the t = 0 mass defect vanishes:
// the const case selects delta0, the similarity case selects the shift x0.
ExperimentSetup build_experiment(const ExperimentConfig& config);

struct ExperimentResult {
    DiagnosticsSeries series;
    RunTotals totals;
    // largest |defect(t) - predicted defect(t)| where the prediction
    // telescopes the boundary flux against the profile mass drift
    double max_defect_drift = 0.0;
    bool blew_up = false;
    double blowup_time = 0.0;
    std::string blowup_what;

    ExperimentResult(CaseKind kind) : series(kind) {}
};

// on_snapshot, when given, sees each raw state as it is emitted (used by
// cmd_simulate to write snapshot files without a second pass).
ExperimentResult run_experiment(
    const ExperimentSetup& setup,
    const std::function<void(const FlowState&, std::size_t)>& on_snapshot = {});

// Expectation "column=slope:tol" for cmd_verify.
struct Expectation {
    std::string column;
    double slope = 0.0;
    double tol = 0.15;
};

Expectation parse_expectation(const std::string& spec);

int cmd_simulate(const std::string& config_path, const std::string& out_dir);
int cmd_verify(const std::string& series_path, const std::vector<std::string>& expects);
int cmd_profile(const std::string& config_path, const std::string& out_path);
int cmd_check_forcing(const std::string& config_path, const std::string& t_spec);

} // namespace psdamp
