// Command-line driver: simulate / verify / profile / check-forcing.
// Exit codes: 0 success, 1 validation or verdict failure, 2 blow-up,
// 3 I/O failure.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psdamp/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Damped p-system laboratory: profile construction, time"
                 " integration, and decay-rate verification"};
    app.require_subcommand(1);

    std::string config_path, out_dir, series_path, profile_out, t_spec;
    std::vector<std::string> expects;

    CLI::App* sim = app.add_subcommand("simulate",
                                       "Integrate a configured experiment and write the"
                                       " diagnostics series and snapshots");
    sim->add_option("--config", config_path, "experiment config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides the config)");

    CLI::App* ver = app.add_subcommand("verify",
                                       "Fit decay exponents of a series file against"
                                       " expected slopes");
    ver->add_option("--series", series_path, "series CSV produced by simulate")->required();
    ver->add_option("--expect", expects,
                    "expectation column=slope:tol (repeatable; defaults follow the case)");

    CLI::App* pro = app.add_subcommand("profile",
                                       "Solve the self-similar profile and check its"
                                       " Gaussian tail bounds");
    pro->add_option("--config", config_path, "experiment config file")->required();
    pro->add_option("--out", profile_out, "profile table CSV path")->required();

    CLI::App* chk = app.add_subcommand("check-forcing",
                                       "Tabulate forcing norms over time and check their"
                                       " decay bounds");
    chk->add_option("--config", config_path, "experiment config file")->required();
    chk->add_option("--t-samples", t_spec, "log-spaced sample spec lo:hi:n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed()) return psdamp::cmd_simulate(config_path, out_dir);
    if (ver->parsed()) return psdamp::cmd_verify(series_path, expects);
    if (pro->parsed()) return psdamp::cmd_profile(config_path, profile_out);
    return psdamp::cmd_check_forcing(config_path, t_spec);
}
