#include "psdamp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "psdamp/errors.hpp"
#include "psdamp/forcing.hpp"
#include "psdamp/norms.hpp"

namespace psdamp {

namespace fs = std::filesystem;

namespace {

std::vector<double> gaussian_perturbation(const Grid1D& grid, double amplitude, double width) {
    std::vector<double> p(grid.n_cells());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double z = grid.center(i) / width;
        p[i] = amplitude * std::exp(-z * z);
    }
    return p;
}

void check_initial_data(const std::vector<double>& v0, const std::vector<double>& u0,
                        const EndStates& ends) {
    std::vector<std::string> bad;
    for (double v : v0)
        if (!(v > 0.0)) {
            bad.push_back("initial volume must be positive everywhere");
            break;
        }
    const double tol = 1e-10;
    if (std::abs(v0.front() - ends.v_minus) > tol || std::abs(v0.back() - ends.v_plus) > tol)
        bad.push_back("initial volume must meet the far-field states at the boundary");
    if (std::abs(u0.front() - ends.u_minus) > tol || std::abs(u0.back() - ends.u_plus) > tol)
        bad.push_back("initial velocity must meet the far-field states at the boundary");
    if (!bad.empty()) throw ValidationError(bad);
}

std::pair<std::vector<double>, std::vector<double>> load_custom_table(
    const ExperimentConfig& config, const Grid1D& grid) {
    const std::string path = (fs::path(config.directory) / "init.csv").string();
    const Table table = read_table(path);
    if (!table.has("x") || !table.has("v") || !table.has("u"))
        throw DataError("custom init table needs columns x,v,u: " + path);
    if (table.n_rows() != grid.n_cells())
        throw DataError("custom init table size does not match the grid: " + path);
    return {table.col("v"), table.col("u")};
}

} // namespace

ExperimentSetup build_experiment(const ExperimentConfig& config) {
    validate_config(config);
    PressureLaw law = make_law(config);
    DampingField field = make_field(config);
    Grid1D grid = make_grid(config);
    const EndStates& ends = config.ends;
    ends.validate();

    CorrectionFunction corr(Mollifier(config.w_m, config.x_m), ends, field);

    std::vector<double> v0, u0;
    std::optional<ProfileSet> profiles;
    double delta0 = 0.0, x0 = 0.0;

    if (config.case_kind == CaseKind::const_state) {
        const double v_bar = ends.v_minus;
        if (config.init_kind == InitKind::custom_table) {
            std::tie(v0, u0) = load_custom_table(config, grid);
        } else {
            v0 = gaussian_perturbation(grid, config.amplitude, config.width);
            for (double& v : v0) v += v_bar;
        }
        delta0 = select_delta0(v0, v_bar, ends, config.alpha_bar, grid);
        DiffusionWave wave(v_bar, mu_const(law, v_bar, config.alpha_bar), delta0);
        if (config.init_kind == InitKind::profile_plus_perturbation) {
            u0.resize(grid.n_cells());
            for (std::size_t i = 0; i < u0.size(); ++i) {
                const double x = grid.center(i);
                u0[i] = wave.eval(0.0, x, WaveQuantity::U) + corr.u_hat(0.0, x);
            }
        } else if (config.init_kind == InitKind::gaussian_hump) {
            if (ends.u_minus != 0.0 || ends.u_plus != 0.0)
                throw ValidationError({"init gaussian_hump requires u_minus = u_plus = 0"});
            u0.assign(grid.n_cells(), 0.0);
        }
        profiles.emplace(wave, corr);
    } else {
        SimilarityProfile unshifted = similarity_solve(law, config.alpha_bar, ends,
                                                       config.xi_max, config.n_nodes,
                                                       config.profile_tol);
        if (config.init_kind == InitKind::custom_table) {
            std::tie(v0, u0) = load_custom_table(config, grid);
        } else {
            v0 = gaussian_perturbation(grid, config.amplitude, config.width);
            for (std::size_t i = 0; i < v0.size(); ++i)
                v0[i] += unshifted.eval(0.0, grid.center(i), SimQuantity::V);
        }
        x0 = shift_select(v0, unshifted, grid);
        SimilarityProfile prof = unshifted.with_shift(x0);
        prof.record_bound_fit(gaussian_bound_check(prof));
        if (config.init_kind != InitKind::custom_table) {
            u0.resize(grid.n_cells());
            for (std::size_t i = 0; i < u0.size(); ++i) {
                const double x = grid.center(i);
                u0[i] = prof.eval(0.0, x, SimQuantity::U) + corr.u_hat(0.0, x);
            }
        }
        profiles.emplace(prof, corr);
    }

    check_initial_data(v0, u0, ends);
    const double delta1 =
        delta1_scalar(config.case_kind, v0, ends.v_minus, ends, grid);

    return ExperimentSetup{config,     law,    field,  grid, std::move(*profiles),
                           FlowState(0.0, std::move(v0), std::move(u0)),
                           delta1,     delta0, x0};
}

ExperimentResult run_experiment(
    const ExperimentSetup& setup,
    const std::function<void(const FlowState&, std::size_t)>& on_snapshot) {
    const ExperimentConfig& config = setup.config;
    const Grid1D& grid = setup.grid;
    const double dx = grid.dx();

    SolverConfig scfg;
    scfg.cfl = config.cfl;
    scfg.t_final = config.t_final;
    scfg.snapshot_stride = config.snapshot_stride;
    scfg.boundary = (config.boundary == "extrapolation") ? BoundaryMode::extrapolation
                                                         : BoundaryMode::farfield_decay;

    ExperimentResult result(config.case_kind);
    std::vector<PhiSnapshot> snaps;
    std::vector<SeriesRow> rows;
    struct Aux {
        double defect, dMV, dMvh, flux;
    };
    std::vector<Aux> aux;

    const std::vector<double> V_init = setup.profiles.sample_V(0.0, grid);
    const std::vector<double> vh_init = setup.profiles.sample_v_hat(0.0, grid);
    std::size_t snap_index = 0;

    auto callback = [&](const FlowState& s, const RunTotals& totals) {
        const std::vector<double> Varr = setup.profiles.sample_V(s.t, grid);
        const std::vector<double> Uarr = setup.profiles.sample_U(s.t, grid);
        const std::vector<double> uh = setup.profiles.sample_u_hat(s.t, grid);
        const std::vector<double> vh = setup.profiles.sample_v_hat(s.t, grid);

        PhiSnapshot snap;
        snap.t = s.t;
        snap.phi_x.resize(s.size());
        snap.phi_t.resize(s.size());
        std::vector<double> verr(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            verr[i] = s.v[i] - Varr[i];
            snap.phi_x[i] = verr[i] - vh[i];
            snap.phi_t[i] = s.u[i] - Uarr[i] - uh[i];
        }
        snap.phi = cumulative_trapezoid(snap.phi_x, dx);

        SeriesRow row;
        row.t = s.t;
        row.L2_v_err = discrete_norm(verr, dx, NormKind::L2);
        row.Linf_v_err = discrete_norm(verr, dx, NormKind::Linf);
        row.L2_u_err = discrete_norm(snap.phi_t, dx, NormKind::L2);
        row.L2_phi = discrete_norm(snap.phi, dx, NormKind::L2);
        row.L2_phix = discrete_norm(snap.phi_x, dx, NormKind::L2);
        row.L2_phit = discrete_norm(snap.phi_t, dx, NormKind::L2);
        row.L2_phixx = discrete_norm(diff_x(snap.phi_x, dx), dx, NormKind::L2);
        if (config.case_kind == CaseKind::const_state) {
            const ForcingF f = forcing_F(s.t, grid, setup.profiles.wave(),
                                         setup.profiles.corr(), setup.law, setup.field);
            row.forcing = {discrete_norm(f.F, dx, NormKind::L2),
                           discrete_norm(f.F_x, dx, NormKind::L2),
                           discrete_norm(f.F_t, dx, NormKind::L2),
                           discrete_norm(f.F_tx, dx, NormKind::L2)};
        } else {
            const ForcingG g = forcing_G(s.t, grid, setup.profiles.profile(),
                                         setup.profiles.corr(), setup.law, setup.field,
                                         setup.field.alpha_bar());
            row.forcing = {discrete_norm(g.G, dx, NormKind::L2),
                           discrete_norm(g.G_t, dx, NormKind::L2),
                           discrete_norm(g.G_tx, dx, NormKind::L2)};
        }
        row.mass_defect = snap.phi.back();

        Aux a;
        a.defect = snap.phi.back();
        std::vector<double> tmp(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) tmp[i] = Varr[i] - V_init[i];
        a.dMV = trapezoid(tmp, dx);
        for (std::size_t i = 0; i < s.size(); ++i) tmp[i] = vh[i] - vh_init[i];
        a.dMvh = trapezoid(tmp, dx);
        a.flux = totals.boundary_v_flux;

        rows.push_back(std::move(row));
        snaps.push_back(std::move(snap));
        aux.push_back(a);
        if (on_snapshot) on_snapshot(s, snap_index);
        ++snap_index;
    };

    FlowState state = setup.initial;
    try {
        result.totals = run(state, setup.law, setup.field, grid, config.ends, scfg, callback);
    } catch (const BlowupError& e) {
        result.blew_up = true;
        result.blowup_time = e.t;
        result.blowup_what = e.what();
    }

    if (!snaps.empty()) {
        const EnergyReport er = energy_functional(snaps, config.case_kind, config.gamma_w, dx,
                                                  setup.delta1);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].E_energy = er.E[i];
            rows[i].E_integral = er.E_integral[i];
            rows[i].delta_sup = er.delta_sup[i];
        }
        result.series.I0 = er.I0;
        result.series.delta1 = er.delta1;
        for (auto& row : rows) result.series.append(std::move(row));
        for (const Aux& a : aux) {
            const double predicted = aux.front().defect + a.flux - a.dMV - a.dMvh;
            result.max_defect_drift =
                std::max(result.max_defect_drift, std::abs(a.defect - predicted));
        }
    }
    return result;
}

// ------------------------------------------------------------------ CLI ops

Expectation parse_expectation(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw DataError("expectation must look like column=slope:tol, got " + spec);
    Expectation e;
    e.column = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    const auto colon = rest.find(':');
    try {
        std::size_t pos = 0;
        e.slope = std::stod(rest.substr(0, colon), &pos);
        if (colon != std::string::npos) e.tol = std::stod(rest.substr(colon + 1));
    } catch (const std::exception&) {
        throw DataError("expectation must look like column=slope:tol, got " + spec);
    }
    if (!(e.tol > 0.0)) throw DataError("expectation tolerance must be positive: " + spec);
    return e;
}

namespace {

int report_validation(const std::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%05zu.csv", index);
    return buf;
}

void emit_plot_script(const std::string& dir, std::size_t meta_lines, CaseKind kind) {
    std::ofstream out(fs::path(dir) / "plot.gp");
    const std::string f0 = (kind == CaseKind::const_state) ? "F_norm" : "G_norm";
    out << "# gnuplot script: decay of the profile errors on log-log axes\n"
        << "set datafile separator ','\n"
        << "set logscale xy\n"
        << "set xlabel '1+t'\n"
        << "set ylabel 'norm'\n"
        << "plot 'series.csv' skip " << meta_lines + 1
        << " using ($1+1):2 with lines title 'L2 v error', \\\n"
        << "     '' skip " << meta_lines + 1
        << " using ($1+1):4 with lines title 'L2 u error', \\\n"
        << "     '' skip " << meta_lines + 1 << " using ($1+1):9 with lines title '" << f0
        << "'\n";
}

} // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig config;
    try {
        config = load_config(config_path);
    } catch (const std::exception& e) {
        return report_validation(e);
    }
    if (!out_dir.empty()) config.directory = out_dir;

    std::error_code ec;
    fs::create_directories(config.directory, ec);
    if (ec) {
        std::cerr << "i/o error: cannot create " << config.directory << ": " << ec.message()
                  << "\n";
        return 3;
    }

    std::optional<ExperimentSetup> setup;
    try {
        setup.emplace(build_experiment(config));
    } catch (const DataError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        return report_validation(e);
    }

    const std::string hash = config_hash_hex(config);
    const fs::path dir(config.directory);
    try {
        std::ofstream echo(dir / "config_echo.cfg");
        echo << "# config_hash = " << hash << "\n" << emit_config(config);
        if (!echo) throw DataError("cannot write config echo");

        ExperimentResult result = run_experiment(*setup, [&](const FlowState& s, std::size_t k) {
            if (k % config.stride == 0)
                write_snapshot((dir / snapshot_name(k)).string(), setup->grid, s, hash);
        });

        std::map<std::string, std::string> meta;
        meta["case"] =
            (config.case_kind == CaseKind::const_state) ? "const_state" : "similarity";
        meta["config_hash"] = hash;
        meta["gamma_w"] = format_double(config.gamma_w);
        meta["fit_window_lo"] = format_double(config.fit_window_lo);
        meta["fit_window_hi"] = format_double(config.fit_window_hi);
        meta["slope_tol"] = format_double(config.tolerances);
        meta["delta0"] = format_double(setup->delta0);
        meta["x0"] = format_double(setup->x0);
        meta["max_defect_drift"] = format_double(result.max_defect_drift);
        meta["boundary_v_flux"] = format_double(result.totals.boundary_v_flux);
        meta["max_telescope_error"] = format_double(result.totals.max_telescope_error);
        meta["steps"] = std::to_string(result.totals.steps);
        write_series(result.series, (dir / "series.csv").string(), meta);
        emit_plot_script(dir.string(), meta.size() + 2, config.case_kind);  // + I0, delta1

        if (result.blew_up) {
            std::ofstream rep(dir / "blowup.txt");
            rep << "blow-up at t = " << format_double(result.blowup_time) << "\n"
                << result.blowup_what << "\n"
                << "partial results written through the last completed snapshot\n";
            std::cerr << "blow-up at t = " << result.blowup_time << " (partial results in "
                      << config.directory << ")\n";
            return 2;
        }
        std::cout << "simulate: " << result.series.rows().size() << " snapshots, "
                  << result.totals.steps << " steps, series in "
                  << (dir / "series.csv").string() << "\n";
        return 0;
    } catch (const DataError& e) {
        std::cerr << "i/o error: " << e.what() << " (partial results may be in "
                  << config.directory << ")\n";
        return 3;
    }
}

int cmd_verify(const std::string& series_path, const std::vector<std::string>& expects) {
    Table table;
    try {
        table = read_table(series_path);
    } catch (const DataError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }

    try {
        std::vector<Expectation> exps;
        for (const auto& s : expects) exps.push_back(parse_expectation(s));
        if (exps.empty()) {
            const bool similarity =
                table.meta.count("case") && table.meta.at("case") == "similarity";
            double gamma_w = 0.75;
            if (table.meta.count("gamma_w")) gamma_w = std::stod(table.meta.at("gamma_w"));
            if (similarity) {
                exps = {{"L2_u_err", -0.5, 0.15},
                        {"L2_v_err", -(1.0 - gamma_w) / 2.0, 0.15},
                        {"Linf_v_err", -(2.0 - gamma_w) / 2.0, 0.2}};
            } else {
                exps = {{"L2_v_err", -0.5, 0.15},
                        {"L2_u_err", -1.0, 0.25},
                        {"Linf_v_err", -0.75, 0.15}};
            }
        }

        const std::vector<double>& t = table.col("t");
        double lo = std::max(1.0, (t.empty() ? 1.0 : t.back()) / 10.0);
        double hi = t.empty() ? 10.0 : t.back();
        if (table.meta.count("fit_window_lo")) lo = std::stod(table.meta.at("fit_window_lo"));
        if (table.meta.count("fit_window_hi")) hi = std::stod(table.meta.at("fit_window_hi"));

        std::vector<FitVerdict> verdicts;
        bool all_pass = true;
        std::printf("%-12s %9s %9s %7s %6s  verdict\n", "column", "slope", "expected", "tol",
                    "r2");
        for (const auto& e : exps) {
            FitVerdict v;
            v.fit = decay_fit(t, table.col(e.column), lo, hi, e.column);
            v.expected = e.slope;
            v.tol = e.tol;
            v.pass = v.fit.slope <= e.slope + e.tol;
            all_pass = all_pass && v.pass;
            std::printf("%-12s %9.4f %9.4f %7.3f %6.3f  %s\n", e.column.c_str(), v.fit.slope,
                        e.slope, e.tol, v.fit.r_squared, v.pass ? "pass" : "FAIL");
            verdicts.push_back(v);
        }
        try {
            write_fit_report(series_path + ".fits.csv", verdicts);
        } catch (const DataError& e) {
            std::cerr << "i/o error: " << e.what() << "\n";
            return 3;
        }
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        return report_validation(e);
    }
}

int cmd_profile(const std::string& config_path, const std::string& out_path) {
    ExperimentConfig config;
    try {
        config = load_config(config_path);
    } catch (const std::exception& e) {
        return report_validation(e);
    }

    try {
        SimilarityProfile prof =
            similarity_solve(make_law(config), config.alpha_bar, config.ends, config.xi_max,
                             config.n_nodes, config.profile_tol);
        const BoundFit fit = gaussian_bound_check(prof);
        prof.record_bound_fit(fit);

        double max_residual = 0.0;
        for (double r : prof.residual_table()) max_residual = std::max(max_residual, std::abs(r));
        const double mismatch = std::abs(prof.table_V().back() - config.ends.v_plus);

        try {
            export_profile_csv(prof, out_path);
        } catch (const DataError& e) {
            std::cerr << "i/o error: " << e.what() << "\n";
            return 3;
        }
        std::printf("profile: nodes=%zu max_residual=%.3e boundary_mismatch=%.3e\n",
                    prof.n_nodes(), max_residual, mismatch);
        std::printf("tail bounds: C_fit=%.4f c_fit=%.4f %s\n", fit.C_fit, fit.c_fit,
                    fit.pass ? "pass" : "FAIL");
        return fit.pass ? 0 : 1;
    } catch (const SolverError& e) {
        std::cerr << "shooting failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        return report_validation(e);
    }
}

int cmd_check_forcing(const std::string& config_path, const std::string& t_spec) {
    ExperimentConfig config;
    std::optional<ExperimentSetup> setup;
    try {
        config = load_config(config_path);
        setup.emplace(build_experiment(config));
    } catch (const std::exception& e) {
        return report_validation(e);
    }

    try {
        double lo = 1.0, hi = 400.0;
        std::size_t n = 25;
        if (!t_spec.empty()) {
            std::istringstream in(t_spec);
            std::string part;
            std::vector<std::string> parts;
            while (std::getline(in, part, ':')) parts.push_back(part);
            if (parts.size() != 3) throw DataError("t-samples spec must be lo:hi:n");
            lo = std::stod(parts[0]);
            hi = std::stod(parts[1]);
            n = std::stoul(parts[2]);
        }
        const std::vector<double> ts = log_spaced(lo, hi, n);

        ForcingNormTable table;
        if (config.case_kind == CaseKind::const_state)
            table = forcing_norms_const(setup->grid, setup->profiles.wave(),
                                        setup->profiles.corr(), setup->law, setup->field, ts);
        else
            table = forcing_norms_similarity(setup->grid, setup->profiles.profile(),
                                             setup->profiles.corr(), setup->law, setup->field,
                                             ts);

        const auto checks = forcing_decay_check(table, config.case_kind);
        bool all_pass = true;
        std::printf("%-10s %12s %8s %6s  verdict\n", "column", "slope(sq)", "bound", "r2");
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            std::printf("%-10s %12.4f %8.2f %6.3f  %s\n", c.label.c_str(), c.slope_sq, c.bound,
                        c.r_squared, c.pass ? "pass" : "FAIL");
        }

        std::error_code ec;
        fs::create_directories(config.directory, ec);
        if (!ec) {
            std::vector<std::vector<double>> cols;
            std::vector<std::string> header = {"t"};
            cols.push_back(table.t);
            for (std::size_t c = 0; c < table.labels.size(); ++c) {
                header.push_back(table.labels[c]);
                cols.push_back(table.l2[c]);
            }
            write_table((fs::path(config.directory) / "forcing_norms.csv").string(), header,
                        cols, {{"config_hash", config_hash_hex(config)}});
        }
        return all_pass ? 0 : 1;
    } catch (const DataError& e) {
        return report_validation(e);
    }
}

} // namespace psdamp
