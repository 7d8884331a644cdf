#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "psdamp/config.hpp"
#include "psdamp/errors.hpp"

using namespace psdamp;

namespace {

bool mentions(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

ExperimentConfig nondefault() {
    ExperimentConfig c;
    c.case_kind = CaseKind::similarity;
    c.p_ref = 1.4;
    c.gamma_p = 1.5;
    c.alpha_bar = 2.0;
    c.shape = "double_bump";
    c.a = 0.3;
    c.w = 1.5;
    c.x_c = -2.0;
    c.a2 = -0.4;
    c.w2 = 0.8;
    c.x_c2 = 3.0;
    c.ends = EndStates{0.9, 1.2, -0.01, 0.04};
    c.half_length = 150.0;
    c.n_cells = 1024;
    c.t_final = 25.0;
    c.cfl = 0.4;
    c.snapshot_stride = 0.25;
    c.boundary = "extrapolation";
    c.init_kind = InitKind::gaussian_hump;
    c.amplitude = 0.02;
    c.width = 5.0;
    c.w_m = 1.25;
    c.x_m = 0.5;
    c.xi_max = 13.0;
    c.n_nodes = 2048;
    c.profile_tol = 1e-7;
    c.gamma_w = 0.8;
    c.fit_window_lo = 5.0;
    c.fit_window_hi = 20.0;
    c.tolerances = 0.2;
    c.directory = "out/roundtrip";
    c.stride = 4;
    return c;
}

} // namespace

TEST_CASE("emit and parse round-trip every field") {
    const ExperimentConfig c = nondefault();
    const std::string text = emit_config(c);
    const ExperimentConfig d = parse_config(text);
    CHECK(emit_config(d) == text);
    CHECK(config_hash(d) == config_hash(c));
    CHECK(config_hash_hex(c).size() == 16);

    // a minimal document inherits every default
    const ExperimentConfig min = parse_config("case = const_state\n");
    CHECK(emit_config(min) == emit_config(ExperimentConfig{}));
}

TEST_CASE("hash responds to any single field change") {
    ExperimentConfig c = nondefault();
    const auto h0 = config_hash(c);
    c.cfl = 0.4000001;
    CHECK(config_hash(c) != h0);
    const auto h1 = config_hash(c);
    c.directory = "out/elsewhere";
    CHECK(config_hash(c) != h1);
}

TEST_CASE("unknown keys are hard errors that name the key") {
    const std::string text = "case = const_state\n[grid]\nn_cellz = 128\n";
    try {
        (void)parse_config(text);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(mentions(e, "grid.n_cellz"));
    }
    CHECK_THROWS_AS((void)parse_config("[grid\nn_cells = 64\n"), DataError);
    CHECK_THROWS_AS((void)parse_config("just a line without equals\n"), DataError);
    CHECK_THROWS_AS((void)parse_config("key =\n"), DataError);
}

TEST_CASE("validation aggregates all violations into one report") {
    const std::string text =
        "case = const_state\n"
        "[damping]\nalpha_bar = -1\n"
        "[time]\ncfl = 2\n"
        "[grid]\nn_cells = 8\n";
    try {
        (void)parse_config(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.violations.size() >= 3);
        CHECK(mentions(e, "alpha_bar"));
        CHECK(mentions(e, "cfl"));
        CHECK(mentions(e, "n_cells"));
    }
}

TEST_CASE("scalar parse failures carry the key and offending text") {
    try {
        (void)parse_config("case = const_state\n[pressure]\np_ref = abc\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(mentions(e, "pressure.p_ref"));
        CHECK(mentions(e, "abc"));
    }
    CHECK_THROWS_AS((void)parse_config("case = neither\n"), ValidationError);
    CHECK_THROWS_AS((void)parse_config("case = const_state\n[init]\nkind = wavy\n"),
                    ValidationError);
}

TEST_CASE("case-specific constraints are enforced") {
    // equal-volume case with distinct volumes
    CHECK_THROWS_AS(
        (void)parse_config("case = const_state\n[end_states]\nv_minus = 1\nv_plus = 1.1\n"),
        ValidationError);
    // ramp case with equal volumes
    CHECK_THROWS_AS((void)parse_config("case = similarity\n"), ValidationError);
    // ramp case needs gamma_w strictly inside (1/2, 1)
    ExperimentConfig c = nondefault();
    c.gamma_w = 0.5;
    CHECK_THROWS_AS(validate_config(c), ValidationError);
    c.gamma_w = 1.0;
    CHECK_THROWS_AS(validate_config(c), ValidationError);
    // bump amplitudes must keep the damping floor positive
    c = nondefault();
    c.a = 1.5;
    c.a2 = -0.9;
    try {
        validate_config(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(mentions(e, "alpha0"));
    }
}

TEST_CASE("comments and whitespace are tolerated") {
    const std::string text =
        "# leading comment\n"
        "case = const_state   ; trailing comment\n"
        "\n"
        "[pressure]  # section comment\n"
        "  p_ref   =   2.5  \n";
    const ExperimentConfig c = parse_config(text);
    CHECK(c.p_ref == 2.5);
    CHECK(c.case_kind == CaseKind::const_state);
}

TEST_CASE("missing config files are reported as data errors") {
    CHECK_THROWS_AS((void)load_config("/no/such/path/experiment.cfg"), DataError);
}

TEST_CASE("materialized models follow the declared shape") {
    ExperimentConfig c;
    c.shape = "constant";
    CHECK(make_field(c).is_constant());
    c.shape = "gaussian_bump";
    c.a = 0.2;
    c.w = 2.0;
    c.x_c = 1.0;
    DampingField f = make_field(c);
    REQUIRE(f.bumps().size() == 1);
    CHECK(f.bumps()[0].a == 0.2);
    CHECK(f.bumps()[0].w == 2.0);
    CHECK(f.bumps()[0].c == 1.0);
    c.shape = "double_bump";
    c.a2 = -0.1;
    c.w2 = 1.0;
    c.x_c2 = -3.0;
    CHECK(make_field(c).bumps().size() == 2);

    c.p_ref = 1.7;
    c.gamma_p = 2.2;
    const PressureLaw law = make_law(c);
    CHECK(law.p_ref() == 1.7);
    CHECK(law.gamma_p() == 2.2);

    c.half_length = 123.0;
    c.n_cells = 512;
    const Grid1D g = make_grid(c);
    CHECK(g.half_length() == 123.0);
    CHECK(g.n_cells() == 512);
}
