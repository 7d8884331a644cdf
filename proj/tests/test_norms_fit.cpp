#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "psdamp/diagnostics.hpp"
#include "psdamp/errors.hpp"
#include "psdamp/forcing.hpp"
#include "psdamp/norms.hpp"

using namespace psdamp;

TEST_CASE("discrete norms reproduce hand values") {
    const std::vector<double> f = {3.0, -4.0, 0.0, 1.0};
    const double dx = 0.5;
    CHECK(cell_sum(f, dx) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(discrete_norm(f, dx, NormKind::L1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(discrete_norm(f, dx, NormKind::L2) ==
          doctest::Approx(std::sqrt(0.5 * 26.0)).epsilon(1e-14));
    CHECK(discrete_norm(f, dx, NormKind::Linf) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("H1 and H2 norms add difference-quotient energy") {
    // constant vectors have zero derivative part, so Hk collapses to L2
    const std::vector<double> c(64, 2.0);
    const double dx = 0.1;
    const double l2 = discrete_norm(c, dx, NormKind::L2);
    CHECK(discrete_norm(c, dx, NormKind::H1) == doctest::Approx(l2).epsilon(1e-13));
    CHECK(discrete_norm(c, dx, NormKind::H2) == doctest::Approx(l2).epsilon(1e-13));

    // a linear profile adds exactly |slope|^2 * length to the H1 square
    std::vector<double> lin(64);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = 0.7 * double(i) * dx;
    const double l2sq = std::pow(discrete_norm(lin, dx, NormKind::L2), 2);
    const double h1sq = std::pow(discrete_norm(lin, dx, NormKind::H1), 2);
    CHECK(h1sq - l2sq == doctest::Approx(0.49 * 6.4).epsilon(1e-10));
}

TEST_CASE("trapezoid and cumulative trapezoid are exact on linear data") {
    std::vector<double> f(11);
    for (int i = 0; i <= 10; ++i) f[i] = 2.0 * i - 3.0;
    const double dx = 0.25;
    // integral of 2 s / dx - 3 over sample range via closed form
    CHECK(trapezoid(f, dx) == doctest::Approx(0.25 * (10.0 * (f.front() + f.back()) / 2.0))
                                  .epsilon(1e-13));
    const auto cum = cumulative_trapezoid(f, dx);
    REQUIRE(cum.size() == f.size());
    CHECK(cum.front() == 0.0);
    CHECK(cum.back() == doctest::Approx(trapezoid(f, dx)).epsilon(1e-13));
    CHECK(cum[5] == doctest::Approx(0.25 * 5.0 * (f[0] + f[5]) / 2.0).epsilon(1e-13));
}

TEST_CASE("difference operators are exact on quadratics") {
    const double dx = 0.2;
    std::vector<double> q(32);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double x = double(i) * dx;
        q[i] = 1.5 * x * x - 2.0 * x + 0.3;
    }
    const auto d1 = diff_x(q, dx);
    const auto d2 = diff_xx(q, dx);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double x = double(i) * dx;
        CHECK(d1[i] == doctest::Approx(3.0 * x - 2.0).epsilon(1e-11));
        CHECK(d2[i] == doctest::Approx(3.0).epsilon(1e-10));
    }
}

TEST_CASE("log-spaced samples hit both endpoints and grow geometrically") {
    const auto t = log_spaced(1.0, 100.0, 5);
    REQUIRE(t.size() == 5);
    CHECK(t.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.back() == doctest::Approx(100.0).epsilon(1e-12));
    for (std::size_t k = 1; k < 4; ++k)
        CHECK(t[k + 1] / t[k] == doctest::Approx(t[1] / t[0]).epsilon(1e-10));
}

TEST_CASE("decay fit recovers a pure power law exactly") {
    std::vector<double> t, y;
    for (int k = 0; k < 200; ++k) {
        const double tt = 1.0 + 2.0 * k;
        t.push_back(tt);
        y.push_back(3.7 * std::pow(1.0 + tt, -1.25));
    }
    const DecayFit fit = decay_fit(t, y, 5.0, 300.0, "demo");
    CHECK(fit.slope == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.column == "demo");
    CHECK(fit.n_samples > 10);
}

TEST_CASE("decay fit guards its window") {
    std::vector<double> t, y;
    for (int k = 0; k < 30; ++k) {
        t.push_back(double(k));
        y.push_back(1.0);
    }
    CHECK_THROWS_AS((void)decay_fit(t, y, 0.5, 20.0, "w"), std::invalid_argument);
    CHECK_THROWS_AS((void)decay_fit(t, y, 25.0, 28.0, "w"), DataError);  // too few samples
    std::vector<double> z(t.size(), 0.0);
    CHECK_THROWS_AS((void)decay_fit(t, z, 1.0, 29.0, "w"), DataError);   // nothing positive
}

TEST_CASE("forcing decay check enforces the family bounds") {
    ForcingNormTable table;
    table.labels = {"F_norm", "Fx_norm", "Ft_norm", "Ftx_norm"};
    table.l2.resize(4);
    // squared-norm slopes: -2.6, -3.1, -4.6, -5.1 (all within tolerance 0.2)
    const double slopes_sq[4] = {-2.6, -3.1, -4.6, -5.1};
    for (double tt = 1.0; tt <= 400.0; tt *= 1.2) {
        table.t.push_back(tt);
        for (int c = 0; c < 4; ++c)
            table.l2[c].push_back(std::pow(1.0 + tt, 0.5 * slopes_sq[c]));
    }
    auto checks = forcing_decay_check(table, CaseKind::const_state);
    REQUIRE(checks.size() == 4);
    const double bounds[4] = {-2.5, -3.0, -4.5, -5.0};
    for (int c = 0; c < 4; ++c) {
        CHECK(checks[c].pass);
        CHECK(checks[c].bound == bounds[c]);
        CHECK(checks[c].slope_sq == doctest::Approx(slopes_sq[c]).epsilon(1e-9));
    }

    // a too-shallow first column must fail
    for (std::size_t k = 0; k < table.t.size(); ++k)
        table.l2[0][k] = std::pow(1.0 + table.t[k], 0.5 * -2.0);
    checks = forcing_decay_check(table, CaseKind::const_state);
    CHECK_FALSE(checks[0].pass);
}

TEST_CASE("forcing decay check requires a two-decade window") {
    ForcingNormTable table;
    table.labels = {"G_norm", "Gt_norm", "Gtx_norm"};
    table.l2.resize(3);
    for (double tt = 1.0; tt <= 20.0; tt += 1.0) {
        table.t.push_back(tt);
        for (int c = 0; c < 3; ++c) table.l2[c].push_back(1.0 / (1.0 + tt));
    }
    CHECK_THROWS_AS((void)forcing_decay_check(table, CaseKind::similarity), DataError);
}
