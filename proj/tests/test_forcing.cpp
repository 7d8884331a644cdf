#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "psdamp/correction.hpp"
#include "psdamp/diffusion_wave.hpp"
#include "psdamp/forcing.hpp"
#include "psdamp/models.hpp"
#include "psdamp/norms.hpp"
#include "psdamp/similarity.hpp"

using namespace psdamp;

namespace {

// fourth-order central difference
double dcentral(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

struct ConstSetup {
    PressureLaw law{1.0, 2.0};
    DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    EndStates ends{1.0, 1.0, 0.03, 0.08};
    DiffusionWave wave{1.0, mu_const(law, 1.0, field.alpha_bar()), 0.15};
    CorrectionFunction corr{Mollifier(1.0, 0.0), ends, field};
};

SimilarityProfile solve_standard() {
    PressureLaw law(1.0, 2.0);
    EndStates ends{1.0, 1.1, 0.05, 0.05};
    return similarity_solve(law, 1.0, ends, 14.0, 4096, 1e-8);
}

} // namespace

TEST_CASE("equal-end forcing components match their pointwise formulas") {
    ConstSetup s;
    Grid1D grid(20.0, 512);
    const double t = 0.5;
    const ForcingF f = forcing_F(t, grid, s.wave, s.corr, s.law, s.field);
    REQUIRE(f.F.size() == grid.n_cells());

    for (std::size_t i = 8; i < grid.n_cells(); i += 37) {
        const double x = grid.center(i);
        const double V = s.wave.eval(t, x, WaveQuantity::V);
        const double Vx = s.wave.eval(t, x, WaveQuantity::V_x);
        const CorrectionDerivs cd = s.corr.derivs(t, x);

        const double f1 = -s.wave.eval(t, x, WaveQuantity::U_t);
        const double f2 = -(s.field.value(x) - s.field.alpha_bar()) *
                          s.wave.eval(t, x, WaveQuantity::U);
        const double f3 = -(s.law.d1(V) - s.law.d1(s.wave.v_bar())) * Vx;
        const double f4 =
            -(s.law.d1(V + cd.v_hat) * (Vx + cd.v_hat_x) - s.law.d1(V) * Vx);

        CHECK(std::abs(f.F1[i] - f1) <= 1e-14 + 1e-12 * std::abs(f1));
        CHECK(std::abs(f.F2[i] - f2) <= 1e-14 + 1e-12 * std::abs(f2));
        CHECK(std::abs(f.F3[i] - f3) <= 1e-14 + 1e-12 * std::abs(f3));
        CHECK(std::abs(f.F4[i] - f4) <= 1e-14 + 1e-12 * std::abs(f4));
        CHECK(std::abs(f.F[i] - (f1 + f2 + f3 + f4)) <= 1e-14);
    }
}

TEST_CASE("flux-gap term equals a finite difference of the pressure gap") {
    ConstSetup s;
    Grid1D grid(20.0, 512);
    const double t = 0.8;
    const ForcingF f = forcing_F(t, grid, s.wave, s.corr, s.law, s.field);

    auto gap = [&](double x) {
        const double V = s.wave.eval(t, x, WaveQuantity::V);
        return s.law.value(V + s.corr.v_hat(t, x)) - s.law.value(V);
    };
    for (std::size_t i = 8; i < grid.n_cells(); i += 61) {
        const double x = grid.center(i);
        const double fd = -dcentral(gap, x, 1e-3);
        CHECK(std::abs(f.F4[i] - fd) <= 1e-9);
    }
}

TEST_CASE("equal-end forcing x-derivatives agree with differencing the arrays") {
    ConstSetup s;
    Grid1D grid(25.6, 8192);
    const double dx = grid.dx();
    const double t = 0.5;
    const ForcingF f = forcing_F(t, grid, s.wave, s.corr, s.law, s.field);
    const double sF = max_abs(f.F), sFt = max_abs(f.F_t);

    auto fd4 = [&](const std::vector<double>& a, std::size_t i) {
        return (-a[i + 2] + 8 * a[i + 1] - 8 * a[i - 1] + a[i - 2]) / (12 * dx);
    };
    // probes avoid |x| = 1 where the mollifier's high derivatives jump
    for (long off : {-960L, -640L, -320L, -80L, 0L, 80L, 320L, 640L, 960L}) {
        const std::size_t i = std::size_t(4096 + off);
        CHECK(std::abs(f.F_x[i] - fd4(f.F, i)) <= 1e-4 * sF);
        CHECK(std::abs(f.F_tx[i] - fd4(f.F_t, i)) <= 1e-4 * sFt);
    }
}

TEST_CASE("equal-end forcing t-derivatives agree with differencing in time") {
    ConstSetup s;
    Grid1D grid(20.0, 512);
    const double t = 0.6, h = 0.02;

    std::vector<ForcingF> shots;
    for (double tt : {t - 2 * h, t - h, t + h, t + 2 * h})
        shots.push_back(forcing_F(tt, grid, s.wave, s.corr, s.law, s.field));
    const ForcingF f = forcing_F(t, grid, s.wave, s.corr, s.law, s.field);
    const double sFt = max_abs(f.F_t), sFtx = max_abs(f.F_tx);

    auto dt4 = [&](auto member, std::size_t i) {
        return (-(shots[3].*member)[i] + 8 * (shots[2].*member)[i] -
                8 * (shots[1].*member)[i] + (shots[0].*member)[i]) /
               (12 * h);
    };
    for (std::size_t i = 8; i < grid.n_cells(); i += 29) {
        CHECK(std::abs(f.F_t[i] - dt4(&ForcingF::F, i)) <= 1e-4 * sFt);
        CHECK(std::abs(f.F_tx[i] - dt4(&ForcingF::F_x, i)) <= 1e-4 * sFtx);
    }
}

TEST_CASE("ramp forcing components match their pointwise formulas") {
    const SimilarityProfile prof = solve_standard();
    PressureLaw law(1.0, 2.0);
    DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    CorrectionFunction corr(Mollifier(1.0, 0.0), prof.ends(), field);
    Grid1D grid(50.0, 1024);
    const double t = 2.0;
    const ForcingG g = forcing_G(t, grid, prof, corr, law, field, field.alpha_bar());
    REQUIRE(g.G.size() == grid.n_cells());

    for (std::size_t i = 8; i < grid.n_cells(); i += 43) {
        const double x = grid.center(i);
        const SimDerivs sd = prof.derivs(t, x);
        const CorrectionDerivs cd = corr.derivs(t, x);
        const double beta = field.value(x) - field.alpha_bar();

        const double g1 = -sd.Ut;
        const double g2 = -beta * sd.U;
        const double g3 =
            -(law.d1(sd.V + cd.v_hat) * (sd.Vx + cd.v_hat_x) - law.d1(sd.V) * sd.Vx);

        CHECK(std::abs(g.G1[i] - g1) <= 1e-14 + 1e-12 * std::abs(g1));
        CHECK(std::abs(g.G2[i] - g2) <= 1e-14 + 1e-12 * std::abs(g2));
        CHECK(std::abs(g.G3[i] - g3) <= 1e-14 + 1e-12 * std::abs(g3));
        CHECK(std::abs(g.G[i] - (g1 + g2 + g3)) <= 1e-14);
    }
}

TEST_CASE("ramp forcing t-derivatives agree with differencing in time") {
    // the profile table is a C1 interpolant, so time differencing carries
    // interpolation noise; tolerances here certify structure, not precision
    const SimilarityProfile prof = solve_standard();
    PressureLaw law(1.0, 2.0);
    DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    CorrectionFunction corr(Mollifier(1.0, 0.0), prof.ends(), field);
    Grid1D grid(50.0, 1024);
    const double dx = grid.dx();
    const double t = 2.0, h = 0.02;

    std::vector<ForcingG> shots;
    for (double tt : {t - 2 * h, t - h, t + h, t + 2 * h})
        shots.push_back(forcing_G(tt, grid, prof, corr, law, field, field.alpha_bar()));
    const ForcingG g = forcing_G(t, grid, prof, corr, law, field, field.alpha_bar());
    const double sGt = max_abs(g.G_t), sGtx = max_abs(g.G_tx);

    auto dt4 = [&](std::size_t i) {
        return (-shots[3].G[i] + 8 * shots[2].G[i] - 8 * shots[1].G[i] + shots[0].G[i]) /
               (12 * h);
    };
    auto dt4_fdx = [&](std::size_t i) {
        auto fdx = [&](const ForcingG& gg) {
            return (-gg.G[i + 2] + 8 * gg.G[i + 1] - 8 * gg.G[i - 1] + gg.G[i - 2]) /
                   (12 * dx);
        };
        return (-fdx(shots[3]) + 8 * fdx(shots[2]) - 8 * fdx(shots[1]) + fdx(shots[0])) /
               (12 * h);
    };
    for (std::size_t i = 8; i + 8 < grid.n_cells(); i += 53) {
        CHECK(std::abs(g.G_t[i] - dt4(i)) <= 2e-3 * sGt);
        CHECK(std::abs(g.G_tx[i] - dt4_fdx(i)) <= 5e-3 * sGtx);
    }
}

TEST_CASE("norm tables carry the labeled discrete L2 norms") {
    ConstSetup s;
    Grid1D grid(100.0, 1024);
    const std::vector<double> ts = {1.0, 10.0, 100.0};
    const ForcingNormTable tab = forcing_norms_const(grid, s.wave, s.corr, s.law, s.field, ts);
    REQUIRE(tab.labels == std::vector<std::string>{"F_norm", "Fx_norm", "Ft_norm", "Ftx_norm"});
    REQUIRE(tab.l2.size() == 4);
    REQUIRE(tab.t == ts);

    const ForcingF f = forcing_F(10.0, grid, s.wave, s.corr, s.law, s.field);
    CHECK(tab.l2[0][1] == doctest::Approx(discrete_norm(f.F, grid.dx(), NormKind::L2))
                              .epsilon(1e-13));
    CHECK(tab.l2[3][1] == doctest::Approx(discrete_norm(f.F_tx, grid.dx(), NormKind::L2))
                              .epsilon(1e-13));

    const SimilarityProfile prof = solve_standard();
    CorrectionFunction corr(Mollifier(1.0, 0.0), prof.ends(), s.field);
    const ForcingNormTable tg =
        forcing_norms_similarity(grid, prof, corr, s.law, s.field, ts);
    REQUIRE(tg.labels == std::vector<std::string>{"G_norm", "Gt_norm", "Gtx_norm"});
    const ForcingG g = forcing_G(1.0, grid, prof, corr, s.law, s.field, prof.alpha_bar());
    CHECK(tg.l2[0][0] == doctest::Approx(discrete_norm(g.G, grid.dx(), NormKind::L2))
                             .epsilon(1e-13));
}

TEST_CASE("log spacing rejects bad windows") {
    CHECK_THROWS_AS((void)log_spaced(0.0, 10.0, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)log_spaced(2.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)log_spaced(1.0, 10.0, 1), std::invalid_argument);
}
