#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "psdamp/correction.hpp"
#include "psdamp/norms.hpp"

using namespace psdamp;

namespace {

template <typename F>
double dcentral(F f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

} // namespace

TEST_CASE("mollifier has unit mass, compact support, and matching antiderivative") {
    Mollifier m(1.5, 0.3);
    CHECK(m.value(0.3 + 1.5) == 0.0);
    CHECK(m.value(0.3 - 1.5) == 0.0);
    CHECK(m.value(0.3 - 1.6) == 0.0);
    CHECK(m.value(5.0) == 0.0);
    CHECK(m.value(0.3) > 0.0);
    CHECK(m.cumulative(0.3 - 1.5) == 0.0);
    CHECK(m.cumulative(0.3 + 1.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.cumulative(10.0) == doctest::Approx(1.0).epsilon(1e-14));

    // quadrature of the density reproduces the closed-form cumulative
    const int n = 20001;
    const double a = 0.3 - 1.5, b = 0.3 + 0.4, h = (b - a) / (n - 1);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = m.value(a + i * h);
    CHECK(trapezoid(vals, h) == doctest::Approx(m.cumulative(b)).epsilon(1e-9));
}

TEST_CASE("mollifier derivatives match finite differences and vanish at the edge") {
    Mollifier m(2.0, -1.0);
    for (double x : {-2.5, -1.0, 0.3, 0.9}) {
        CHECK(m.d1(x) == doctest::Approx(dcentral([&](double s) { return m.value(s); }, x, 1e-3))
                             .epsilon(1e-8));
        CHECK(m.d2(x) == doctest::Approx(dcentral([&](double s) { return m.d1(s); }, x, 1e-3))
                             .epsilon(1e-8));
    }
    // (1 - z^2)^4 has a quartic root at the edge: value through d2 all vanish
    CHECK(m.value(1.0) == 0.0);
    CHECK(m.d1(1.0) == 0.0);
    CHECK(m.d2(1.0) == 0.0);
    CHECK_THROWS_AS(Mollifier(0.0), std::invalid_argument);
}

TEST_CASE("velocity correction interpolates the far-field mismatch") {
    DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.5);
    EndStates ends{1.0, 1.0, -0.2, 0.3};
    CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    CHECK(corr.M0(-5.0) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(corr.M0(5.0) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(corr.u_hat(0.0, -5.0) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(corr.u_hat(0.0, 5.0) == doctest::Approx(0.3).epsilon(1e-14));
    // decay at rate alpha(x) pointwise
    const double x = 0.7;
    CHECK(corr.u_hat(3.0, x) ==
          doctest::Approx(corr.M0(x) * std::exp(-field.value(x) * 3.0)).epsilon(1e-14));
}

TEST_CASE("correction identities vanish at random sample points") {
    // u_hat_t + alpha u_hat = 0 and v_hat_t - u_hat_x = 0 are exact; the two
    // sides are computed by independent routes, so agreement is evidence the
    // derivative algebra is right.
    DampingField field = DampingField::double_bump(1.0, 0.2, 2.0, 0.5, -0.1, 1.0, -2.0);
    EndStates ends{1.0, 1.0, -0.15, 0.25};
    CorrectionFunction corr(Mollifier(1.3, 0.2), ends, field);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ux(-8.0, 8.0), ut(0.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const double x = ux(rng), t = ut(rng);
        const CorrectionDerivs d = corr.derivs(t, x);
        CHECK(std::abs(d.u_hat_t + field.value(x) * d.u_hat) <= 1e-12);
        CHECK(std::abs(d.v_hat_t - d.u_hat_x) <= 1e-12);
        CHECK(std::abs(d.v_hat_tx - d.u_hat_xx) <= 1e-12);
        CHECK(std::abs(d.v_hat_txx - d.u_hat_xxx) <= 1e-12);
    }
}

TEST_CASE("correction derivatives match finite differences in x and t") {
    DampingField field = DampingField::gaussian_bump(1.0, 0.15, 1.5, -0.4);
    EndStates ends{1.0, 1.0, 0.0, 0.1};
    CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    const double t = 1.3;
    for (double x : {-2.0, -0.3, 0.4, 1.8}) {
        const CorrectionDerivs d = corr.derivs(t, x);
        CHECK(d.u_hat == doctest::Approx(corr.u_hat(t, x)).epsilon(1e-14));
        CHECK(d.v_hat == doctest::Approx(corr.v_hat(t, x)).epsilon(1e-14));
        CHECK(d.u_hat_x ==
              doctest::Approx(dcentral([&](double s) { return corr.u_hat(t, s); }, x, 1e-3))
                  .epsilon(1e-7));
        CHECK(d.u_hat_xx ==
              doctest::Approx(dcentral([&](double s) { return corr.derivs(t, s).u_hat_x; }, x,
                                       1e-3))
                  .epsilon(1e-7));
        CHECK(d.u_hat_xxx ==
              doctest::Approx(dcentral([&](double s) { return corr.derivs(t, s).u_hat_xx; }, x,
                                       1e-3))
                  .epsilon(1e-6));
        CHECK(d.v_hat_x ==
              doctest::Approx(dcentral([&](double s) { return corr.v_hat(t, s); }, x, 1e-3))
                  .epsilon(1e-7));
        CHECK(d.v_hat_xx ==
              doctest::Approx(dcentral([&](double s) { return corr.derivs(t, s).v_hat_x; }, x,
                                       1e-3))
                  .epsilon(1e-6));
        CHECK(d.u_hat_t ==
              doctest::Approx(dcentral([&](double s) { return corr.u_hat(s, x); }, t, 1e-3))
                  .epsilon(1e-7));
        CHECK(d.v_hat_t ==
              doctest::Approx(dcentral([&](double s) { return corr.v_hat(s, x); }, t, 1e-3))
                  .epsilon(1e-7));
    }
}

TEST_CASE("initial velocity-correction mass equals the mismatch over alpha_bar") {
    DampingField field = DampingField::gaussian_bump(1.0, 0.2, 2.0, 0.0);
    EndStates ends{1.0, 1.0, -0.2, 0.3};
    CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    Grid1D grid(100.0, 8192);
    CHECK(corr.mass_check(grid) == doctest::Approx(-0.5).epsilon(1e-8));

    // with a doubled alpha_bar the carried mass halves
    DampingField field2 = DampingField::gaussian_bump(2.0, 0.2, 2.0, 0.0);
    CorrectionFunction corr2(Mollifier(1.0, 0.0), ends, field2);
    CHECK(corr2.mass_check(grid) == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("correction decays uniformly at the certified rate") {
    DampingField field = DampingField::gaussian_bump(1.0, 0.3, 2.0, 0.0);
    EndStates ends{1.0, 1.0, 0.0, 0.4};
    CorrectionFunction corr(Mollifier(1.0, 0.0), ends, field);
    const double alpha0 = field.alpha0();
    for (double t : {1.0, 5.0, 20.0})
        for (double x : {-3.0, 0.0, 0.5, 4.0}) {
            CHECK(std::abs(corr.u_hat(t, x)) <= 0.4 * std::exp(-alpha0 * t) + 1e-300);
        }
}
