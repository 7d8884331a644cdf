#include "psdamp/forcing.hpp"

#include <cmath>
#include <stdexcept>

#include "psdamp/norms.hpp"

namespace psdamp {
namespace {

// Derivatives of the nonlinear flux gap N = p'(Vt) Vt_x - p'(V) V_x where
// Vt = V + v_hat. The same algebra serves F4 and G3; only the profile
// derivative inputs differ.
struct GapInputs {
    double V, Vx, Vxx, Vt, Vtx, Vtxx;       // background profile
    double h, hx, hxx, ht, htx, htxx;       // correction v_hat family
};

struct GapOut {
    double val, t, tx, x;
};

GapOut flux_gap(const PressureLaw& law, const GapInputs& in) {
    const double W = in.V + in.h;
    const double Wx = in.Vx + in.hx;
    const double Wxx = in.Vxx + in.hxx;
    const double Wt = in.Vt + in.ht;
    const double Wtx = in.Vtx + in.htx;
    const double Wtxx = in.Vtxx + in.htxx;

    const double a1 = law.d1(W), a2 = law.d2(W), a3 = law.d3(W);
    const double b1 = law.d1(in.V), b2 = law.d2(in.V), b3 = law.d3(in.V);

    GapOut out;
    out.val = a1 * Wx - b1 * in.Vx;
    out.x = a2 * Wx * Wx + a1 * Wxx - b2 * in.Vx * in.Vx - b1 * in.Vxx;
    out.t = a2 * Wt * Wx + a1 * Wtx - b2 * in.Vt * in.Vx - b1 * in.Vtx;
    out.tx = a3 * Wx * Wx * Wt + a2 * (2.0 * Wx * Wtx + Wt * Wxx) + a1 * Wtxx -
             (b3 * in.Vx * in.Vx * in.Vt + b2 * (2.0 * in.Vx * in.Vtx + in.Vt * in.Vxx) +
              b1 * in.Vtxx);
    return out;
}

} // namespace

ForcingF forcing_F(double t, const Grid1D& grid, const DiffusionWave& wave,
                   const CorrectionFunction& corr, const PressureLaw& law,
                   const DampingField& field) {
    const std::size_t n = grid.n_cells();
    const double mu = wave.mu();
    const double vbar = wave.v_bar();
    const double p1bar = law.d1(vbar);

    ForcingF out;
    for (auto* a : {&out.F1, &out.F2, &out.F3, &out.F4, &out.F, &out.F_x, &out.F_t, &out.F_tx})
        a->assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(i);
        double Vd[7];
        for (int k = 0; k <= 6; ++k) Vd[k] = wave.space_derivative(t, x, k);
        const double V = vbar + Vd[0];
        const CorrectionDerivs cd = corr.derivs(t, x);
        const double beta = field.value(x) - field.alpha_bar();
        const double betap = field.d1(x);

        // F1 = -U_t = -mu^2 V_xxx; time derivatives ride the heat identity
        const double f1 = -mu * mu * Vd[3];
        const double f1x = -mu * mu * Vd[4];
        const double f1t = -mu * mu * mu * Vd[5];
        const double f1tx = -mu * mu * mu * Vd[6];

        // F2 = -(alpha - alpha_bar) mu V_x
        const double f2 = -beta * mu * Vd[1];
        const double f2x = -betap * mu * Vd[1] - beta * mu * Vd[2];
        const double f2t = -beta * mu * mu * Vd[3];
        const double f2tx = -betap * mu * mu * Vd[3] - beta * mu * mu * Vd[4];

        // F3 = -(p'(V) - p'(v_bar)) V_x
        const double q = law.d1(V) - p1bar;
        const double p2 = law.d2(V), p3 = law.d3(V);
        const double f3 = -q * Vd[1];
        const double f3x = -(p2 * Vd[1] * Vd[1] + q * Vd[2]);
        const double f3t = -mu * (p2 * Vd[1] * Vd[2] + q * Vd[3]);
        const double f3tx = -mu * (p3 * Vd[1] * Vd[1] * Vd[2] +
                                   p2 * (Vd[2] * Vd[2] + 2.0 * Vd[1] * Vd[3]) + q * Vd[4]);

        // F4 = -(p(V + v_hat) - p(V))_x
        GapInputs gi;
        gi.V = V;
        gi.Vx = Vd[1];
        gi.Vxx = Vd[2];
        gi.Vt = mu * Vd[2];
        gi.Vtx = mu * Vd[3];
        gi.Vtxx = mu * Vd[4];
        gi.h = cd.v_hat;
        gi.hx = cd.v_hat_x;
        gi.hxx = cd.v_hat_xx;
        gi.ht = cd.v_hat_t;
        gi.htx = cd.v_hat_tx;
        gi.htxx = cd.v_hat_txx;
        const GapOut g = flux_gap(law, gi);

        out.F1[i] = f1;
        out.F2[i] = f2;
        out.F3[i] = f3;
        out.F4[i] = -g.val;
        out.F[i] = f1 + f2 + f3 - g.val;
        out.F_x[i] = f1x + f2x + f3x - g.x;
        out.F_t[i] = f1t + f2t + f3t - g.t;
        out.F_tx[i] = f1tx + f2tx + f3tx - g.tx;
    }
    return out;
}

ForcingG forcing_G(double t, const Grid1D& grid, const SimilarityProfile& profile,
                   const CorrectionFunction& corr, const PressureLaw& law,
                   const DampingField& field, double alpha_bar) {
    const std::size_t n = grid.n_cells();
    ForcingG out;
    for (auto* a : {&out.G1, &out.G2, &out.G3, &out.G, &out.G_t, &out.G_tx}) a->assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(i);
        const SimDerivs sd = profile.derivs(t, x);
        const CorrectionDerivs cd = corr.derivs(t, x);
        const double beta = field.value(x) - alpha_bar;
        const double betap = field.d1(x);

        const double g1 = -sd.Ut;
        const double g1t = -sd.Utt;
        const double g1tx = -sd.Uttx;

        const double g2 = -beta * sd.U;
        const double g2t = -beta * sd.Ut;
        const double g2tx = -betap * sd.Ut - beta * sd.Utx;

        GapInputs gi;
        gi.V = sd.V;
        gi.Vx = sd.Vx;
        gi.Vxx = sd.Vxx;
        gi.Vt = sd.Vt;
        gi.Vtx = sd.Vtx;
        gi.Vtxx = sd.Vtxx;
        gi.h = cd.v_hat;
        gi.hx = cd.v_hat_x;
        gi.hxx = cd.v_hat_xx;
        gi.ht = cd.v_hat_t;
        gi.htx = cd.v_hat_tx;
        gi.htxx = cd.v_hat_txx;
        const GapOut g = flux_gap(law, gi);

        out.G1[i] = g1;
        out.G2[i] = g2;
        out.G3[i] = -g.val;
        out.G[i] = g1 + g2 - g.val;
        out.G_t[i] = g1t + g2t - g.t;
        out.G_tx[i] = g1tx + g2tx - g.tx;
    }
    return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> t(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = std::exp(l0 + (l1 - l0) * double(i) / double(n - 1));
    t.front() = lo;
    t.back() = hi;
    return t;
}

ForcingNormTable forcing_norms_const(const Grid1D& grid, const DiffusionWave& wave,
                                     const CorrectionFunction& corr, const PressureLaw& law,
                                     const DampingField& field,
                                     const std::vector<double>& t_samples) {
    ForcingNormTable table;
    table.t = t_samples;
    table.labels = {"F_norm", "Fx_norm", "Ft_norm", "Ftx_norm"};
    table.l2.assign(4, std::vector<double>(t_samples.size(), 0.0));
    for (std::size_t k = 0; k < t_samples.size(); ++k) {
        const ForcingF f = forcing_F(t_samples[k], grid, wave, corr, law, field);
        table.l2[0][k] = discrete_norm(f.F, grid.dx(), NormKind::L2);
        table.l2[1][k] = discrete_norm(f.F_x, grid.dx(), NormKind::L2);
        table.l2[2][k] = discrete_norm(f.F_t, grid.dx(), NormKind::L2);
        table.l2[3][k] = discrete_norm(f.F_tx, grid.dx(), NormKind::L2);
    }
    return table;
}

ForcingNormTable forcing_norms_similarity(const Grid1D& grid, const SimilarityProfile& profile,
                                          const CorrectionFunction& corr, const PressureLaw& law,
                                          const DampingField& field,
                                          const std::vector<double>& t_samples) {
    ForcingNormTable table;
    table.t = t_samples;
    table.labels = {"G_norm", "Gt_norm", "Gtx_norm"};
    table.l2.assign(3, std::vector<double>(t_samples.size(), 0.0));
    for (std::size_t k = 0; k < t_samples.size(); ++k) {
        const ForcingG g =
            forcing_G(t_samples[k], grid, profile, corr, law, field, profile.alpha_bar());
        table.l2[0][k] = discrete_norm(g.G, grid.dx(), NormKind::L2);
        table.l2[1][k] = discrete_norm(g.G_t, grid.dx(), NormKind::L2);
        table.l2[2][k] = discrete_norm(g.G_tx, grid.dx(), NormKind::L2);
    }
    return table;
}

} // namespace psdamp
