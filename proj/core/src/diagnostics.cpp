#include "psdamp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psdamp/errors.hpp"
#include "psdamp/norms.hpp"

namespace psdamp {

// ---------------------------------------------------------------- ProfileSet

ProfileSet::ProfileSet(const DiffusionWave& wave, const CorrectionFunction& corr)
    : kind_(CaseKind::const_state), wave_(wave), corr_(corr) {}

ProfileSet::ProfileSet(const SimilarityProfile& profile, const CorrectionFunction& corr)
    : kind_(CaseKind::similarity), profile_(profile), corr_(corr) {}

const DiffusionWave& ProfileSet::wave() const {
    if (!wave_) throw std::logic_error("ProfileSet: no diffusion wave in similarity case");
    return *wave_;
}

const SimilarityProfile& ProfileSet::profile() const {
    if (!profile_) throw std::logic_error("ProfileSet: no similarity profile in const case");
    return *profile_;
}

double ProfileSet::V_at(double t, double x) const {
    return kind_ == CaseKind::const_state ? wave_->eval(t, x, WaveQuantity::V)
                                          : profile_->eval(t, x, SimQuantity::V);
}

double ProfileSet::U_at(double t, double x) const {
    return kind_ == CaseKind::const_state ? wave_->eval(t, x, WaveQuantity::U)
                                          : profile_->eval(t, x, SimQuantity::U);
}

std::vector<double> ProfileSet::sample_V(double t, const Grid1D& grid) const {
    std::vector<double> out(grid.n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = V_at(t, grid.center(i));
    return out;
}

std::vector<double> ProfileSet::sample_U(double t, const Grid1D& grid) const {
    std::vector<double> out(grid.n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = U_at(t, grid.center(i));
    return out;
}

std::vector<double> ProfileSet::sample_u_hat(double t, const Grid1D& grid) const {
    std::vector<double> out(grid.n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = corr_.u_hat(t, grid.center(i));
    return out;
}

std::vector<double> ProfileSet::sample_v_hat(double t, const Grid1D& grid) const {
    std::vector<double> out(grid.n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = corr_.v_hat(t, grid.center(i));
    return out;
}

// ------------------------------------------------------- phi reconstruction

namespace {

std::vector<double> excess_volume(const FlowState& state, const ProfileSet& profiles,
                                  const Grid1D& grid) {
    if (state.size() != grid.n_cells())
        throw std::invalid_argument("diagnostics: state does not match grid");
    std::vector<double> d(state.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = grid.center(i);
        d[i] = state.v[i] - profiles.V_at(state.t, x) - profiles.corr().v_hat(state.t, x);
    }
    return d;
}

} // namespace

std::vector<double> phi_reconstruct(const FlowState& state, const ProfileSet& profiles,
                                    const Grid1D& grid) {
    return cumulative_trapezoid(excess_volume(state, profiles, grid), grid.dx());
}

double mass_defect(const FlowState& state, const ProfileSet& profiles, const Grid1D& grid) {
    return trapezoid(excess_volume(state, profiles, grid), grid.dx());
}

PhiSnapshot make_phi_snapshot(const FlowState& state, const ProfileSet& profiles,
                              const Grid1D& grid) {
    PhiSnapshot snap;
    snap.t = state.t;
    snap.phi_x = excess_volume(state, profiles, grid);
    snap.phi = cumulative_trapezoid(snap.phi_x, grid.dx());
    snap.phi_t.resize(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double x = grid.center(i);
        snap.phi_t[i] =
            state.u[i] - profiles.U_at(state.t, x) - profiles.corr().u_hat(state.t, x);
    }
    return snap;
}

// ------------------------------------------------------- time differencing

TimeDerivs time_derivatives(const std::vector<PhiSnapshot>& history, std::size_t i, double dx) {
    if (history.size() < 3)
        throw DataError("time_derivatives: need at least 3 snapshots for phi_tt");
    if (i >= history.size()) throw std::out_of_range("time_derivatives: snapshot index");

    // phi_t is exact pointwise, so phi_tt is the first derivative at t_i of
    // the quadratic through three neighboring phi_t snapshots; the same
    // window serves the one-sided first/last evaluations
    std::size_t a = (i == 0) ? 0 : (i == history.size() - 1 ? history.size() - 3 : i - 1);
    const PhiSnapshot& s0 = history[a];
    const PhiSnapshot& s1 = history[a + 1];
    const PhiSnapshot& s2 = history[a + 2];
    const double h01 = s1.t - s0.t, h12 = s2.t - s1.t, h02 = s2.t - s0.t;
    const double ti = history[i].t;

    TimeDerivs out;
    const std::size_t n = history[i].phi_t.size();
    out.phi_tt.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double d01 = (s1.phi_t[j] - s0.phi_t[j]) / h01;
        const double d12 = (s2.phi_t[j] - s1.phi_t[j]) / h12;
        const double curv = (d12 - d01) / h02;
        out.phi_tt[j] = d01 + curv * (2.0 * ti - s0.t - s1.t);
    }
    out.phi_tx = diff_x(history[i].phi_t, dx);
    out.phi_txx = diff_xx(history[i].phi_t, dx);
    return out;
}

// ----------------------------------------------------------------- fitting

DecayFit decay_fit(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi,
                   const std::string& column) {
    if (t.size() != y.size()) throw std::invalid_argument("decay_fit: length mismatch");
    if (!(t_lo >= 1.0) || !(t_hi > t_lo))
        throw std::invalid_argument("decay_fit: window must satisfy 1 <= t_lo < t_hi");

    std::vector<double> X, Y;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(y[i] > 0.0))
            throw DataError("decay_fit: non-positive sample in window for " + column);
        X.push_back(std::log1p(t[i]));
        Y.push_back(std::log(y[i]));
    }
    if (X.size() < 10)
        throw DataError("decay_fit: fewer than 10 samples in window for " + column);

    const double n = double(X.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sx += X[i];
        sy += Y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sxx += (X[i] - mx) * (X[i] - mx);
        sxy += (X[i] - mx) * (Y[i] - my);
        syy += (Y[i] - my) * (Y[i] - my);
    }

    DecayFit fit;
    fit.column = column;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.n_samples = X.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = (syy < 1e-30) ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    return fit;
}

std::vector<ForcingBoundCheck> forcing_decay_check(const ForcingNormTable& table, CaseKind kind) {
    const std::vector<double> bounds = (kind == CaseKind::const_state)
                                           ? std::vector<double>{-2.5, -3.0, -4.5, -5.0}
                                           : std::vector<double>{-1.0, -3.0, -3.0};
    if (table.l2.size() != bounds.size() || table.labels.size() != bounds.size())
        throw std::invalid_argument("forcing_decay_check: column count does not match case");
    if (table.t.size() < 10) throw DataError("forcing_decay_check: fewer than 10 time samples");
    if (!(table.t.back() / table.t.front() >= 100.0))
        throw DataError("forcing_decay_check: samples must span at least two decades");

    std::vector<ForcingBoundCheck> checks;
    for (std::size_t c = 0; c < bounds.size(); ++c) {
        std::vector<double> sq(table.t.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = table.l2[c][i] * table.l2[c][i];
        const DecayFit fit =
            decay_fit(table.t, sq, table.t.front(), table.t.back(), table.labels[c]);
        ForcingBoundCheck chk;
        chk.label = table.labels[c];
        chk.slope_sq = fit.slope;
        chk.bound = bounds[c];
        chk.tol = 0.2;
        chk.r_squared = fit.r_squared;
        chk.pass = fit.slope <= bounds[c] + chk.tol;
        checks.push_back(chk);
    }
    return checks;
}

// ------------------------------------------------------------------ energy

namespace {

struct SnapNorms {
    double phi2, phix2, phixx2, phit2, phitx2, phitxx2, phitt2;
};

SnapNorms snapshot_norms(const std::vector<PhiSnapshot>& history, std::size_t i, double dx) {
    const PhiSnapshot& s = history[i];
    auto sq = [&](std::span<const double> f) {
        const double n = discrete_norm(f, dx, NormKind::L2);
        return n * n;
    };
    SnapNorms n{};
    n.phi2 = sq(s.phi);
    n.phix2 = sq(s.phi_x);
    n.phixx2 = sq(diff_x(s.phi_x, dx));
    n.phit2 = sq(s.phi_t);
    if (history.size() >= 3) {
        const TimeDerivs td = time_derivatives(history, i, dx);
        n.phitx2 = sq(td.phi_tx);
        n.phitxx2 = sq(td.phi_txx);
        n.phitt2 = sq(td.phi_tt);
    } else {
        n.phitx2 = sq(diff_x(s.phi_t, dx));
        n.phitxx2 = sq(diff_xx(s.phi_t, dx));
        n.phitt2 = 0.0;  // not computable from fewer than 3 snapshots
    }
    return n;
}

} // namespace

EnergyReport energy_functional(const std::vector<PhiSnapshot>& history, CaseKind kind,
                               double gamma_w, double dx, double delta1) {
    if (history.empty()) throw DataError("energy_functional: empty history");
    if (kind == CaseKind::similarity && !(gamma_w > 0.5 && gamma_w < 1.0))
        throw std::invalid_argument("energy_functional: gamma_w must lie in (1/2, 1)");

    EnergyReport rep;
    rep.delta1 = delta1;
    double integral = 0.0;
    double prev_integrand = 0.0, prev_t = 0.0;
    double dsup = 0.0;

    for (std::size_t i = 0; i < history.size(); ++i) {
        const SnapNorms n = snapshot_norms(history, i, dx);
        const double t = history[i].t;
        const double th = 1.0 + t;

        double E, integrand, dval;
        if (kind == CaseKind::const_state) {
            E = th * th * (n.phitt2 + n.phit2 + n.phitx2 + n.phitxx2 + n.phixx2) +
                th * n.phix2 + n.phi2;
            integrand = th * th * (n.phitt2 + n.phitx2 + n.phitxx2) +
                        th * (n.phit2 + n.phixx2) + n.phix2;
            dval = std::sqrt(n.phi2 + n.phix2 + n.phixx2 + n.phit2 + n.phitx2 + n.phitxx2) +
                   th * std::sqrt(n.phitx2 + n.phitxx2);
        } else {
            E = std::pow(th, -gamma_w) * n.phi2 + std::pow(th, 1.0 - gamma_w) * n.phix2 +
                th * (n.phit2 + n.phitx2 + n.phitxx2 + n.phitt2 + n.phixx2);
            integrand = std::pow(th, -1.0 - gamma_w) * n.phi2 +
                        std::pow(th, -gamma_w) * n.phix2 +
                        std::pow(th, 1.0 - gamma_w) * n.phit2 + th * (n.phitt2 + n.phitx2) +
                        n.phitxx2;
            dval = std::pow(th, -0.5 * gamma_w) * std::sqrt(n.phi2) +
                   std::sqrt(n.phit2 + n.phitx2 + n.phitxx2 + n.phix2 + n.phixx2) +
                   std::sqrt(th) * std::sqrt(n.phitxx2);
        }

        if (i > 0) integral += 0.5 * (t - prev_t) * (integrand + prev_integrand);
        prev_integrand = integrand;
        prev_t = t;
        dsup = std::max(dsup, dval);

        rep.t.push_back(t);
        rep.E.push_back(E);
        rep.E_integral.push_back(integral);
        rep.delta_sup.push_back(dsup);

        if (i == 0) rep.I0 = (n.phi2 + n.phix2 + n.phixx2) + (n.phit2 + n.phitx2 + n.phitxx2) +
                             delta1;
    }
    return rep;
}

double delta1_scalar(CaseKind kind, std::span<const double> v0, double v_bar,
                     const EndStates& ends, const Grid1D& grid) {
    const double du = std::abs(ends.u_plus - ends.u_minus);
    if (kind == CaseKind::similarity) return std::abs(ends.v_plus - ends.v_minus) + du;
    std::vector<double> a(v0.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(v0[i] - v_bar);
    return trapezoid(a, grid.dx()) + du;
}

// ------------------------------------------------------------------ series

DiagnosticsSeries::DiagnosticsSeries(CaseKind kind) : kind_(kind) {
    forcing_labels_ = (kind == CaseKind::const_state)
                          ? std::vector<std::string>{"F_norm", "Fx_norm", "Ft_norm", "Ftx_norm"}
                          : std::vector<std::string>{"G_norm", "Gt_norm", "Gtx_norm"};
}

std::vector<std::string> DiagnosticsSeries::header() const {
    std::vector<std::string> h = {"t",      "L2_v_err", "Linf_v_err", "L2_u_err",
                                  "L2_phi", "L2_phix",  "L2_phit",    "L2_phixx"};
    h.insert(h.end(), forcing_labels_.begin(), forcing_labels_.end());
    // spec columns first, monitored extras appended at the tail
    h.insert(h.end(), {"E_energy", "mass_defect", "E_integral", "delta_sup"});
    return h;
}

void DiagnosticsSeries::append(SeriesRow row) {
    std::vector<std::string> violations;
    if (!rows_.empty() && !(row.t > rows_.back().t))
        violations.push_back("snapshot times must be strictly increasing");
    for (double n : {row.L2_v_err, row.Linf_v_err, row.L2_u_err, row.L2_phi, row.L2_phix,
                     row.L2_phit, row.L2_phixx, row.E_energy})
        if (!(n >= 0.0)) violations.push_back("norms and energy must be non-negative");
    for (double n : row.forcing)
        if (!(n >= 0.0)) violations.push_back("forcing norms must be non-negative");
    if (row.forcing.size() != forcing_labels_.size())
        violations.push_back("forcing column count does not match the case");
    if (!violations.empty()) throw ValidationError(violations);
    rows_.push_back(std::move(row));
}

std::vector<double> DiagnosticsSeries::column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const SeriesRow& r : rows_) {
        if (name == "t") out.push_back(r.t);
        else if (name == "L2_v_err") out.push_back(r.L2_v_err);
        else if (name == "Linf_v_err") out.push_back(r.Linf_v_err);
        else if (name == "L2_u_err") out.push_back(r.L2_u_err);
        else if (name == "L2_phi") out.push_back(r.L2_phi);
        else if (name == "L2_phix") out.push_back(r.L2_phix);
        else if (name == "L2_phit") out.push_back(r.L2_phit);
        else if (name == "L2_phixx") out.push_back(r.L2_phixx);
        else if (name == "E_energy") out.push_back(r.E_energy);
        else if (name == "E_integral") out.push_back(r.E_integral);
        else if (name == "mass_defect") out.push_back(r.mass_defect);
        else if (name == "delta_sup") out.push_back(r.delta_sup);
        else {
            bool found = false;
            for (std::size_t c = 0; c < forcing_labels_.size(); ++c)
                if (forcing_labels_[c] == name) {
                    out.push_back(r.forcing[c]);
                    found = true;
                    break;
                }
            if (!found) throw std::invalid_argument("DiagnosticsSeries: unknown column " + name);
        }
    }
    return out;
}

} // namespace psdamp
