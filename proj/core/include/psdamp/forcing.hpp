#pragma once
// Residual of the asymptotic ansatz in the true momentum equation. With the
// profile pair (V, U) and correction (v_hat, u_hat) substituted into
// u_t + p(v)_x = -alpha u, everything that fails to cancel is the forcing.
//
// Equal end states (constant-coefficient heat profile, U = mu V_x):
//   F1 = -U_t
//   F2 = -(alpha - alpha_bar) U
//   F3 = -(p(V) - p'(v_bar) V)_x = -(p'(V) - p'(v_bar)) V_x
//   F4 = -(p(V + v_hat) - p(V))_x
// Distinct end states (similarity profile, U = mu(V) V_x):
//   G1 = -U_t,  G2 = -(alpha - alpha_bar) U,  G3 = -(p(V + v_hat) - p(V))_x
//
// All arrays, including the x/t/tx derivatives, come from closed-form
// differentiation of the profile expressions; nothing is finite-differenced.

#include <string>
#include <vector>

#include "psdamp/correction.hpp"
#include "psdamp/diffusion_wave.hpp"
#include "psdamp/models.hpp"
#include "psdamp/similarity.hpp"

namespace psdamp {

struct ForcingF {
    std::vector<double> F1, F2, F3, F4;
    std::vector<double> F, F_x, F_t, F_tx;
};

struct ForcingG {
    std::vector<double> G1, G2, G3;
    std::vector<double> G, G_t, G_tx;
};

ForcingF forcing_F(double t, const Grid1D& grid, const DiffusionWave& wave,
                   const CorrectionFunction& corr, const PressureLaw& law,
                   const DampingField& field);

ForcingG forcing_G(double t, const Grid1D& grid, const SimilarityProfile& profile,
                   const CorrectionFunction& corr, const PressureLaw& law,
                   const DampingField& field, double alpha_bar);

// Column-oriented table of plain (not squared) L2 norms over time samples.
struct ForcingNormTable {
    std::vector<double> t;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> l2;  // l2[col][sample]
};

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

ForcingNormTable forcing_norms_const(const Grid1D& grid, const DiffusionWave& wave,
                                     const CorrectionFunction& corr, const PressureLaw& law,
                                     const DampingField& field,
                                     const std::vector<double>& t_samples);

ForcingNormTable forcing_norms_similarity(const Grid1D& grid, const SimilarityProfile& profile,
                                          const CorrectionFunction& corr, const PressureLaw& law,
                                          const DampingField& field,
                                          const std::vector<double>& t_samples);

} // namespace psdamp
