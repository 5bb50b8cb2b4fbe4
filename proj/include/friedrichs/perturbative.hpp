#pragma once

// Weak-coupling closed forms: perturbative pole positions, lowest-order
// survival amplitudes, and the phenomenological mode in which resonances are
// given directly as (omega_tilde_k, gamma_k).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "friedrichs/evolution.hpp"
#include "friedrichs/model.hpp"

namespace friedrichs {

/// Resonances z_k = omega_tilde_k - i gamma_k given directly.
struct PhenoParams {
  std::vector<double> omega_tilde;  // pairwise distinct
  std::vector<double> gamma;        // >= 0

  std::size_t n_levels() const { return omega_tilde.size(); }
  void validate() const;
  std::vector<cplx> poles() const;
};

/// Two-level poles through O(lambda^2) (order = 2) or O(lambda^4) (order = 4).
/// Throws InvalidInput for N != 2, a bad order, or equal level energies.
std::vector<cplx> poles_two_level_perturbative(const ModelParams& params, int order);

/// z_k = w_k - lambda^2 I_kk(w_k + i0) for any N.
std::vector<cplx> poles_nlevel_perturbative(const ModelParams& params);

/// Lowest-order resonances of a microscopic model: the first-order
/// N-level poles read as (omega_tilde, gamma).
PhenoParams pheno_from_model(const ModelParams& params);

/// A(t) = sum_j |a_j|^2 e^{-i z_j t}; p(t) = | |a_1|^2 e^{-g_1 t} + |a_2|^2 e^{-g_2 t} e^{-2 i nu t} |^2
/// with nu = (omega_tilde_1 - omega_tilde_2) / 2. The whole amplitude is the
/// pole part; the background is zero at this order.
SurvivalCurve survival_two_level_lowest(const PhenoParams& pheno, const InitialState& state,
                                        std::span<const double> times);
SurvivalCurve survival_two_level_lowest(const ModelParams& params, const InitialState& state,
                                        std::span<const double> times);

/// A(t) = sum_k |a_k|^2 e^{-i omega_tilde_k t} e^{-gamma_k t}.
SurvivalCurve survival_nlevel_lowest(const PhenoParams& pheno, const InitialState& state,
                                     std::span<const double> times);

/// 2N+1 levels w_k = w0 + (k/N) dw, gamma_k = gamma, k = -N..N, with
/// amplitudes a_k = a~_k / sum a~_k^2 where a~_k = exp(-(k/N)^2). With
/// normalize the amplitudes are rescaled to unit norm instead.
std::pair<PhenoParams, InitialState> gaussian_wavepacket(std::size_t n_side, double omega0,
                                                         double delta_omega, double gamma,
                                                         bool normalize = false);

}  // namespace friedrichs
