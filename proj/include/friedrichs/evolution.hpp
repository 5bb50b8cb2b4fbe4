#pragma once

// Exact time evolution of the discrete sector: the amplitude matrix
// A_kl(t) = <k| e^{-iHt} |l>, the continuum kernel g_kl(w, t), and survival
// amplitudes of superpositions split into pole and background parts.

#include <cstddef>
#include <span>
#include <vector>

#include "friedrichs/model.hpp"
#include "friedrichs/spectral.hpp"

namespace friedrichs {

struct InitialState {
  std::vector<cplx> a;
  bool normalized = false;  // true when sum |a_k|^2 was rescaled to 1

  /// Copies the raw amplitudes, optionally rescaling them to unit norm.
  static InitialState make(std::vector<cplx> amplitudes, bool normalize);
  static InitialState make_real(const std::vector<double>& amplitudes, bool normalize);

  double norm_sq() const;
};

struct SurvivalCurve {
  std::vector<double> t;
  std::vector<cplx> amplitude;
  std::vector<double> probability;  // |amplitude|^2
  std::vector<cplx> pole_part;
  std::vector<cplx> background;     // amplitude - pole_part
};

struct EvolutionOptions {
  double quad_tol = 1e-8;
  std::size_t max_evaluations = 1'000'000;  // node budget per quadrature
};

/// (1/2 pi i) int_0^inf dw e^{-iwt} (G(w+i0) - G(w-i0)). At lambda = 0 the
/// discontinuity is a sum of delta functions and the free result
/// diag(e^{-i w_k t}) is returned directly. Throws ConvergenceError when the
/// node budget is exhausted before the error estimate drops below quad_tol.
CMatrix amplitude_matrix_exact(const ModelParams& params, double t, const EvolutionOptions& opt);
CMatrix amplitude_matrix_exact(const ModelParams& params, double t, double quad_tol);

/// g_kl(w, t) = (1/2 pi i) int_0^inf dw' (G(w'+i0) - G(w'-i0))
///              (e^{-iw't} - e^{-iwt}) / (w' - w),
/// the contour form with the pole at w' = w inside C. The integrand is
/// regular at w' = w, so no principal value is needed. g(w, 0) = 0.
CMatrix g_kernel(const ModelParams& params, double omega, double t, const EvolutionOptions& opt);
CMatrix g_kernel(const ModelParams& params, double omega, double t, double quad_tol);

/// -sum_j r^j e^{-i z_j t}.
CMatrix pole_sum(std::span<const ResonancePole> poles, double t);

/// Background integral along the steepest-descent line s = e^{-i pi/4} x,
/// x in R, valid for t > 0 when every resonance lies inside the swept wedge
/// -pi/4 < arg s < 0. Independent of amplitude_matrix_exact: the two agree
/// once the pole sum is added back.
CMatrix background_contour(const ModelParams& params, double t, const EvolutionOptions& opt);

/// sum_{k,k'} a_k conj(a_k') M_kk'.
cplx contract(const InitialState& state, const CMatrix& m);

/// Exact survival amplitude on a time grid with the pole/background split.
/// Poles come from find_resonances().
SurvivalCurve survival(const ModelParams& params, const InitialState& state,
                       std::span<const double> times, const EvolutionOptions& opt);
SurvivalCurve survival(const ModelParams& params, const InitialState& state,
                       std::span<const double> times, double quad_tol);

/// Uniform grid of n points on [t_min, t_max].
std::vector<double> uniform_grid(double t_min, double t_max, std::size_t n);

}  // namespace friedrichs
