#pragma once

// Gamov-vector data of each resonance: deformed-contour functionals
// int h(w) / [w - z]_+^p, normalization constants N_j^{-2}, the consistency
// identity with the residues, and the transition amplitude rebuilt from
// Gamov pole terms plus background.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "friedrichs/model.hpp"
#include "friedrichs/spectral.hpp"

namespace friedrichs {

/// Test function h(w) on the cut, optionally with a known continuation
/// through the upper rim onto the second sheet.
class Integrand {
 public:
  /// f_k f_l: continued as s / ((s^2 + rho_k^2)(s^2 + rho_l^2)).
  static Integrand formfactor_product(const ModelParams& params, std::size_t k, std::size_t l);
  /// G_kl(w + i0): continued as G_kl(s).
  static Integrand resolvent_entry(const ModelParams& params, std::size_t k, std::size_t l);
  /// Arbitrary function of w on the cut; it has no continuation, so only
  /// first-sheet points z are accepted.
  static Integrand on_cut_only(std::function<cplx(double)> h);

  bool has_continuation() const { return static_cast<bool>(at_s_); }
  /// h(w) for w = u^2 on the cut.
  cplx on_cut(double u) const;
  /// Continued h and dh/dw at s. Throw UnsupportedIntegrandError without a continuation.
  cplx value_at(cplx s) const;
  cplx derivative_at(cplx s) const;
  /// Model whose resonances the quadrature panels should resolve, if any.
  const std::optional<ModelParams>& model() const { return model_; }

 private:
  std::function<cplx(double)> cut_;
  std::function<cplx(cplx)> at_s_;
  std::function<cplx(cplx)> dw_at_s_;
  std::optional<ModelParams> model_;
};

struct DeformedPole {
  cplx z;
  bool enclosed = false;  // true iff Im z < 0: the contour passes below z

  static DeformedPole at(cplx z);
};

/// int_0^inf dw h(w) / [w - z]_+^power, power 1 or 2. For Im z < 0 this is
/// the plain integral plus 2 pi i h^{II}(z) (power 1) or 2 pi i dh^{II}/dw(z)
/// (power 2); for Im z > 0 it is the plain Cauchy integral.
cplx deformed_integral(const Integrand& h, cplx z, double quad_tol, int power = 1);

struct GamovData {
  ResonancePole pole;
  cplx norm_sq_inv;        // N_j^{-2}
  CVector coupling_vector; // c_k = sum_l lambda f_l(z_j) r^j_kl
};

/// N_j^{-2} = lambda^2 sum f_l f_n r_kl r_mn [delta_km + lambda^2 int f_k f_m / [w - z]_+^2].
/// Throws ZeroNormError when |N_j^{-2}| is below 1e-12 of its scale.
GamovData gamov_normalization(const ModelParams& params, const ResonancePole& pole, double quad_tol);

/// max_kk' | N_j^2 c_k c_k' + r^j_kk' |.
double check_residue_identity(const ModelParams& params, const ResonancePole& pole, double quad_tol);
double check_residue_identity(const GamovData& data);

/// N_j^2 c c^T: the coefficient of e^{-i z_j t} in the Gamov expansion.
CMatrix gamov_pole_coefficient(const GamovData& data);

struct GamovAmplitude {
  std::vector<double> t;
  std::vector<CMatrix> total;       // pole_term + background
  std::vector<CMatrix> pole_term;   // sum_j e^{-i z_j t} N_j^2 c c^T
  std::vector<CMatrix> background;  // exact amplitude minus the residue pole sum
  std::vector<GamovData> gamov;
};

/// <k|k'>_t from the Gamov expansion; equals amplitude_matrix_exact exactly
/// when the residue identity holds.
GamovAmplitude transition_amplitude_gamov(const ModelParams& params, std::span<const double> times,
                                          double quad_tol);

}  // namespace friedrichs
