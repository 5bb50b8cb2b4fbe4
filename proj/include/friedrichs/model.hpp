#pragma once

// N discrete levels coupled to the half-line continuum through the rational
// formfactor f_k(w) = w^{1/4} / (w + rho_k^2).
//
// All analytic continuation is done in the uniformization variable s = sqrt(w):
// the upper half s-plane is the physical sheet, the lower half is the second
// sheet, and the cut [0, inf) maps onto the real s axis with w + i0 <-> s > 0
// and w - i0 <-> s < 0. Indices are zero-based throughout the C++ API.

#include <cstddef>
#include <vector>

#include "friedrichs/linalg.hpp"

namespace friedrichs {

struct ModelParams {
  std::vector<double> omega;  // level energies, > 0 and pairwise distinct
  std::vector<double> rho;    // formfactor scales, > 0
  double lambda = 0.0;        // coupling, >= 0

  std::size_t n_levels() const { return omega.size(); }

  /// Throws InvalidInput when an invariant is broken.
  void validate() const;
};

/// Validated construction.
ModelParams make_params(std::vector<double> omega, std::vector<double> rho, double lambda);

enum class Sheet { physical, second, cut };

struct SheetPoint {
  cplx s;

  cplx energy() const { return s * s; }
  Sheet sheet() const;

  static SheetPoint upper_rim(double omega);  // w + i0
  static SheetPoint lower_rim(double omega);  // w - i0 on the physical sheet
  /// Second-sheet point reached from the upper rim: s in the lower half plane.
  static SheetPoint second_sheet(cplx z);
  /// Physical-sheet point for complex energy z off the cut.
  static SheetPoint physical(cplx z);
};

struct ResolventSample {
  CMatrix g_inv;
  CMatrix g;
  SheetPoint at;
};

/// f_k at s with the principal branch of s^{1/2}, arg s in (-pi, pi].
cplx eval_formfactor(const ModelParams& params, std::size_t k, SheetPoint at);

/// f_k f_l = s / ((s^2 + rho_k^2)(s^2 + rho_l^2)); independent of the s^{1/2} branch.
cplx formfactor_product(const ModelParams& params, std::size_t k, std::size_t l, cplx s);

/// d/dw of formfactor_product at s.
cplx formfactor_product_derivative(const ModelParams& params, std::size_t k, std::size_t l, cplx s);

/// Closed form of int_0^inf f_k f_l / (w' - w) dw' continued in s:
/// -pi / ((rho_k + rho_l)(s + i rho_k)(s + i rho_l)).
cplx interaction_integral(const ModelParams& params, std::size_t k, std::size_t l, cplx s);

/// G^{-1}(s) without inversion. No singular-point checks; internal callers
/// that sample away from s = -i rho_k use this directly.
CMatrix resolvent_inverse_matrix(const ModelParams& params, cplx s);

/// dG^{-1}/ds.
CMatrix resolvent_inverse_ds(const ModelParams& params, cplx s);

/// G(s); throws SingularMatrixError when |det G^{-1}| < 1e-300.
CMatrix resolvent_matrix(const ModelParams& params, cplx s);

/// G^{-1} and G at a point, with both the formfactor-pole and singular-matrix
/// checks applied.
ResolventSample eval_resolvent_inverse(const ModelParams& params, SheetPoint at);

/// Largest entrywise residual of
///   G(w+i0) - G(w-i0) = 2 pi i lambda^2 G(w+i0) f f^T G(w-i0)
/// at a point w > 0 on the cut.
double check_discontinuity_identity(const ModelParams& params, double omega);

struct SumRuleResult {
  RMatrix residual;      // |integral - delta_kk'| entrywise
  CMatrix integral;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// lambda^2 int_0^inf sum_lm f_l f_m G_kl(w+i0) G_mk'(w-i0) dw compared with
/// the identity matrix. Throws DegenerateInputError at lambda = 0 and
/// ConvergenceError when the quadrature error estimate exceeds quad_tol.
SumRuleResult check_sum_rule(const ModelParams& params, double quad_tol);

}  // namespace friedrichs
