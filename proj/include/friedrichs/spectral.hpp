#pragma once

// Resonance poles of G on the second sheet, their residues, and checks that
// the physical sheet carries no discrete spectrum.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "friedrichs/model.hpp"

namespace friedrichs {

/// Simple pole z = omega_tilde - i gamma of G on the second sheet.
struct ResonancePole {
  cplx z;
  double omega_tilde = 0.0;
  double gamma = 0.0;
  CMatrix residues;  // r_kk' = res G_kk' at z; complex symmetric, rank one
  cplx s;            // uniformization point, Im s <= 0
};

/// Builds the pole record at a zero s of det G^{-1}, attaching residues.
ResonancePole make_pole(const ModelParams& params, cplx s);

enum class RootKind {
  resonance,            // Re z > 0, Im z <= 0: adjacent to the physical cut
  conjugate_resonance,  // mirror partner with Re s < 0
  distant_pole,         // complex second-sheet zero with Re z <= 0, away from the cut
  virtual_state,        // real negative energy on the second sheet
  bound_state,          // real negative energy on the physical sheet
  physical_sheet_pole,  // complex zero on the physical sheet
};

struct PolynomialRoot {
  cplx x;  // root of the degree-8 polynomial, s = i x
  cplx s;
  cplx z;  // energy -x^2
  RootKind kind;
};

struct TwoLevelPoles {
  std::array<double, 9> coefficients{};  // ascending powers, monic
  std::vector<PolynomialRoot> roots;
  std::vector<ResonancePole> resonances;  // ordered by Re z
};

/// Coefficients (ascending) of
/// [(w1 + x^2)(x + r1)^2 - pi l^2/(2 r1)] [(w2 + x^2)(x + r2)^2 - pi l^2/(2 r2)]
///   - (pi l^2 / (r1 + r2))^2,
/// whose roots x give the zeros of det G^{-1} at s = i x.
std::array<double, 9> two_level_polynomial(const ModelParams& params);

/// All eight roots by companion-matrix eigenvalues with Newton polishing,
/// classified, plus the resonances (Re z > 0, Im z < 0). Requires N = 2.
TwoLevelPoles find_poles_two_level(const ModelParams& params);

struct SeedFailure {
  cplx seed;
  std::string reason;
};

struct NewtonPoles {
  std::vector<ResonancePole> poles;
  std::vector<SeedFailure> failures;
  std::vector<std::string> warnings;
};

/// Newton iteration on det G^{-1}(s) from each seed energy, restricted to the
/// quadrant Re s > 0, Im s <= 0. Roots closer than 1e-8 are merged.
NewtonPoles find_poles_newton(const ModelParams& params, std::span<const cplx> seeds);

/// Newton poles seeded from the first-order positions w_k - l^2 I_kk(w_k + i0).
/// Throws ConvergenceError if any seed fails. Pole j belongs to level j.
std::vector<ResonancePole> find_resonances(const ModelParams& params);

/// adj(G^{-1}) / (d det G^{-1} / dw) at a zero of the determinant.
/// Throws SimplePoleError when the derivative vanishes.
CMatrix compute_residue(const ModelParams& params, SheetPoint at);
/// Same, for an energy z on the second sheet.
CMatrix compute_residue(const ModelParams& params, cplx z);

struct ConditionCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct AnalyticityReport {
  bool pass = false;
  std::vector<ConditionCheck> conditions;  // closed-form conditions (N = 2 only)
  std::vector<cplx> candidate_zeros;       // zeros of det G^{-1} found with Im s > 0
  double margin = 0.0;
  std::string summary;
};

/// Closed-form necessary conditions (N = 2) plus a heuristic scan of
/// |det G^{-1}| over a 200 x 200 log-polar grid of the upper half s-plane.
AnalyticityReport validate_analyticity(const ModelParams& params);

}  // namespace friedrichs
