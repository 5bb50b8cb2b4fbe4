#pragma once

// Quadrature over the cut [0, inf) in the uniformization variable u = sqrt(w).
//
// Integrals of the form (1/2 pi i) int_0^inf dw [G(w+i0) - G(w-i0)] K(w) are
// written as int_0^inf du D(u) K(u^2) with D(s) = 2 s (G(s) - G(-s)) / (2 pi i).
// The finite piece [0, U] is integrated on the real axis. Beyond U the
// integrand is analytic in the wedge 0 > arg(s - U) > -pi/4 (no poles of G
// have Re s > U, and -s stays on the physical sheet), so the tail is taken
// along the ray s = U + e^{-i pi/4} r, where e^{-i s^2 t} decays
// exponentially instead of oscillating.

#include <cmath>
#include <span>
#include <vector>

#include "friedrichs/model.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs::detail {

/// End of the real segment: clear of every resonance and of the extra points.
double segment_end(const ModelParams& params, std::span<const double> extra_u = {});

/// Initial panels on [0, u_end]: clustered around first-order resonance
/// positions, at the extra points, and fine enough that e^{-i u^2 t} turns by
/// at most pi/2 per panel.
std::vector<double> cut_breakpoints(const ModelParams& params, double u_end, double t,
                                    std::span<const double> extra_u = {});

/// 2 s (G(s) - G(-s)) / (2 pi i).
CMatrix discontinuity(const ModelParams& params, cplx s);

inline const cplx kRayDirection = std::polar(1.0, -kPi / 4.0);

struct CutIntegral {
  CMatrix value;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// (1/2 pi i) int_0^inf dw [G(w+i0) - G(w-i0)] K(s) with K a function of
/// s = sqrt(w), analytic near the positive axis and in the tail wedge.
/// `t` only shapes the initial panels and the tail scale.
template <class Kernel>
CutIntegral integrate_discontinuity(const ModelParams& params, Kernel&& kernel, double t,
                                    std::span<const double> extra_u, double abs_tol,
                                    std::size_t max_evaluations) {
  const double u_end = segment_end(params, extra_u);
  const auto pts = cut_breakpoints(params, u_end, t, extra_u);

  quad::Options seg_opt{0.5 * abs_tol, 0.0, max_evaluations};
  auto seg = quad::integrate(
      [&](double u) -> CMatrix {
        const cplx s{u, 0.0};
        return discontinuity(params, s) * kernel(s);
      },
      std::span<const double>(pts), seg_opt);

  const double decay = std::sqrt(2.0) * u_end * t;
  const double scale = u_end / (1.0 + u_end * decay);
  quad::Options tail_opt{0.25 * abs_tol, 0.0, max_evaluations};
  auto tail = quad::integrate_to_infinity(
      [&](double r) -> CMatrix {
        const cplx s = u_end + kRayDirection * r;
        return discontinuity(params, s) * (kernel(s) * kRayDirection);
      },
      0.0, scale, tail_opt);

  CutIntegral out;
  out.value = seg.value + tail.value;
  out.error = seg.error + tail.error;
  out.evaluations = seg.evaluations + tail.evaluations;
  out.converged = seg.converged && tail.converged && out.error <= abs_tol &&
                  out.evaluations <= max_evaluations;
  return out;
}

}  // namespace friedrichs::detail
