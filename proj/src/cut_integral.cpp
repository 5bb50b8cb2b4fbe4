#include "cut_integral.hpp"

#include <algorithm>
#include <cmath>

namespace friedrichs::detail {

namespace {

// First-order resonance position in s for each level.
std::vector<cplx> resonance_guesses(const ModelParams& params) {
  std::vector<cplx> out;
  out.reserve(params.n_levels());
  for (std::size_t k = 0; k < params.n_levels(); ++k) {
    const double root = std::sqrt(params.omega[k]);
    const cplx shift = params.lambda * params.lambda *
                       interaction_integral(params, k, k, cplx{root, 0.0});
    out.push_back(std::sqrt(params.omega[k] - shift));
  }
  return out;
}

}  // namespace

double segment_end(const ModelParams& params, std::span<const double> extra_u) {
  double top = 1.0;
  for (double w : params.omega) top = std::max(top, std::sqrt(w));
  for (double u : extra_u) top = std::max(top, u);
  return top + 1.0;
}

std::vector<double> cut_breakpoints(const ModelParams& params, double u_end, double t,
                                    std::span<const double> extra_u) {
  std::vector<double> pts{0.0, u_end};
  auto add = [&](double u) {
    if (u > 0.0 && u < u_end) pts.push_back(u);
  };
  for (cplx s : resonance_guesses(params)) {
    const double centre = s.real();
    const double width = std::max(std::abs(s.imag()), 1e-12);
    add(centre);
    for (double m : {2.0, 8.0, 32.0, 128.0}) {
      add(centre - m * width);
      add(centre + m * width);
    }
  }
  for (double u : extra_u) add(u);

  // Panels uniform in the phase u^2 t, at most pi/2 each.
  const double phase = u_end * u_end * std::max(t, 0.0);
  const auto n_phase = static_cast<std::size_t>(std::min(std::ceil(phase / (0.5 * kPi)), 2.0e5));
  for (std::size_t i = 1; i < n_phase; ++i)
    add(u_end * std::sqrt(static_cast<double>(i) / static_cast<double>(n_phase)));

  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (double u : pts)
    if (out.empty() || u - out.back() > 1e-13 * std::max(1.0, u)) out.push_back(u);
  if (out.back() < u_end) out.back() = u_end;
  return out;
}

CMatrix discontinuity(const ModelParams& params, cplx s) {
  const CMatrix diff = resolvent_matrix(params, s) - resolvent_matrix(params, -s);
  return (2.0 * s / (2.0 * kPi * kI)) * diff;
}

}  // namespace friedrichs::detail
