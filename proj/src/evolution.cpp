#include "friedrichs/evolution.hpp"

#include <cmath>
#include <sstream>

#include "cut_integral.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

InitialState InitialState::make(std::vector<cplx> amplitudes, bool normalize) {
  if (amplitudes.empty()) throw InvalidInput("initial state needs at least one amplitude");
  InitialState st{std::move(amplitudes), false};
  if (normalize) {
    const double norm = std::sqrt(st.norm_sq());
    if (!(norm > 0.0)) throw InvalidInput("cannot normalize the zero state");
    for (auto& x : st.a) x /= norm;
    st.normalized = true;
  }
  return st;
}

InitialState InitialState::make_real(const std::vector<double>& amplitudes, bool normalize) {
  return make(std::vector<cplx>(amplitudes.begin(), amplitudes.end()), normalize);
}

double InitialState::norm_sq() const {
  double sum = 0.0;
  for (cplx x : a) sum += std::norm(x);
  return sum;
}

namespace {

// (e^{-ixt} - 1) / x for real x, accurate through x -> 0.
cplx phase_quotient(double x, double t) {
  const double y = x * t;
  if (y == 0.0) return {0.0, -t};
  const double half = std::sin(0.5 * y);
  return cplx{-2.0 * half * half, -std::sin(y)} / x;
}

[[noreturn]] void throw_budget(const char* what, const detail::CutIntegral& r, double tol) {
  std::ostringstream msg;
  msg << what << ": quadrature error estimate " << r.error << " above " << tol << " after "
      << r.evaluations << " nodes";
  throw ConvergenceError(msg.str());
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("time must be finite and >= 0");
}

}  // namespace

CMatrix amplitude_matrix_exact(const ModelParams& params, double t, const EvolutionOptions& opt) {
  params.validate();
  check_time(t);
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  if (params.lambda == 0.0) {
    CMatrix free = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) free(k, k) = std::exp(-kI * (params.omega[k] * t));
    return free;
  }
  auto kernel = [t](cplx s) { return std::exp(-kI * (s * s * t)); };
  const auto r = detail::integrate_discontinuity(params, kernel, t, {}, opt.quad_tol, opt.max_evaluations);
  if (!r.converged) throw_budget("amplitude_matrix_exact", r, opt.quad_tol);
  return r.value;
}

CMatrix amplitude_matrix_exact(const ModelParams& params, double t, double quad_tol) {
  return amplitude_matrix_exact(params, t, EvolutionOptions{quad_tol});
}

CMatrix g_kernel(const ModelParams& params, double omega, double t, const EvolutionOptions& opt) {
  params.validate();
  check_time(t);
  if (!(omega > 0.0)) throw InvalidInput("g_kernel needs omega > 0 on the cut");
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const cplx outer = std::exp(-kI * (omega * t));
  if (params.lambda == 0.0) {
    CMatrix free = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) free(k, k) = outer * phase_quotient(params.omega[k] - omega, t);
    return free;
  }
  auto kernel = [&](cplx s) -> cplx {
    if (s.imag() == 0.0) return outer * phase_quotient(s.real() * s.real() - omega, t);
    const cplx w = s * s;
    return (std::exp(-kI * (w * t)) - outer) / (w - omega);
  };
  const double root = std::sqrt(omega);
  const std::array<double, 1> extra{root};
  const auto r = detail::integrate_discontinuity(params, kernel, t, extra, opt.quad_tol, opt.max_evaluations);
  if (!r.converged) throw_budget("g_kernel", r, opt.quad_tol);
  return r.value;
}

CMatrix g_kernel(const ModelParams& params, double omega, double t, double quad_tol) {
  return g_kernel(params, omega, t, EvolutionOptions{quad_tol});
}

CMatrix pole_sum(std::span<const ResonancePole> poles, double t) {
  if (poles.empty()) throw InvalidInput("pole_sum needs at least one pole");
  CMatrix sum = CMatrix::Zero(poles.front().residues.rows(), poles.front().residues.cols());
  for (const auto& p : poles) sum -= p.residues * std::exp(-kI * (p.z * t));
  return sum;
}

CMatrix background_contour(const ModelParams& params, double t, const EvolutionOptions& opt) {
  params.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("background_contour needs t > 0");
  // Pairing x and -x on the line s = e^{-i pi/4} x:
  // (1/2 pi i) int_R 2 s G(s) e^{-i s^2 t} ds = -(1/pi) int_0^inf x (G(s) - G(-s)) e^{-x^2 t} dx.
  const cplx dir = detail::kRayDirection;
  auto integrand = [&](double x) -> CMatrix {
    const cplx s = dir * x;
    const CMatrix diff = resolvent_matrix(params, s) - resolvent_matrix(params, -s);
    return (-x * std::exp(-x * x * t) / kPi) * diff;
  };
  const auto r = quad::integrate_to_infinity(integrand, 0.0, 1.0 / std::sqrt(t),
                                             quad::Options{opt.quad_tol, 0.0, opt.max_evaluations});
  if (!r.converged) {
    std::ostringstream msg;
    msg << "background_contour: error estimate " << r.error << " above " << opt.quad_tol;
    throw ConvergenceError(msg.str());
  }
  return r.value;
}

cplx contract(const InitialState& state, const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(state.a.size());
  if (m.rows() != n || m.cols() != n) throw InvalidInput("state dimension does not match the model");
  cplx sum{0.0, 0.0};
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) sum += state.a[k] * std::conj(state.a[l]) * m(k, l);
  return sum;
}

SurvivalCurve survival(const ModelParams& params, const InitialState& state,
                       std::span<const double> times, const EvolutionOptions& opt) {
  params.validate();
  if (state.a.size() != params.n_levels()) throw InvalidInput("state dimension does not match the model");
  const auto poles = find_resonances(params);

  SurvivalCurve curve;
  curve.t.assign(times.begin(), times.end());
  const std::size_t n = times.size();
  curve.amplitude.resize(n);
  curve.probability.resize(n);
  curve.pole_part.resize(n);
  curve.background.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double t = times[i];
    const cplx amp = contract(state, amplitude_matrix_exact(params, t, opt));
    const cplx pole = contract(state, pole_sum(poles, t));
    curve.amplitude[i] = amp;
    curve.probability[i] = std::norm(amp);
    curve.pole_part[i] = pole;
    curve.background[i] = amp - pole;
  });
  return curve;
}

SurvivalCurve survival(const ModelParams& params, const InitialState& state,
                       std::span<const double> times, double quad_tol) {
  return survival(params, state, times, EvolutionOptions{quad_tol});
}

std::vector<double> uniform_grid(double t_min, double t_max, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {t_min};
  std::vector<double> grid(n);
  const double step = (t_max - t_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = t_min + step * static_cast<double>(i);
  grid.back() = t_max;
  return grid;
}

}  // namespace friedrichs
