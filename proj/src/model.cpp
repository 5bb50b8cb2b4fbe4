#include "friedrichs/model.hpp"

#include <cmath>
#include <string>

#include "cut_integral.hpp"
#include "friedrichs/errors.hpp"

namespace friedrichs {

void ModelParams::validate() const {
  const std::size_t n = omega.size();
  if (n == 0) throw InvalidInput("model needs at least one level");
  if (rho.size() != n) throw InvalidInput("omega and rho must have the same length");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidInput("lambda must be finite and >= 0");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(omega[k] > 0.0) || !std::isfinite(omega[k]))
      throw InvalidInput("omega[" + std::to_string(k) + "] must be finite and > 0");
    if (!(rho[k] > 0.0) || !std::isfinite(rho[k]))
      throw InvalidInput("rho[" + std::to_string(k) + "] must be finite and > 0");
    for (std::size_t j = 0; j < k; ++j)
      if (omega[j] == omega[k]) throw InvalidInput("level energies must be pairwise distinct");
  }
}

ModelParams make_params(std::vector<double> omega, std::vector<double> rho, double lambda) {
  ModelParams p{std::move(omega), std::move(rho), lambda};
  p.validate();
  return p;
}

Sheet SheetPoint::sheet() const {
  if (s.imag() > 0.0) return Sheet::physical;
  if (s.imag() < 0.0) return Sheet::second;
  return Sheet::cut;
}

SheetPoint SheetPoint::upper_rim(double omega) { return {cplx{std::sqrt(omega), 0.0}}; }
SheetPoint SheetPoint::lower_rim(double omega) { return {cplx{-std::sqrt(omega), 0.0}}; }

SheetPoint SheetPoint::second_sheet(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() > 0.0) s = -s;
  return {s};
}

SheetPoint SheetPoint::physical(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0.0) s = -s;
  return {s};
}

namespace {

void check_level(const ModelParams& params, std::size_t k) {
  if (k >= params.n_levels())
    throw InvalidInput("level index " + std::to_string(k) + " out of range");
}

void check_formfactor_pole(const ModelParams& params, std::size_t k, cplx s) {
  const double r2 = params.rho[k] * params.rho[k];
  if (std::abs(s * s + r2) <= 1e-14 * r2)
    throw SingularPointError("formfactor pole at s^2 = -rho_" + std::to_string(k) + "^2");
}

}  // namespace

cplx eval_formfactor(const ModelParams& params, std::size_t k, SheetPoint at) {
  check_level(params, k);
  check_formfactor_pole(params, k, at.s);
  // Normalise -0.0 so that s on the negative axis has arg = +pi.
  const cplx s{at.s.real(), at.s.imag() == 0.0 ? 0.0 : at.s.imag()};
  return std::sqrt(s) / (s * s + params.rho[k] * params.rho[k]);
}

cplx formfactor_product(const ModelParams& params, std::size_t k, std::size_t l, cplx s) {
  const cplx w = s * s;
  return s / ((w + params.rho[k] * params.rho[k]) * (w + params.rho[l] * params.rho[l]));
}

cplx formfactor_product_derivative(const ModelParams& params, std::size_t k, std::size_t l,
                                   cplx s) {
  const cplx w = s * s;
  const cplx a = w + params.rho[k] * params.rho[k];
  const cplx b = w + params.rho[l] * params.rho[l];
  // h = s / (a b); dh/ds = 1/(ab) - 2 s^2 (a + b) / (ab)^2; dh/dw = (dh/ds) / (2s)
  const cplx ab = a * b;
  const cplx dh_ds = 1.0 / ab - 2.0 * w * (a + b) / (ab * ab);
  return dh_ds / (2.0 * s);
}

cplx interaction_integral(const ModelParams& params, std::size_t k, std::size_t l, cplx s) {
  const double rk = params.rho[k];
  const double rl = params.rho[l];
  return -kPi / ((rk + rl) * (s + kI * rk) * (s + kI * rl));
}

CMatrix resolvent_inverse_matrix(const ModelParams& params, cplx s) {
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const double coupling = kPi * params.lambda * params.lambda;
  const cplx w = s * s;
  CMatrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double rk = params.rho[k];
    for (Eigen::Index l = k; l < n; ++l) {
      const double rl = params.rho[l];
      const cplx v = coupling / ((rk + rl) * (s + kI * rk) * (s + kI * rl));
      m(k, l) = v;
      m(l, k) = v;
    }
    m(k, k) += params.omega[k] - w;
  }
  return m;
}

CMatrix resolvent_inverse_ds(const ModelParams& params, cplx s) {
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const double coupling = kPi * params.lambda * params.lambda;
  CMatrix d(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double rk = params.rho[k];
    for (Eigen::Index l = k; l < n; ++l) {
      const double rl = params.rho[l];
      const cplx pk = s + kI * rk;
      const cplx pl = s + kI * rl;
      const cplx v = -coupling / ((rk + rl) * pk * pl) * (1.0 / pk + 1.0 / pl);
      d(k, l) = v;
      d(l, k) = v;
    }
    d(k, k) -= 2.0 * s;
  }
  return d;
}

CMatrix resolvent_matrix(const ModelParams& params, cplx s) {
  const CMatrix m = resolvent_inverse_matrix(params, s);
  if (m.rows() == 1) {
    if (std::abs(m(0, 0)) < 1e-300) throw SingularMatrixError("det G^{-1} vanishes");
    return CMatrix::Constant(1, 1, 1.0 / m(0, 0));
  }
  if (m.rows() == 2) {
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < 1e-300) throw SingularMatrixError("det G^{-1} vanishes");
    CMatrix g(2, 2);
    g << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
    return g;
  }
  const Eigen::PartialPivLU<CMatrix> lu(m);
  if (std::abs(lu.determinant()) < 1e-300) throw SingularMatrixError("det G^{-1} vanishes");
  return lu.inverse();
}

ResolventSample eval_resolvent_inverse(const ModelParams& params, SheetPoint at) {
  if (at.s == cplx{0.0, 0.0}) throw SingularPointError("s = 0 is the branch point of the cut");
  for (std::size_t k = 0; k < params.n_levels(); ++k) {
    check_formfactor_pole(params, k, at.s);
  }
  ResolventSample out;
  out.at = at;
  out.g_inv = resolvent_inverse_matrix(params, at.s);
  out.g = resolvent_matrix(params, at.s);
  return out;
}

double check_discontinuity_identity(const ModelParams& params, double omega) {
  if (!(omega > 0.0)) throw InvalidInput("discontinuity identity needs omega > 0");
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const CMatrix g_up = resolvent_matrix(params, SheetPoint::upper_rim(omega).s);
  const CMatrix g_down = resolvent_matrix(params, SheetPoint::lower_rim(omega).s);
  CVector f(n);
  for (Eigen::Index k = 0; k < n; ++k)
    f(k) = eval_formfactor(params, static_cast<std::size_t>(k), SheetPoint::upper_rim(omega));
  const cplx factor = 2.0 * kPi * kI * params.lambda * params.lambda;
  const CMatrix rhs = factor * (g_up * f) * (f.transpose() * g_down);
  return max_abs(g_up - g_down - rhs);
}

SumRuleResult check_sum_rule(const ModelParams& params, double quad_tol) {
  params.validate();
  if (params.lambda == 0.0)
    throw DegenerateInputError("sum rule is degenerate at lambda = 0 (the weight collapses onto the levels)");
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const double lam2 = params.lambda * params.lambda;

  auto integrand = [&](double u) -> CMatrix {
    CVector f(n);
    const double root_u = std::sqrt(u);
    for (Eigen::Index k = 0; k < n; ++k) f(k) = root_u / (u * u + params.rho[k] * params.rho[k]);
    const CVector up = resolvent_matrix(params, cplx{u, 0.0}) * f;
    const CVector down = resolvent_matrix(params, cplx{-u, 0.0}) * f;
    return (2.0 * u * lam2) * (up * down.transpose());
  };

  const double u_end = detail::segment_end(params);
  const auto pts = detail::cut_breakpoints(params, u_end, 0.0);
  const auto seg = quad::integrate(integrand, std::span<const double>(pts),
                                   quad::Options{0.5 * quad_tol, 0.0, 1'000'000});
  // The integrand falls off like u^-6; the mapped tail is an exact integral,
  // held to a tenth of the budget.
  const auto tail =
      quad::integrate_to_infinity(integrand, u_end, u_end, quad::Options{0.1 * quad_tol, 0.0, 200'000});

  SumRuleResult out;
  out.integral = seg.value + tail.value;
  out.error_estimate = seg.error + tail.error;
  out.evaluations = seg.evaluations + tail.evaluations;
  if (!seg.converged || !tail.converged || out.error_estimate > quad_tol)
    throw ConvergenceError("sum rule quadrature did not converge: error estimate " +
                           std::to_string(out.error_estimate));
  out.residual = (out.integral - CMatrix::Identity(n, n)).cwiseAbs();
  return out;
}

}  // namespace friedrichs
