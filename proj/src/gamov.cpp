#include "friedrichs/gamov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cut_integral.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/evolution.hpp"
#include "friedrichs/parallel.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs {

Integrand Integrand::formfactor_product(const ModelParams& params, std::size_t k, std::size_t l) {
  params.validate();
  if (k >= params.n_levels() || l >= params.n_levels()) throw InvalidInput("level index out of range");
  Integrand h;
  h.at_s_ = [params, k, l](cplx s) { return friedrichs::formfactor_product(params, k, l, s); };
  h.dw_at_s_ = [params, k, l](cplx s) { return formfactor_product_derivative(params, k, l, s); };
  h.cut_ = [at = h.at_s_](double u) { return at(cplx{u, 0.0}); };
  return h;
}

Integrand Integrand::resolvent_entry(const ModelParams& params, std::size_t k, std::size_t l) {
  params.validate();
  if (k >= params.n_levels() || l >= params.n_levels()) throw InvalidInput("level index out of range");
  const auto i = static_cast<Eigen::Index>(k);
  const auto j = static_cast<Eigen::Index>(l);
  Integrand h;
  h.at_s_ = [params, i, j](cplx s) { return resolvent_matrix(params, s)(i, j); };
  h.dw_at_s_ = [params, i, j](cplx s) {
    const CMatrix g = resolvent_matrix(params, s);
    const CMatrix dg = -(g * resolvent_inverse_ds(params, s) * g) / (2.0 * s);
    return dg(i, j);
  };
  h.cut_ = [at = h.at_s_](double u) { return at(cplx{u, 0.0}); };
  h.model_ = params;
  return h;
}

Integrand Integrand::on_cut_only(std::function<cplx(double)> f) {
  if (!f) throw InvalidInput("on_cut_only needs a callable");
  Integrand h;
  h.cut_ = [f = std::move(f)](double u) { return f(u * u); };
  return h;
}

cplx Integrand::on_cut(double u) const { return cut_(u); }

cplx Integrand::value_at(cplx s) const {
  if (!at_s_) throw UnsupportedIntegrandError("integrand has no second-sheet continuation");
  return at_s_(s);
}

cplx Integrand::derivative_at(cplx s) const {
  if (!dw_at_s_) throw UnsupportedIntegrandError("integrand has no second-sheet continuation");
  return dw_at_s_(s);
}

DeformedPole DeformedPole::at(cplx z) { return {z, z.imag() < 0.0}; }

cplx deformed_integral(const Integrand& h, cplx z, double quad_tol, int power) {
  if (power != 1 && power != 2) throw InvalidInput("deformed_integral power must be 1 or 2");
  if (z.imag() == 0.0) throw InvalidInput("deformed_integral needs z off the real axis");
  const DeformedPole pole = DeformedPole::at(z);
  if (pole.enclosed && !h.has_continuation())
    throw UnsupportedIntegrandError("integrand has no second-sheet continuation");

  // Plain part in u = sqrt(w): int_0^inf 2u h(u^2) / (u^2 - z)^power du,
  // with panels refined around u = Re sqrt(z) on the scale of Im z.
  const double centre = std::max(std::sqrt(z).real(), 0.0);
  const double width = std::max(std::abs(z.imag()) / (2.0 * std::max(centre, 1e-3)), 1e-12);
  std::vector<double> extra{centre};
  double u_end = std::max(2.0, 2.0 * centre);
  std::vector<double> pts;
  if (h.model()) {
    u_end = std::max(u_end, detail::segment_end(*h.model(), extra));
    pts = detail::cut_breakpoints(*h.model(), u_end, 0.0, extra);
  } else {
    pts = {0.0, u_end};
  }
  auto add = [&](double u) {
    if (u > 0.0 && u < u_end) pts.push_back(u);
  };
  add(centre);
  for (double m : {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0}) {
    add(centre - m * width);
    add(centre + m * width);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto integrand = [&](double u) -> cplx {
    const cplx d = u * u - z;
    return 2.0 * u * h.on_cut(u) / (power == 1 ? d : d * d);
  };
  const auto seg = quad::integrate(integrand, std::span<const double>(pts),
                                   quad::Options{0.5 * quad_tol, 0.0, 1'000'000});
  const auto tail = quad::integrate_to_infinity(integrand, u_end, u_end,
                                                quad::Options{0.25 * quad_tol, 0.0, 200'000});
  const double error = seg.error + tail.error;
  if (!seg.converged || !tail.converged || error > quad_tol) {
    std::ostringstream msg;
    msg << "deformed_integral: error estimate " << error << " above " << quad_tol;
    throw ConvergenceError(msg.str());
  }
  cplx value = seg.value + tail.value;
  if (pole.enclosed) {
    const cplx s = SheetPoint::second_sheet(z).s;
    value += 2.0 * kPi * kI * (power == 1 ? h.value_at(s) : h.derivative_at(s));
  }
  return value;
}

GamovData gamov_normalization(const ModelParams& params, const ResonancePole& pole, double quad_tol) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(params.n_levels());
  const double lam2 = params.lambda * params.lambda;

  CVector f(n);
  for (Eigen::Index l = 0; l < n; ++l)
    f(l) = eval_formfactor(params, static_cast<std::size_t>(l), SheetPoint{pole.s});
  const CVector c = params.lambda * (pole.residues * f);
  if (c.squaredNorm() == 0.0) throw ZeroNormError("Gamov normalization N^-2 vanishes: no coupling to the continuum");

  CMatrix bracket = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index m = k; m < n; ++m) {
      const auto h = Integrand::formfactor_product(params, static_cast<std::size_t>(k),
                                                   static_cast<std::size_t>(m));
      const cplx v = lam2 * deformed_integral(h, pole.z, quad_tol, 2);
      bracket(k, m) += v;
      if (m != k) bracket(m, k) += v;
    }
  }

  GamovData out{pole, (c.transpose() * bracket * c)(0, 0), c};
  const double scale = c.squaredNorm() * std::max(1.0, max_abs(bracket));
  if (!(std::abs(out.norm_sq_inv) >= 1e-12 * scale) || scale == 0.0)
    throw ZeroNormError("Gamov normalization N^-2 vanishes for this pole");
  return out;
}

CMatrix gamov_pole_coefficient(const GamovData& data) {
  return (data.coupling_vector * data.coupling_vector.transpose()) / data.norm_sq_inv;
}

double check_residue_identity(const GamovData& data) {
  return max_abs(gamov_pole_coefficient(data) + data.pole.residues);
}

double check_residue_identity(const ModelParams& params, const ResonancePole& pole, double quad_tol) {
  return check_residue_identity(gamov_normalization(params, pole, quad_tol));
}

GamovAmplitude transition_amplitude_gamov(const ModelParams& params, std::span<const double> times,
                                          double quad_tol) {
  params.validate();
  const auto poles = find_resonances(params);
  GamovAmplitude out;
  out.gamov.resize(poles.size());
  parallel_for(poles.size(), [&](std::size_t j) {
    out.gamov[j] = gamov_normalization(params, poles[j], quad_tol);
  });
  std::vector<CMatrix> coeff;
  for (const auto& g : out.gamov) coeff.push_back(gamov_pole_coefficient(g));

  const std::size_t n = times.size();
  out.t.assign(times.begin(), times.end());
  out.total.resize(n);
  out.pole_term.resize(n);
  out.background.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double t = times[i];
    CMatrix term = CMatrix::Zero(coeff.front().rows(), coeff.front().cols());
    for (std::size_t j = 0; j < poles.size(); ++j) term += coeff[j] * std::exp(-kI * (poles[j].z * t));
    const CMatrix exact = amplitude_matrix_exact(params, t, quad_tol);
    out.pole_term[i] = term;
    out.background[i] = exact - pole_sum(poles, t);
    out.total[i] = term + out.background[i];
  });
  return out;
}

}  // namespace friedrichs
