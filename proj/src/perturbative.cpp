#include "friedrichs/perturbative.hpp"

#include <cmath>
#include <string>

#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

void PhenoParams::validate() const {
  const std::size_t n = omega_tilde.size();
  if (n == 0) throw InvalidInput("phenomenological model needs at least one level");
  if (gamma.size() != n) throw InvalidInput("omega_tilde and gamma must have the same length");
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(omega_tilde[k])) throw InvalidInput("omega_tilde must be finite");
    if (!(gamma[k] >= 0.0) || !std::isfinite(gamma[k]))
      throw InvalidInput("gamma[" + std::to_string(k) + "] must be finite and >= 0");
    for (std::size_t j = 0; j < k; ++j)
      if (omega_tilde[j] == omega_tilde[k]) throw InvalidInput("omega_tilde must be pairwise distinct");
  }
}

std::vector<cplx> PhenoParams::poles() const {
  std::vector<cplx> z(n_levels());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = {omega_tilde[k], -gamma[k]};
  return z;
}

std::vector<cplx> poles_two_level_perturbative(const ModelParams& params, int order) {
  params.validate();
  if (params.n_levels() != 2) throw InvalidInput("two-level perturbative poles need N = 2");
  if (order != 2 && order != 4) throw InvalidInput("perturbative order must be 2 or 4");
  const double lam2 = params.lambda * params.lambda;
  const double r_sum = params.rho[0] + params.rho[1];
  std::vector<cplx> z(2);
  for (std::size_t j = 0; j < 2; ++j) {
    const std::size_t k = 1 - j;
    const double w = params.omega[j];
    const double rj = params.rho[j];
    const double root = std::sqrt(w);
    const cplx plus_j{root, rj};
    z[j] = w + kPi * lam2 / (2.0 * rj) / (plus_j * plus_j);
    if (order == 4) {
      const cplx plus_k{root, params.rho[k]};
      const cplx mixed = 1.0 / ((w - params.omega[k]) * r_sum * r_sum * plus_k * plus_k);
      const cplx self = 1.0 / (4.0 * rj * rj * root * plus_j * plus_j * plus_j);
      z[j] += kPi * kPi * lam2 * lam2 / (plus_j * plus_j) * (mixed - self);
    }
  }
  return z;
}

std::vector<cplx> poles_nlevel_perturbative(const ModelParams& params) {
  params.validate();
  const double lam2 = params.lambda * params.lambda;
  std::vector<cplx> z(params.n_levels());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const cplx s{std::sqrt(params.omega[k]), 0.0};
    z[k] = params.omega[k] - lam2 * interaction_integral(params, k, k, s);
  }
  return z;
}

PhenoParams pheno_from_model(const ModelParams& params) {
  const auto z = poles_nlevel_perturbative(params);
  PhenoParams pheno;
  for (cplx zk : z) {
    pheno.omega_tilde.push_back(zk.real());
    pheno.gamma.push_back(-zk.imag());
  }
  return pheno;
}

namespace {

SurvivalCurve pole_only_curve(std::span<const double> times) {
  SurvivalCurve c;
  c.t.assign(times.begin(), times.end());
  c.amplitude.resize(times.size());
  c.probability.resize(times.size());
  c.pole_part.resize(times.size());
  c.background.assign(times.size(), cplx{0.0, 0.0});
  return c;
}

void check_dims(const PhenoParams& pheno, const InitialState& state) {
  pheno.validate();
  if (state.a.size() != pheno.n_levels()) throw InvalidInput("state dimension does not match the model");
}

}  // namespace

SurvivalCurve survival_two_level_lowest(const PhenoParams& pheno, const InitialState& state,
                                        std::span<const double> times) {
  check_dims(pheno, state);
  if (pheno.n_levels() != 2) throw InvalidInput("two-level survival needs N = 2");
  const double w1 = std::norm(state.a[0]);
  const double w2 = std::norm(state.a[1]);
  const double nu = 0.5 * (pheno.omega_tilde[0] - pheno.omega_tilde[1]);
  const auto z = pheno.poles();
  auto c = pole_only_curve(times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const cplx amp = w1 * std::exp(-kI * (z[0] * t)) + w2 * std::exp(-kI * (z[1] * t));
    const cplx envelope = w1 * std::exp(-pheno.gamma[0] * t) +
                          w2 * std::exp(-pheno.gamma[1] * t) * std::exp(cplx{0.0, -2.0 * nu * t});
    c.amplitude[i] = amp;
    c.pole_part[i] = amp;
    c.probability[i] = std::norm(envelope);
  }
  return c;
}

SurvivalCurve survival_two_level_lowest(const ModelParams& params, const InitialState& state,
                                        std::span<const double> times) {
  return survival_two_level_lowest(pheno_from_model(params), state, times);
}

SurvivalCurve survival_nlevel_lowest(const PhenoParams& pheno, const InitialState& state,
                                     std::span<const double> times) {
  check_dims(pheno, state);
  const auto z = pheno.poles();
  auto c = pole_only_curve(times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    cplx amp{0.0, 0.0};
    for (std::size_t k = 0; k < z.size(); ++k) amp += std::norm(state.a[k]) * std::exp(-kI * (z[k] * times[i]));
    c.amplitude[i] = amp;
    c.pole_part[i] = amp;
    c.probability[i] = std::norm(amp);
  }
  return c;
}

std::pair<PhenoParams, InitialState> gaussian_wavepacket(std::size_t n_side, double omega0,
                                                         double delta_omega, double gamma,
                                                         bool normalize) {
  if (n_side == 0) throw InvalidInput("gaussian_wavepacket needs n_side >= 1");
  if (!(delta_omega != 0.0) || !std::isfinite(delta_omega))
    throw InvalidInput("delta_omega must be finite and nonzero");
  const auto n = static_cast<double>(n_side);
  PhenoParams pheno;
  std::vector<double> raw;
  double sum_sq = 0.0;
  for (long k = -static_cast<long>(n_side); k <= static_cast<long>(n_side); ++k) {
    const double x = static_cast<double>(k) / n;
    pheno.omega_tilde.push_back(omega0 + x * delta_omega);
    pheno.gamma.push_back(gamma);
    raw.push_back(std::exp(-x * x));
    sum_sq += raw.back() * raw.back();
  }
  pheno.validate();
  if (!normalize)
    for (double& a : raw) a /= sum_sq;
  return {std::move(pheno), InitialState::make_real(raw, normalize)};
}

}  // namespace friedrichs
