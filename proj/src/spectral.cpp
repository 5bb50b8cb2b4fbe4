#include "friedrichs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "friedrichs/errors.hpp"
#include "friedrichs/parallel.hpp"

namespace friedrichs {

namespace {

// tr(adj(M) dM) = d det M.
cplx det_derivative(const CMatrix& adj, const CMatrix& dm) {
  return adj.cwiseProduct(dm.transpose()).sum();
}

cplx determinant(const CMatrix& m) {
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.partialPivLu().determinant();
}

// Row magnitudes of G^{-1} and of its w-derivative; sets the size of
// "zero" for both det G^{-1} and its derivative.
double det_scale(const ModelParams& params, cplx s) {
  const CMatrix m = resolvent_inverse_matrix(params, s);
  const CMatrix dm = resolvent_inverse_ds(params, s) / (2.0 * s);
  double scale = 1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    scale *= m.row(r).cwiseAbs().sum() + dm.row(r).cwiseAbs().sum();
  return scale;
}

struct NewtonOutcome {
  cplx s;
  bool converged = false;
  std::string reason;
};

// Newton on D(s) = det G^{-1}(s).
NewtonOutcome newton_det(const ModelParams& params, cplx s) {
  int tight = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const CMatrix m = resolvent_inverse_matrix(params, s);
    const cplx d = determinant(m);
    if (d == cplx{0.0, 0.0}) return {s, true, {}};
    const cplx dd = det_derivative(adjugate(m), resolvent_inverse_ds(params, s));
    if (dd == cplx{0.0, 0.0}) return {s, false, "vanishing derivative of det G^{-1}"};
    const cplx step = d / dd;
    s -= step;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      return {s, false, "iteration diverged"};
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(s))) {
      // One extra step after the quadratic phase sets in.
      if (++tight >= 2) {
        const cplx d_final = determinant(resolvent_inverse_matrix(params, s));
        if (std::abs(d_final) <= 1e-12 * det_scale(params, s)) return {s, true, {}};
        return {s, false, "step stalled before |det| reached tolerance"};
      }
    }
  }
  return {s, false, "no convergence after 100 iterations"};
}

}  // namespace

CMatrix compute_residue(const ModelParams& params, SheetPoint at) {
  const cplx s = at.s;
  const CMatrix m = resolvent_inverse_matrix(params, s);
  const CMatrix adj = adjugate(m);
  const cplx d_dw = det_derivative(adj, resolvent_inverse_ds(params, s)) / (2.0 * s);
  if (std::abs(d_dw) < 1e-10 * det_scale(params, s))
    throw SimplePoleError("d det G^{-1}/dw vanishes: the pole is not simple");
  return adj / d_dw;
}

CMatrix compute_residue(const ModelParams& params, cplx z) {
  return compute_residue(params, SheetPoint::second_sheet(z));
}

ResonancePole make_pole(const ModelParams& params, cplx s) {
  ResonancePole pole;
  pole.s = s;
  pole.z = s * s;
  pole.omega_tilde = pole.z.real();
  pole.gamma = -pole.z.imag();
  pole.residues = compute_residue(params, SheetPoint{s});
  return pole;
}

std::array<double, 9> two_level_polynomial(const ModelParams& params) {
  if (params.n_levels() != 2) throw InvalidInput("two-level polynomial needs N = 2");
  const double lam2 = params.lambda * params.lambda;
  auto factor = [&](std::size_t k) {
    const double w = params.omega[k];
    const double r = params.rho[k];
    // (w + x^2)(r^2 + 2 r x + x^2) - pi l^2 / (2 r)
    return std::array<double, 5>{w * r * r - kPi * lam2 / (2.0 * r), 2.0 * w * r, w + r * r,
                                 2.0 * r, 1.0};
  };
  const auto a = factor(0);
  const auto b = factor(1);
  std::array<double, 9> c{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) c[i + j] += a[i] * b[j];
  const double off = kPi * lam2 / (params.rho[0] + params.rho[1]);
  c[0] -= off * off;
  return c;
}

namespace {

// Factored evaluation avoids the cancellation of the expanded form.
std::pair<cplx, cplx> two_level_value(const ModelParams& params, cplx x) {
  const double lam2 = params.lambda * params.lambda;
  cplx val[2];
  cplx der[2];
  for (std::size_t k = 0; k < 2; ++k) {
    const double w = params.omega[k];
    const double r = params.rho[k];
    const cplx xr = x + r;
    val[k] = (w + x * x) * xr * xr - kPi * lam2 / (2.0 * r);
    der[k] = 2.0 * x * xr * xr + 2.0 * (w + x * x) * xr;
  }
  const double off = kPi * lam2 / (params.rho[0] + params.rho[1]);
  return {val[0] * val[1] - off * off, der[0] * val[1] + val[0] * der[1]};
}

cplx polish_root(const ModelParams& params, cplx x) {
  double best = std::abs(two_level_value(params, x).first);
  for (int i = 0; i < 8 && best > 0.0; ++i) {
    const auto [p, dp] = two_level_value(params, x);
    if (dp == cplx{0.0, 0.0}) break;
    const cplx next = x - p / dp;
    const double val = std::abs(two_level_value(params, next).first);
    if (!(val < best)) break;
    x = next;
    best = val;
  }
  return x;
}

}  // namespace

TwoLevelPoles find_poles_two_level(const ModelParams& params) {
  params.validate();
  TwoLevelPoles out;
  out.coefficients = two_level_polynomial(params);

  Eigen::Matrix<double, 8, 8> companion = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 1; i < 8; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 8; ++i) companion(i, 7) = -out.coefficients[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<Eigen::Matrix<double, 8, 8>> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("companion eigenvalue solver failed");

  std::vector<cplx> xs;
  for (int i = 0; i < 8; ++i) xs.push_back(polish_root(params, solver.eigenvalues()(i)));

  std::vector<bool> is_real(8);
  for (std::size_t i = 0; i < 8; ++i)
    is_real[i] = std::abs(xs[i].imag()) <= 1e-7 * (1.0 + std::abs(xs[i]));

  // Complex roots must come in conjugate pairs with an unambiguous partner.
  for (std::size_t i = 0; i < 8; ++i) {
    if (is_real[i]) continue;
    std::size_t matches = 0;
    for (std::size_t j = 0; j < 8; ++j) {
      if (j == i || is_real[j]) continue;
      const double scale = 1.0 + std::abs(xs[i]);
      if (std::abs(xs[j] - xs[i]) <= 1e-10 * scale)
        throw ClassificationError("near-degenerate complex roots; pairing is ambiguous");
      if (std::abs(xs[j] - std::conj(xs[i])) <= 1e-6 * scale) ++matches;
    }
    if (matches != 1) throw ClassificationError("complex root without a unique conjugate partner");
  }

  for (std::size_t i = 0; i < 8; ++i) {
    PolynomialRoot root;
    root.x = is_real[i] ? cplx{xs[i].real(), 0.0} : xs[i];
    root.s = kI * root.x;
    root.z = -(root.x * root.x);
    const double boundary = 1e-12 * (1.0 + std::abs(root.x));
    if (is_real[i]) {
      root.kind = root.x.real() > 0.0 ? RootKind::bound_state : RootKind::virtual_state;
    } else if (root.x.real() > boundary) {
      root.kind = RootKind::physical_sheet_pole;
    } else if (root.z.real() <= 0.0) {
      root.kind = RootKind::distant_pole;
    } else {
      root.kind = root.x.imag() < 0.0 ? RootKind::resonance : RootKind::conjugate_resonance;
    }
    out.roots.push_back(root);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });

  for (const auto& root : out.roots) {
    if (root.kind != RootKind::resonance) continue;
    cplx s = root.s;
    if (s.imag() > 0.0) s = cplx{s.real(), 0.0};  // rounding on the cut at lambda = 0
    out.resonances.push_back(make_pole(params, s));
  }
  return out;
}

NewtonPoles find_poles_newton(const ModelParams& params, std::span<const cplx> seeds) {
  params.validate();
  NewtonPoles out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const cplx seed = seeds[i];
    const auto result = newton_det(params, SheetPoint::second_sheet(seed).s);
    if (!result.converged) {
      out.failures.push_back({seed, result.reason});
      continue;
    }
    cplx s = result.s;
    const double tiny = 1e-12 * std::abs(s);
    if (s.imag() > tiny) {
      out.failures.push_back({seed, "converged onto the physical sheet"});
      continue;
    }
    if (s.real() <= 0.0) {
      out.failures.push_back({seed, "converged outside the resonance quadrant Re s > 0"});
      continue;
    }
    if (s.imag() > 0.0) s = cplx{s.real(), 0.0};
    bool duplicate = false;
    for (const auto& p : out.poles) {
      if (std::abs(p.z - s * s) < 1e-8) {
        std::ostringstream msg;
        msg << "seed " << seed << " converged to the already found root " << p.z;
        out.warnings.push_back(msg.str());
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    try {
      out.poles.push_back(make_pole(params, s));
    } catch (const SimplePoleError& e) {
      out.failures.push_back({seed, e.what()});
    }
  }
  return out;
}

std::vector<ResonancePole> find_resonances(const ModelParams& params) {
  params.validate();
  std::vector<cplx> seeds;
  const double lam2 = params.lambda * params.lambda;
  for (std::size_t k = 0; k < params.n_levels(); ++k) {
    const cplx upper{std::sqrt(params.omega[k]), 0.0};
    seeds.push_back(params.omega[k] - lam2 * interaction_integral(params, k, k, upper));
  }
  auto found = find_poles_newton(params, seeds);
  if (!found.failures.empty()) {
    std::ostringstream msg;
    msg << "resonance search failed:";
    for (const auto& f : found.failures) msg << " [seed " << f.seed << ": " << f.reason << "]";
    throw ConvergenceError(msg.str());
  }
  if (found.poles.size() != params.n_levels())
    throw ConvergenceError("resonance search merged distinct seeds into one root");
  return std::move(found.poles);
}

AnalyticityReport validate_analyticity(const ModelParams& params) {
  params.validate();
  AnalyticityReport report;
  const double lam2 = params.lambda * params.lambda;
  const std::size_t n = params.n_levels();

  double margin = 1.0;
  if (n == 2) {
    const double off = kPi * lam2 / (params.rho[0] + params.rho[1]);
    double product = 1.0;
    double free_product = 1.0;
    for (std::size_t i = 0; i < 2; ++i) {
      const double w = params.omega[i];
      const double r = params.rho[i];
      const double lhs = w * r * r;
      const double rhs = kPi * lam2 / (2.0 * r);
      report.conditions.push_back({"condition 1 (level " + std::to_string(i + 1) + ")", lhs, rhs, lhs > rhs});
      margin = std::min(margin, (lhs - rhs) / lhs);
      product *= lhs - rhs;
      free_product *= lhs;
    }
    report.conditions.push_back({"condition 2", product, off * off, product > off * off});
    margin = std::min(margin, (product - off * off) / free_product);
  }

  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max({radius, std::sqrt(params.omega[k]), params.rho[k]});
  radius *= 10.0;

  constexpr std::size_t kGrid = 200;
  const double r_min = 1e-4 * radius;
  std::vector<double> radii(kGrid);
  std::vector<double> angles(kGrid);
  for (std::size_t i = 0; i < kGrid; ++i) {
    radii[i] = r_min * std::pow(radius / r_min, static_cast<double>(i) / (kGrid - 1));
    angles[i] = kPi * (static_cast<double>(i) + 0.5) / kGrid;
  }
  std::vector<double> level(kGrid * kGrid);
  parallel_for(kGrid, [&](std::size_t i) {
    for (std::size_t j = 0; j < kGrid; ++j) {
      const cplx s = std::polar(radii[i], angles[j]);
      const CMatrix m = resolvent_inverse_matrix(params, s);
      level[i * kGrid + j] = std::abs(determinant(m)) / hadamard_scale(m);
    }
  });

  double grid_min = 1.0;
  for (std::size_t i = 1; i + 1 < kGrid; ++i) {
    for (std::size_t j = 1; j + 1 < kGrid; ++j) {
      const double v = level[i * kGrid + j];
      grid_min = std::min(grid_min, v);
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && level[(i + di) * kGrid + (j + dj)] <= v) {
            minimum = false;
            break;
          }
      if (!minimum) continue;
      const auto result = newton_det(params, std::polar(radii[i], angles[j]));
      if (!result.converged) continue;
      const cplx s = result.s;
      if (s.imag() > 1e-10 * std::abs(s) && std::abs(s) <= 1.5 * radius) {
        bool seen = false;
        for (cplx c : report.candidate_zeros) seen = seen || std::abs(c - s) < 1e-8;
        if (!seen) report.candidate_zeros.push_back(s);
      }
    }
  }
  if (n != 2) margin = grid_min;
  report.margin = margin;

  bool ok = report.candidate_zeros.empty();
  std::ostringstream summary;
  for (const auto& c : report.conditions) {
    if (!c.satisfied) {
      ok = false;
      summary << c.name << " violated (" << c.lhs << " <= " << c.rhs << "); ";
    }
  }
  for (cplx s : report.candidate_zeros) summary << "zero of det G^-1 on the physical sheet at s = " << s << "; ";
  report.pass = ok;
  if (ok) summary << "physical sheet free of zeros; margin " << margin;
  report.summary = summary.str();
  return report;
}

}  // namespace friedrichs
