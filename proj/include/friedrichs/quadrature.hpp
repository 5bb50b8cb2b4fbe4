#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex scalar and
// complex matrix valued integrands.
//
// The integrand value type V only needs +, scaling by double and a max_abs()
// overload; both cplx and CMatrix qualify. Refinement always bisects the panel
// with the largest error estimate, so for a fixed integrand and fixed initial
// breakpoints the node sequence (and the result, bit for bit) is fixed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "friedrichs/linalg.hpp"

namespace friedrichs::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
};

template <class V>
struct Result {
  V value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
  std::size_t order;  // creation index; breaks ties deterministically
};

template <class V>
struct WorseFirst {
  bool operator()(const Panel<V>& lhs, const Panel<V>& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.order > rhs.order;
  }
};

template <class F>
auto gauss_kronrod_15(F& f, double a, double b) {
  using V = decltype(f(0.0));
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const V fc = f(center);
  V kronrod = kKronrodWeights[7] * fc;
  V gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 3; ++j) {
    const int idx = 2 * j + 1;
    const double dx = half * kKronrodNodes[idx];
    const V sum = f(center - dx) + f(center + dx);
    gauss += kGaussWeights[j] * sum;
    kronrod += kKronrodWeights[idx] * sum;
  }
  for (int j = 0; j < 4; ++j) {
    const int idx = 2 * j;
    const double dx = half * kKronrodNodes[idx];
    const V sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[idx] * sum;
  }
  const V diff = kronrod - gauss;
  const double err = max_abs(diff) * std::abs(half);
  return std::pair<V, double>{V(half * kronrod), err};
}

}  // namespace detail

/// Integrate f over [breakpoints.front(), breakpoints.back()], starting from
/// the panels delimited by the (sorted, distinct) breakpoints.
template <class F>
auto integrate(F&& f, std::span<const double> breakpoints, const Options& opt)
    -> Result<decltype(f(0.0))> {
  using V = decltype(f(0.0));
  using detail::Panel;
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");

  std::priority_queue<Panel<V>, std::vector<Panel<V>>, detail::WorseFirst<V>> heap;
  std::vector<Panel<V>> frozen;  // panels too narrow to bisect further
  std::size_t order = 0;
  Result<V> res;
  double total_err = 0.0;
  bool have_value = false;

  auto accumulate = [&](const V& v) {
    if (!have_value) {
      res.value = v;
      have_value = true;
    } else {
      res.value += v;
    }
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a)) throw std::invalid_argument("integrate: breakpoints must increase");
    auto [v, e] = detail::gauss_kronrod_15(f, a, b);
    res.evaluations += 15;
    accumulate(v);
    total_err += e;
    heap.push(Panel<V>{a, b, std::move(v), e, order++});
  }

  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * max_abs(res.value)); };

  auto resum = [&] {
    // Recompute totals from the panel list; incremental updates drift.
    std::vector<Panel<V>> all;
    all.reserve(heap.size() + frozen.size());
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
    have_value = false;
    total_err = 0.0;
    for (const auto& p : all) {
      accumulate(p.value);
      total_err += p.error;
    }
  };

  while (true) {
    if (total_err <= tolerance()) {
      resum();
      if (total_err <= tolerance()) {
        res.converged = true;
        break;
      }
    }
    if (heap.empty() || res.evaluations + 30 > opt.max_evaluations) {
      resum();
      res.converged = total_err <= tolerance();
      break;
    }
    Panel<V> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-15 * std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen.push_back(std::move(worst));
      continue;
    }
    auto [lv, le] = detail::gauss_kronrod_15(f, worst.a, mid);
    auto [rv, re] = detail::gauss_kronrod_15(f, mid, worst.b);
    res.evaluations += 30;
    res.value += lv;
    res.value += rv;
    res.value -= worst.value;
    total_err += le + re - worst.error;
    heap.push(Panel<V>{worst.a, mid, std::move(lv), le, order++});
    heap.push(Panel<V>{mid, worst.b, std::move(rv), re, order++});
  }
  res.error = total_err;
  return res;
}

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt) {
  const std::array<double, 2> pts{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(pts), opt);
}

/// Integrate f over [a, inf) through r = a + scale * x / (1 - x), x in [0, 1).
/// Gauss-Kronrod nodes never touch x = 1, so f is never evaluated at infinity.
template <class F>
auto integrate_to_infinity(F&& f, double a, double scale, const Options& opt) {
  auto mapped = [&f, a, scale](double x) {
    const double one_minus = 1.0 - x;
    const double r = a + scale * x / one_minus;
    const double jac = scale / (one_minus * one_minus);
    return decltype(f(0.0))(jac * f(r));
  };
  const std::array<double, 5> pts{0.0, 0.25, 0.5, 0.75, 1.0};
  return integrate(mapped, std::span<const double>(pts), opt);
}

}  // namespace friedrichs::quad
