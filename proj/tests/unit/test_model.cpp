#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "friedrichs/errors.hpp"
#include "friedrichs/evolution.hpp"
#include "friedrichs/model.hpp"
#include "test_support.hpp"

using namespace friedrichs;
using testing::one_level;
using testing::two_level;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_params({}, {}, 0.1), InvalidInput);
  CHECK_THROWS_AS(make_params({1.0}, {1.0, 2.0}, 0.1), InvalidInput);
  CHECK_THROWS_AS(make_params({-1.0}, {1.0}, 0.1), InvalidInput);
  CHECK_THROWS_AS(make_params({1.0}, {0.0}, 0.1), InvalidInput);
  CHECK_THROWS_AS(make_params({1.0, 1.0}, {1.0, 1.0}, 0.1), InvalidInput);
  CHECK_THROWS_AS(make_params({1.0}, {1.0}, -0.1), InvalidInput);
  CHECK_NOTHROW(make_params({1.0}, {1.0}, 0.0));
}

TEST_CASE("sheet tags follow Im s") {
  CHECK(SheetPoint{cplx{1.0, 0.5}}.sheet() == Sheet::physical);
  CHECK(SheetPoint{cplx{1.0, -0.5}}.sheet() == Sheet::second);
  CHECK(SheetPoint::upper_rim(4.0).s == cplx{2.0, 0.0});
  CHECK(SheetPoint::lower_rim(4.0).s == cplx{-2.0, 0.0});
  CHECK(SheetPoint::second_sheet(cplx{1.0, -0.1}).s.imag() < 0.0);
  CHECK(SheetPoint::second_sheet(cplx{1.0, 0.1}).s.imag() < 0.0);
  CHECK(SheetPoint::physical(cplx{1.0, -0.1}).s.imag() > 0.0);
}

TEST_CASE("formfactor values") {
  const auto p = one_level();
  CHECK(std::abs(eval_formfactor(p, 0, SheetPoint{cplx{0.0, 0.0}})) == 0.0);
  CHECK(std::abs(eval_formfactor(p, 0, SheetPoint::upper_rim(1.0)) - 0.5) < 1e-15);
  CHECK(std::abs(eval_formfactor(p, 0, SheetPoint::upper_rim(4.0)) - std::sqrt(2.0) / 5.0) < 1e-15);
  CHECK_THROWS_AS(eval_formfactor(p, 0, SheetPoint{cplx{0.0, 1.0}}), SingularPointError);
  CHECK_THROWS_AS(eval_formfactor(p, 1, SheetPoint{cplx{1.0, 0.0}}), InvalidInput);
  // Products do not depend on the s^{1/2} branch.
  const auto q = two_level();
  const cplx s{0.7, -0.9};
  const cplx prod = eval_formfactor(q, 0, SheetPoint{s}) * eval_formfactor(q, 1, SheetPoint{s});
  CHECK(std::abs(prod - formfactor_product(q, 0, 1, s)) < 1e-15);
}

TEST_CASE("resolvent inverse closed form") {
  SUBCASE("free theory") {
    const auto p = make_params({1.0, 1.06}, {1.0, 1.2}, 0.0);
    const cplx s{1.3, -0.2};
    const auto r = eval_resolvent_inverse(p, SheetPoint{s});
    CHECK(std::abs(r.g_inv(0, 0) - (1.0 - s * s)) < 1e-15);
    CHECK(std::abs(r.g_inv(0, 1)) == 0.0);
  }
  SUBCASE("two-level entries") {
    const auto p = two_level();
    const cplx s{1.1, 0.3};
    const auto r = eval_resolvent_inverse(p, SheetPoint{s});
    const double c = kPi * 0.01;
    CHECK(std::abs(r.g_inv(0, 0) - (1.0 - s * s + c / (2.0 * (s + kI) * (s + kI)))) < 1e-15);
    CHECK(std::abs(r.g_inv(0, 1) - c / (2.2 * (s + kI) * (s + 1.2 * kI))) < 1e-15);
    CHECK(std::abs(r.g_inv(0, 1) - r.g_inv(1, 0)) == 0.0);
    CHECK(max_abs(r.g * r.g_inv - CMatrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(r.g - r.g.transpose()) < 1e-15);
  }
  SUBCASE("rejected points") {
    const auto p = two_level();
    CHECK_THROWS_AS(eval_resolvent_inverse(p, SheetPoint{cplx{0.0, 0.0}}), SingularPointError);
    CHECK_THROWS_AS(eval_resolvent_inverse(p, SheetPoint{cplx{0.0, -1.2}}), SingularPointError);
  }
  SUBCASE("three levels use the general inverse") {
    const auto p = make_params({1.0, 1.06, 1.15}, {1.0, 1.1, 0.9}, 0.2);
    const auto r = eval_resolvent_inverse(p, SheetPoint{cplx{1.05, -0.01}});
    CHECK(max_abs(r.g * r.g_inv - CMatrix::Identity(3, 3)) < 1e-12);
  }
}

// I_kl(w + i0) = PV int_0^inf h(w') / (w' - w) dw' + i pi h(w) with h = f_k f_l,
// computed with Boost's double-exponential rules. The principal value pairs
// w +- x on [0, 2w].
static cplx interaction_by_quadrature(const ModelParams& p, std::size_t k, std::size_t l, double w) {
  const double rk2 = p.rho[k] * p.rho[k];
  const double rl2 = p.rho[l] * p.rho[l];
  auto h = [&](double x) { return std::sqrt(x) / ((x + rk2) * (x + rl2)); };
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  const double paired = ts.integrate([&](double x) { return (h(w + x) - h(w - x)) / x; }, 0.0, w);
  const double tail = es.integrate([&](double x) { return h(2.0 * w + x) / (w + x); });
  return {paired + tail, kPi * h(w)};
}

TEST_CASE("closed form matches quadrature of the interaction integral at 20 cut points") {
  const auto p = two_level();
  double worst = 0.0;
  for (double w : uniform_grid(0.05, 6.0, 20)) {
    const cplx s{std::sqrt(w), 0.0};
    const CMatrix g_inv = resolvent_inverse_matrix(p, s);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) {
        const cplx direct = (k == l ? p.omega[k] - w : 0.0) -
                            p.lambda * p.lambda * interaction_by_quadrature(p, k, l, w);
        worst = std::max(worst, std::abs(direct - g_inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l))));
      }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("discontinuity identity") {
  CHECK(check_discontinuity_identity(make_params({1.0, 1.06}, {1.0, 1.2}, 0.0), 1.5) == 0.0);
  CHECK(check_discontinuity_identity(two_level(), 1.5) < 1e-12);
  CHECK(check_discontinuity_identity(one_level(0.05), 0.5) < 1e-12);
  for (double w : uniform_grid(0.1, 4.0, 20)) CHECK(check_discontinuity_identity(two_level(), w) < 1e-12);
  CHECK_THROWS_AS(check_discontinuity_identity(two_level(), -1.0), InvalidInput);
}

TEST_CASE("large-w asymptotics along the upper rim") {
  const auto p = two_level();
  std::vector<double> ws{1e2, 1e3, 1e4};
  std::vector<double> dev;
  for (double w : ws) {
    const CMatrix g = resolvent_matrix(p, cplx{std::sqrt(w), 0.0});
    CMatrix free = CMatrix::Zero(2, 2);
    for (int k = 0; k < 2; ++k) free(k, k) = 1.0 / (p.omega[static_cast<std::size_t>(k)] - w);
    dev.push_back(max_abs(g - free));
  }
  CHECK(-testing::loglog_slope(ws, dev) >= 1.4);
}

TEST_CASE("sum rule") {
  SUBCASE("one level") {
    const auto r = check_sum_rule(one_level(), 1e-8);
    CHECK(r.residual.maxCoeff() < 1e-6);
  }
  SUBCASE("two levels") {
    const auto r = check_sum_rule(two_level(), 1e-8);
    CHECK(r.residual.rows() == 2);
    CHECK(r.residual.maxCoeff() < 1e-6);
  }
  SUBCASE("lambda = 0 is degenerate") {
    CHECK_THROWS_AS(check_sum_rule(make_params({1.0}, {1.0}, 0.0), 1e-8), DegenerateInputError);
  }
  SUBCASE("unreachable tolerance is reported") {
    CHECK_THROWS_AS(check_sum_rule(two_level(), 1e-30), ConvergenceError);
  }
}
