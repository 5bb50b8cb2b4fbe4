#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cut_integral.hpp"
#include "friedrichs/errors.hpp"
#include "friedrichs/evolution.hpp"
#include "oracles/oracle_values.hpp"
#include "test_support.hpp"

using namespace friedrichs;
using testing::one_level;
using testing::two_level;

TEST_CASE("initial states") {
  const auto raw = InitialState::make_real({0.5, 0.2}, false);
  CHECK_FALSE(raw.normalized);
  CHECK(raw.norm_sq() == doctest::Approx(0.29));
  const auto unit = InitialState::make_real({0.5, 0.2}, true);
  CHECK(unit.normalized);
  CHECK(std::abs(unit.norm_sq() - 1.0) < 1e-12);
  CHECK_THROWS_AS(InitialState::make_real({0.0, 0.0}, true), InvalidInput);
  CHECK_THROWS_AS(InitialState::make({}, false), InvalidInput);
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(0.0, 3000.0, 2000);
  CHECK(g.size() == 2000);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 3000.0);
}

TEST_CASE("amplitude matrix") {
  const auto p = two_level();
  SUBCASE("completeness at t = 0") {
    CHECK(max_abs(amplitude_matrix_exact(p, 0.0, 1e-8) - CMatrix::Identity(2, 2)) < 1e-8);
  }
  SUBCASE("free evolution") {
    const auto free = make_params({1.0, 1.06}, {1.0, 1.2}, 0.0);
    const CMatrix a = amplitude_matrix_exact(free, 7.0, 1e-8);
    CHECK(std::abs(a(1, 1) - std::exp(-kI * 7.42)) < 1e-14);
    CHECK(a(0, 1) == cplx{0.0, 0.0});
  }
  SUBCASE("high-precision reference values") {
    CHECK(testing::max_abs_diff(amplitude_matrix_exact(p, 10.0, 1e-10), oracle::two_level_amplitude_t10) < 1e-9);
    CHECK(testing::max_abs_diff(amplitude_matrix_exact(p, 100.0, 1e-10), oracle::two_level_amplitude_t100) < 1e-9);
  }
  SUBCASE("self-convergence at t = 500") {
    const CMatrix coarse = amplitude_matrix_exact(p, 500.0, 1e-8);
    const CMatrix fine = amplitude_matrix_exact(p, 500.0, 1e-11);
    CHECK(max_abs(coarse - fine) < 1e-8);
    CHECK(max_abs(fine - fine.transpose()) < 1e-8);
  }
  SUBCASE("pole sum plus steepest-descent background") {
    const auto poles = find_resonances(p);
    for (double t : {1.0, 50.0, 400.0}) {
      const CMatrix split = pole_sum(poles, t) + background_contour(p, t, EvolutionOptions{1e-10});
      CHECK(max_abs(split - amplitude_matrix_exact(p, t, 1e-10)) < 1e-9);
    }
    CHECK_THROWS_AS(background_contour(p, 0.0, EvolutionOptions{}), InvalidInput);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(amplitude_matrix_exact(p, -1.0, 1e-8), InvalidInput);
    CHECK_THROWS_AS(amplitude_matrix_exact(p, 500.0, EvolutionOptions{1e-8, 1000}), ConvergenceError);
  }
}

TEST_CASE("spectral representation reproduces G off the cut") {
  // (1/2 pi i) int dw' (G(w'+i0) - G(w'-i0)) / (w' - z) = G(z) on the physical sheet.
  const auto p = two_level();
  for (cplx z : {cplx{1.5, -0.5}, cplx{0.8, 0.3}, cplx{-0.5, 0.1}}) {
    const auto r = detail::integrate_discontinuity(
        p, [z](cplx s) { return 1.0 / (s * s - z); }, 0.0, {}, 1e-11, 1'000'000);
    REQUIRE(r.converged);
    CHECK(max_abs(r.value - resolvent_matrix(p, SheetPoint::physical(z).s)) < 1e-10);
  }
}

TEST_CASE("g kernel") {
  const auto p = two_level();
  SUBCASE("vanishes at t = 0") {
    CHECK(max_abs(g_kernel(p, 1.2, 0.0, 1e-8)) == 0.0);
  }
  SUBCASE("free theory closed form") {
    const auto free = make_params({1.0, 1.06}, {1.0, 1.2}, 0.0);
    const double w = 1.3;
    const double t = 4.0;
    const CMatrix g = g_kernel(free, w, t, 1e-8);
    const cplx expect = (std::exp(-kI * t) - std::exp(-kI * (w * t))) / (1.0 - w);
    CHECK(std::abs(g(0, 0) - expect) < 1e-14);
    const CMatrix at_level = g_kernel(free, 1.0, t, 1e-8);
    CHECK(std::abs(at_level(0, 0) - (-kI * t * std::exp(-kI * t))) < 1e-14);
  }
  SUBCASE("Ag relation (i d/dt - w) g = A") {
    const double h = 1e-4;
    for (const auto& [w, t] : std::vector<std::pair<double, double>>{{0.5, 10.0}, {1.0, 50.0}, {2.0, 3.0}}) {
      const CMatrix dg = (g_kernel(p, w, t + h, 1e-11) - g_kernel(p, w, t - h, 1e-11)) / (2.0 * h);
      const CMatrix lhs = kI * dg - w * g_kernel(p, w, t, 1e-11);
      CHECK(max_abs(lhs - amplitude_matrix_exact(p, t, 1e-11)) < 1e-5);
    }
  }
  SUBCASE("rejects points off the cut") {
    CHECK_THROWS_AS(g_kernel(p, -1.0, 1.0, 1e-8), InvalidInput);
  }
}

TEST_CASE("survival curves") {
  const auto p = two_level();
  const auto state = InitialState::make_real({1.0, 1.0}, true);
  const auto times = uniform_grid(0.0, 600.0, 61);
  const auto c = survival(p, state, times, 1e-8);
  CHECK(std::abs(c.probability[0] - 1.0) < 1e-8);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(c.probability[i] - std::norm(c.amplitude[i])) < 1e-14);
    CHECK(c.probability[i] <= 1.0 + 2e-8);
    CHECK(std::abs(c.amplitude[i] - c.pole_part[i] - c.background[i]) < 1e-15);
  }
  CHECK_THROWS_AS(survival(p, InitialState::make_real({1.0}, true), times, 1e-8), InvalidInput);
}

TEST_CASE("one-level reduction decays exponentially with a small background") {
  const auto p = one_level();
  const auto pole = find_resonances(p).front();
  const double gamma = pole.gamma;
  const auto times = uniform_grid(0.1 / gamma, 5.0 / gamma, 50);
  const auto c = survival(p, InitialState::make_real({1.0}, true), times, 1e-9);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(c.background[i]) / std::abs(c.pole_part[i]) < p.lambda * p.lambda);
    if (i > 0) CHECK(c.probability[i] < c.probability[i - 1]);
  }
  // Log-linear slope of p recovers 2 gamma.
  const double slope = std::log(c.probability.back() / c.probability.front()) / (times.back() - times.front());
  CHECK(-slope == doctest::Approx(2.0 * gamma).epsilon(1e-3));
}

TEST_CASE("pole part of a = (1, 0) has no O(lambda^2) oscillation") {
  // The beat between the two poles enters |pole_part| through r^2_11, which is
  // O(lambda^4 / (w_1 - w_2)^2); halving lambda reduces it sixteenfold.
  auto ripple = [](double lam) {
    const auto p = two_level(lam);
    const auto poles = find_resonances(p);
    const double g1 = poles[0].gamma;
    const auto times = uniform_grid(0.1 / g1, 1.0 / g1, 400);
    const auto state = InitialState::make_real({1.0, 0.0}, true);
    double worst = 0.0;
    for (double t : times) {
      const cplx pole = contract(state, pole_sum(poles, t));
      const double smooth = std::abs(poles[0].residues(0, 0)) * std::exp(-g1 * t);
      worst = std::max(worst, std::abs(std::abs(pole) - smooth) / smooth);
    }
    return worst;
  };
  const double r1 = ripple(0.1);
  const double r2 = ripple(0.05);
  CHECK(r1 < std::pow(0.1, 4) / (0.06 * 0.06));
  CHECK(r1 / r2 > 10.0);
  CHECK(r1 / r2 < 22.0);
}

TEST_CASE("Zeno region: 1 - p grows like t^2") {
  const auto p = two_level();
  const auto state = InitialState::make_real({1.0, 0.0}, true);
  std::vector<double> times;
  for (int i = 0; i <= 8; ++i) times.push_back(1e-4 * std::pow(10.0, 2.0 * i / 8.0));
  const auto c = survival(p, state, times, 1e-14);
  std::vector<double> loss;
  for (double pr : c.probability) loss.push_back(1.0 - pr);
  CHECK(testing::loglog_slope(times, loss) == doctest::Approx(2.0).epsilon(0.025));
}
