#pragma once

#include <algorithm>
#include <cmath>

#include "friedrichs/model.hpp"

namespace testing {

using friedrichs::cplx;

// lambda = 0.1, omega = (1, 1.06), rho = (1, 1.2)
inline friedrichs::ModelParams two_level(double lambda = 0.1) {
  return friedrichs::make_params({1.0, 1.06}, {1.0, 1.2}, lambda);
}

// lambda = 0.1, omega = rho = 1
inline friedrichs::ModelParams one_level(double lambda = 0.1) {
  return friedrichs::make_params({1.0}, {1.0}, lambda);
}

inline double max_abs_diff(const friedrichs::CMatrix& a, const std::vector<std::vector<cplx>>& b) {
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b[i][j]));
  return d;
}

// Least-squares slope of log y against log x.
template <class X, class Y>
double loglog_slope(const X& x, const Y& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
