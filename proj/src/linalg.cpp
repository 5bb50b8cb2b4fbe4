#include "friedrichs/linalg.hpp"

#include <algorithm>

namespace friedrichs {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix adjugate(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  CMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  CMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Minor with row i and column j removed.
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * minor.fullPivLu().determinant();
    }
  }
  return adj;
}

double hadamard_scale(const CMatrix& m) {
  double scale = 1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) scale *= m.row(r).cwiseAbs().sum();
  return scale;
}

std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace friedrichs
