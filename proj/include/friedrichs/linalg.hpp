#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace friedrichs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

/// Largest entry modulus; the error norm used throughout the library.
double max_abs(const CMatrix& m);
inline double max_abs(cplx z) { return std::abs(z); }

/// Adjugate by cofactors. N is small (a handful of levels), so the O(N^5)
/// cost is irrelevant and the result stays accurate at singular matrices,
/// where det * inverse does not.
CMatrix adjugate(const CMatrix& m);

/// Product of row 1-norms: an upper bound on |det m| (Hadamard), used to
/// scale determinant tolerances.
double hadamard_scale(const CMatrix& m);

/// Singular values in descending order.
std::vector<double> singular_values(const CMatrix& m);

}  // namespace friedrichs
