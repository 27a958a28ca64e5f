#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace csic {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Tolerance used by certification predicates and input validation.
inline constexpr double kTol = 1e-9;

/// Relative cutoff below which superoperator eigenvalues count as zero.
inline constexpr double kRankTol = 1e-10;

/// Hilbert-Schmidt inner product Tr(x^dag y). Real when both arguments are
/// Hermitian.
inline Complex hs_inner(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch");
  }
  return (x.adjoint() * y).trace();
}

/// Hilbert-Schmidt (Frobenius) norm.
inline double hs_norm(const CMatrix& x) { return x.norm(); }

inline double hs_distance(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("hs_distance: shape mismatch");
  }
  return (x - y).norm();
}

/// Largest entrywise deviation of x from its own adjoint.
inline double hermiticity_defect(const CMatrix& x) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("hermiticity_defect: matrix is not square");
  }
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

/// Symmetrizes inputs whose Hermiticity defect is below tol; rejects anything
/// worse so roundoff gets absorbed without masking logic errors.
inline CMatrix require_hermitian(const CMatrix& x, double tol = kTol) {
  if (hermiticity_defect(x) > tol) {
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  }
  return (x + x.adjoint()) / 2.0;
}

}  // namespace csic
