#pragma once

#include <algorithm>
#include <utility>

#include "csic/basis.hpp"
#include "csic/linalg.hpp"

namespace csic {

/// Spectral decomposition of a frame superoperator: eigenvalues sorted
/// descending, eigenvector i in column i of `vectors` (orthonormal
/// coordinate vectors).
struct SuperopEigen {
  RVector values;
  RMatrix vectors;
};

/// A linear map on operator space stored in real basis coordinates. Hermitian
/// matrices form a real vector space, so the coordinate matrix of
/// X -> sum_i lambda_i <P_i, X> P_i is a real symmetric n^2 x n^2 matrix.
class FrameSuperoperator {
 public:
  FrameSuperoperator(int dim, RMatrix coords, double tol = kTol)
      : dim_(dim), mat_(std::move(coords)) {
    const int n2 = dim * dim;
    if (dim < 1 || mat_.rows() != n2 || mat_.cols() != n2) {
      throw std::invalid_argument("superoperator: coordinate matrix must be n^2 x n^2");
    }
    if ((mat_ - mat_.transpose()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("superoperator: coordinate matrix is not symmetric");
    }
    mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
  }

  int dim() const { return dim_; }
  const RMatrix& matrix() const { return mat_; }
  double trace() const { return mat_.trace(); }

  SuperopEigen eigen() const {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(mat_);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("superoperator: eigendecomposition failed");
    }
    const int n2 = static_cast<int>(mat_.rows());
    SuperopEigen out;
    out.values = RVector(n2);
    out.vectors = RMatrix(n2, n2);
    for (int i = 0; i < n2; ++i) {
      out.values(i) = solver.eigenvalues()(n2 - 1 - i);
      out.vectors.col(i) = solver.eigenvectors().col(n2 - 1 - i);
    }
    return out;
  }

  /// Moore-Penrose pseudo-inverse computed spectrally. Eigenvalues below
  /// rank_tol * nu_max are treated as exact zeros; the map must be positive
  /// semidefinite within kTol.
  FrameSuperoperator pseudo_inverse(double rank_tol = kRankTol) const {
    SuperopEigen es = eigen();
    const int n2 = static_cast<int>(es.values.size());
    const double top = es.values(0);
    if (es.values(n2 - 1) < -kTol * std::max(1.0, std::abs(top))) {
      throw std::domain_error("superoperator is not positive semidefinite");
    }
    const double cutoff = rank_tol * std::max(top, 0.0);
    RMatrix inv = RMatrix::Zero(n2, n2);
    for (int i = 0; i < n2; ++i) {
      if (es.values(i) > cutoff && es.values(i) > 0.0) {
        inv += (1.0 / es.values(i)) * es.vectors.col(i) *
               es.vectors.col(i).transpose();
      }
    }
    return FrameSuperoperator(dim_, std::move(inv));
  }

  /// Number of eigenvalues above rank_tol * nu_max.
  int rank(double rank_tol = kRankTol) const {
    SuperopEigen es = eigen();
    const double cutoff = rank_tol * std::max(es.values(0), 0.0);
    int r = 0;
    for (int i = 0; i < es.values.size(); ++i) {
      if (es.values(i) > cutoff && es.values(i) > 0.0) ++r;
    }
    return r;
  }

  RVector apply(const RVector& coords) const {
    if (coords.size() != mat_.rows()) {
      throw std::invalid_argument("superoperator: coordinate length mismatch");
    }
    return mat_ * coords;
  }

  CMatrix apply(const CMatrix& x, const HermitianBasis& basis) const {
    if (basis.dim() != dim_) {
      throw std::invalid_argument("superoperator/basis dimension mismatch");
    }
    return basis.reconstruct(BlochVector{mat_ * basis.decompose(x).theta});
  }

 private:
  int dim_;
  RMatrix mat_;
};

}  // namespace csic
