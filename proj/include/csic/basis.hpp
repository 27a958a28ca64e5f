#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "csic/linalg.hpp"

namespace csic {

/// Real coordinates theta_i of a Hermitian matrix in an orthonormal Hermitian
/// basis. For a density matrix theta(0) = 1/sqrt(n) and the squared norm is
/// Tr rho^2 <= 1.
struct BlochVector {
  RVector theta;

  double squared_norm() const { return theta.squaredNorm(); }
};

/// Orthonormal basis sigma_0..sigma_{n^2-1} of the real vector space of n x n
/// Hermitian matrices, with sigma_0 = I/sqrt(n).
class HermitianBasis {
 public:
  /// Generalized Gell-Mann basis in canonical order: I/sqrt(n) first, the
  /// n-1 traceless diagonal elements next, then one symmetric and one
  /// antisymmetric element per index pair (j,k), j < k, pairs row-major.
  /// Indices 1..n-1 therefore span the traceless diagonal subspace.
  static HermitianBasis gell_mann(int n) {
    if (n < 2) {
      throw std::invalid_argument("basis dimension must be at least 2");
    }
    std::vector<CMatrix> e;
    e.reserve(static_cast<size_t>(n) * n);
    e.push_back(CMatrix::Identity(n, n) / std::sqrt(double(n)));
    for (int l = 1; l < n; ++l) {
      CMatrix d = CMatrix::Zero(n, n);
      for (int j = 0; j < l; ++j) d(j, j) = 1.0;
      d(l, l) = -double(l);
      e.push_back(d / std::sqrt(double(l) * (l + 1)));
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        CMatrix x = CMatrix::Zero(n, n);
        x(j, k) = s;
        x(k, j) = s;
        e.push_back(std::move(x));
        CMatrix y = CMatrix::Zero(n, n);
        y(j, k) = Complex(0.0, -s);
        y(k, j) = Complex(0.0, s);
        e.push_back(std::move(y));
      }
    }
    return HermitianBasis(n, std::move(e));
  }

  /// Validating factory for externally supplied bases: every element must be
  /// Hermitian, the Gram matrix the identity, and element 0 equal to
  /// I/sqrt(n), all within tol.
  static HermitianBasis from_elements(int n, std::vector<CMatrix> elements,
                                      double tol = kTol) {
    if (n < 2) {
      throw std::invalid_argument("basis dimension must be at least 2");
    }
    if (elements.size() != static_cast<size_t>(n) * n) {
      throw std::invalid_argument("basis must have n^2 elements");
    }
    for (auto& el : elements) {
      if (el.rows() != n || el.cols() != n) {
        throw std::invalid_argument("basis element has wrong shape");
      }
      el = require_hermitian(el, tol);
    }
    CMatrix scaled_identity = CMatrix::Identity(n, n) / std::sqrt(double(n));
    if (hs_distance(elements[0], scaled_identity) > tol) {
      throw std::invalid_argument("basis element 0 must be I/sqrt(n)");
    }
    for (size_t i = 0; i < elements.size(); ++i) {
      for (size_t j = i; j < elements.size(); ++j) {
        double expected = i == j ? 1.0 : 0.0;
        if (std::abs(hs_inner(elements[i], elements[j]).real() - expected) >
            tol) {
          throw std::invalid_argument("basis is not orthonormal");
        }
      }
    }
    return HermitianBasis(n, std::move(elements));
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const CMatrix& operator[](int i) const { return elements_[i]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  /// theta_i = <sigma_i, X>. The input is symmetrized within tol and
  /// rejected beyond it.
  BlochVector decompose(const CMatrix& x, double tol = kTol) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
      throw std::invalid_argument("decompose: dimension mismatch");
    }
    CMatrix h = require_hermitian(x, tol);
    RVector theta(size());
    for (int i = 0; i < size(); ++i) {
      theta(i) = hs_inner(elements_[i], h).real();
    }
    return BlochVector{std::move(theta)};
  }

  CMatrix reconstruct(const BlochVector& b) const {
    if (b.theta.size() != size()) {
      throw std::invalid_argument("reconstruct: coefficient count mismatch");
    }
    CMatrix x = CMatrix::Zero(dim_, dim_);
    for (int i = 0; i < size(); ++i) {
      x += b.theta(i) * elements_[i];
    }
    return x;
  }

 private:
  HermitianBasis(int n, std::vector<CMatrix> elements)
      : dim_(n), elements_(std::move(elements)) {}

  int dim_;
  std::vector<CMatrix> elements_;
};

}  // namespace csic
