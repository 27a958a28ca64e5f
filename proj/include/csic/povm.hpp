#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "csic/basis.hpp"
#include "csic/diffset.hpp"
#include "csic/linalg.hpp"
#include "csic/superop.hpp"

namespace csic {

/// A finite set of positive matrices F_i summing to the identity, with
/// weights lambda_i = Tr F_i and normalized elements P_i = F_i / lambda_i.
class Povm {
 public:
  Povm(int dim, std::vector<CMatrix> elements, double tol = kTol)
      : dim_(dim), elements_(std::move(elements)) {
    if (dim_ < 1) {
      throw std::invalid_argument("povm: dimension must be positive");
    }
    if (elements_.empty()) {
      throw std::invalid_argument("povm: needs at least one element");
    }
    CMatrix sum = CMatrix::Zero(dim_, dim_);
    weights_.reserve(elements_.size());
    normalized_.reserve(elements_.size());
    for (auto& f : elements_) {
      if (f.rows() != dim_ || f.cols() != dim_) {
        throw std::invalid_argument("povm: element has wrong shape");
      }
      f = require_hermitian(f, tol);
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(f, Eigen::EigenvaluesOnly);
      if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("povm: element is not positive semidefinite");
      }
      sum += f;
      double w = f.trace().real();
      if (w <= tol) {
        throw std::invalid_argument("povm: element has vanishing weight");
      }
      weights_.push_back(w);
      normalized_.push_back(f / w);
    }
    if (hs_distance(sum, CMatrix::Identity(dim_, dim_)) > tol) {
      throw std::invalid_argument("povm: elements do not sum to the identity");
    }
  }

  /// Conditional SIC-POVM for the known-diagonal scheme from a planar
  /// difference set: fiducial phi = sum_j e_j / sqrt(n), shift unitary
  /// U = Diag(q^{alpha_j}) with q = exp(2 pi i / N), elements
  /// F_k = (n/N) |U^k phi><U^k phi|.
  static Povm from_difference_set(const DifferenceSet& d, int n) {
    if (d.size() != n) {
      throw std::invalid_argument("povm construction: difference set size must equal the dimension");
    }
    if (d.multiplicity != 1) {
      throw std::invalid_argument("povm construction: multiplicity must be 1");
    }
    if (!certify_difference_set(d).passed) {
      throw std::invalid_argument("povm construction: difference set fails certification");
    }
    const std::int64_t N = d.modulus;
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
    std::vector<CMatrix> elements;
    elements.reserve(N);
    for (std::int64_t k = 0; k < N; ++k) {
      CVector v(n);
      for (int j = 0; j < n; ++j) {
        std::int64_t phase = (k * d.residues[j]) % N;
        v(j) = std::polar(inv_sqrt_n, 2.0 * std::numbers::pi * double(phase) / double(N));
      }
      elements.push_back((double(n) / double(N)) * (v * v.adjoint()));
    }
    return Povm(n, std::move(elements));
  }

  /// The diagonal matrix units |e_i><e_i|; optimal when only the diagonal of
  /// the state is unknown.
  static Povm diagonal(int n) {
    if (n < 2) {
      throw std::invalid_argument("povm: dimension must be at least 2");
    }
    std::vector<CMatrix> elements;
    elements.reserve(n);
    for (int i = 0; i < n; ++i) {
      CMatrix f = CMatrix::Zero(n, n);
      f(i, i) = 1.0;
      elements.push_back(std::move(f));
    }
    return Povm(n, std::move(elements));
  }

  /// The qubit SIC-POVM built on the four tetrahedral Bloch vectors
  /// (+-1, +-1, +-1)/sqrt(3) with an even number of minus signs removed.
  static Povm tetrahedron() {
    const double r = 1.0 / std::sqrt(3.0);
    const double dirs[4][3] = {{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};
    std::vector<CMatrix> elements;
    elements.reserve(4);
    for (const auto& v : dirs) {
      CMatrix p(2, 2);
      p(0, 0) = Complex(1.0 + v[2], 0.0);
      p(0, 1) = Complex(v[0], -v[1]);
      p(1, 0) = Complex(v[0], v[1]);
      p(1, 1) = Complex(1.0 - v[2], 0.0);
      elements.push_back(p / 4.0);  // F_i = P_i / 2
    }
    return Povm(2, std::move(elements));
  }

  /// Rank-1 equal-weight POVM F_i = (n/N) |v_i><v_i| from unit fiducial
  /// vectors. tol bounds the allowed completeness defect, which is useful for
  /// certifying near-optimal numerical frames.
  static Povm from_fiducials(int n, const std::vector<CVector>& vectors,
                             double tol = kTol) {
    if (vectors.empty()) {
      throw std::invalid_argument("povm: needs at least one fiducial");
    }
    const double scale = double(n) / double(vectors.size());
    std::vector<CMatrix> elements;
    elements.reserve(vectors.size());
    for (const CVector& v : vectors) {
      if (v.size() != n) {
        throw std::invalid_argument("povm: fiducial has wrong dimension");
      }
      double norm = v.norm();
      if (norm <= 0.0) {
        throw std::invalid_argument("povm: fiducial must be nonzero");
      }
      CVector u = v / norm;
      elements.push_back(scale * (u * u.adjoint()));
    }
    return Povm(n, std::move(elements), tol);
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const CMatrix& element(int i) const { return elements_[i]; }
  const std::vector<CMatrix>& elements() const { return elements_; }
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const CMatrix& normalized(int i) const { return normalized_[i]; }

 private:
  int dim_;
  std::vector<CMatrix> elements_;
  std::vector<double> weights_;
  std::vector<CMatrix> normalized_;
};

/// Coordinate matrix of X -> sum_i lambda_i <P_i, X> P_i. It always fixes
/// I/sqrt(n) (eigenvalue 1, never exceeded) and its trace is at most n.
inline FrameSuperoperator frame_superoperator(const Povm& p,
                                              const HermitianBasis& basis) {
  if (basis.dim() != p.dim()) {
    throw std::invalid_argument("frame superoperator: dimension mismatch");
  }
  const int n2 = basis.size();
  RMatrix coords = RMatrix::Zero(n2, n2);
  for (int i = 0; i < p.size(); ++i) {
    RVector x = basis.decompose(p.normalized(i)).theta;
    coords.noalias() += p.weight(i) * x * x.transpose();
  }
  return FrameSuperoperator(p.dim(), std::move(coords));
}

}  // namespace csic
