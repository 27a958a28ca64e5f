#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "csic/basis.hpp"
#include "csic/linalg.hpp"

namespace csic {

/// The three orthogonal subspaces of matrix space: A = multiples of the
/// identity, B = the known traceless part, C = the unknown traceless part.
enum class Part { A, B, C };

/// Partition of the traceless basis indices {1..n^2-1} into a known part B
/// and an unknown part C. Index 0 (the identity direction) belongs to
/// neither.
class Scheme {
 public:
  Scheme(int n, std::vector<int> known_indices) : dim_(n) {
    if (n < 2) {
      throw std::invalid_argument("scheme dimension must be at least 2");
    }
    const int total = n * n;
    mask_.assign(total, 0);
    for (int idx : known_indices) {
      if (idx < 1 || idx >= total) {
        throw std::invalid_argument(
            "scheme: known index outside {1..n^2-1}");
      }
      if (mask_[idx]) {
        throw std::invalid_argument("scheme: duplicate known index");
      }
      mask_[idx] = 1;
    }
    known_ = std::move(known_indices);
    std::sort(known_.begin(), known_.end());
    unknown_.reserve(total - 1 - known_.size());
    for (int i = 1; i < total; ++i) {
      if (!mask_[i]) unknown_.push_back(i);
    }
  }

  /// Full tomography: nothing known, B empty.
  static Scheme full(int n) { return Scheme(n, {}); }

  /// Diagonal entries of the state known; estimate the off-diagonal part.
  static Scheme known_diagonal(int n) {
    std::vector<int> known(n - 1);
    for (int i = 1; i < n; ++i) known[i - 1] = i;
    return Scheme(n, std::move(known));
  }

  /// Off-diagonal part known; estimate the diagonal entries.
  static Scheme known_offdiagonal(int n) {
    std::vector<int> known;
    known.reserve(n * n - n);
    for (int i = n; i < n * n; ++i) known.push_back(i);
    return Scheme(n, std::move(known));
  }

  int dim() const { return dim_; }
  const std::vector<int>& known() const { return known_; }
  const std::vector<int>& unknown() const { return unknown_; }
  int known_size() const { return static_cast<int>(known_.size()); }
  int unknown_size() const { return static_cast<int>(unknown_.size()); }

  /// Number of POVM elements needed for a unique linear reconstruction:
  /// N = n^2 - m.
  int povm_size() const { return dim_ * dim_ - known_size(); }

  bool is_known(int index) const {
    return index >= 0 && index < static_cast<int>(mask_.size()) &&
           mask_[index] != 0;
  }

  /// Orthogonal projection of X onto the A, B or C subspace. The three
  /// results sum to X.
  CMatrix project(const CMatrix& x, Part part,
                  const HermitianBasis& basis) const {
    if (basis.dim() != dim_) {
      throw std::invalid_argument("scheme/basis dimension mismatch");
    }
    BlochVector b = basis.decompose(x);
    for (int i = 0; i < b.theta.size(); ++i) {
      bool keep = false;
      switch (part) {
        case Part::A: keep = (i == 0); break;
        case Part::B: keep = is_known(i); break;
        case Part::C: keep = (i != 0) && !is_known(i); break;
      }
      if (!keep) b.theta(i) = 0.0;
    }
    return basis.reconstruct(b);
  }

  /// rho minus its known part, i.e. the A + C component being estimated.
  CMatrix starred(const CMatrix& rho, const HermitianBasis& basis) const {
    BlochVector b = basis.decompose(rho);
    for (int idx : known_) b.theta(idx) = 0.0;
    return basis.reconstruct(b);
  }

 private:
  int dim_;
  std::vector<int> known_;
  std::vector<int> unknown_;
  std::vector<char> mask_;
};

}  // namespace csic
