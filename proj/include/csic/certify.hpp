#pragma once

#include <algorithm>
#include <cmath>

#include "csic/basis.hpp"
#include "csic/povm.hpp"
#include "csic/scheme.hpp"

namespace csic {

/// Deviations of a POVM from the optimality conditions for a given scheme:
/// sum P_i = (N/n) I, equal pairwise overlaps (N-n)/(n(N-1)), orthogonality
/// to the known subspace, equal weights n/N, and rank-1 normalized elements.
struct CsicCertificate {
  int dim = 0;            // n
  int size = 0;           // N actually present
  int expected_size = 0;  // n^2 - m demanded by the scheme
  bool parameter_count_ok = false;
  double overlap_target = 0.0;
  double sum_deviation = 0.0;
  double overlap_deviation = 0.0;
  double orthogonality_deviation = 0.0;
  double weight_deviation = 0.0;
  double rank1_deviation = 0.0;
  double tolerance = kTol;
  bool passed = false;

  double max_deviation() const {
    return std::max({sum_deviation, overlap_deviation, orthogonality_deviation,
                     weight_deviation, rank1_deviation});
  }
};

/// All deviations are computed even after the first failure; the verdict
/// requires the parameter count N = n^2 - m and every deviation below tol.
inline CsicCertificate certify_povm(const Povm& p, const Scheme& scheme,
                                    const HermitianBasis& basis,
                                    double tol = kTol) {
  if (p.dim() != scheme.dim() || p.dim() != basis.dim()) {
    throw std::invalid_argument("certify: dimension mismatch");
  }
  const int n = p.dim();
  const int N = p.size();
  CsicCertificate cert;
  cert.dim = n;
  cert.size = N;
  cert.expected_size = scheme.povm_size();
  cert.parameter_count_ok = (N == cert.expected_size);
  cert.tolerance = tol;
  cert.overlap_target =
      N > 1 ? double(N - n) / (double(n) * double(N - 1)) : 0.0;

  CMatrix sum = CMatrix::Zero(n, n);
  for (int i = 0; i < N; ++i) sum += p.normalized(i);
  cert.sum_deviation =
      hs_distance(sum, (double(N) / double(n)) * CMatrix::Identity(n, n));

  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      double overlap = hs_inner(p.normalized(i), p.normalized(j)).real();
      cert.overlap_deviation = std::max(
          cert.overlap_deviation, std::abs(overlap - cert.overlap_target));
    }
  }

  for (int i = 0; i < N; ++i) {
    for (int k : scheme.known()) {
      double c = hs_inner(basis[k], p.normalized(i)).real();
      cert.orthogonality_deviation =
          std::max(cert.orthogonality_deviation, std::abs(c));
    }
    cert.weight_deviation = std::max(
        cert.weight_deviation, std::abs(p.weight(i) - double(n) / double(N)));
    double self_overlap = hs_inner(p.normalized(i), p.normalized(i)).real();
    cert.rank1_deviation =
        std::max(cert.rank1_deviation, std::abs(self_overlap - 1.0));
  }

  cert.passed = cert.parameter_count_ok && cert.max_deviation() < tol;
  return cert;
}

}  // namespace csic
