#pragma once

#include <utility>
#include <vector>

#include "csic/basis.hpp"
#include "csic/povm.hpp"
#include "csic/scheme.hpp"
#include "csic/superop.hpp"

namespace csic {

/// Self-adjoint matrices Q_i reconstructing the estimated part of the state
/// from outcome probabilities: sum_i <F_i, X> Q_i = X for X in A + C.
struct DualFrame {
  int dim = 0;
  std::vector<CMatrix> elements;
  Scheme scheme;
};

/// Canonical dual frame R_i = F^- P_i, the dual minimizing the averaged
/// reconstruction variance. Requires the frame superoperator's nonzero
/// eigenspace to cover A + C of the scheme.
inline DualFrame canonical_dual(const Povm& p, const HermitianBasis& basis,
                                const Scheme& scheme,
                                double rank_tol = kRankTol) {
  if (p.dim() != basis.dim() || p.dim() != scheme.dim()) {
    throw std::invalid_argument("canonical dual: dimension mismatch");
  }
  FrameSuperoperator f = frame_superoperator(p, basis);
  const int needed = 1 + scheme.unknown_size();
  if (f.rank(rank_tol) < needed) {
    throw std::domain_error(
        "canonical dual: underdetermined scheme (frame superoperator rank "
        "below 1 + |unknown|)");
  }
  FrameSuperoperator pinv = f.pseudo_inverse(rank_tol);
  std::vector<CMatrix> duals;
  duals.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) {
    duals.push_back(require_hermitian(pinv.apply(p.normalized(i), basis)));
  }
  return DualFrame{p.dim(), std::move(duals), scheme};
}

/// Mean squared Hilbert-Schmidt estimation error, averaged over unitary
/// orbits, for a single measurement:
/// T = (1/n) sum_i lambda_i <Q_i, Q_i> - Tr(rho_*)^2 with rho_* = rho - B rho.
/// Nonnegative for the canonical dual.
inline double theoretical_risk(const Povm& p, const DualFrame& dual,
                               const CMatrix& rho, const Scheme& scheme,
                               const HermitianBasis& basis) {
  if (p.dim() != basis.dim() || p.dim() != scheme.dim() ||
      dual.dim != p.dim() || rho.rows() != p.dim() || rho.cols() != p.dim()) {
    throw std::invalid_argument("theoretical risk: dimension mismatch");
  }
  if (static_cast<int>(dual.elements.size()) != p.size()) {
    throw std::invalid_argument("theoretical risk: dual size mismatch");
  }
  double quad = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    quad += p.weight(i) * hs_inner(dual.elements[i], dual.elements[i]).real();
  }
  CMatrix starred = scheme.starred(rho, basis);
  double purity = hs_inner(starred, starred).real();
  return quad / double(p.dim()) - purity;
}

}  // namespace csic
