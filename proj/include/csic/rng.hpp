#pragma once

#include <cstdint>
#include <random>

#include "csic/linalg.hpp"

namespace csic {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Engine for substream `index` of `seed`. The stream depends only on
/// (seed, index), so parallel consumers stay reproducible.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= index;
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b + 0x9e3779b97f4a7c15ULL));
}

/// Matrix of independent standard complex Gaussians.
inline CMatrix ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of the
/// diagonal of R absorbed into Q, which makes the distribution exactly
/// invariant under left and right unitary multiplication.
inline CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) {
    throw std::invalid_argument("haar_unitary: dimension must be positive");
  }
  CMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

inline CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  CMatrix g = ginibre(n, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Hilbert-Schmidt distributed mixed state G G^dag / Tr(G G^dag).
inline CMatrix random_density(int n, std::mt19937_64& rng) {
  CMatrix g = ginibre(n, rng);
  CMatrix w = g * g.adjoint();
  return w / w.trace().real();
}

/// U |e_0><e_0| U^dag with U Haar distributed.
inline CMatrix random_pure_density(int n, std::mt19937_64& rng) {
  CMatrix u = haar_unitary(n, rng);
  CVector psi = u.col(0);
  return psi * psi.adjoint();
}

/// Multinomial sample with `shots` total draws, via sequential binomial
/// conditioning.
inline std::vector<long long> multinomial_counts(const RVector& p,
                                                 long long shots,
                                                 std::mt19937_64& rng) {
  const int k = static_cast<int>(p.size());
  std::vector<long long> counts(k, 0);
  long long remaining = shots;
  double mass = 1.0;
  for (int i = 0; i + 1 < k; ++i) {
    if (remaining == 0) break;
    if (mass <= 0.0) break;
    double q = p(i) / mass;
    q = std::min(1.0, std::max(0.0, q));
    std::binomial_distribution<long long> binom(remaining, q);
    long long c = binom(rng);
    counts[i] = c;
    remaining -= c;
    mass -= p(i);
  }
  if (k > 0) counts[k - 1] += remaining;
  return counts;
}

}  // namespace csic
