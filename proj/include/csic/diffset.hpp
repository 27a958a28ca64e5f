#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace csic {

/// Residues D in Z_N whose pairwise differences a-b (a != b) cover every
/// nonzero residue exactly `multiplicity` times.
struct DifferenceSet {
  std::int64_t modulus = 0;             // N
  std::vector<std::int64_t> residues;   // sorted, distinct, in [0, N)
  std::int64_t multiplicity = 1;        // lambda

  int size() const { return static_cast<int>(residues.size()); }
};

/// Per-residue difference counts plus the verdict. counts[r] is the number of
/// ordered pairs with difference r; index 0 is unused.
struct DifferenceSetCertificate {
  bool passed = false;
  bool counting_ok = false;  // n(n-1) == lambda (N-1)
  std::int64_t modulus = 0;
  std::int64_t multiplicity = 1;
  std::vector<std::int64_t> counts;
};

namespace detail {

inline void validate_residues(const std::vector<std::int64_t>& residues,
                              std::int64_t modulus) {
  if (modulus < 2) {
    throw std::invalid_argument("difference set: modulus must be at least 2");
  }
  for (std::int64_t r : residues) {
    if (r < 0 || r >= modulus) {
      throw std::invalid_argument("difference set: residue out of range");
    }
  }
  std::vector<std::int64_t> sorted = residues;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("difference set: duplicate residues");
  }
}

}  // namespace detail

inline DifferenceSetCertificate certify_difference_set(
    const std::vector<std::int64_t>& residues, std::int64_t modulus,
    std::int64_t multiplicity = 1) {
  detail::validate_residues(residues, modulus);
  if (multiplicity < 1) {
    throw std::invalid_argument("difference set: multiplicity must be positive");
  }
  DifferenceSetCertificate cert;
  cert.modulus = modulus;
  cert.multiplicity = multiplicity;
  const std::int64_t n = static_cast<std::int64_t>(residues.size());
  cert.counting_ok = n * (n - 1) == multiplicity * (modulus - 1);
  cert.counts.assign(modulus, 0);
  for (std::int64_t a : residues) {
    for (std::int64_t b : residues) {
      if (a != b) cert.counts[((a - b) % modulus + modulus) % modulus]++;
    }
  }
  bool uniform = true;
  for (std::int64_t r = 1; r < modulus; ++r) {
    if (cert.counts[r] != multiplicity) {
      uniform = false;
      break;
    }
  }
  cert.passed = cert.counting_ok && uniform;
  return cert;
}

inline DifferenceSetCertificate certify_difference_set(const DifferenceSet& d) {
  return certify_difference_set(d.residues, d.modulus, d.multiplicity);
}

/// Exhaustive search for the lexicographically smallest planar (lambda = 1)
/// difference set containing {0, 1}. Every planar set has such a translate,
/// so absence here is absence outright. Returns nullopt when the counting
/// identity n(n-1) = N-1 fails or the search space is exhausted.
inline std::optional<DifferenceSet> search_difference_set(std::int64_t modulus,
                                                          int n) {
  if (modulus < 2 || n < 2) {
    throw std::invalid_argument("difference set search: need N >= 2 and n >= 2");
  }
  if (modulus > 500) {
    throw std::invalid_argument("difference set search: modulus above supported range (500)");
  }
  if (static_cast<std::int64_t>(n) * (n - 1) != modulus - 1) {
    return std::nullopt;
  }
  const std::int64_t N = modulus;
  std::vector<char> used(N, 0);
  used[1 % N] = 1;
  used[(N - 1) % N] = 1;
  std::vector<std::int64_t> cur{0, 1};
  std::vector<std::int64_t> found;

  // Depth-first in increasing order with difference-multiset pruning; the
  // first completed set is the lexicographic minimum.
  auto add = [&](std::int64_t x, std::vector<std::int64_t>& marks) -> bool {
    for (std::int64_t d : cur) {
      std::int64_t fwd = ((x - d) % N + N) % N;
      std::int64_t bwd = N - fwd;
      if (used[fwd] || used[bwd]) {
        for (std::int64_t m : marks) used[m] = 0;
        marks.clear();
        return false;
      }
      used[fwd] = used[bwd] = 1;
      marks.push_back(fwd);
      marks.push_back(bwd);
    }
    return true;
  };

  auto dfs = [&](auto&& self) -> bool {
    if (static_cast<int>(cur.size()) == n) {
      found = cur;
      return true;
    }
    const std::int64_t slots_left = n - static_cast<std::int64_t>(cur.size());
    for (std::int64_t x = cur.back() + 1; x <= N - slots_left; ++x) {
      std::vector<std::int64_t> marks;
      if (!add(x, marks)) continue;
      cur.push_back(x);
      if (self(self)) return true;
      cur.pop_back();
      for (std::int64_t m : marks) used[m] = 0;
    }
    return false;
  };

  if (!dfs(dfs)) return std::nullopt;
  return DifferenceSet{N, std::move(found), 1};
}

namespace gf {

/// Returns (p, k) with s = p^k, or nullopt when s is not a prime power.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t s) {
  if (s < 2) return std::nullopt;
  for (std::int64_t p = 2; p * p <= s; ++p) {
    if (s % p == 0) {
      int k = 0;
      std::int64_t t = s;
      while (t % p == 0) {
        t /= p;
        ++k;
      }
      if (t != 1) return std::nullopt;
      return std::make_pair(p, k);
    }
  }
  return std::make_pair(s, 1);  // s itself is prime
}

inline std::vector<std::int64_t> distinct_prime_factors(std::int64_t x) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

/// GF(p^m) as polynomials over F_p modulo a fixed monic polynomial of degree
/// m, chosen as the lexicographically smallest primitive one so that the
/// class of x generates the multiplicative group. Elements are coefficient
/// vectors of length m, lowest degree first.
class Field {
 public:
  using Elt = std::vector<std::int64_t>;

  Field(std::int64_t p, int m) : p_(p), m_(m) {
    order_ = 1;
    for (int i = 0; i < m; ++i) order_ *= p;
    group_factors_ = distinct_prime_factors(order_ - 1);
    std::int64_t codes = order_;
    for (std::int64_t code = 0; code < codes; ++code) {
      Elt f(m_);
      std::int64_t t = code;
      for (int i = 0; i < m_; ++i) {
        f[i] = t % p_;
        t /= p_;
      }
      if (primitive(f)) {
        poly_ = std::move(f);
        return;
      }
    }
    throw std::runtime_error("finite field: no primitive polynomial found");
  }

  std::int64_t characteristic() const { return p_; }
  int degree() const { return m_; }
  std::int64_t order() const { return order_; }
  const Elt& modulus_coeffs() const { return poly_; }

  Elt zero() const { return Elt(m_, 0); }
  Elt one() const {
    Elt e(m_, 0);
    e[0] = 1;
    return e;
  }
  Elt x() const {
    Elt e(m_, 0);
    if (m_ > 1) e[1] = 1;
    return e;
  }

  bool is_zero(const Elt& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
  }

  Elt add(const Elt& a, const Elt& b) const {
    Elt r(m_);
    for (int i = 0; i < m_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
  }

  Elt mul(const Elt& a, const Elt& b) const {
    std::vector<std::int64_t> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < m_; ++j) {
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
      }
    }
    // reduce by the monic modulus: x^m = -poly_
    for (int i = 2 * m_ - 2; i >= m_; --i) {
      std::int64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (int j = 0; j < m_; ++j) {
        prod[i - m_ + j] = ((prod[i - m_ + j] - c * poly_[j]) % p_ + p_) % p_;
      }
    }
    prod.resize(m_);
    return prod;
  }

  Elt pow(Elt base, std::int64_t e) const {
    Elt result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

 private:
  // Primitive check via the order of x in F_p[x]/(f): x must have order
  // exactly p^m - 1, which also forces f irreducible.
  bool primitive(const Elt& f) const {
    Field trial(*this, f);
    Elt base = trial.x();
    if (m_ == 1) {
      // degree-1 modulus x + c: the class of x is -c in F_p
      base = Elt{((-f[0]) % p_ + p_) % p_};
    }
    if (trial.is_zero(base)) return false;
    Elt full = trial.pow(base, order_ - 1);
    if (full != trial.one()) return false;
    for (std::int64_t q : group_factors_) {
      if (trial.pow(base, (order_ - 1) / q) == trial.one()) return false;
    }
    return true;
  }

  Field(const Field& proto, Elt f) : p_(proto.p_), m_(proto.m_), order_(proto.order_), poly_(std::move(f)) {}

  std::int64_t p_;
  int m_;
  std::int64_t order_ = 0;
  std::vector<std::int64_t> group_factors_;
  Elt poly_;
};

}  // namespace gf

namespace detail {

/// Translate so the set contains both 0 and 1, choosing the lexicographically
/// smallest such translate.
inline std::vector<std::int64_t> normalize_translation(
    std::vector<std::int64_t> residues, std::int64_t modulus) {
  std::sort(residues.begin(), residues.end());
  std::optional<std::vector<std::int64_t>> best;
  for (std::int64_t b : residues) {
    std::vector<std::int64_t> t(residues.size());
    for (size_t i = 0; i < residues.size(); ++i) {
      t[i] = ((residues[i] - b) % modulus + modulus) % modulus;
    }
    std::sort(t.begin(), t.end());
    if (!std::binary_search(t.begin(), t.end(), std::int64_t{1})) continue;
    if (!best || t < *best) best = std::move(t);
  }
  if (!best) return residues;  // no difference equal to 1; leave sorted
  return *best;
}

}  // namespace detail

/// Singer construction: the projective line {x in GF(s^3)* : Tr(x) = 0} read
/// off along the powers of a primitive element gives an
/// (s^2+s+1, s+1, 1) difference set. Requires s to be a prime power.
inline DifferenceSet singer_difference_set(std::int64_t s) {
  auto pk = gf::prime_power(s);
  if (!pk) {
    throw std::invalid_argument("singer construction: order is not a prime power");
  }
  auto [p, k] = *pk;
  gf::Field field(p, 3 * k);
  const std::int64_t N = s * s + s + 1;
  std::vector<std::int64_t> residues;
  gf::Field::Elt g = field.x();
  gf::Field::Elt gi = field.one();
  for (std::int64_t i = 0; i < N; ++i) {
    // Tr to GF(s): x + x^s + x^{s^2}
    gf::Field::Elt tr = field.add(field.add(gi, field.pow(gi, s)), field.pow(gi, s * s));
    if (field.is_zero(tr)) residues.push_back(i);
    gi = field.mul(gi, g);
  }
  DifferenceSet result{N, detail::normalize_translation(std::move(residues), N), 1};
  if (!certify_difference_set(result).passed) {
    throw std::runtime_error("singer construction: internal certification failure");
  }
  return result;
}

/// True iff some unit multiplier u and shift g map one set onto the other
/// as subsets of Z_N.
inline bool equivalent(const DifferenceSet& a, const DifferenceSet& b) {
  if (a.modulus != b.modulus || a.size() != b.size() ||
      a.multiplicity != b.multiplicity) {
    throw std::invalid_argument("difference set equivalence: parameter mismatch");
  }
  const std::int64_t N = a.modulus;
  std::vector<std::int64_t> target = b.residues;
  std::sort(target.begin(), target.end());
  for (std::int64_t u = 1; u < N; ++u) {
    if (std::gcd(u, N) != 1) continue;
    std::vector<std::int64_t> image(a.residues.size());
    for (size_t i = 0; i < a.residues.size(); ++i) {
      image[i] = (u * a.residues[i]) % N;
    }
    for (std::int64_t e : image) {
      std::vector<std::int64_t> shifted(image.size());
      std::int64_t g = ((target[0] - e) % N + N) % N;
      for (size_t i = 0; i < image.size(); ++i) {
        shifted[i] = (image[i] + g) % N;
      }
      std::sort(shifted.begin(), shifted.end());
      if (shifted == target) return true;
    }
  }
  return false;
}

/// Canonical representative under translations and unit multipliers: the
/// lexicographically smallest image containing 0.
inline DifferenceSet canonical_form(const DifferenceSet& d) {
  const std::int64_t N = d.modulus;
  std::optional<std::vector<std::int64_t>> best;
  for (std::int64_t u = 1; u < N; ++u) {
    if (std::gcd(u, N) != 1) continue;
    std::vector<std::int64_t> image(d.residues.size());
    for (size_t i = 0; i < d.residues.size(); ++i) {
      image[i] = (u * d.residues[i]) % N;
    }
    for (std::int64_t e : image) {
      std::vector<std::int64_t> shifted(image.size());
      for (size_t i = 0; i < image.size(); ++i) {
        shifted[i] = ((image[i] - e) % N + N) % N;
      }
      std::sort(shifted.begin(), shifted.end());
      if (!best || shifted < *best) best = std::move(shifted);
    }
  }
  return DifferenceSet{N, best ? *best : d.residues, d.multiplicity};
}

}  // namespace csic
