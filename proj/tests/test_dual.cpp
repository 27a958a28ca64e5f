#include <catch2/catch_amalgamated.hpp>

#include "csic/dual.hpp"
#include "csic/rng.hpp"
#include "csic/tomo.hpp"

using namespace csic;

namespace {

Povm csic_povm(int n) {
  DifferenceSet d =
      n == 2 ? DifferenceSet{3, {0, 1}, 1} : singer_difference_set(n - 1);
  return Povm::from_difference_set(d, n);
}

// POVM with every diagonal matrix unit listed twice at half weight; its
// elements are linearly dependent, so dual frames are non-unique.
Povm doubled_diagonal_povm(int n) {
  std::vector<CMatrix> els;
  for (int rep = 0; rep < 2; ++rep) {
    for (int i = 0; i < n; ++i) {
      CMatrix f = CMatrix::Zero(n, n);
      f(i, i) = 0.5;
      els.push_back(std::move(f));
    }
  }
  return Povm(n, std::move(els));
}

}  // namespace

TEST_CASE("canonical dual of the diagonal POVM is itself") {
  for (int n : {2, 3}) {
    Povm p = Povm::diagonal(n);
    HermitianBasis basis = HermitianBasis::gell_mann(n);
    DualFrame dual = canonical_dual(p, basis, Scheme::known_offdiagonal(n));
    for (int i = 0; i < n; ++i) {
      REQUIRE(hs_distance(dual.elements[i], p.element(i)) < 1e-12);
    }
  }
}

TEST_CASE("sum rule: sum lambda_i <R_i, R_i> = Tr F^-") {
  for (int n : {2, 3, 4, 5}) {
    Povm p = csic_povm(n);
    HermitianBasis basis = HermitianBasis::gell_mann(n);
    Scheme scheme = Scheme::known_diagonal(n);
    DualFrame dual = canonical_dual(p, basis, scheme);
    double quad = 0.0;
    for (int i = 0; i < p.size(); ++i) {
      quad += p.weight(i) * hs_inner(dual.elements[i], dual.elements[i]).real();
    }
    const int N = p.size();
    double expected = 1.0 + double(N - 1) * double(N - 1) / double(n - 1);
    REQUIRE(quad == Catch::Approx(expected).epsilon(1e-10));
    // independent route: trace of the numerical pseudo-inverse
    double tr = frame_superoperator(p, basis).pseudo_inverse().trace();
    REQUIRE(quad == Catch::Approx(tr).epsilon(1e-10));
    // sum lambda_i |R_i><R_i| = F^- as superoperators
    RMatrix acc = RMatrix::Zero(n * n, n * n);
    for (int i = 0; i < p.size(); ++i) {
      RVector r = basis.decompose(dual.elements[i]).theta;
      acc += p.weight(i) * r * r.transpose();
    }
    REQUIRE((acc - frame_superoperator(p, basis).pseudo_inverse().matrix())
                .norm() < 1e-9);
  }
}

TEST_CASE("n=2 conditional SIC: Tr F^- = 5") {
  Povm p = csic_povm(2);
  HermitianBasis basis = HermitianBasis::gell_mann(2);
  REQUIRE(frame_superoperator(p, basis).pseudo_inverse().trace() ==
          Catch::Approx(5.0));
}

TEST_CASE("underdetermined scheme is rejected") {
  // The diagonal POVM spans only the diagonal subspace; asking it to
  // reconstruct the off-diagonal part cannot work.
  Povm p = Povm::diagonal(3);
  HermitianBasis basis = HermitianBasis::gell_mann(3);
  REQUIRE_THROWS_AS(canonical_dual(p, basis, Scheme::known_diagonal(3)),
                    std::domain_error);
}

TEST_CASE("exact linear reconstruction recovers random density matrices") {
  for (int n : {2, 3, 4, 5}) {
    Povm p = csic_povm(n);
    HermitianBasis basis = HermitianBasis::gell_mann(n);
    Scheme scheme = Scheme::known_diagonal(n);
    DualFrame dual = canonical_dual(p, basis, scheme);
    std::mt19937_64 rng = substream(99, n);
    for (int rep = 0; rep < 100; ++rep) {
      CMatrix rho = random_density(n, rng);
      RVector prob = probabilities(rho, p);
      CMatrix known = scheme.project(rho, Part::B, basis);
      CMatrix rebuilt = reconstruct(prob, dual, known);
      REQUIRE(hs_distance(rebuilt, rho) < 1e-9);
    }
  }
}

TEST_CASE("reconstruction from uniform frequencies has A part I/n") {
  const int n = 3;
  Povm p = csic_povm(n);
  HermitianBasis basis = HermitianBasis::gell_mann(n);
  Scheme scheme = Scheme::known_diagonal(n);
  DualFrame dual = canonical_dual(p, basis, scheme);
  RVector uniform = RVector::Constant(p.size(), 1.0 / double(p.size()));
  CMatrix est = reconstruct(uniform, dual, CMatrix::Zero(n, n));
  CMatrix a_part = scheme.project(est, Part::A, basis);
  REQUIRE(hs_distance(a_part, CMatrix::Identity(n, n) / double(n)) < 1e-12);
}

TEST_CASE("theoretical risk values") {
  SECTION("maximally mixed state, n=2 conditional SIC: T = 2") {
    Povm p = csic_povm(2);
    HermitianBasis basis = HermitianBasis::gell_mann(2);
    Scheme scheme = Scheme::known_diagonal(2);
    DualFrame dual = canonical_dual(p, basis, scheme);
    CMatrix rho = CMatrix::Identity(2, 2) / 2.0;
    REQUIRE(theoretical_risk(p, dual, rho, scheme, basis) ==
            Catch::Approx(2.0));
  }

  SECTION("diagonal POVM, pure diagonal state: T = 0") {
    Povm p = Povm::diagonal(2);
    HermitianBasis basis = HermitianBasis::gell_mann(2);
    Scheme scheme = Scheme::known_offdiagonal(2);
    DualFrame dual = canonical_dual(p, basis, scheme);
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    REQUIRE(std::abs(theoretical_risk(p, dual, rho, scheme, basis)) < 1e-12);
  }

  SECTION("canonical dual risk is nonnegative for random states") {
    Povm p = csic_povm(3);
    HermitianBasis basis = HermitianBasis::gell_mann(3);
    Scheme scheme = Scheme::known_diagonal(3);
    DualFrame dual = canonical_dual(p, basis, scheme);
    std::mt19937_64 rng = substream(5, 5);
    for (int rep = 0; rep < 50; ++rep) {
      CMatrix rho = random_density(3, rng);
      REQUIRE(theoretical_risk(p, dual, rho, scheme, basis) >= -1e-9);
    }
  }
}

// Minimality of the canonical dual among frames satisfying the cross-term
// condition sum_i lambda_i |R_i><Z_i| = 0. For a POVM with exactly
// N = n^2 - m independent elements the dual frame is unique (the admissible
// set collapses to zero); the inequality becomes non-trivial for redundant
// frames, exercised here with a doubled diagonal POVM.
TEST_CASE("dual optimality (canonical dual minimizes the weighted norm)") {
  auto admissible_projector = [](const Povm& p, const DualFrame& dual,
                                 const HermitianBasis& basis) {
    const int n2 = basis.size();
    RMatrix m(n2, p.size());
    for (int i = 0; i < p.size(); ++i) {
      m.col(i) = p.weight(i) * basis.decompose(dual.elements[i]).theta;
    }
    // rows of the stacked perturbation must be orthogonal to the row space
    // of m^T, i.e. live in the null space of m^T's columns
    RMatrix mt = m.transpose();  // N x n2
    Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(mt.transpose());
    RMatrix pinv = cod.pseudoInverse();  // N x n2
    return (RMatrix::Identity(p.size(), p.size()) - pinv * mt.transpose())
        .eval();
  };

  SECTION("exact-size frames admit no perturbation at all") {
    Povm p = csic_povm(3);
    HermitianBasis basis = HermitianBasis::gell_mann(3);
    DualFrame dual = canonical_dual(p, basis, Scheme::known_diagonal(3));
    RMatrix proj = admissible_projector(p, dual, basis);
    REQUIRE(proj.norm() < 1e-9);
  }

  SECTION("redundant frame: inequality strict away from zero") {
    const int n = 3;
    Povm p = doubled_diagonal_povm(n);
    HermitianBasis basis = HermitianBasis::gell_mann(n);
    Scheme scheme = Scheme::known_offdiagonal(n);
    DualFrame dual = canonical_dual(p, basis, scheme);
    RMatrix proj = admissible_projector(p, dual, basis);
    REQUIRE(proj.norm() > 1e-6);

    double base = 0.0;
    for (int i = 0; i < p.size(); ++i) {
      base += p.weight(i) * hs_inner(dual.elements[i], dual.elements[i]).real();
    }

    std::mt19937_64 rng = substream(31, 0);
    const int n2 = basis.size();
    for (int rep = 0; rep < 100; ++rep) {
      // random perturbation stack, projected onto the admissible set
      RMatrix z(n2, p.size());
      std::normal_distribution<double> gauss;
      for (int a = 0; a < n2; ++a) {
        for (int i = 0; i < p.size(); ++i) z(a, i) = gauss(rng);
      }
      RMatrix zp = z * proj.transpose();

      // cross-term condition holds after projection
      RMatrix cross = RMatrix::Zero(n2, n2);
      for (int i = 0; i < p.size(); ++i) {
        RVector r = p.weight(i) * basis.decompose(dual.elements[i]).theta;
        cross += r * zp.col(i).transpose();
      }
      REQUIRE(cross.norm() < 1e-9);

      double perturbed = 0.0;
      double znorm = 0.0;
      for (int i = 0; i < p.size(); ++i) {
        RVector q = basis.decompose(dual.elements[i]).theta + zp.col(i);
        perturbed += p.weight(i) * q.squaredNorm();
        znorm += zp.col(i).squaredNorm();
      }
      REQUIRE(znorm > 1e-6);  // the projected perturbation is genuinely nonzero
      REQUIRE(perturbed >= base - 1e-12);
      REQUIRE(perturbed - base > 1e-9);  // equality only at zero

      // the perturbed frame is still a valid dual: exact reconstruction
      DualFrame q_frame{n, {}, scheme};
      for (int i = 0; i < p.size(); ++i) {
        q_frame.elements.push_back(basis.reconstruct(
            BlochVector{basis.decompose(dual.elements[i]).theta + zp.col(i)}));
      }
      CMatrix rho = random_density(n, rng);
      RVector prob = probabilities(rho, p);
      CMatrix known = scheme.project(rho, Part::B, basis);
      REQUIRE(hs_distance(reconstruct(prob, q_frame, known), rho) < 1e-9);
    }
  }
}
