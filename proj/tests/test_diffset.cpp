#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "csic/diffset.hpp"

using namespace csic;

TEST_CASE("certify the reference planar difference sets") {
  REQUIRE(certify_difference_set({0, 1}, 3).passed);
  REQUIRE(certify_difference_set({0, 1, 3}, 7).passed);
  REQUIRE(certify_difference_set({0, 1, 3, 9}, 13).passed);
  REQUIRE(certify_difference_set({0, 1, 4, 14, 16}, 21).passed);
}

TEST_CASE("certify rejects {0,1,2} mod 7: difference 1 occurs twice") {
  DifferenceSetCertificate c = certify_difference_set({0, 1, 2}, 7);
  REQUIRE_FALSE(c.passed);
  REQUIRE(c.counting_ok);  // 3*2 == 1*6
  REQUIRE(c.counts[1] == 2);
  REQUIRE(c.counts[2] == 1);
  REQUIRE(c.counts[3] == 0);
  REQUIRE(c.counts[4] == 0);
  REQUIRE(c.counts[5] == 1);
  REQUIRE(c.counts[6] == 2);
}

TEST_CASE("certify fails fast on the counting identity") {
  DifferenceSetCertificate c = certify_difference_set({0, 1, 3}, 8);
  REQUIRE_FALSE(c.counting_ok);
  REQUIRE_FALSE(c.passed);
}

TEST_CASE("certify input validation") {
  REQUIRE_THROWS_AS(certify_difference_set({0, 1, 1}, 7),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(certify_difference_set({0, 7}, 7), std::invalid_argument);
  REQUIRE_THROWS_AS(certify_difference_set({-1, 2}, 7), std::invalid_argument);
  REQUIRE_THROWS_AS(certify_difference_set({0, 1}, 3, 0),
                    std::invalid_argument);
}

TEST_CASE("search returns the lexicographically smallest normalized set") {
  SECTION("(7,3)") {
    auto d = search_difference_set(7, 3);
    REQUIRE(d.has_value());
    REQUIRE(d->residues == std::vector<std::int64_t>{0, 1, 3});
  }
  SECTION("(13,4)") {
    auto d = search_difference_set(13, 4);
    REQUIRE(d.has_value());
    REQUIRE(d->residues == std::vector<std::int64_t>{0, 1, 3, 9});
  }
  SECTION("(21,5)") {
    auto d = search_difference_set(21, 5);
    REQUIRE(d.has_value());
    REQUIRE(d->residues == std::vector<std::int64_t>{0, 1, 4, 14, 16});
  }
  SECTION("(31,6)") {
    auto d = search_difference_set(31, 6);
    REQUIRE(d.has_value());
    REQUIRE(d->residues == std::vector<std::int64_t>{0, 1, 3, 8, 12, 18});
    REQUIRE(certify_difference_set(*d).passed);
  }
}

TEST_CASE("search returns nothing when no set exists") {
  SECTION("counting identity violated") {
    REQUIRE_FALSE(search_difference_set(10, 3).has_value());
  }
  SECTION("order 6: exhaustive search of (43,7) is empty") {
    REQUIRE_FALSE(search_difference_set(43, 7).has_value());
  }
}

TEST_CASE("singer construction for small prime powers") {
  for (std::int64_t s : {2, 3, 4, 5, 7, 8, 9}) {
    DifferenceSet d = singer_difference_set(s);
    REQUIRE(d.modulus == s * s + s + 1);
    REQUIRE(d.size() == s + 1);
    REQUIRE(certify_difference_set(d).passed);
    REQUIRE(d.residues[0] == 0);
    REQUIRE(d.residues[1] == 1);
  }
}

TEST_CASE("singer sets match the reference sets up to equivalence") {
  DifferenceSet ref3{7, {0, 1, 3}, 1};
  DifferenceSet ref4{13, {0, 1, 3, 9}, 1};
  DifferenceSet ref5{21, {0, 1, 4, 14, 16}, 1};
  REQUIRE(equivalent(singer_difference_set(2), ref3));
  REQUIRE(equivalent(singer_difference_set(3), ref4));
  REQUIRE(equivalent(singer_difference_set(4), ref5));
}

TEST_CASE("singer rejects non-prime-powers") {
  REQUIRE_THROWS_AS(singer_difference_set(6), std::invalid_argument);
  REQUIRE_THROWS_AS(singer_difference_set(10), std::invalid_argument);
  REQUIRE_THROWS_AS(singer_difference_set(1), std::invalid_argument);
  REQUIRE_THROWS_AS(singer_difference_set(0), std::invalid_argument);
}

TEST_CASE("equivalence under translations and multipliers") {
  DifferenceSet base{7, {0, 1, 3}, 1};
  SECTION("translation by 1") {
    REQUIRE(equivalent(base, DifferenceSet{7, {1, 2, 4}, 1}));
  }
  SECTION("multiplier 2") {
    REQUIRE(equivalent(base, DifferenceSet{7, {0, 2, 6}, 1}));
  }
  SECTION("non-difference-set is inequivalent") {
    REQUIRE_FALSE(equivalent(base, DifferenceSet{7, {0, 1, 2}, 1}));
  }
  SECTION("parameter mismatch is an error") {
    REQUIRE_THROWS_AS(equivalent(base, DifferenceSet{13, {0, 1, 3}, 1}),
                      std::invalid_argument);
  }
}

TEST_CASE("canonical form is certified and equivalent to the original") {
  for (std::int64_t s : {2, 3, 4}) {
    DifferenceSet d = singer_difference_set(s);
    DifferenceSet c = canonical_form(d);
    REQUIRE(certify_difference_set(c).passed);
    REQUIRE(equivalent(c, d));
    REQUIRE(c.residues[0] == 0);
    // canonical form is idempotent
    REQUIRE(canonical_form(c).residues == c.residues);
  }
}

TEST_CASE("character sum identity |sum q^(m a_i)|^2 = n - 1") {
  using std::abs;
  for (auto [N, n] : std::vector<std::pair<std::int64_t, int>>{
           {3, 2}, {7, 3}, {13, 4}, {21, 5}}) {
    auto d = search_difference_set(N, n);
    REQUIRE(d.has_value());
    for (std::int64_t m = 1; m < N; ++m) {
      std::complex<double> sum = 0.0;
      for (std::int64_t a : d->residues) {
        double angle = 2.0 * std::numbers::pi * double((m * a) % N) / double(N);
        sum += std::polar(1.0, angle);
      }
      REQUIRE(std::abs(std::norm(sum) - double(n - 1)) < 1e-9);
    }
  }
}

TEST_CASE("search range guard") {
  REQUIRE_THROWS_AS(search_difference_set(757, 28), std::invalid_argument);
}
