#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sawtooth/basis.hpp"
#include "sawtooth/errors.hpp"

using namespace sawtooth;

TEST_CASE("sector dimensions and ordering") {
  const SectorBasis b12 = build_sector_basis(12, 6);
  CHECK(b12.dim() == 924);

  const SectorBasis b2 = build_sector_basis(2, 1);
  REQUIRE(b2.dim() == 2);
  CHECK(pattern_string(b2.states[0], 2) == "10");  // integer 01b = site 1
  CHECK(pattern_string(b2.states[1], 2) == "01");

  const SectorBasis b4 = build_sector_basis(4, 2);
  CHECK(b4.dim() == 6);
  CHECK(b4.states[0] == parse_pattern("1100"));  // bits 0011

  for (std::size_t i = 1; i < b12.dim(); ++i) {
    CHECK(b12.states[i] > b12.states[i - 1]);
  }
}

TEST_CASE("sector enumeration matches exhaustive oracle") {
  for (int L : {4, 8, 10}) {
    for (int N : {0, 1, L / 2, L}) {
      const SectorBasis b = build_sector_basis(L, N);
      const auto ref = oracle::enumerate_states(L, N);
      REQUIRE(b.dim() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(b.states[i] == ref[i]);
    }
  }
}

TEST_CASE("build_sector_basis rejects bad arguments") {
  CHECK_THROWS_AS(build_sector_basis(11, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_basis(26, 13), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_basis(8, 9), std::invalid_argument);
  CHECK_THROWS_AS(build_sector_basis(8, -1), std::invalid_argument);
}

TEST_CASE("rank/unrank") {
  const SectorBasis b4 = build_sector_basis(4, 2);
  CHECK(rank(b4, parse_pattern("1100")) == 0);
  CHECK(rank(b4, parse_pattern("0011")) == 5);

  const SectorBasis b12 = build_sector_basis(12, 6);
  CHECK(rank(b12, unrank(b12, 517)) == 517);
  CHECK_THROWS_AS(rank(b12, parse_pattern("110000000000")),
                  std::invalid_argument);
  CHECK_THROWS_AS(unrank(b12, b12.dim()), std::invalid_argument);
}

TEST_CASE("rank/unrank exhaustive round trip up to L=16") {
  for (int L : {4, 6, 8, 10, 12, 14, 16}) {
    const SectorBasis b = build_sector_basis(L, L / 2);
    for (std::size_t k = 0; k < b.dim(); ++k) {
      REQUIRE(unrank(b, k) == b.states[k]);
      REQUIRE(rank(b, b.states[k]) == k);
    }
  }
}

TEST_CASE("named initial states") {
  CHECK(pattern_string(domain_wall_state(4), 4) == "1100");
  CHECK(pattern_string(domain_wall_state(12), 12) == "111111000000");
  CHECK(pattern_string(domain_wall_state(2), 2) == "10");
  CHECK_THROWS_AS(domain_wall_state(7), std::invalid_argument);

  CHECK(block_state(12, 6) == domain_wall_state(12));
  CHECK(pattern_string(block_state(12, 3), 12) == "111000111000");
  CHECK(pattern_string(block_state(12, 2), 12) == "110011001100");
  CHECK(popcount(block_state(12, 3)) == 6);
  // 5-site blocks on 12 sites cannot reach half filling
  CHECK_THROWS_AS(block_state(12, 5), std::invalid_argument);
}

TEST_CASE("particle-hole complement") {
  CHECK(pattern_string(ph_complement(parse_pattern("111111000000"), 12), 12) ==
        "000000111111");
  CHECK(pattern_string(ph_complement(parse_pattern("10"), 2), 2) == "01");
  const SectorBasis b = build_sector_basis(10, 5);
  for (FockState s : b.states) {
    CHECK(ph_complement(ph_complement(s, 10), 10) == s);
    CHECK(popcount(ph_complement(s, 10)) == 5);
  }
}

TEST_CASE("PH sector dimensions") {
  CHECK(build_ph_sector(build_sector_basis(12, 6), +1).dim() == 462);
  CHECK(build_ph_sector(build_sector_basis(14, 7), +1).dim() == 1716);
  const PHSectorBasis tiny = build_ph_sector(build_sector_basis(2, 1), +1);
  REQUIRE(tiny.dim() == 1);
  CHECK(tiny.pairs[0].first == parse_pattern("10"));
  CHECK(tiny.pairs[0].second == parse_pattern("01"));
  CHECK_THROWS_AS(build_ph_sector(build_sector_basis(8, 3), +1),
                  std::invalid_argument);
}

TEST_CASE("PH sectors partition the half-filled space and are orthogonal") {
  for (int L : {4, 6, 8, 10, 12, 14}) {
    const SectorBasis b = build_sector_basis(L, L / 2);
    const PHSectorBasis plus = build_ph_sector(b, +1);
    const PHSectorBasis minus = build_ph_sector(b, -1);
    CHECK(plus.dim() + minus.dim() == b.dim());
    CHECK(plus.dim() == b.dim() / 2);
    // Pair vectors (|n> + p|n_bar>)/sqrt(2) from opposite parities share a
    // Fock support pair exactly when they come from the same pair index;
    // there the inner product is (1 - 1)/2 = 0.
    for (std::size_t k = 0; k < plus.dim(); ++k) {
      CHECK(plus.pairs[k] == minus.pairs[k]);
    }
    // No self-complementary state at half filling.
    for (FockState s : b.states) {
      CHECK(s != ph_complement(s, L));
    }
  }
}
