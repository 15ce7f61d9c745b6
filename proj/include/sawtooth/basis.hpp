#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sawtooth {

// Occupation pattern of an L-site chain. Bit i-1 holds the occupation of
// chain site i (sites numbered 1..L left to right). Odd sites form the A
// sublattice, even sites the B sublattice.
using FockState = std::uint32_t;

inline constexpr int kMaxSites = 24;

std::uint64_t binomial(int n, int k);

int popcount(FockState s);

// Pattern string "1100..." with the leftmost character = site 1.
std::string pattern_string(FockState s, int L);
FockState parse_pattern(const std::string& pattern);

// All Fock states with N particles on L sites, ascending as integers.
struct SectorBasis {
  int L = 0;
  int N = 0;
  std::vector<FockState> states;

  std::size_t dim() const { return states.size(); }
};

SectorBasis build_sector_basis(int L, int N);

// Combinadic index of `state` within its (L, N) sector; O(L), no list scan.
std::size_t rank(const SectorBasis& basis, FockState state);
FockState unrank(const SectorBasis& basis, std::size_t index);

// Left half occupied, right half empty.
FockState domain_wall_state(int L);

// Alternating runs of `block_len` occupied then empty sites, starting
// occupied; must land exactly on half filling.
FockState block_state(int L, int block_len);

// Bitwise complement restricted to the low L bits.
FockState ph_complement(FockState state, int L);

// Particle-hole parity sector at half filling. Basis vectors are
// (|n> + parity*|n_bar>)/sqrt(2) with n < n_bar; dimension is exactly
// binomial(L, L/2)/2.
struct PHSectorBasis {
  int L = 0;
  int parity = +1;
  // (state, complement) with state < complement, ordered by state.
  std::vector<std::pair<FockState, FockState>> pairs;

  std::size_t dim() const { return pairs.size(); }
};

PHSectorBasis build_ph_sector(const SectorBasis& basis, int parity);

}  // namespace sawtooth
