#include "sawtooth/basis.hpp"

#include <bit>
#include <stdexcept>

#include "sawtooth/errors.hpp"

namespace sawtooth {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return r;
}

int popcount(FockState s) { return std::popcount(s); }

std::string pattern_string(FockState s, int L) {
  std::string out(static_cast<std::size_t>(L), '0');
  for (int i = 0; i < L; ++i) {
    if (s >> i & 1u) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

FockState parse_pattern(const std::string& pattern) {
  if (pattern.empty() || pattern.size() > static_cast<std::size_t>(kMaxSites)) {
    throw std::invalid_argument("pattern length must be in 1.." +
                                std::to_string(kMaxSites));
  }
  FockState s = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '1') {
      s |= FockState{1} << i;
    } else if (pattern[i] != '0') {
      throw std::invalid_argument("pattern must contain only '0' and '1'");
    }
  }
  return s;
}

SectorBasis build_sector_basis(int L, int N) {
  if (L < 2 || L % 2 != 0 || L > kMaxSites) {
    throw std::invalid_argument("L must be even and in 2.." +
                                std::to_string(kMaxSites));
  }
  if (N < 0 || N > L) {
    throw std::invalid_argument("N must be in 0..L");
  }
  SectorBasis basis;
  basis.L = L;
  basis.N = N;
  basis.states.reserve(binomial(L, N));
  if (N == 0) {
    basis.states.push_back(0);
    return basis;
  }
  const FockState limit = (L == 32) ? ~FockState{0} : (FockState{1} << L) - 1;
  FockState s = (FockState{1} << N) - 1;
  while (s <= limit) {
    basis.states.push_back(s);
    // Gosper's hack: next higher integer with the same popcount.
    FockState c = s & (~s + 1);
    FockState r = s + c;
    if (r == 0) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return basis;
}

std::size_t rank(const SectorBasis& basis, FockState state) {
  if (popcount(state) != basis.N) {
    throw std::invalid_argument("state has wrong particle number for sector");
  }
  std::uint64_t idx = 0;
  int seen = 0;
  for (int j = 0; j < basis.L; ++j) {
    if (state >> j & 1u) {
      ++seen;
      idx += binomial(j, seen);
    }
  }
  return static_cast<std::size_t>(idx);
}

FockState unrank(const SectorBasis& basis, std::size_t index) {
  if (index >= basis.dim()) {
    throw std::invalid_argument("index out of range for sector");
  }
  std::uint64_t rem = index;
  FockState s = 0;
  int k = basis.N;
  for (int j = basis.L - 1; j >= 0 && k > 0; --j) {
    const std::uint64_t c = binomial(j, k);
    if (rem >= c) {
      s |= FockState{1} << j;
      rem -= c;
      --k;
    }
  }
  return s;
}

FockState domain_wall_state(int L) {
  if (L < 2 || L % 2 != 0 || L > kMaxSites) {
    throw std::invalid_argument("L must be even and in 2.." +
                                std::to_string(kMaxSites));
  }
  return (FockState{1} << (L / 2)) - 1;
}

FockState block_state(int L, int block_len) {
  if (L < 2 || L % 2 != 0 || L > kMaxSites) {
    throw std::invalid_argument("L must be even and in 2.." +
                                std::to_string(kMaxSites));
  }
  if (block_len < 1 || block_len > L) {
    throw std::invalid_argument("block_len must be in 1..L");
  }
  FockState s = 0;
  for (int i = 0; i < L; ++i) {
    if ((i / block_len) % 2 == 0) s |= FockState{1} << i;
  }
  if (popcount(s) != L / 2) {
    throw std::invalid_argument(
        "block pattern does not reach half filling for L=" + std::to_string(L) +
        ", block_len=" + std::to_string(block_len));
  }
  return s;
}

FockState ph_complement(FockState state, int L) {
  const FockState mask = (FockState{1} << L) - 1;
  return ~state & mask;
}

PHSectorBasis build_ph_sector(const SectorBasis& basis, int parity) {
  if (basis.N != basis.L / 2) {
    throw std::invalid_argument(
        "particle-hole sectors are defined only at half filling");
  }
  if (parity != +1 && parity != -1) {
    throw std::invalid_argument("parity must be +1 or -1");
  }
  PHSectorBasis sector;
  sector.L = basis.L;
  sector.parity = parity;
  sector.pairs.reserve(basis.dim() / 2);
  for (FockState s : basis.states) {
    const FockState c = ph_complement(s, basis.L);
    if (s < c) sector.pairs.emplace_back(s, c);
  }
  return sector;
}

}  // namespace sawtooth
