// Independent brute-force reference implementations used only by tests.
// These deliberately avoid the library's sparse assembly and combinadic
// ranking paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Every L-bit word with the given popcount, by exhaustive scan.
inline std::vector<std::uint32_t> enumerate_states(int L, int N) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << L); ++s) {
    int pc = 0;
    for (int i = 0; i < L; ++i) pc += (s >> i) & 1u;
    if (pc == N) out.push_back(s);
  }
  return out;
}

inline std::size_t find_index(const std::vector<std::uint32_t>& states,
                              std::uint32_t s) {
  return static_cast<std::size_t>(
      std::find(states.begin(), states.end(), s) - states.begin());
}

// Dense many-body Hamiltonian built term by term: J on (i, i+1), Jp on
// (i, i+2) for 1-based odd i, interaction V n_i n_{i+1} (plain) or
// V (n_i - 1/2)(n_{i+1} - 1/2) (symmetrized).
inline Eigen::MatrixXd dense_hamiltonian(int L, double J, double Jp, double V,
                                         const std::vector<std::uint32_t>& states,
                                         bool symmetrized = false) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::uint32_t s = states[static_cast<std::size_t>(k)];
    for (int i = 0; i + 1 < L; ++i) {
      const double ni = (s >> i) & 1u;
      const double nj = (s >> (i + 1)) & 1u;
      H(k, k) += symmetrized ? V * (ni - 0.5) * (nj - 0.5) : V * ni * nj;
    }
    auto hop = [&](int a, int b, double amp) {
      const unsigned na = (s >> a) & 1u;
      const unsigned nb = (s >> b) & 1u;
      if (na == nb) return;
      const std::uint32_t t = s ^ ((1u << a) | (1u << b));
      H(k, static_cast<Eigen::Index>(find_index(states, t))) += amp;
    };
    for (int a = 0; a + 1 < L; ++a) hop(a, a + 1, J);
    for (int a = 0; a + 2 < L; a += 2) hop(a, a + 2, Jp);
  }
  return H;
}

// Synthetic spectra for spacing-statistics checks.
inline std::vector<double> poisson_spacings(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> s(n);
  for (auto& v : s) v = exp1(rng);
  return s;
}

inline std::vector<double> wigner_dyson_spacings(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> s(n);
  const double pi = 3.14159265358979323846;
  for (auto& v : s) v = std::sqrt(-4.0 * std::log1p(-uni(rng)) / pi);
  return s;
}

inline std::vector<double> levels_from_spacings(const std::vector<double>& s) {
  std::vector<double> e;
  e.reserve(s.size() + 1);
  double acc = 0.0;
  e.push_back(acc);
  for (double v : s) {
    acc += v;
    e.push_back(acc);
  }
  return e;
}

}  // namespace oracle
