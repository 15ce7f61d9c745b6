#include "sawtooth/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "sawtooth/errors.hpp"

namespace sawtooth {

InteractionConvention parse_convention(const std::string& name) {
  if (name == "plain") return InteractionConvention::plain;
  if (name == "symmetrized") return InteractionConvention::symmetrized;
  throw std::invalid_argument("unknown interaction convention: " + name);
}

std::string convention_name(InteractionConvention c) {
  return c == InteractionConvention::plain ? "plain" : "symmetrized";
}

namespace {

struct Bond {
  int a;  // 0-based sites, a < b
  int b;
  double amplitude;
};

// All hopping bonds of the chain: J on (i, i+1), Jp on (i, i+2) for odd
// sites i (1-based), i.e. 0-based even a.
std::vector<Bond> hopping_bonds(const ModelParams& p) {
  std::vector<Bond> bonds;
  for (int a = 0; a + 1 < p.L; ++a) bonds.push_back({a, a + 1, p.J});
  for (int a = 0; a + 2 < p.L; a += 2) bonds.push_back({a, a + 2, p.Jp});
  return bonds;
}

}  // namespace

SparseOperator build_hamiltonian(const ModelParams& params,
                                 const SectorBasis& basis,
                                 InteractionConvention convention) {
  if (params.L != basis.L) {
    throw std::invalid_argument("build_hamiltonian: params.L != basis.L");
  }
  const auto bonds = hopping_bonds(params);
  SparseOperator H;
  H.dim = basis.dim();
  H.diag.resize(H.dim, 0.0);

  for (std::size_t row = 0; row < H.dim; ++row) {
    const FockState s = basis.states[row];
    // Interaction along nearest-neighbor bonds.
    double d = 0.0;
    for (int a = 0; a + 1 < params.L; ++a) {
      const double na = (s >> a) & 1u;
      const double nb = (s >> (a + 1)) & 1u;
      if (convention == InteractionConvention::plain) {
        d += params.V * na * nb;
      } else {
        d += params.V * (na - 0.5) * (nb - 0.5);
      }
    }
    H.diag[row] = d;
    // Hopping: move one particle along a bond; hardcore constraint means a
    // hop into an occupied site contributes nothing.
    for (const auto& bond : bonds) {
      if (bond.amplitude == 0.0) continue;
      const unsigned na = (s >> bond.a) & 1u;
      const unsigned nb = (s >> bond.b) & 1u;
      if (na == nb) continue;
      const FockState t =
          s ^ ((FockState{1} << bond.a) | (FockState{1} << bond.b));
      const std::size_t col = rank(basis, t);
      if (row < col) H.offdiag.push_back({row, col, bond.amplitude});
    }
  }
  std::sort(H.offdiag.begin(), H.offdiag.end(), [](const auto& x, const auto& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  // Merge duplicate (row, col) entries.
  std::vector<SparseOperator::Entry> merged;
  merged.reserve(H.offdiag.size());
  for (const auto& e : H.offdiag) {
    if (!merged.empty() && merged.back().row == e.row &&
        merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  H.offdiag = std::move(merged);
  return H;
}

Eigen::MatrixXd build_single_particle_hamiltonian(const ModelParams& params) {
  const int L = params.L;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(L, L);
  for (int a = 0; a + 1 < L; ++a) {
    H(a, a + 1) = params.J;
    H(a + 1, a) = params.J;
  }
  for (int a = 0; a + 2 < L; a += 2) {
    H(a, a + 2) = params.Jp;
    H(a + 2, a) = params.Jp;
  }
  return H;
}

Eigen::VectorXd cl_state(int L, int cell) {
  if (L < 4 || L % 2 != 0) {
    throw std::invalid_argument("cl_state: L must be even, >= 4");
  }
  if (cell < 1 || cell > L / 2 - 1) {
    throw std::invalid_argument("cl_state: cell must be in 1..L/2-1");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(L);
  const int center = 2 * cell;  // 0-based odd chain site between two B sites
  v[center - 1] = 0.5;
  v[center] = -std::sqrt(2.0) / 2.0;
  v[center + 1] = 0.5;
  return v;
}

SparseOperator project_to_ph_sector(const SparseOperator& H,
                                    const SectorBasis& basis,
                                    const PHSectorBasis& sector) {
  if (H.dim != basis.dim()) {
    throw std::invalid_argument("project_to_ph_sector: dim mismatch");
  }
  if (basis.N != basis.L / 2) {
    throw std::invalid_argument(
        "project_to_ph_sector: basis must be at half filling");
  }

  // pair index and sign convention member for each Fock index
  const std::size_t dim = H.dim;
  std::vector<std::size_t> pair_of(dim);
  std::vector<int> is_primary(dim);
  for (std::size_t k = 0; k < sector.dim(); ++k) {
    const std::size_t a = rank(basis, sector.pairs[k].first);
    const std::size_t b = rank(basis, sector.pairs[k].second);
    pair_of[a] = k;
    pair_of[b] = k;
    is_primary[a] = 1;
    is_primary[b] = 0;
  }

  // Commutation check: H must be invariant under simultaneous complement of
  // row and column. Boundary interaction terms of the plain convention
  // break this.
  double max_err = 0.0;
  std::vector<double> diag_at(dim);
  for (std::size_t i = 0; i < dim; ++i) diag_at[i] = H.diag[i];
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t ic =
        rank(basis, ph_complement(basis.states[i], basis.L));
    max_err = std::max(max_err, std::abs(diag_at[i] - diag_at[ic]));
  }
  std::unordered_map<std::uint64_t, double> offmap;
  offmap.reserve(H.offdiag.size() * 2);
  for (const auto& e : H.offdiag) {
    offmap[(static_cast<std::uint64_t>(e.row) << 32) | e.col] = e.value;
  }
  auto lookup = [&](std::size_t r, std::size_t c) -> double {
    if (r > c) std::swap(r, c);
    const auto it = offmap.find((static_cast<std::uint64_t>(r) << 32) | c);
    return it == offmap.end() ? 0.0 : it->second;
  };
  for (const auto& e : H.offdiag) {
    const std::size_t rc =
        rank(basis, ph_complement(basis.states[e.row], basis.L));
    const std::size_t cc =
        rank(basis, ph_complement(basis.states[e.col], basis.L));
    max_err = std::max(max_err, std::abs(e.value - lookup(rc, cc)));
  }
  if (max_err > 1e-10) {
    throw symmetry_violation_error(
        "operator does not commute with the particle-hole complement "
        "(max element mismatch " +
        std::to_string(max_err) + "); use the symmetrized interaction");
  }

  // <k,p|H|l,p> = sum over pair members of (1/2) sigma_a sigma_b H_ab with
  // sigma = 1 on the primary member and `parity` on the complement.
  const auto n = static_cast<Eigen::Index>(sector.dim());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double par = sector.parity;
  auto sigma = [&](std::size_t i) { return is_primary[i] ? 1.0 : par; };
  for (std::size_t i = 0; i < dim; ++i) {
    const auto k = static_cast<Eigen::Index>(pair_of[i]);
    M(k, k) += 0.5 * H.diag[i];
  }
  for (const auto& e : H.offdiag) {
    const auto k = static_cast<Eigen::Index>(pair_of[e.row]);
    const auto l = static_cast<Eigen::Index>(pair_of[e.col]);
    const double w = 0.5 * sigma(e.row) * sigma(e.col) * e.value;
    if (k == l) {
      M(k, k) += 2.0 * w;  // entry and its transpose both land on the diagonal
    } else {
      M(k, l) += w;
      M(l, k) += w;
    }
  }

  SparseOperator P;
  P.dim = sector.dim();
  P.diag.resize(P.dim);
  double max_abs = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    P.diag[static_cast<std::size_t>(i)] = M(i, i);
    for (Eigen::Index j = i; j < n; ++j) {
      max_abs = std::max(max_abs, std::abs(M(i, j)));
    }
  }
  const double cutoff = 1e-15 * max_abs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(M(i, j)) > cutoff) {
        P.offdiag.push_back({static_cast<std::size_t>(i),
                             static_cast<std::size_t>(j), M(i, j)});
      }
    }
  }
  return P;
}

SparseOperator build_observable_hopping(int L, const SectorBasis& basis) {
  if (L != basis.L) {
    throw std::invalid_argument("build_observable_hopping: L != basis.L");
  }
  SparseOperator O;
  O.dim = basis.dim();
  O.diag.resize(O.dim, 0.0);
  const double amp = 2.0 / static_cast<double>(L);
  for (std::size_t row = 0; row < O.dim; ++row) {
    const FockState s = basis.states[row];
    for (int a = 0; a + 1 < L; ++a) {
      const unsigned na = (s >> a) & 1u;
      const unsigned nb = (s >> (a + 1)) & 1u;
      if (na == nb) continue;
      const FockState t = s ^ ((FockState{1} << a) | (FockState{1} << (a + 1)));
      const std::size_t col = rank(basis, t);
      if (row < col) O.offdiag.push_back({row, col, amp});
    }
  }
  std::sort(O.offdiag.begin(), O.offdiag.end(), [](const auto& x, const auto& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  return O;
}

}  // namespace sawtooth
