#include "sawtooth/localization.hpp"

#include <cmath>
#include <stdexcept>

#include "sawtooth/errors.hpp"

namespace sawtooth {

PerturbativeState build_phi_loc(const ModelParams& params,
                                const SectorBasis& basis) {
  const int L = params.L;
  if (L % 4 != 2) {
    throw unsupported_size_error(
        "build_phi_loc: requires L = 4m+2 (wall site must sit on the A "
        "sublattice)");
  }
  if (params.V == 0.0) {
    throw std::invalid_argument("build_phi_loc: V must be nonzero");
  }
  if (basis.L != L || basis.N != L / 2) {
    throw std::invalid_argument(
        "build_phi_loc: basis must be the half-filled sector of L");
  }

  const double jv = params.J / params.V;
  const double jpv = params.Jp / params.V;
  PerturbativeState state;
  state.c2 = jv + jpv * jv;
  state.c3 = jpv + jv * jv;

  const FockState dw = domain_wall_state(L);
  const int wall = L / 2;  // 1-based site holding the wall particle; odd
  const FockState wall_bit = FockState{1} << (wall - 1);
  const FockState hop1 = dw ^ wall_bit ^ (FockState{1} << wall);
  const FockState hop2 = dw ^ wall_bit ^ (FockState{1} << (wall + 1));

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dim()));
  auto add = [&](FockState s, double amp) {
    v[static_cast<Eigen::Index>(rank(basis, s))] += amp;
    v[static_cast<Eigen::Index>(rank(basis, ph_complement(s, L)))] += amp;
  };
  add(dw, 1.0);
  add(hop1, state.c2);
  add(hop2, state.c3);
  v /= v.norm();
  state.vector = v;
  return state;
}

LocalizedEigenstate find_localized_eigenstate(const SpectralData& spec,
                                              const Eigen::VectorXd& psi_dw) {
  if (static_cast<std::size_t>(psi_dw.size()) != spec.dim()) {
    throw std::invalid_argument("find_localized_eigenstate: dimension mismatch");
  }
  const Eigen::VectorXd overlaps =
      (spec.vectors.transpose() * psi_dw).cwiseAbs();
  LocalizedEigenstate best;
  best.index = 0;
  best.overlap = overlaps[0];
  for (Eigen::Index nu = 1; nu < overlaps.size(); ++nu) {
    if (overlaps[nu] > best.overlap + 1e-15) {
      best.index = static_cast<std::size_t>(nu);
      best.overlap = overlaps[nu];
    }
  }
  return best;
}

double fidelity(const PerturbativeState& phi_loc, const SpectralData& spec,
                std::size_t nu_star) {
  if (nu_star >= spec.dim()) {
    throw std::invalid_argument("fidelity: eigenstate index out of range");
  }
  const double E = spec.energies[static_cast<Eigen::Index>(nu_star)];
  // degenerate subspace around nu_star
  Eigen::Index lo = static_cast<Eigen::Index>(nu_star);
  Eigen::Index hi = static_cast<Eigen::Index>(nu_star);
  while (lo > 0 && std::abs(spec.energies[lo - 1] - E) < 1e-10) --lo;
  while (hi + 1 < spec.energies.size() &&
         std::abs(spec.energies[hi + 1] - E) < 1e-10) ++hi;
  double sq = 0.0;
  for (Eigen::Index nu = lo; nu <= hi; ++nu) {
    const double ov = spec.vectors.col(nu).dot(phi_loc.vector);
    sq += ov * ov;
  }
  return std::sqrt(sq);
}

}  // namespace sawtooth
