#pragma once

#include <Eigen/Dense>

#include "sawtooth/basis.hpp"
#include "sawtooth/evolve.hpp"
#include "sawtooth/hamiltonian.hpp"

namespace sawtooth {

// Second-order perturbative localized eigenstate around the Ising limit for
// L = 4m+2 chains. Support: the domain-wall pattern, the pattern with the
// wall particle hopped one site right, the pattern with it hopped two sites
// right, and their particle-hole complements.
struct PerturbativeState {
  Eigen::VectorXd vector;  // normalized, in the N = L/2 sector
  double c2 = 0.0;         // raw amplitude J/V + Jp*J/V^2
  double c3 = 0.0;         // raw amplitude Jp/V + J^2/V^2
};

PerturbativeState build_phi_loc(const ModelParams& params,
                                const SectorBasis& basis);

struct LocalizedEigenstate {
  std::size_t index = 0;
  double overlap = 0.0;
};

// Eigenstate with the largest |<psi_DW|psi_nu>|; ties resolved toward the
// lower energy.
LocalizedEigenstate find_localized_eigenstate(const SpectralData& spec,
                                              const Eigen::VectorXd& psi_dw);

// F = |<phi_loc|psi_nu*>|. When the located eigenvalue is degenerate
// (gap < 1e-10) the projection norm onto the whole degenerate subspace is
// returned instead.
double fidelity(const PerturbativeState& phi_loc, const SpectralData& spec,
                std::size_t nu_star);

}  // namespace sawtooth
