#pragma once

#include <Eigen/Dense>

#include "sawtooth/basis.hpp"
#include "sawtooth/sparse.hpp"

namespace sawtooth {

// Couplings of the sawtooth chain: J on every bond (i, i+1), Jp on every
// bond (i, i+2) with i odd, V between nearest-neighbor densities.
struct ModelParams {
  int L = 0;
  double J = 0.0;
  double Jp = 0.0;
  double V = 0.0;
};

// `plain` adds V * n_i * n_{i+1} per bond; `symmetrized` adds
// V * (n_i - 1/2)(n_{i+1} - 1/2), which commutes with the particle-hole
// complement on the open chain.
enum class InteractionConvention { plain, symmetrized };

InteractionConvention parse_convention(const std::string& name);
std::string convention_name(InteractionConvention c);

SparseOperator build_hamiltonian(const ModelParams& params,
                                 const SectorBasis& basis,
                                 InteractionConvention convention);

Eigen::MatrixXd build_single_particle_hamiltonian(const ModelParams& params);

// Compact localized single-particle state on chain sites
// (2*cell, 2*cell+1, 2*cell+2) with amplitudes (1/2, -sqrt(2)/2, 1/2);
// an eigenstate of the single-particle chain when J = sqrt(2) Jp.
Eigen::VectorXd cl_state(int L, int cell);

// Project onto one particle-hole parity sector. Requires H to commute with
// the complement map (symmetrized interaction); otherwise throws
// symmetry_violation_error.
SparseOperator project_to_ph_sector(const SparseOperator& H,
                                    const SectorBasis& basis,
                                    const PHSectorBasis& sector);

// O = (2/L) sum_i (c_i^dag c_{i+1} + h.c.), the hopping observable used for
// the thermalization comparison.
SparseOperator build_observable_hopping(int L, const SectorBasis& basis);

}  // namespace sawtooth
