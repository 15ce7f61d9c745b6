#pragma once

#include <Eigen/Dense>

#include "sawtooth/basis.hpp"
#include "sawtooth/evolve.hpp"

namespace sawtooth {

// rho_L = Tr_R |psi><psi| for a chain cut after `cut` sites.
struct ReducedDensityMatrix {
  int dim_left = 0;       // 2^cut
  Eigen::MatrixXcd matrix;  // Hermitian, PSD, unit trace
};

ReducedDensityMatrix reduced_density_matrix(const Eigen::VectorXcd& psi,
                                            const SectorBasis& basis, int cut);

// S = -sum lambda ln lambda over eigenvalues above 1e-14, in nats.
double entanglement_entropy(const ReducedDensityMatrix& rho);

// Half-chain entropy along a quench trajectory; `cut` defaults to L/2.
TimeSeries entropy_series(const SpectralData& spec, const Eigen::VectorXd& psi0,
                          const SectorBasis& basis,
                          const std::vector<double>& grid, int cut = -1);

}  // namespace sawtooth
