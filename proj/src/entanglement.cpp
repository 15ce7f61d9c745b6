#include "sawtooth/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace sawtooth {

ReducedDensityMatrix reduced_density_matrix(const Eigen::VectorXcd& psi,
                                            const SectorBasis& basis, int cut) {
  if (static_cast<std::size_t>(psi.size()) != basis.dim()) {
    throw std::invalid_argument("reduced_density_matrix: dimension mismatch");
  }
  if (cut < 1 || cut >= basis.L) {
    throw std::invalid_argument("reduced_density_matrix: cut must be in 1..L-1");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("reduced_density_matrix: state must be normalized");
  }
  const int n_left = cut;
  const int n_right = basis.L - cut;
  const auto dim_left = Eigen::Index{1} << n_left;
  const auto dim_right = Eigen::Index{1} << n_right;
  const FockState left_mask = (FockState{1} << n_left) - 1;

  // Amplitude matrix A(left pattern, right pattern); rho_L = A A^dagger.
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim_left, dim_right);
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const FockState s = basis.states[k];
    const auto l = static_cast<Eigen::Index>(s & left_mask);
    const auto r = static_cast<Eigen::Index>(s >> n_left);
    A(l, r) = psi[static_cast<Eigen::Index>(k)];
  }

  ReducedDensityMatrix rho;
  rho.dim_left = static_cast<int>(dim_left);
  rho.matrix = A * A.adjoint();
  return rho;
}

double entanglement_entropy(const ReducedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix);
  double S = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 1e-14) S -= lambda * std::log(lambda);
  }
  return S;
}

TimeSeries entropy_series(const SpectralData& spec, const Eigen::VectorXd& psi0,
                          const SectorBasis& basis,
                          const std::vector<double>& grid, int cut) {
  if (cut < 0) cut = basis.L / 2;
  const Eigen::VectorXd C = amplitudes(spec, psi0);
  TimeSeries series;
  series.times = grid;
  series.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Eigen::VectorXcd psi_t = evolve_state(spec, C, grid[k]);
    psi_t /= psi_t.norm();
    series.values[k] =
        entanglement_entropy(reduced_density_matrix(psi_t, basis, cut));
  }
  return series;
}

}  // namespace sawtooth
