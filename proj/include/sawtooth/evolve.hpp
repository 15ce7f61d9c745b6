#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sawtooth/sparse.hpp"

namespace sawtooth {

inline constexpr std::size_t kDefaultDenseLimit = 20000;

// Full spectral decomposition of a sector Hamiltonian: ascending
// eigenvalues and orthonormal eigenvector columns.
struct SpectralData {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;

  std::size_t dim() const { return static_cast<std::size_t>(energies.size()); }
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

// Uniform grid of n points on [0, t_max], starting at 0.
std::vector<double> uniform_grid(double t_max, std::size_t n);

SpectralData diagonalize(const SparseOperator& H,
                         std::size_t dense_limit = kDefaultDenseLimit);

// Overlap coefficients C_nu = <psi_nu | psi0>; requires |psi0| = 1.
Eigen::VectorXd amplitudes(const SpectralData& spec,
                           const Eigen::VectorXd& psi0);

// psi(t) in the Fock basis from the spectral decomposition.
Eigen::VectorXcd evolve_state(const SpectralData& spec,
                              const Eigen::VectorXd& coeffs, double t);

// P(t) = |sum_nu |C_nu|^2 exp(-i E_nu t)|^2 on the given grid.
TimeSeries return_probability(const SpectralData& spec,
                              const Eigen::VectorXd& psi0,
                              const std::vector<double>& grid);

// omega_ini = sqrt(<H^2> - <H>^2) for a Fock initial state, computed by
// applying H twice.
double short_time_decay_rate(const SparseOperator& H,
                             const Eigen::VectorXd& psi0);

double time_averaged_return_probability(const SpectralData& spec,
                                        const Eigen::VectorXd& psi0,
                                        double window_T,
                                        std::size_t n_samples);

// First time the series drops below `threshold`, linearly interpolated;
// nullopt if never crossed within the sampled window.
std::optional<double> localization_lifetime(const TimeSeries& P,
                                            double threshold = 0.05);

TimeSeries expectation_series(const SpectralData& spec,
                              const Eigen::VectorXd& psi0,
                              const SparseOperator& O,
                              const std::vector<double>& grid);

double diagonal_ensemble_average(const SpectralData& spec,
                                 const Eigen::VectorXd& psi0,
                                 const SparseOperator& O);

struct MicrocanonicalResult {
  double value = 0.0;
  std::size_t n_states = 0;
  bool low_statistics = false;  // fewer than 100 states in the window
};

MicrocanonicalResult microcanonical_average(const SpectralData& spec,
                                            const SparseOperator& O,
                                            double E_ini, double delta_E);

// Delta_0 = |(O_DE - O_ME) / (O_DE + O_ME)|.
double thermalization_deviation(double O_DE, double O_ME);

// One Krylov (Lanczos) propagation step with adaptive sub-stepping.
Eigen::VectorXcd krylov_evolve(const SparseOperator& H,
                               const Eigen::VectorXcd& psi, double dt,
                               int subspace_dim = 30, double tol = 1e-10);

}  // namespace sawtooth
