#include "sawtooth/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "sawtooth/errors.hpp"

namespace sawtooth {

using complexd = std::complex<double>;

std::vector<double> uniform_grid(double t_max, std::size_t n) {
  if (n < 2 || t_max <= 0.0) {
    throw std::invalid_argument("uniform_grid: need n >= 2 and t_max > 0");
  }
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

SpectralData diagonalize(const SparseOperator& H, std::size_t dense_limit) {
  if (H.dim > dense_limit) {
    throw capacity_error("dimension " + std::to_string(H.dim) +
                         " exceeds dense limit " + std::to_string(dense_limit) +
                         "; use the Krylov propagator");
  }
  const Eigen::MatrixXd M = to_dense(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("dense eigensolver failed to converge");
  }
  SpectralData spec;
  spec.energies = solver.eigenvalues();
  spec.vectors = solver.eigenvectors();
  return spec;
}

Eigen::VectorXd amplitudes(const SpectralData& spec,
                           const Eigen::VectorXd& psi0) {
  if (static_cast<std::size_t>(psi0.size()) != spec.dim()) {
    throw std::invalid_argument("amplitudes: dimension mismatch");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("amplitudes: initial state must be normalized");
  }
  return spec.vectors.transpose() * psi0;
}

Eigen::VectorXcd evolve_state(const SpectralData& spec,
                              const Eigen::VectorXd& coeffs, double t) {
  const auto n = static_cast<Eigen::Index>(spec.dim());
  Eigen::VectorXcd phased(n);
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    const double phase = -spec.energies[nu] * t;
    phased[nu] = coeffs[nu] * complexd(std::cos(phase), std::sin(phase));
  }
  return spec.vectors * phased;
}

TimeSeries return_probability(const SpectralData& spec,
                              const Eigen::VectorXd& psi0,
                              const std::vector<double>& grid) {
  const Eigen::VectorXd C = amplitudes(spec, psi0);
  const Eigen::VectorXd w = C.cwiseProduct(C);
  TimeSeries series;
  series.times = grid;
  series.values.resize(grid.size());
  const auto n = static_cast<Eigen::Index>(spec.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    double re = 0.0, im = 0.0;
    for (Eigen::Index nu = 0; nu < n; ++nu) {
      const double phase = spec.energies[nu] * t;
      re += w[nu] * std::cos(phase);
      im -= w[nu] * std::sin(phase);
    }
    series.values[k] = re * re + im * im;
  }
  return series;
}

double short_time_decay_rate(const SparseOperator& H,
                             const Eigen::VectorXd& psi0) {
  if (static_cast<std::size_t>(psi0.size()) != H.dim) {
    throw std::invalid_argument("short_time_decay_rate: dimension mismatch");
  }
  const Eigen::VectorXd Hpsi = apply(H, psi0);
  const double e1 = psi0.dot(Hpsi);
  const double e2 = Hpsi.dot(Hpsi);
  const double var = e2 - e1 * e1;
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

double time_averaged_return_probability(const SpectralData& spec,
                                        const Eigen::VectorXd& psi0,
                                        double window_T,
                                        std::size_t n_samples) {
  const TimeSeries P =
      return_probability(spec, psi0, uniform_grid(window_T, n_samples));
  double sum = 0.0;
  for (double v : P.values) sum += v;
  return sum / static_cast<double>(P.values.size());
}

std::optional<double> localization_lifetime(const TimeSeries& P,
                                            double threshold) {
  for (std::size_t i = 0; i < P.values.size(); ++i) {
    if (P.values[i] < threshold) {
      if (i == 0) return P.times[0];
      const double p0 = P.values[i - 1];
      const double p1 = P.values[i];
      const double t0 = P.times[i - 1];
      const double t1 = P.times[i];
      return t0 + (t1 - t0) * (p0 - threshold) / (p0 - p1);
    }
  }
  return std::nullopt;
}

TimeSeries expectation_series(const SpectralData& spec,
                              const Eigen::VectorXd& psi0,
                              const SparseOperator& O,
                              const std::vector<double>& grid) {
  if (O.dim != spec.dim()) {
    throw std::invalid_argument("expectation_series: dimension mismatch");
  }
  const Eigen::VectorXd C = amplitudes(spec, psi0);
  TimeSeries series;
  series.times = grid;
  series.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXcd psi_t = evolve_state(spec, C, grid[k]);
    const Eigen::VectorXcd Opsi = sawtooth::apply(O, psi_t);
    series.values[k] = psi_t.dot(Opsi).real();
  }
  return series;
}

namespace {

// Eigenbasis diagonal elements O_nunu for the given eigenvector columns.
double eigen_diagonal(const SpectralData& spec, const SparseOperator& O,
                      Eigen::Index nu) {
  const Eigen::VectorXd v = spec.vectors.col(nu);
  return v.dot(sawtooth::apply(O, v));
}

}  // namespace

double diagonal_ensemble_average(const SpectralData& spec,
                                 const Eigen::VectorXd& psi0,
                                 const SparseOperator& O) {
  if (O.dim != spec.dim()) {
    throw std::invalid_argument("diagonal_ensemble_average: dimension mismatch");
  }
  const Eigen::VectorXd C = amplitudes(spec, psi0);
  double sum = 0.0;
  const auto n = static_cast<Eigen::Index>(spec.dim());
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    const double w = C[nu] * C[nu];
    if (w != 0.0) sum += w * eigen_diagonal(spec, O, nu);
  }
  return sum;
}

MicrocanonicalResult microcanonical_average(const SpectralData& spec,
                                            const SparseOperator& O,
                                            double E_ini, double delta_E) {
  if (delta_E <= 0.0) {
    throw std::invalid_argument("microcanonical_average: delta_E must be > 0");
  }
  if (O.dim != spec.dim()) {
    throw std::invalid_argument("microcanonical_average: dimension mismatch");
  }
  MicrocanonicalResult result;
  double sum = 0.0;
  const auto n = static_cast<Eigen::Index>(spec.dim());
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    if (std::abs(E_ini - spec.energies[nu]) < delta_E) {
      sum += eigen_diagonal(spec, O, nu);
      ++result.n_states;
    }
  }
  if (result.n_states == 0) {
    throw empty_window_error("no eigenstates within delta_E of E_ini");
  }
  result.value = sum / static_cast<double>(result.n_states);
  result.low_statistics = result.n_states < 100;
  return result;
}

double thermalization_deviation(double O_DE, double O_ME) {
  const double denom = O_DE + O_ME;
  if (std::abs(denom) < 1e-300) {
    throw undefined_result_error("thermalization_deviation: O_DE + O_ME = 0 "
                                 "(O_DE=" +
                                 std::to_string(O_DE) +
                                 ", O_ME=" + std::to_string(O_ME) + ")");
  }
  return std::abs((O_DE - O_ME) / denom);
}

namespace {

// One Lanczos propagation over `dt` with an a-posteriori error estimate;
// returns false if the estimate exceeds tol.
bool lanczos_step(const SparseOperator& H, const Eigen::VectorXcd& psi,
                  double dt, int m, double tol, Eigen::VectorXcd& out) {
  const auto dim = static_cast<Eigen::Index>(H.dim);
  m = std::min<Eigen::Index>(m, dim);
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(static_cast<std::size_t>(m));
  std::vector<double> alpha, beta;  // beta[j] couples j and j+1

  Eigen::VectorXcd v = psi / psi.norm();
  basis.push_back(v);
  int built = 1;
  double beta_next = 0.0;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = sawtooth::apply(H, basis[static_cast<std::size_t>(j)]);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
    const double a =
        basis[static_cast<std::size_t>(j)].dot(w).real();
    alpha.push_back(a);
    w -= a * basis[static_cast<std::size_t>(j)];
    // full reorthogonalization; the subspace is small
    for (const auto& b : basis) w -= b.dot(w) * b;
    beta_next = w.norm();
    if (j + 1 < m) {
      if (beta_next < 1e-14) {  // invariant subspace; propagation is exact
        built = j + 1;
        beta_next = 0.0;
        break;
      }
      beta.push_back(beta_next);
      basis.push_back(w / beta_next);
      built = j + 2;
    }
  }

  const int k = built;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) T(j, j) = alpha[static_cast<std::size_t>(j)];
  for (int j = 0; j + 1 < k; ++j) {
    T(j, j + 1) = beta[static_cast<std::size_t>(j)];
    T(j + 1, j) = beta[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T);
  const Eigen::VectorXd theta = solver.eigenvalues();
  const Eigen::MatrixXd Q = solver.eigenvectors();
  Eigen::VectorXcd u(k);
  for (int i = 0; i < k; ++i) {
    complexd acc(0.0, 0.0);
    for (int j = 0; j < k; ++j) {
      const double phase = -theta[j] * dt;
      acc += Q(i, j) * complexd(std::cos(phase), std::sin(phase)) * Q(0, j);
    }
    u[i] = acc;
  }
  const double err = std::abs(beta_next * std::abs(u[k - 1]) * dt);
  if (err > tol && k == m) return false;

  out = Eigen::VectorXcd::Zero(dim);
  for (int j = 0; j < k; ++j) out += u[j] * basis[static_cast<std::size_t>(j)];
  out *= psi.norm() / out.norm();
  return true;
}

}  // namespace

Eigen::VectorXcd krylov_evolve(const SparseOperator& H,
                               const Eigen::VectorXcd& psi, double dt,
                               int subspace_dim, double tol) {
  if (static_cast<std::size_t>(psi.size()) != H.dim) {
    throw std::invalid_argument("krylov_evolve: dimension mismatch");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("krylov_evolve: state must be normalized");
  }
  if (dt == 0.0) return psi;

  const int max_splits = 40;
  double step = dt;
  int splits = 0;
  Eigen::VectorXcd current = psi;
  double remaining = dt;
  const double sign = dt > 0 ? 1.0 : -1.0;
  while (sign * remaining > 1e-15 * std::abs(dt)) {
    if (sign * step > sign * remaining) step = remaining;
    Eigen::VectorXcd next;
    if (lanczos_step(H, current, step, subspace_dim, tol, next)) {
      current = next;
      remaining -= step;
    } else {
      step *= 0.5;
      if (++splits > max_splits) {
        throw convergence_error(
            "krylov_evolve: subspace residual did not reach tolerance after "
            "maximum sub-stepping");
      }
    }
  }
  return current / current.norm();
}

}  // namespace sawtooth
