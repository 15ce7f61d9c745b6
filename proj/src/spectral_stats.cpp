#include "sawtooth/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "sawtooth/errors.hpp"

namespace sawtooth {

namespace {

void rescale_to_unit_mean(std::vector<double>& spacings) {
  double sum = 0.0;
  for (double s : spacings) sum += s;
  const double mean = sum / static_cast<double>(spacings.size());
  if (mean <= 0.0) {
    throw std::invalid_argument("unfold: spectrum has non-positive mean spacing");
  }
  for (double& s : spacings) s /= mean;
}

}  // namespace

UnfoldedSpectrum unfold(const std::vector<double>& energies, int poly_degree,
                        double trim_fraction) {
  const std::size_t n = energies.size();
  const auto n_trim = static_cast<std::size_t>(
      std::floor(trim_fraction * static_cast<double>(n)));
  if (n < 2 * n_trim + 50) {
    throw std::invalid_argument("unfold: need at least 50 levels after trimming");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (energies[i] < energies[i - 1]) {
      throw std::invalid_argument("unfold: energies must be ascending");
    }
  }

  UnfoldedSpectrum out;
  out.n_dropped = 2 * n_trim;

  // Least-squares polynomial fit of the cumulative staircase N(E) = i + 1/2,
  // with E mapped to [-1, 1] for conditioning (and affine covariance).
  const double e_lo = energies.front();
  const double e_hi = energies.back();
  const double mid = 0.5 * (e_lo + e_hi);
  const double half = std::max(0.5 * (e_hi - e_lo), 1e-300);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd A(ni, poly_degree + 1);
  Eigen::VectorXd y(ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    const double x = (energies[static_cast<std::size_t>(i)] - mid) / half;
    double p = 1.0;
    for (int d = 0; d <= poly_degree; ++d) {
      A(i, d) = p;
      p *= x;
    }
    y[i] = static_cast<double>(i) + 0.5;
  }
  const Eigen::VectorXd coeff = A.householderQr().solve(y);
  auto staircase = [&](double e) {
    const double x = (e - mid) / half;
    double acc = 0.0;
    double p = 1.0;
    for (int d = 0; d <= poly_degree; ++d) {
      acc += coeff[d] * p;
      p *= x;
    }
    return acc;
  };

  const std::size_t first = n_trim;
  const std::size_t last = n - n_trim;  // one past the end
  std::vector<double> spacings;
  spacings.reserve(last - first - 1);
  bool monotone = true;
  for (std::size_t i = first; i + 1 < last; ++i) {
    const double s = staircase(energies[i + 1]) - staircase(energies[i]);
    if (s < 0.0) {
      monotone = false;
      break;
    }
    spacings.push_back(s);
  }

  if (monotone) {
    out.method = "poly" + std::to_string(poly_degree);
  } else {
    // Local-mean unfolding: divide each raw spacing by the mean over a
    // sliding window of 20 spacings around it.
    constexpr std::size_t kWindow = 20;
    std::vector<double> raw;
    raw.reserve(last - first - 1);
    for (std::size_t i = first; i + 1 < last; ++i) {
      raw.push_back(energies[i + 1] - energies[i]);
    }
    spacings.clear();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const std::size_t lo = i > kWindow / 2 ? i - kWindow / 2 : 0;
      const std::size_t hi = std::min(lo + kWindow, raw.size());
      double local = 0.0;
      for (std::size_t j = lo; j < hi; ++j) local += raw[j];
      local /= static_cast<double>(hi - lo);
      spacings.push_back(local > 0.0 ? raw[i] / local : 0.0);
    }
    out.method = "local-mean";
  }

  rescale_to_unit_mean(spacings);
  out.spacings = std::move(spacings);
  return out;
}

SpacingHistogram histogram(const std::vector<double>& spacings,
                           double bin_width, double s_max) {
  if (spacings.empty() || bin_width <= 0.0 || s_max <= bin_width) {
    throw std::invalid_argument("histogram: bad input");
  }
  const auto bins = static_cast<std::size_t>(std::llround(s_max / bin_width));
  SpacingHistogram hist;
  hist.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    hist.bin_edges[b] = static_cast<double>(b) * bin_width;
  }
  std::vector<std::size_t> counts(bins, 0);
  std::size_t in_range = 0;
  for (double s : spacings) {
    if (s < 0.0 || s >= s_max) continue;
    const auto b = std::min(
        bins - 1, static_cast<std::size_t>(std::floor(s / bin_width)));
    ++counts[b];
    ++in_range;
  }
  if (in_range == 0) {
    throw std::invalid_argument("histogram: no spacings within [0, s_max)");
  }
  hist.densities.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    hist.densities[b] = static_cast<double>(counts[b]) /
                        (static_cast<double>(in_range) * bin_width);
  }
  return hist;
}

double wigner_dyson_pdf(double s) {
  const double pi = std::numbers::pi;
  return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

double poisson_pdf(double s) { return std::exp(-s); }

double brody_pdf(double s, double beta) {
  const double b = std::pow(std::tgamma((beta + 2.0) / (beta + 1.0)), beta + 1.0);
  return (beta + 1.0) * b * std::pow(s, beta) *
         std::exp(-b * std::pow(s, beta + 1.0));
}

double alpha_indicator(const SpacingHistogram& hist) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t b = 0; b + 1 < hist.bin_edges.size(); ++b) {
    const double center = 0.5 * (hist.bin_edges[b] + hist.bin_edges[b + 1]);
    const double wd = wigner_dyson_pdf(center);
    num += std::abs(hist.densities[b] - wd);
    den += wd;
  }
  return num / den;
}

double brody_fit(const std::vector<double>& spacings) {
  if (spacings.size() < 100) {
    throw std::invalid_argument("brody_fit: need at least 100 spacings");
  }
  std::vector<double> positive;
  positive.reserve(spacings.size());
  for (double s : spacings) {
    if (s > 0.0) positive.push_back(s);
  }
  if (positive.size() < 100) {
    throw fit_failure_error("brody_fit: too few positive spacings");
  }
  const double lo_v = *std::min_element(positive.begin(), positive.end());
  const double hi_v = *std::max_element(positive.begin(), positive.end());
  if (hi_v - lo_v < 1e-12 * hi_v) {
    throw fit_failure_error("brody_fit: degenerate spacing sample");
  }

  auto nll = [&](double beta) {
    const double b =
        std::pow(std::tgamma((beta + 2.0) / (beta + 1.0)), beta + 1.0);
    const double log_pref = std::log(beta + 1.0) + std::log(b);
    double acc = 0.0;
    for (double s : positive) {
      acc -= log_pref + beta * std::log(s) - b * std::pow(s, beta + 1.0);
    }
    return acc;
  };

  // golden-section search on [0, 1.2]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, c = 1.2;
  double x1 = c - gr * (c - a);
  double x2 = a + gr * (c - a);
  double f1 = nll(x1), f2 = nll(x2);
  while (c - a > 1e-5) {
    if (f1 < f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - gr * (c - a);
      f1 = nll(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (c - a);
      f2 = nll(x2);
    }
  }
  return 0.5 * (a + c);
}

double peak_position(const SpacingHistogram& hist) {
  if (hist.densities.empty()) {
    throw std::invalid_argument("peak_position: empty histogram");
  }
  std::size_t best = 0;
  for (std::size_t b = 1; b < hist.densities.size(); ++b) {
    if (hist.densities[b] > hist.densities[best]) best = b;
  }
  return 0.5 * (hist.bin_edges[best] + hist.bin_edges[best + 1]);
}

RStatistic r_statistic(const std::vector<double>& energies) {
  if (energies.size() < 3) {
    throw std::invalid_argument("r_statistic: need at least 3 levels");
  }
  const double width = energies.back() - energies.front();
  const double cutoff = 1e-12 * width;
  std::vector<double> spacings;
  RStatistic stat;
  spacings.reserve(energies.size() - 1);
  for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
    const double s = energies[i + 1] - energies[i];
    if (s < 0.0) {
      throw std::invalid_argument("r_statistic: energies must be ascending");
    }
    if (s <= cutoff) {
      ++stat.n_excluded;
    } else {
      spacings.push_back(s);
    }
  }
  if (spacings.size() < 2) {
    throw undefined_result_error(
        "r_statistic: all spacings degenerate; <r> undefined");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < spacings.size(); ++i) {
    const double lo = std::min(spacings[i], spacings[i + 1]);
    const double hi = std::max(spacings[i], spacings[i + 1]);
    sum += lo / hi;
    ++stat.n_ratios;
  }
  stat.mean = sum / static_cast<double>(stat.n_ratios);
  return stat;
}

}  // namespace sawtooth
