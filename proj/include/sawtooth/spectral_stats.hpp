#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sawtooth {

// Nearest-neighbor spacings rescaled to unit mean.
struct UnfoldedSpectrum {
  std::vector<double> spacings;
  std::size_t n_dropped = 0;  // levels trimmed at the band edges
  std::string method;         // "poly<degree>" or "local-mean" fallback
};

struct SpacingHistogram {
  std::vector<double> bin_edges;  // uniform, bin_edges.size() = bins + 1
  std::vector<double> densities;  // sum(density * width) = 1
};

// Smooth the cumulative staircase with a least-squares polynomial and map
// levels through it; falls back to local-mean unfolding if the fitted
// staircase is not monotone on the trimmed interior.
UnfoldedSpectrum unfold(const std::vector<double>& energies,
                        int poly_degree = 10, double trim_fraction = 0.025);

SpacingHistogram histogram(const std::vector<double>& spacings,
                           double bin_width = 0.1, double s_max = 5.0);

double wigner_dyson_pdf(double s);
double poisson_pdf(double s);
double brody_pdf(double s, double beta);

// alpha = sum_i |P(s_i) - P_WD(s_i)| / sum_i P_WD(s_i) over bin centers.
double alpha_indicator(const SpacingHistogram& hist);

// Maximum-likelihood Brody parameter on [0, 1.2], resolved to 1e-4.
double brody_fit(const std::vector<double>& spacings);

// Center of the maximal-density bin; ties resolved toward lower s.
double peak_position(const SpacingHistogram& hist);

struct RStatistic {
  double mean = 0.0;
  std::size_t n_ratios = 0;
  std::size_t n_excluded = 0;  // near-degenerate spacings dropped
};

// <r> over raw (not unfolded) consecutive-gap ratios.
RStatistic r_statistic(const std::vector<double>& energies);

}  // namespace sawtooth
