#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace puzzlemix {

struct MeanVar {
  double mean = 0;
  double var = 0;   // unbiased
  double se = 0;    // stderr of the mean
  std::size_t count = 0;
};

MeanVar summarize(std::span<const double> xs);

// Total variation distance (1/2) sum |p_i - q_i| between two vectors of
// the same length (need not be normalized identically; no checks).
double tv_distance(std::span<const double> p, std::span<const double> q);

struct WilsonInterval {
  double lo;
  double hi;
};

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials, double z);

// Z-score of a multinomial goodness-of-fit statistic via the
// Wilson-Hilferty cube-root normal approximation of chi-square.
double chisq_zscore(std::span<const std::uint64_t> counts,
                    std::span<const double> probs);

struct LinearFit {
  double slope;
  double intercept;
};

// Ordinary least squares fit of y against x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Pearson correlation of x[i] with x[i+1].
double lag1_correlation(std::span<const double> x);

}  // namespace puzzlemix
