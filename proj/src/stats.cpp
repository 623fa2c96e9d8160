#include "puzzlemix/stats.hpp"

#include <cmath>

namespace puzzlemix {

MeanVar summarize(std::span<const double> xs) {
  MeanVar mv;
  mv.count = xs.size();
  if (xs.empty()) return mv;
  double s = 0;
  for (double x : xs) s += x;
  mv.mean = s / double(xs.size());
  if (xs.size() < 2) return mv;
  double ss = 0;
  for (double x : xs) ss += (x - mv.mean) * (x - mv.mean);
  mv.var = ss / double(xs.size() - 1);
  mv.se = std::sqrt(mv.var / double(xs.size()));
  return mv;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials,
                      double z) {
  const double n = double(trials);
  const double ph = double(successes) / n;
  const double z2 = z * z;
  const double den = 1 + z2 / n;
  const double center = (ph + z2 / (2 * n)) / den;
  const double half =
      z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / den;
  return {center - half, center + half};
}

double chisq_zscore(std::span<const std::uint64_t> counts,
                    std::span<const double> probs) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double n = double(total);
  double stat = 0;
  int df = -1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * probs[i];
    if (e <= 0) continue;
    const double d = double(counts[i]) - e;
    stat += d * d / e;
    ++df;
  }
  if (df < 1) return 0;
  // Wilson-Hilferty: (X/k)^(1/3) approx N(1 - 2/(9k), 2/(9k))
  const double k = double(df);
  const double c = std::cbrt(stat / k);
  return (c - (1 - 2 / (9 * k))) / std::sqrt(2 / (9 * k));
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double d = double(n) * sxx - sx * sx;
  const double slope = (double(n) * sxy - sx * sy) / d;
  return {slope, (sy - slope * sx) / double(n)};
}

double lag1_correlation(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) return 0;
  double m = 0;
  for (double v : x) m += v;
  m /= double(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (x[i] - m) * (x[i] - m);
    if (i + 1 < n) num += (x[i] - m) * (x[i + 1] - m);
  }
  return den > 0 ? num / den : 0;
}

}  // namespace puzzlemix
