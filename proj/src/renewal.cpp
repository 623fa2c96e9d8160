#include "puzzlemix/renewal.hpp"

#include <cmath>
#include <stdexcept>

#include "puzzlemix/chains.hpp"
#include "puzzlemix/parallel.hpp"
#include "puzzlemix/potential.hpp"
#include "puzzlemix/special.hpp"
#include "puzzlemix/stats.hpp"

namespace puzzlemix {

double c_puz() { return 2.5 * (3.14159265358979323846 - 1.0); }

std::int64_t scaled_steps(int n, double t) {
  const double n4 = std::pow((double)n, 4);
  return (std::int64_t)std::floor(c_puz() * n4 * t);
}

double limit_s2() {
  const auto p = limit_return_probabilities();
  return (1.0 / (2.0 * p.vertical)) * (1.0 - p.right + p.left) /
         (1.0 + p.right - p.left);
}

double limit_mu_over_n2() {
  const auto p = limit_return_probabilities();
  return 1.25 / (2.0 * p.vertical);
}

PieceWalker PieceWalker::start(int n) {
  // piece at the origin, blank mid-board (any fixed start works; the
  // renewal pairs are stationary after t_1)
  return {n, n / 2, n / 2, 0, 0};
}

RenewalRecord track_renewals(int n, int renewals, Rng& rng) {
  if (n < 4) throw std::invalid_argument("track_renewals: n must be >= 4");
  RenewalRecord rec;
  rec.n = n;
  rec.t.reserve(2 * renewals + 2);
  rec.H.reserve(renewals);
  rec.V.reserve(renewals);
  rec.r.reserve(renewals);
  rec.s.reserve(renewals);
  rec.m.reserve(renewals);
  rec.nn.reserve(renewals);

  PieceWalker w = PieceWalker::start(n);
  std::int64_t step = 0;
  int delta = 0;

  // t_0: first vertical swap
  int hacc = 0, vacc = 0;
  for (;;) {
    ++step;
    const int kind = w.step(rng, delta);
    if (kind == 1) hacc += delta;
    if (kind == 2) break;
  }
  rec.t0 = step;
  rec.t.push_back(step);
  vacc += delta;

  // t_1: first horizontal swap after t_0 (its displacement opens H_1)
  for (;;) {
    ++step;
    const int kind = w.step(rng, delta);
    if (kind == 1) break;
    if (kind == 2) vacc += delta;
  }
  rec.t1 = step;
  rec.t.push_back(step);
  rec.H0 = hacc;
  rec.V0 = vacc;

  int opening = delta;  // horizontal move at t_{2i-1}
  for (int i = 0; i < renewals; ++i) {
    // interval [t_{2i-1}, t_{2i}): horizontal displacement, ends at the
    // next vertical swap
    std::int64_t t_prev = rec.t.back();
    int h = opening, swaps = 0;
    for (;;) {
      ++step;
      const int kind = w.step(rng, delta);
      if (kind == 0) continue;
      if (kind == 1) {
        h += delta;
        ++swaps;
      } else {
        break;
      }
    }
    rec.t.push_back(step);
    rec.H.push_back(h);
    rec.m.push_back(swaps);
    rec.r.push_back(step - t_prev);

    // interval [t_{2i}, t_{2i+1}): vertical displacement (the swap at
    // t_{2i} opens it), ends at the next horizontal swap
    t_prev = step;
    int v = delta;
    swaps = 0;
    for (;;) {
      ++step;
      const int kind = w.step(rng, delta);
      if (kind == 0) continue;
      if (kind == 2) {
        v += delta;
        ++swaps;
      } else {
        break;
      }
    }
    rec.t.push_back(step);
    rec.V.push_back(v);
    rec.nn.push_back(swaps);
    rec.s.push_back(step - t_prev);
    opening = delta;
  }
  return rec;
}

RenewalMoments renewal_moments(const RenewalRecord& rec, int n) {
  const std::size_t N = rec.H.size();
  if (N < 2) throw std::invalid_argument("renewal_moments: too few renewals");
  RenewalMoments out;
  out.count = (std::int64_t)N;

  double sum_h2 = 0, sum_r = 0;
  for (std::size_t i = 0; i < N; ++i) {
    sum_h2 += double(rec.H[i]) * rec.H[i];
    sum_r += double(rec.r[i]);
  }
  out.s2 = sum_h2 / N;
  out.mu = sum_r / N;

  double ss_h2 = 0, ss_r = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double h2 = double(rec.H[i]) * rec.H[i];
    ss_h2 += (h2 - out.s2) * (h2 - out.s2);
    ss_r += (rec.r[i] - out.mu) * (rec.r[i] - out.mu);
  }
  out.s2_se = std::sqrt(ss_h2 / (N - 1) / N);
  out.mu_se = std::sqrt(ss_r / (N - 1) / N);
  out.var_r = ss_r / (N - 1);

  const double n2 = double(n) * n;
  out.c_puz_hat = 2.0 * out.mu / (n2 * out.s2);

  // delete-1 jackknife of the ratio estimator
  double jsum = 0, jss = 0;
  std::vector<double> theta(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double mu_i = (sum_r - rec.r[i]) / double(N - 1);
    const double s2_i =
        (sum_h2 - double(rec.H[i]) * rec.H[i]) / double(N - 1);
    theta[i] = 2.0 * mu_i / (n2 * s2_i);
    jsum += theta[i];
  }
  const double jmean = jsum / N;
  for (std::size_t i = 0; i < N; ++i)
    jss += (theta[i] - jmean) * (theta[i] - jmean);
  out.c_puz_se = std::sqrt((double(N) - 1.0) / double(N) * jss);
  return out;
}

// ---------------------------------------------------------------------------
// Single-piece law
// ---------------------------------------------------------------------------

namespace {

struct HistTally {
  std::vector<std::uint64_t> counts;
  void merge(const HistTally& other) {
    if (counts.size() < other.counts.size())
      counts.resize(other.counts.size(), 0);
    for (std::size_t i = 0; i < other.counts.size(); ++i)
      counts[i] += other.counts[i];
  }
};

std::vector<double> theta_grid_law(int n, double t) {
  ThetaEvaluator theta(t);
  std::vector<double> law(n * n);
  double total = 0;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      law[x + n * y] = theta(double(x) / n, double(y) / n);
      total += law[x + n * y];
    }
  for (auto& v : law) v /= total;
  return law;
}

}  // namespace

double tv_noise_floor(const std::vector<double>& target, std::int64_t trials,
                      std::uint64_t seed, int reps) {
  std::vector<double> cdf(target.size());
  double acc = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    acc += target[i];
    cdf[i] = acc;
  }
  double floors = 0;
  for (int rep = 0; rep < reps; ++rep) {
    auto tally = run_trials<HistTally>(
        (std::uint64_t)trials, mix64(seed + 77771 * rep), 1,
        [&](std::uint64_t, Rng& rng, HistTally& t) {
          if (t.counts.empty()) t.counts.assign(target.size(), 0);
          const double u = rng.unit();
          const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
          const std::size_t cell =
              std::min<std::size_t>(it - cdf.begin(), target.size() - 1);
          ++t.counts[cell];
        });
    std::vector<double> emp(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
      emp[i] = double(tally.counts[i]) / double(trials);
    floors += tv_distance(emp, target);
  }
  return floors / reps;
}

SinglePieceLaw single_piece_law(int n, double t, std::int64_t trials,
                                std::uint64_t seed, int workers) {
  if (n < 4) throw std::invalid_argument("single_piece_law: n must be >= 4");
  SinglePieceLaw out;
  out.n = n;
  out.t = t;
  out.steps = scaled_steps(n, t);
  out.trials = trials;

  const std::int64_t T = out.steps;
  auto tally = run_trials<HistTally>(
      (std::uint64_t)trials, seed, workers,
      [&](std::uint64_t, Rng& rng, HistTally& tal) {
        if (tal.counts.empty()) tal.counts.assign((std::size_t)n * n, 0);
        PieceWalker w = PieceWalker::start(n);
        int delta;
        for (std::int64_t s = 0; s < T; ++s) w.step(rng, delta);
        ++tal.counts[w.px + n * w.py];
      });

  out.law.assign((std::size_t)n * n, 0.0);
  for (std::size_t i = 0; i < out.law.size(); ++i)
    out.law[i] = double(tally.counts[i]) / double(trials);

  const std::vector<double> uniform((std::size_t)n * n, 1.0 / (n * n));
  const std::vector<double> theta_law = theta_grid_law(n, t);

  out.tv_uniform.plugin = tv_distance(out.law, uniform);
  out.tv_theta.plugin = tv_distance(out.law, theta_law);
  out.tv_uniform.floor_ = tv_noise_floor(uniform, trials, seed ^ 0xf100f, 3);
  out.tv_theta.floor_ = tv_noise_floor(theta_law, trials, seed ^ 0x7e7a, 3);
  out.tv_uniform.corrected = out.tv_uniform.plugin - out.tv_uniform.floor_;
  out.tv_theta.corrected = out.tv_theta.plugin - out.tv_theta.floor_;
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

std::vector<double> poisson_pmf(double lambda, int kmax) {
  std::vector<double> pmf(kmax + 1);
  double v = std::exp(-lambda);
  for (int k = 0; k <= kmax; ++k) {
    pmf[k] = v;
    v *= lambda / (k + 1);
  }
  return pmf;
}

FixedPointReport fixed_point_experiment(int n, std::int64_t T,
                                        std::int64_t trials,
                                        std::uint64_t seed, int workers) {
  if (n < 3)
    throw std::invalid_argument("fixed_point_experiment: n must be >= 3");
  FixedPointReport out;
  out.n = n;
  out.steps = T;
  out.trials = trials;

  const Torus torus(n);
  const int cells = torus.cells();
  // neighbor table for the hot loop
  std::vector<int> nb(4 * cells);
  for (int c = 0; c < cells; ++c)
    for (int dir = 0; dir < 4; ++dir)
      nb[4 * c + dir] = torus.index(torus.neighbor(torus.cell(c), dir));
  const PuzzleState start = PuzzleState::sorted(n);

  auto tally = run_trials<HistTally>(
      (std::uint64_t)trials, seed, workers,
      [&](std::uint64_t, Rng& rng, HistTally& tal) {
        if (tal.counts.empty()) tal.counts.assign(cells, 0);
        std::vector<int> labels = start.labels();
        int blank = start.blank_index();
        for (std::int64_t s = 0; s < T; ++s) {
          const std::uint32_t u = rng.below(5);
          if (u == 4) continue;
          const int target = nb[4 * blank + u];
          labels[blank] = labels[target];
          labels[target] = 0;
          blank = target;
        }
        int fixed = 0;
        for (int c = 0; c < cells; ++c)
          fixed += labels[c] != 0 && labels[c] == start.labels()[c];
        ++tal.counts[fixed];
      });

  const int kmax = cells - 1;
  out.histogram.assign(kmax + 1, 0.0);
  for (std::size_t k = 0; k < tally.counts.size(); ++k)
    out.histogram[k] = double(tally.counts[k]) / double(trials);

  // moments from the integer histogram
  for (int d = 0; d <= 4; ++d) {
    double sum = 0, sumsq = 0;
    for (int k = 0; k <= kmax; ++k) {
      if (tally.counts[k] == 0) continue;
      // C(k, d)
      double binom = 1;
      for (int j = 0; j < d; ++j) binom *= double(k - j) / (j + 1);
      if (k < d) binom = 0;
      sum += binom * double(tally.counts[k]);
      sumsq += binom * binom * double(tally.counts[k]);
    }
    const double mean = sum / double(trials);
    const double var =
        (sumsq - double(trials) * mean * mean) / double(trials - 1);
    out.ed[d] = mean;
    out.ed_se[d] = std::sqrt(var / double(trials));
  }
  double msum = 0, msumsq = 0;
  for (int k = 0; k <= kmax; ++k) {
    msum += double(k) * double(tally.counts[k]);
    msumsq += double(k) * k * double(tally.counts[k]);
  }
  out.mean = msum / double(trials);
  out.mean_se = std::sqrt(
      (msumsq - double(trials) * out.mean * out.mean) / double(trials - 1) /
      double(trials));

  const auto pois = poisson_pmf(1.0, kmax);
  double tv = 0;
  for (int k = 0; k <= kmax; ++k) tv += std::abs(out.histogram[k] - pois[k]);
  double pois_mass = 0;
  for (double p : pois) pois_mass += p;
  tv += 1.0 - pois_mass;  // Poisson tail beyond kmax
  out.tv_pois = 0.5 * tv;
  return out;
}

}  // namespace puzzlemix
