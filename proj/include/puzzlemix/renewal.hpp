#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "puzzlemix/rng.hpp"

namespace puzzlemix {

// c_puz = (5/2)(pi - 1)
double c_puz();
// floor(c_puz * n^4 * t)
std::int64_t scaled_steps(int n, double t);

// Tracked-piece + blank dynamics on (Z/nZ)^2 (the d = 1 marginal chain),
// unrolled for the hot loops. One call = one chain step including holds.
// Returns 0 (no swap), 1 (horizontal swap) or 2 (vertical swap); on a swap
// `delta` receives the piece's displacement (+1 right/up, -1 left/down).
struct PieceWalker {
  int n;
  int bx, by;  // blank
  int px, py;  // piece

  static PieceWalker start(int n);

  template <class R>
  int step(R& rng, int& delta) {
    // branchless direction tables keep the loop at a few ns per step
    static constexpr int kDx[5] = {1, -1, 0, 0, 0};
    static constexpr int kDy[5] = {0, 0, 1, -1, 0};
    static constexpr int kDelta[5] = {-1, 1, -1, 1, 0};  // piece moves
    static constexpr int kKind[5] = {1, 1, 2, 2, 0};     // toward the blank
    const std::uint32_t u = rng.below(5);
    int tx = bx + kDx[u];
    int ty = by + kDy[u];
    tx = tx == n ? 0 : (tx < 0 ? n - 1 : tx);
    ty = ty == n ? 0 : (ty < 0 ? n - 1 : ty);
    if (tx == px && ty == py) {  // a hold never lands on the piece
      px = bx;
      py = by;
      bx = tx;
      by = ty;
      delta = kDelta[u];
      return kKind[u];
    }
    bx = tx;
    by = ty;
    return 0;
  }
};

// Renewal structure of the tracked piece: alternating stopping times
// t_0 (first vertical swap), t_1 (first horizontal swap after t_0),
// t_2 (next vertical), ... with
//   H_i = net horizontal displacement on [t_{2i-1}, t_{2i})
//   V_i = net vertical displacement on [t_{2i}, t_{2i+1})
//   r_i = t_{2i} - t_{2i-1},  s_i = t_{2i+1} - t_{2i}
//   m_i, n_i = horizontal/vertical swap counts strictly inside the
//   corresponding interval (the opening swap excluded).
struct RenewalRecord {
  int n = 0;
  std::int64_t t0 = 0, t1 = 0;
  int H0 = 0, V0 = 0;  // piece displacement before t_1
  std::vector<std::int64_t> t;  // t_0, t_1, ..., t_{2N+1}
  std::vector<int> H, V;
  std::vector<std::int64_t> r, s;
  std::vector<int> m, nn;
};

RenewalRecord track_renewals(int n, int renewals, Rng& rng);

struct RenewalMoments {
  double s2 = 0, s2_se = 0;      // E[H_1^2]
  double mu = 0, mu_se = 0;      // E[r_1]
  double var_r = 0;              // Var[r_1]
  double c_puz_hat = 0, c_puz_se = 0;
  std::int64_t count = 0;
};

RenewalMoments renewal_moments(const RenewalRecord& rec, int n);

// Closed-form limits from the return probabilities.
double limit_s2();      // ~1.28500
double limit_mu_over_n2();  // ~3.43992

// ---------------------------------------------------------------------------
// Single-piece law at scaled time t: displacement histogram after
// T = floor(c_puz n^4 t) chain steps, with plug-in TV distances against
// the uniform law and the theta grid law. The noise floor replays the
// same estimator on synthetic samples of the target law, so `corrected`
// subtracts the pure sampling bias.
// ---------------------------------------------------------------------------
struct TvEstimate {
  double plugin = 0;
  double floor_ = 0;
  double corrected = 0;
};

struct SinglePieceLaw {
  int n = 0;
  double t = 0;
  std::int64_t steps = 0;
  std::int64_t trials = 0;
  std::vector<double> law;  // empirical displacement law, cell-indexed
  TvEstimate tv_uniform;
  TvEstimate tv_theta;
};

SinglePieceLaw single_piece_law(int n, double t, std::int64_t trials,
                                std::uint64_t seed, int workers);

// TV of an empirical histogram of `trials` draws from `target` against
// `target` itself (the multinomial plug-in bias oracle); averaged over
// `reps` synthetic replicas.
double tv_noise_floor(const std::vector<double>& target, std::int64_t trials,
                      std::uint64_t seed, int reps);

// ---------------------------------------------------------------------------
// Fixed points of the full board after T steps.
// ---------------------------------------------------------------------------
struct FixedPointReport {
  int n = 0;
  std::int64_t steps = 0;
  std::int64_t trials = 0;
  std::vector<double> histogram;    // P(#fixed = k), k = 0..n^2-1
  double mean = 0, mean_se = 0;
  std::array<double, 5> ed{};       // E_d = E[C(F,d)], d = 0..4
  std::array<double, 5> ed_se{};
  double tv_pois = 0;               // TV(histogram, Pois(1))
};

FixedPointReport fixed_point_experiment(int n, std::int64_t T,
                                        std::int64_t trials,
                                        std::uint64_t seed, int workers);

std::vector<double> poisson_pmf(double lambda, int kmax);

}  // namespace puzzlemix
