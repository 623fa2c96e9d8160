#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "puzzlemix/coupling.hpp"
#include "puzzlemix/parallel.hpp"
#include "puzzlemix/stats.hpp"

using namespace puzzlemix;

namespace {

// marginal one-step frequencies of one copy under a joint stepper
template <typename Step>
double marginal_zscore(int n, int d, Step step, std::uint64_t seed,
                       bool need_distinct_blanks) {
  Rng rng(seed);
  std::uint64_t counts[5] = {0, 0, 0, 0, 0};
  const Torus t(n);
  const std::int64_t reps = 200000;
  for (std::int64_t i = 0; i < reps; ++i) {
    CoupledState cs{random_marginal_state(n, d, rng),
                    random_marginal_state(n, d, rng)};
    if (need_distinct_blanks && cs.blanks_equal()) {
      --i;
      continue;
    }
    const TorusPoint before = cs.a.blank;
    step(cs, rng);
    const TorusPoint after = cs.a.blank;
    if (after == before) {
      ++counts[4];
      continue;
    }
    for (int dir = 0; dir < 4; ++dir)
      if (after == t.neighbor(before, dir)) ++counts[dir];
  }
  const std::vector<double> probs(5, 0.2);
  return chisq_zscore(counts, probs);
}

}  // namespace

TEST_CASE("every stage preserves the copy-a one-step law") {
  CHECK(std::abs(marginal_zscore(
            7, 1, [](CoupledState& cs, Rng& r) { standard_blank_coupling_step(cs, r); },
            11, true)) < 3.0);
  CHECK(std::abs(marginal_zscore(
            7, 1, [](CoupledState& cs, Rng& r) { joint_step(cs, r); }, 12,
            false)) < 3.0);
  CHECK(std::abs(marginal_zscore(
            7, 1, [](CoupledState& cs, Rng& r) { opposed_step(cs, r); }, 13,
            false)) < 3.0);
  CHECK(std::abs(marginal_zscore(
            7, 1, [](CoupledState& cs, Rng& r) { independent_step(cs, r); },
            14, false)) < 3.0);
}

TEST_CASE("copy-b law under the standard coupling") {
  CHECK(std::abs(marginal_zscore(
            7, 1,
            [](CoupledState& cs, Rng& r) {
              std::swap(cs.a, cs.b);  // observe the other copy
              standard_blank_coupling_step(cs, r);
              std::swap(cs.a, cs.b);
            },
            15, true)) < 3.0);
}

TEST_CASE("coincident blanks stay coincident, coincident pieces too") {
  Rng rng(5);
  for (int rep = 0; rep < 2000; ++rep) {
    MarginalState a = random_marginal_state(7, 2, rng);
    CoupledState cs{a, a};
    for (int s = 0; s < 20; ++s) {
      joint_step(cs, rng);
      CHECK(cs.blanks_equal());
      CHECK(cs.coalesced());
    }
  }
  // under joint steps a coincident piece never separates even when the
  // rest of the pair differs
  for (int rep = 0; rep < 2000; ++rep) {
    CoupledState cs{random_marginal_state(7, 2, rng),
                    random_marginal_state(7, 2, rng)};
    cs.b.blank = cs.a.blank;
    cs.b.pieces[0] = cs.a.pieces[0];
    if (cs.b.pieces[0] == cs.b.pieces[1]) continue;
    for (int s = 0; s < 10; ++s) {
      joint_step(cs, rng);
      CHECK(cs.a.pieces[0] == cs.b.pieces[0]);
    }
  }
}

TEST_CASE("blank meet time scales like n^2") {
  std::vector<double> logn, logmean;
  for (int n : {5, 9, 15}) {
    Rng rng(100 + n);
    double total = 0;
    const int runs = 400;
    for (int k = 0; k < runs; ++k) {
      CoupledState cs{random_marginal_state(n, 0, rng),
                      random_marginal_state(n, 0, rng)};
      std::int64_t steps = 0;
      while (!cs.blanks_equal()) {
        standard_blank_coupling_step(cs, rng);
        ++steps;
      }
      total += (double)steps;
    }
    logn.push_back(std::log((double)n));
    logmean.push_back(std::log(total / runs));
  }
  const auto fit = fit_line(logn, logmean);
  CHECK(fit.slope > 1.7);
  CHECK(fit.slope < 2.3);
}

TEST_CASE("full run: identical starts, d=0 reduction, determinism") {
  // identical starts coalesce immediately
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const MarginalState a = random_marginal_state(9, 2, rng);
    const auto run = full_coupling_run_from({a, a}, rng);
    CHECK(run.steps == 0);
    CHECK(run.coalesced);
  }
  for (int rep = 0; rep < 50; ++rep) {
    // d = 0: only the blanks, expected time of order n^2
    const auto run = full_coupling_run(9, 0, rng);
    CHECK(run.coalesced);
    CHECK(run.steps < 100 * 81);
  }
  Rng r1(42), r2(42);
  const auto a = full_coupling_run(7, 1, r1);
  const auto b = full_coupling_run(7, 1, r2);
  CHECK(a.steps == b.steps);
  CHECK(a.restarts == b.restarts);
  CHECK_THROWS_AS(full_coupling_run(4, 1, r1), std::invalid_argument);
}

TEST_CASE("coupling time bounds the TV distance") {
  // t = 0 with distinct random starts: bound ~ 1
  const auto at0 = coupling_tv_bound(7, 1, 0, 400, 0x7D, 2);
  CHECK(at0.bound > 0.97);
  // t = 5 n^4: bound at most 0.5 (the acceptance-scale example)
  const std::int64_t t = 5LL * 7 * 7 * 7 * 7;
  const auto at5 = coupling_tv_bound(7, 1, t, 300, 0x7E, 2);
  CHECK(at5.bound <= 0.5);
  CHECK(at5.ci.lo <= at5.bound);
  CHECK(at5.ci.hi >= at5.bound);
  // large t: bound heads to zero
  const auto big = coupling_tv_bound(7, 1, 60LL * 2401, 300, 0x7F, 2);
  CHECK(big.bound < at5.bound + 0.05);
  CHECK(big.bound < 0.1);
}

TEST_CASE("coalescence time distribution at d=1 is n^4-scaled") {
  // the full scaling fit lives in the acceptance battery; here pin one
  // size: mean coalescence at n=7 within a wide sane window
  struct Sum {
    std::uint64_t s = 0;
    void merge(const Sum& o) { s += o.s; }
  };
  auto tal = run_trials<Sum>(200, 0xC0, 2, [](std::uint64_t, Rng& rng, Sum& t) {
    t.s += (std::uint64_t)full_coupling_run(7, 1, rng).steps;
  });
  const double mean = (double)tal.s / 200;
  CHECK(mean > 0.5 * 2401);
  CHECK(mean < 30.0 * 2401 * std::log(7.0));
}
