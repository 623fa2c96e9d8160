#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "puzzlemix/potential.hpp"
#include "puzzlemix/renewal.hpp"
#include "puzzlemix/spectral.hpp"

using namespace puzzlemix;

TEST_CASE("chi(1) = 1 and |chi| <= 1 on the frequency grid") {
  for (int n : {6, 8, 12}) {
    const ResolventModel rm(n);
    CHECK(std::abs(rm.hitting_char_fun(0.0) - 1.0) < 1e-10);
    for (int k = 0; k < 64; ++k) {
      const double xi = (k + 0.5) / 64.0 - 0.5;
      CHECK(std::abs(rm.hitting_char_fun(xi)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("expected hitting time: formula, derivative, and order n^2") {
  for (int n : {8, 16, 32}) {
    const ResolventModel rm(n);
    const double formula = rm.expected_hitting_time();
    if (n <= 16)
      CHECK(std::abs(rm.expected_hitting_time_numeric() / formula - 1.0) <
            1e-6);
    const double ratio = formula / (n * n);
    CHECK(ratio > 0.5);
    CHECK(ratio < 5.0);
  }
}

TEST_CASE("hitting time formula vs simulation at n=8") {
  const int n = 8;
  const ResolventModel rm(n);
  const double formula = rm.expected_hitting_time();
  Rng rng(0x8117);
  const std::int64_t trials = 200000;
  double sum = 0, sumsq = 0;
  for (std::int64_t k = 0; k < trials; ++k) {
    int x = 1, y = 0;
    std::int64_t steps = 0;
    while (x != 0 || y != 0) {
      ++steps;
      const std::uint32_t u = rng.below(5);
      if (u == 4) continue;
      switch (u) {
        case 0: x = x + 1 == n ? 0 : x + 1; break;
        case 1: x = x == 0 ? n - 1 : x - 1; break;
        case 2: y = y + 1 == n ? 0 : y + 1; break;
        default: y = y == 0 ? n - 1 : y - 1; break;
      }
    }
    sum += (double)steps;
    sumsq += (double)steps * steps;
  }
  const double mean = sum / trials;
  const double se =
      std::sqrt((sumsq - trials * mean * mean) / (trials - 1) / trials);
  CHECK(std::abs(mean - formula) < 3.5 * se);
}

TEST_CASE("eigen-sum bounds and completeness") {
  for (int n : {8, 16}) {
    const auto es = eigen_sums(n);
    CHECK(std::abs(es.completeness - 1.0) < 1e-10);
    CHECK(es.s1 >= 1.25);
    CHECK(es.s1 < 5.0);
    CHECK(es.s2 / (n * n) > 0.1);
    CHECK(es.s2 / (n * n) < 10.0);
  }
}

TEST_CASE("d2 identity, averaged over starts") {
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, 3, 1);
  double prev = 1e300;
  for (int N : {0, 1, 5, 20, 60}) {
    const auto r = d2_identity_check(cm, N);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-10);
    CHECK(r.rhs < prev);
    prev = r.rhs;
    if (N == 0) CHECK(r.rhs == doctest::Approx(71.0).epsilon(1e-12));
  }
  CHECK(d2_identity_check(cm, 300).rhs < 1e-6);
}

TEST_CASE("total variation is at most half the d2 distance") {
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, 3, 1);
  const int size = (int)cm.size();
  for (int N : {1, 5, 20}) {
    Eigen::MatrixXd PN = Eigen::MatrixXd::Identity(size, size);
    for (int i = 0; i < N; ++i) PN = PN * cm.P;
    for (int y = 0; y < size; y += 7) {
      double tv = 0;
      for (int x = 0; x < size; ++x)
        tv += std::abs(PN(y, x) - 1.0 / size);
      tv *= 0.5;
      CHECK(tv <= 0.5 * std::sqrt(d2_from_start(cm, y, N)) + 1e-12);
    }
  }
}

TEST_CASE("per-start d2 varies across starts (quotient chain)") {
  // P_d is not vertex-transitive: the per-start squared distance genuinely
  // depends on the start, which is why the averaged identity is checked.
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, 3, 1);
  double lo = 1e300, hi = -1e300, avg = 0;
  for (int y = 0; y < (int)cm.size(); ++y) {
    const double v = d2_from_start(cm, y, 5);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    avg += v;
  }
  avg /= (double)cm.size();
  CHECK(hi - lo > 0.1);
  CHECK(std::abs(avg - d2_identity_check(cm, 5).rhs) < 1e-10);
}

TEST_CASE("P_{d,M} analytic spectrum") {
  // a = 0 gives 1; a_{d+1} != 0 gives exactly 1/2
  const auto spec = pdm_spectrum(5, 1, 1);
  CHECK(spec.size() == 625);
  int ones = 0, halves = 0;
  for (double l : spec) {
    if (std::abs(l - 1.0) < 1e-14) ++ones;
    if (std::abs(l - 0.5) < 1e-14) ++halves;
  }
  CHECK(ones == 1);
  CHECK(halves >= 25 * 24);  // the a_{d+1} != 0 block

  // brute force agreement
  MatrixOptions opt;
  opt.M = 1;
  const ChainMatrix cm = build_matrix(ChainKind::ProductWalk, 5, 1, opt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.P);
  auto sorted = spec;
  std::sort(sorted.begin(), sorted.end());
  double worst = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    worst = std::max(worst, std::abs(sorted[i] - es.eigenvalues()[i]));
  CHECK(worst < 1e-10);

  // spectral sum decreasing in c, tiny at c = 50
  double prev = 1e300;
  for (double c : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    const double s = pdm_spectral_sum(5, 1, 1, c);
    CHECK(s <= prev + 1e-15);
    prev = s;
  }
  CHECK(pdm_spectral_sum(5, 1, 1, 50.0) < 0.01);
  CHECK_THROWS_AS(pdm_spectrum(5, 1, 3), std::invalid_argument);
}

TEST_CASE("Dirichlet form: kernel, hand enumeration, formula agreement") {
  const ChainMatrix srw = build_matrix(ChainKind::Srw, 4, 0);
  // constant functions are in the kernel of I - P
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(16);
  CHECK(dirichlet_form(srw.P, ones) == doctest::Approx(0.0).epsilon(1e-14));
  // indicator of the half {x < 2}: boundary has 8 crossing pairs, each
  // contributing pi * P = (1/16)(1/4), twice (both orientations) with the
  // 1/2 out front: E = 8 * (1/16) * (1/4) = 0.125
  Eigen::VectorXd f(16);
  const Torus t(4);
  for (int cell = 0; cell < 16; ++cell) f[cell] = t.cell(cell).x < 2 ? 1 : 0;
  double oracle = 0;
  for (int cell = 0; cell < 16; ++cell)
    for (int dir = 0; dir < 4; ++dir) {
      const int nb = t.index(t.neighbor(t.cell(cell), dir));
      oracle += 0.5 * (f[cell] - f[nb]) * (f[cell] - f[nb]) * (1.0 / 16) *
                0.25;
    }
  CHECK(oracle == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(dirichlet_form(srw.P, f) == doctest::Approx(oracle).epsilon(1e-12));
  // random functions: ok (the evaluator cross-checks both displays)
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd g(16);
    for (int i = 0; i < 16; ++i) g[i] = rng.gauss();
    CHECK(dirichlet_form(srw.P, g) >= 0.0);
  }
  // non-reversible input rejected
  Eigen::MatrixXd bad = srw.P;
  bad(0, 1) += 0.1;
  bad(0, 0) -= 0.1;
  CHECK_THROWS_AS(dirichlet_form(bad, f), std::invalid_argument);
}

TEST_CASE("comparison constant: self-comparison with unit paths is 1") {
  const ChainMatrix srw = build_matrix(ChainKind::Srw, 4, 0);
  EdgeForm tilde = edge_form_of_chain(srw.P);
  std::map<std::pair<int, int>, std::vector<int>> paths;
  for (const auto& [edge, w] : tilde.weight)
    if (edge.first < edge.second)
      paths[edge] = {edge.first, edge.second};
  CHECK(comparison_constant(tilde, srw.P, paths) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // a missing path is an error naming the edge
  paths.erase(paths.begin());
  CHECK_THROWS_WITH_AS(comparison_constant(tilde, srw.P, paths),
                       doctest::Contains("no path for edge"),
                       std::invalid_argument);
}

TEST_CASE("symmetrized-vs-marginal comparison at n=4, d=1") {
  const auto cmp = symmetrized_comparison(4, 0xC0817A50, 64);
  CHECK(cmp.A >= 1.0);
  CHECK(cmp.worst_ratio <= 1.0 + 1e-9);  // E'(f,f) <= A E_d(f,f) on samples
  CHECK(cmp.B > 0.0);
  CHECK(cmp.B < 50.0);  // index-wise 1 - lambda_{i,s} <= B (1 - lambda_i)
}

TEST_CASE("partial trace moments") {
  // deterministic start
  CHECK(partial_trace_moment(3, 1, 0) == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(partial_trace_moment(3, 2, 0) == doctest::Approx(28.0).epsilon(1e-10));
  // stationary limit (n^2 - d) / (d! n^2)
  CHECK(partial_trace_moment(3, 1, 4000) ==
        doctest::Approx(partial_trace_moment_limit(3, 1)).epsilon(1e-8));
  CHECK(partial_trace_moment(3, 2, 4000) ==
        doctest::Approx(partial_trace_moment_limit(3, 2)).epsilon(1e-8));
  // agreement with Monte-Carlo fixed points at n=3, N=1000
  const double exact = partial_trace_moment(3, 1, 1000);
  const auto rep = fixed_point_experiment(3, 1000, 40000, 0xE1, 2);
  CHECK(std::abs(rep.ed[1] - exact) < 3.0 * rep.ed_se[1]);
}

TEST_CASE("joint characteristic function: normalization and bounds") {
  for (int n : {8, 12}) {
    const ResolventModel rm(n);
    CHECK(std::abs(rm.joint_char_fun(0, 0.0) - 1.0) < 1e-10);
    double c_fit = 1e300;
    for (int xi1 = 0; xi1 <= n / 2; ++xi1)
      for (double xi2 : {0.02, 0.1, 0.25, 0.5}) {
        if (xi1 == 0 && xi2 == 0) continue;
        const double mod = std::abs(rm.joint_char_fun(xi1, xi2));
        CHECK(mod <= 1.0 + 1e-12);
        const double scale =
            std::max((double)xi1 * xi1 / (n * n), xi2 * xi2);
        if (scale > 0) c_fit = std::min(c_fit, (1.0 - mod) / scale);
      }
    CHECK(c_fit > 0.0);  // |chi| <= 1 - c max(xi1^2/n^2, xi2^2)
  }
}

TEST_CASE("joint transform marginal matches simulated r_1 at n=12") {
  const int n = 12;
  const ResolventModel rm(n);
  Rng rng(0x33);
  const auto rec = track_renewals(n, 20000, rng);
  for (double xi2 : {0.1, 0.3}) {
    std::complex<double> emp(0, 0);
    for (auto r : rec.r)
      emp += std::polar(1.0, 2 * 3.14159265358979323846 * xi2 * (double)r);
    emp /= (double)rec.r.size();
    const std::complex<double> exact = rm.joint_char_fun(0, xi2);
    CHECK(std::abs(emp - exact) < 0.03);
  }
}
