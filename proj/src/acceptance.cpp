#include "puzzlemix/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "puzzlemix/appendix.hpp"
#include "puzzlemix/coupling.hpp"
#include "puzzlemix/group.hpp"
#include "puzzlemix/parallel.hpp"
#include "puzzlemix/potential.hpp"
#include "puzzlemix/renewal.hpp"
#include "puzzlemix/special.hpp"
#include "puzzlemix/spectral.hpp"
#include "puzzlemix/stats.hpp"

namespace puzzlemix {

namespace {

// bundled seeds, one per criterion
constexpr std::uint64_t kSeed[13] = {0,
                                     0xACC401ULL, 0xACC402ULL, 0xACC403ULL,
                                     0xACC404ULL, 0xACC405ULL, 0xACC406ULL,
                                     0xACC407ULL, 0xACC408ULL, 0xACC409ULL,
                                     0xACC410ULL, 0xACC411ULL, 0xACC412ULL};

void near(CriterionResult& r, const std::string& name, double value,
          double target, double tol) {
  std::ostringstream req;
  req << "|x - " << target << "| <= " << tol;
  r.checks.push_back(
      {name, value, req.str(), std::abs(value - target) <= tol});
}

void below(CriterionResult& r, const std::string& name, double value,
           double bound) {
  std::ostringstream req;
  req << "x < " << bound;
  r.checks.push_back({name, value, req.str(), value < bound});
}

void within(CriterionResult& r, const std::string& name, double value,
            double lo, double hi) {
  std::ostringstream req;
  req << lo << " <= x <= " << hi;
  r.checks.push_back({name, value, req.str(), lo <= value && value <= hi});
}

void truth(CriterionResult& r, const std::string& name, bool ok) {
  r.checks.push_back({name, ok ? 1.0 : 0.0, "x == 1", ok});
}

// ---------------------------------------------------------------------------

void criterion_return_probs(CriterionResult& r, int workers) {
  const int n = 50;
  const std::int64_t trials = 100000;
  struct DirTally {
    std::uint64_t dir[4] = {0, 0, 0, 0};
    void merge(const DirTally& o) {
      for (int i = 0; i < 4; ++i) dir[i] += o.dir[i];
    }
  };
  auto tal = run_trials<DirTally>(
      trials, kSeed[1], workers, [n](std::uint64_t, Rng& rng, DirTally& t) {
        int x = 1, y = 0;
        for (;;) {
          const std::uint32_t u = rng.below(5);
          if (u == 4) continue;
          int tx = x, ty = y;
          switch (u) {
            case 0: tx = tx + 1 == n ? 0 : tx + 1; break;
            case 1: tx = tx == 0 ? n - 1 : tx - 1; break;
            case 2: ty = ty + 1 == n ? 0 : ty + 1; break;
            default: ty = ty == 0 ? n - 1 : ty - 1; break;
          }
          if (tx == 0 && ty == 0) {
            if (x == 1 && y == 0) ++t.dir[0];
            else if (x == n - 1 && y == 0) ++t.dir[1];
            else if (x == 0 && y == 1) ++t.dir[2];
            else ++t.dir[3];
            return;
          }
          x = tx;
          y = ty;
        }
      });
  const auto lim = limit_return_probabilities();
  const double tr = (double)trials;
  near(r, "mc p_right (n=50)", tal.dir[0] / tr, lim.right, 0.01);
  near(r, "mc p_left (n=50)", tal.dir[1] / tr, lim.left, 0.01);
  near(r, "mc p_up (n=50)", tal.dir[2] / tr, lim.vertical, 0.01);
  near(r, "mc p_down (n=50)", tal.dir[3] / tr, lim.vertical, 0.01);
  const auto rp = return_probabilities(PotentialTable(64));
  near(r, "formula p_right (n=64)", rp.right, lim.right, 0.005);
  near(r, "formula p_vertical (n=64)", rp.vertical, lim.vertical, 0.005);
  near(r, "formula p_left (n=64)", rp.left, lim.left, 0.005);
}

void criterion_renewal_moments(CriterionResult& r, int /*workers*/) {
  const int n = 40;
  const int N = 100000;
  Rng rng(kSeed[2]);
  const auto mom = renewal_moments(track_renewals(n, N, rng), n);
  const double n2 = double(n) * n;
  near(r, "mu_n / n^2", mom.mu / n2, limit_mu_over_n2(),
       0.05 * limit_mu_over_n2());
  near(r, "s_n^2", mom.s2, limit_s2(), 0.05 * limit_s2());
  near(r, "c_puz_hat", mom.c_puz_hat, c_puz(), 0.05 * c_puz());
}

void criterion_hitting(CriterionResult& r, int workers) {
  for (int n : {8, 16, 24}) {
    const ResolventModel rm(n);
    below(r, "|chi(1) - 1| (n=" + std::to_string(n) + ")",
          std::abs(rm.hitting_char_fun(0.0) - 1.0), 1e-10);
  }
  // chi'(1) against Monte-Carlo hitting mean at n = 8
  {
    const int n = 8;
    const ResolventModel rm(n);
    const double formula = rm.expected_hitting_time();
    const std::int64_t trials = 1000000;
    struct Sum {
      std::uint64_t s = 0;
      void merge(const Sum& o) { s += o.s; }
    };
    auto tal = run_trials<Sum>(
        trials, kSeed[3], workers, [n](std::uint64_t, Rng& rng, Sum& t) {
          int x = 1, y = 0;
          while (x != 0 || y != 0) {
            ++t.s;
            const std::uint32_t u = rng.below(5);
            if (u == 4) continue;
            switch (u) {
              case 0: x = x + 1 == n ? 0 : x + 1; break;
              case 1: x = x == 0 ? n - 1 : x - 1; break;
              case 2: y = y + 1 == n ? 0 : y + 1; break;
              default: y = y == 0 ? n - 1 : y - 1; break;
            }
          }
        });
    const double mc = (double)tal.s / trials;
    near(r, "chi'(1) vs mc mean (n=8, rel)", formula / mc, 1.0, 0.02);
  }
  // exact return time (5/4) n^2 vs simulation at n in {10, 20}
  for (int n : {10, 20}) {
    const std::int64_t trials = 400000;
    struct Sum {
      std::uint64_t s = 0;
      void merge(const Sum& o) { s += o.s; }
    };
    auto tal = run_trials<Sum>(
        trials, kSeed[3] + n, workers, [n](std::uint64_t, Rng& rng, Sum& t) {
          int x = 0, y = 0;
          bool left = false;
          while (!left || x != 0 || y != 0) {
            ++t.s;
            const std::uint32_t u = rng.below(5);
            if (u == 4) continue;
            switch (u) {
              case 0: x = x + 1 == n ? 0 : x + 1; break;
              case 1: x = x == 0 ? n - 1 : x - 1; break;
              case 2: y = y + 1 == n ? 0 : y + 1; break;
              default: y = y == 0 ? n - 1 : y - 1; break;
            }
            left = true;
          }
        });
    const double mc = (double)tal.s / trials;
    near(r, "return time mc / ((5/4)n^2), n=" + std::to_string(n),
         mc / (1.25 * n * n), 1.0, 0.02);
  }
}

void criterion_eigen_sums(CriterionResult& r, int /*workers*/) {
  std::vector<double> s2_over_n2;
  for (int n : {8, 16, 32}) {
    const auto es = eigen_sums(n);
    within(r, "S1 (n=" + std::to_string(n) + ")", es.s1, 1.25,
           5.0 - 1e-12);
    s2_over_n2.push_back(es.s2 / (double(n) * n));
  }
  const double ratio =
      *std::max_element(s2_over_n2.begin(), s2_over_n2.end()) /
      *std::min_element(s2_over_n2.begin(), s2_over_n2.end());
  below(r, "S2/n^2 max/min over n in {8,16,32}", ratio, 4.0);
}

void criterion_d2(CriterionResult& r, int /*workers*/) {
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, 3, 1);
  for (int N : {0, 1, 5, 20}) {
    const auto res = d2_identity_check(cm, N);
    below(r, "|lhs - rhs| (N=" + std::to_string(N) + ")",
          std::abs(res.lhs - res.rhs), 1e-10);
  }
}

void criterion_pdm(CriterionResult& r, int /*workers*/) {
  const int n = 5, d = 1, M = 1;
  auto analytic = pdm_spectrum(n, d, M);
  MatrixOptions opt;
  opt.M = M;
  const ChainMatrix cm = build_matrix(ChainKind::ProductWalk, n, d, opt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.P);
  std::sort(analytic.begin(), analytic.end());
  double worst = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i)
    worst = std::max(worst, std::abs(analytic[i] - es.eigenvalues()[i]));
  below(r, "analytic vs brute-force spectrum (n=5,d=1,M=1)", worst, 1e-10);

  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (double c : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    const double s = pdm_spectral_sum(n, d, M, c);
    decreasing = decreasing && s <= prev + 1e-15;
    prev = s;
  }
  truth(r, "spectral sum decreasing in c", decreasing);
  below(r, "spectral sum at c=50", pdm_spectral_sum(n, d, M, 50.0), 0.01);
}

void criterion_three_cycle(CriterionResult& r, int /*workers*/) {
  for (int m : {4, 5}) {
    const ChainMatrix cm = build_matrix(ChainKind::ThreeCycle, m, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.P);
    const int size = (int)cm.size();
    const double gap = 1.0 - es.eigenvalues()[size - 2];
    near(r, "gap (m=" + std::to_string(m) + ")", gap, 3.0 / (m - 1), 1e-9);
  }
}

void criterion_single_piece(CriterionResult& r, int workers) {
  const int n = 20;
  const std::int64_t trials = 100000;
  const auto at01 = single_piece_law(n, 0.1, trials, kSeed[8], workers);
  below(r, "TV(empirical, theta grid) at t=0.1",
        at01.tv_theta.plugin, at01.tv_theta.floor_ + 0.03);
  const auto at2 = single_piece_law(n, 2.0, trials, kSeed[8] + 1, workers);
  below(r, "TV to uniform at t=2 (bias-corrected)",
        at2.tv_uniform.corrected, 0.02);
}

void criterion_fixed_points(CriterionResult& r, int workers) {
  {
    const int n = 8;
    const std::int64_t T = 20LL * n * n * n * n;
    const auto rep = fixed_point_experiment(n, T, 10000, kSeed[9], workers);
    below(r, "TV(counts, Pois(1)) at n=8, T=20n^4", rep.tv_pois, 0.05);
    for (int d = 1; d <= 3; ++d) {
      double fact = 1;
      for (int i = 2; i <= d; ++i) fact *= i;
      near(r, "E" + std::to_string(d) + " vs 1/d!", rep.ed[d], 1.0 / fact,
           3.0 * rep.ed_se[d]);
    }
  }
  {
    const int n = 12;
    const std::int64_t T = scaled_steps(n, 0.1);
    const auto rep = fixed_point_experiment(n, T, 4000, kSeed[9] + 7, workers);
    const double target = ThetaEvaluator(0.1).at_zero();
    near(r, "mean fixed points at n=12, t=0.1 vs theta_0.1(0)", rep.mean,
         target, 3.0 * rep.mean_se);
  }
}

void criterion_coupling(CriterionResult& r, int workers) {
  std::vector<double> logn, logmean, lognorm;
  for (int n : {5, 7, 9, 11}) {
    const std::int64_t runs = 2000;  // criterion asks for >= 200
    struct Sum {
      std::uint64_t steps = 0;
      void merge(const Sum& o) { steps += o.steps; }
    };
    auto tal = run_trials<Sum>(
        (std::uint64_t)runs, kSeed[10] + n, workers,
        [n](std::uint64_t, Rng& rng, Sum& t) {
          t.steps += (std::uint64_t)full_coupling_run(n, 1, rng).steps;
        });
    const double mean = (double)tal.steps / runs;
    logn.push_back(std::log((double)n));
    logmean.push_back(std::log(mean));
    lognorm.push_back(std::log(mean / std::log((double)n)));
    r.checks.push_back({"mean coalescence steps (n=" + std::to_string(n) +
                            ")",
                        mean, "recorded", true});
  }
  // raw fit per the stated criterion; the log-normalized slope is
  // reported alongside since the bound carries a log factor
  const auto fit = fit_line(logn, logmean);
  near(r, "log-log slope of coalescence time", fit.slope, 4.0, 0.4);
  const auto fit_norm = fit_line(logn, lognorm);
  r.checks.push_back({"slope after dividing out log n", fit_norm.slope,
                      "recorded (theorem predicts ~4.0)", true});
}

void criterion_group(CriterionResult& r, int /*workers*/) {
  // generator cycle types
  for (int n : {4, 5, 6}) {
    bool ok = true;
    for (char letter : {'R', 'L', 'U', 'D'}) {
      const auto lens = cycle_lengths(generator(letter, n).perm);
      std::vector<int> expect(n - 1, n);
      expect.push_back(n - 1);
      std::sort(expect.rbegin(), expect.rend());
      ok = ok && lens == expect;
    }
    truth(r, "generator cycle types (n=" + std::to_string(n) + ")", ok);
  }
  // parity invariant along 10^6 random steps at n = 4
  {
    const int n = 4;
    Rng rng(kSeed[11]);
    GroupElement e = identity_element(n);
    const char letters[5] = {'R', 'L', 'U', 'D', '.'};
    bool ok = true;
    for (int step = 0; step < 1000000; ++step) {
      e = compose(e, generator(letters[rng.below(5)], n));
      if ((step & 1023) == 0) ok = ok && parity_invariant_holds(e);
    }
    ok = ok && parity_invariant_holds(e);
    truth(r, "parity invariant over 1e6 steps (n=4)", ok);
  }
  // URDL
  for (int n : {4, 5, 8}) {
    const auto c = commutator_three_cycle(n);
    truth(r, "URDL is a 3-cycle fixing the blank (n=" + std::to_string(n) +
                 ")",
          is_three_cycle(c.perm) && c.ox == 0 && c.oy == 0);
  }
  // all C(15,3) target triples at n = 4
  {
    const int n = 4;
    int failures = 0;
    std::size_t max_len = 0;
    for (int a = 1; a <= 15; ++a)
      for (int b = a + 1; b <= 15; ++b)
        for (int c = b + 1; c <= 15; ++c) {
          const std::string w = route_word({a, b, c}, n);
          max_len = std::max(max_len, w.size());
          const GroupElement g =
              evaluate_word(w + "URDL" + inverse_word(w), n);
          const bool ok = is_three_cycle(g.perm) && g.ox == 0 && g.oy == 0 &&
                          g.perm[a - 1] != a - 1 && g.perm[b - 1] != b - 1 &&
                          g.perm[c - 1] != c - 1;
          failures += !ok;
        }
    truth(r, "route-word conjugates hit all C(15,3) triples (n=4)",
          failures == 0);
    r.checks.push_back({"longest route word (n=4)", (double)max_len,
                        "recorded", true});
  }
}

void criterion_appendix(CriterionResult& r, int /*workers*/) {
  const auto rep = concentration_validators(kSeed[12]);
  truth(r, "reflection maximal inequality",
        rep["reflection_maximal"]["holds"].get<bool>() &&
            rep["reflection_maximal"]["identity_exact_at_odd_levels"]
                .get<bool>());
  truth(r, "Chernoff variant (geometric sums)",
        rep["chernoff_variant_geometric"]["holds"].get<bool>());
  truth(r, "Bernoulli tail bound",
        rep["bernoulli_tail"]["holds"].get<bool>());
  truth(r, "heat-kernel concentration",
        rep["heat_kernel_concentration"]["holds"].get<bool>());

  std::vector<double> c_values;
  for (double t : {50.0, 100.0, 200.0}) {
    const auto wt = omega_weights(t);
    below(r, "|sum omega - 1| (t=" + std::to_string((int)t) + ")",
          std::abs(wt.sum() - 1.0), 1e-8);
    c_values.push_back(wt.sup() * t);
  }
  const double ratio = *std::max_element(c_values.begin(), c_values.end()) /
                       *std::min_element(c_values.begin(), c_values.end());
  below(r, "sup omega_t * t stability (max/min)", ratio, 2.0);
}

}  // namespace

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "return probabilities";
    case 2: return "renewal moments";
    case 3: return "hitting-time exactness";
    case 4: return "eigen-sum bounds";
    case 5: return "d2 identity";
    case 6: return "P_{d,M} spectrum";
    case 7: return "3-cycle gap";
    case 8: return "single-piece law";
    case 9: return "Poisson fixed points";
    case 10: return "coupling scaling";
    case 11: return "group representation";
    case 12: return "appendix suite";
  }
  return "unknown";
}

CriterionResult run_criterion(int id, int workers) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto start = std::chrono::steady_clock::now();
  switch (id) {
    case 1: criterion_return_probs(r, workers); break;
    case 2: criterion_renewal_moments(r, workers); break;
    case 3: criterion_hitting(r, workers); break;
    case 4: criterion_eigen_sums(r, workers); break;
    case 5: criterion_d2(r, workers); break;
    case 6: criterion_pdm(r, workers); break;
    case 7: criterion_three_cycle(r, workers); break;
    case 8: criterion_single_piece(r, workers); break;
    case 9: criterion_fixed_points(r, workers); break;
    case 10: criterion_coupling(r, workers); break;
    case 11: criterion_group(r, workers); break;
    case 12: criterion_appendix(r, workers); break;
    default: throw std::invalid_argument("run_criterion: id out of range");
  }
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  r.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"requirement", c.requirement},
                      {"pass", c.pass}});
  return {{"id", r.id},
          {"title", r.title},
          {"pass", r.pass},
          {"seconds", r.seconds},
          {"checks", checks}};
}

void print_report(const CriterionResult& r, std::ostream& os) {
  os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": "
     << r.title << " (" << r.seconds << " s)\n";
  for (const auto& c : r.checks)
    os << "    " << (c.pass ? "ok  " : "FAIL") << "  " << c.name << " = "
       << c.value << "   (" << c.requirement << ")\n";
}

}  // namespace puzzlemix
