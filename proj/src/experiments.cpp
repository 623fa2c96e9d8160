#include "puzzlemix/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <iomanip>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "puzzlemix/appendix.hpp"
#include "puzzlemix/coupling.hpp"
#include "puzzlemix/group.hpp"
#include "puzzlemix/parallel.hpp"
#include "puzzlemix/potential.hpp"
#include "puzzlemix/renewal.hpp"
#include "puzzlemix/spectral.hpp"

namespace puzzlemix {

namespace {

struct RowWriter {
  std::ostream& os;
  const ExperimentConfig& cfg;
  std::string t_or_T;

  void header() {
    os << "# puzzlemix results v1\n"
       << "experiment,n,d,t_or_T,trials,statistic,value,stderr,seed\n";
  }
  void row(const std::string& stat, double value,
           double se = std::nan("")) {
    os << cfg.experiment << ',' << cfg.n << ',' << cfg.d << ',' << t_or_T
       << ',' << cfg.trials << ',' << stat << ',' << std::setprecision(17)
       << value << ',';
    if (!std::isnan(se)) os << std::setprecision(17) << se;
    os << ',' << cfg.seed << '\n';
    os.flush();
  }
};

std::string t_or_T_of(const ExperimentConfig& cfg) {
  if (cfg.steps >= 0) return std::to_string(cfg.steps);
  if (cfg.t >= 0) {
    std::ostringstream ss;
    ss << cfg.t;
    return ss.str();
  }
  return "";
}

int workers_of(const ExperimentConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : default_workers();
}

// --------------------------------------------------------------------------
// individual experiments
// --------------------------------------------------------------------------

struct DirTally {
  std::uint64_t dir[4] = {0, 0, 0, 0};
  void merge(const DirTally& o) {
    for (int i = 0; i < 4; ++i) dir[i] += o.dir[i];
  }
};

// First-return direction frequencies of the 1/5-lazy walk started at
// (1,0): the cell from which the origin is first entered.
DirTally first_return_mc(int n, std::int64_t trials, std::uint64_t seed,
                         int workers) {
  return run_trials<DirTally>(
      (std::uint64_t)trials, seed, workers,
      [n](std::uint64_t, Rng& rng, DirTally& tal) {
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
            // entered the origin from (x, y)
            if (x == 1 && y == 0) ++tal.dir[0];
            else if (x == n - 1 && y == 0) ++tal.dir[1];
            else if (x == 0 && y == 1) ++tal.dir[2];
            else ++tal.dir[3];
            return;
          }
          x = tx;
          y = ty;
        }
      });
}

void run_return_probs(const ExperimentConfig& cfg, RowWriter& w) {
  const auto tal =
      first_return_mc(cfg.n, cfg.trials, cfg.seed, workers_of(cfg));
  const double tr = (double)cfg.trials;
  w.row("mc_p_right", tal.dir[0] / tr,
        std::sqrt(tal.dir[0] / tr * (1 - tal.dir[0] / tr) / tr));
  w.row("mc_p_left", tal.dir[1] / tr,
        std::sqrt(tal.dir[1] / tr * (1 - tal.dir[1] / tr) / tr));
  w.row("mc_p_up", tal.dir[2] / tr,
        std::sqrt(tal.dir[2] / tr * (1 - tal.dir[2] / tr) / tr));
  w.row("mc_p_down", tal.dir[3] / tr,
        std::sqrt(tal.dir[3] / tr * (1 - tal.dir[3] / tr) / tr));
  const auto rp = return_probabilities(PotentialTable(cfg.n));
  w.row("formula_p_right", rp.right);
  w.row("formula_p_vertical", rp.vertical);
  w.row("formula_p_left", rp.left);
  const auto lim = limit_return_probabilities();
  w.row("limit_p_right", lim.right);
  w.row("limit_p_vertical", lim.vertical);
  w.row("limit_p_left", lim.left);
}

void run_renewal_moments(const ExperimentConfig& cfg, RowWriter& w) {
  Rng rng(cfg.seed);
  const auto rec = track_renewals(cfg.n, (int)cfg.trials, rng);
  const auto mom = renewal_moments(rec, cfg.n);
  w.row("s2", mom.s2, mom.s2_se);
  w.row("mu", mom.mu, mom.mu_se);
  w.row("mu_over_n2", mom.mu / ((double)cfg.n * cfg.n),
        mom.mu_se / ((double)cfg.n * cfg.n));
  w.row("var_r", mom.var_r);
  w.row("c_puz_hat", mom.c_puz_hat, mom.c_puz_se);
  double mh = 0, mean_m = 0;
  for (std::size_t i = 0; i < rec.H.size(); ++i) {
    mh += rec.H[i];
    mean_m += rec.m[i];
  }
  w.row("mean_H", mh / rec.H.size());
  w.row("mean_m", mean_m / rec.m.size());
  w.row("limit_s2", limit_s2());
  w.row("limit_mu_over_n2", limit_mu_over_n2());
  w.row("c_puz", c_puz());
}

void run_single_piece(const ExperimentConfig& cfg, RowWriter& w) {
  const auto law = single_piece_law(cfg.n, cfg.t, cfg.trials, cfg.seed,
                                    workers_of(cfg));
  w.row("steps", (double)law.steps);
  w.row("tv_uniform_plugin", law.tv_uniform.plugin);
  w.row("tv_uniform_floor", law.tv_uniform.floor_);
  w.row("tv_uniform_corrected", law.tv_uniform.corrected);
  w.row("tv_theta_plugin", law.tv_theta.plugin);
  w.row("tv_theta_floor", law.tv_theta.floor_);
  w.row("tv_theta_corrected", law.tv_theta.corrected);
}

void run_fixed_points(const ExperimentConfig& cfg, RowWriter& w) {
  const std::int64_t T =
      cfg.steps >= 0 ? cfg.steps : scaled_steps(cfg.n, cfg.t);
  const auto rep =
      fixed_point_experiment(cfg.n, T, cfg.trials, cfg.seed, workers_of(cfg));
  w.row("steps", (double)T);
  w.row("mean", rep.mean, rep.mean_se);
  for (int d = 1; d <= 4; ++d)
    w.row("E" + std::to_string(d), rep.ed[d], rep.ed_se[d]);
  w.row("tv_pois1", rep.tv_pois);
}

struct StepTally {
  std::uint64_t sum = 0;
  long double sumsq = 0;
  void merge(const StepTally& o) {
    sum += o.sum;
    sumsq += o.sumsq;
  }
};

void run_hitting(const ExperimentConfig& cfg, RowWriter& w) {
  const ResolventModel rm(cfg.n);
  w.row("chi1_err", std::abs(rm.hitting_char_fun(0.0) - 1.0));
  const double formula = rm.expected_hitting_time();
  w.row("hitting_time_formula", formula);
  w.row("hitting_time_numeric_derivative", rm.expected_hitting_time_numeric());
  if (cfg.trials > 0) {
    const int n = cfg.n;
    auto tal = run_trials<StepTally>(
        (std::uint64_t)cfg.trials, cfg.seed, workers_of(cfg),
        [n](std::uint64_t, Rng& rng, StepTally& t) {
          int x = 1, y = 0;
          std::uint64_t steps = 0;
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
          t.sum += steps;
          t.sumsq += (long double)steps * steps;
        });
    const double mean = (double)tal.sum / cfg.trials;
    const double var =
        (double)((tal.sumsq - (long double)cfg.trials * mean * mean) /
                 (cfg.trials - 1));
    w.row("hitting_time_mc", mean, std::sqrt(var / cfg.trials));
    // Kac return time: steps to leave x and come back
    auto ret = run_trials<StepTally>(
        (std::uint64_t)cfg.trials, cfg.seed ^ 0x9999, workers_of(cfg),
        [n](std::uint64_t, Rng& rng, StepTally& t) {
          int x = 0, y = 0;
          std::uint64_t steps = 0;
          bool left = false;
          while (!left || x != 0 || y != 0) {
            ++steps;
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
          t.sum += steps;
          t.sumsq += (long double)steps * steps;
        });
    const double rmean = (double)ret.sum / cfg.trials;
    const double rvar =
        (double)((ret.sumsq - (long double)cfg.trials * rmean * rmean) /
                 (cfg.trials - 1));
    w.row("return_time_mc", rmean, std::sqrt(rvar / cfg.trials));
    w.row("return_time_exact", 1.25 * cfg.n * cfg.n);
  }
}

void run_eigen_sums(const ExperimentConfig& cfg, RowWriter& w) {
  const auto es = eigen_sums(cfg.n);
  w.row("s1", es.s1);
  w.row("s2", es.s2);
  w.row("s2_over_n2", es.s2 / ((double)cfg.n * cfg.n));
  w.row("completeness", es.completeness);
}

void run_d2_identity(const ExperimentConfig& cfg, RowWriter& w) {
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, cfg.n, cfg.d);
  const int N = cfg.N >= 0 ? cfg.N : 5;
  const auto res = d2_identity_check(cm, N);
  w.row("lhs", res.lhs);
  w.row("rhs", res.rhs);
  w.row("abs_diff", std::abs(res.lhs - res.rhs));
  w.row("d2_from_first_start", d2_from_start(cm, 0, N));
}

void run_pdm_spectrum(const ExperimentConfig& cfg, RowWriter& w) {
  const auto analytic = pdm_spectrum(cfg.n, cfg.d, cfg.M);
  // brute force cross-check when the dense instance is small
  const std::size_t states =
      (std::size_t)std::pow((double)cfg.n * cfg.n, cfg.d + 1);
  if (states <= 5000) {
    MatrixOptions opt;
    opt.M = cfg.M;
    const ChainMatrix cm =
        build_matrix(ChainKind::ProductWalk, cfg.n, cfg.d, opt);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.P);
    std::vector<double> brute(es.eigenvalues().data(),
                              es.eigenvalues().data() + cm.size());
    auto sorted = analytic;
    std::sort(sorted.begin(), sorted.end());
    double worst = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      worst = std::max(worst, std::abs(sorted[i] - brute[i]));
    w.row("max_abs_dev_vs_brute_force", worst);
  }
  for (double c : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0})
    w.row("spectral_sum_c" + std::to_string((int)c),
          pdm_spectral_sum(cfg.n, cfg.d, cfg.M, c));
}

void run_coupling(const ExperimentConfig& cfg, std::ostream& os) {
  // per-run schema from the module interface
  os << "# puzzlemix coupling runs v1\n"
     << "n,d,seed,run,coalescence_steps,stage_restarts\n";
  // collect per-run results keyed by index so the output order is
  // deterministic and independent of the worker count
  std::vector<CouplingRun> results((std::size_t)cfg.trials);
  struct Empty {
    void merge(const Empty&) {}
  };
  run_trials<Empty>((std::uint64_t)cfg.trials, cfg.seed, workers_of(cfg),
                    [&](std::uint64_t i, Rng& rng, Empty&) {
                      results[i] = full_coupling_run(cfg.n, cfg.d, rng);
                    });
  for (std::size_t i = 0; i < results.size(); ++i) {
    os << cfg.n << ',' << cfg.d << ',' << cfg.seed << ',' << i << ','
       << results[i].steps << ',' << results[i].restarts << '\n';
    os.flush();
  }
}

void run_comparison(const ExperimentConfig& cfg, std::ostream& os) {
  const auto cmp = symmetrized_comparison(
      cfg.n, cfg.seed, cfg.trials > 0 ? (int)cfg.trials : 64);
  nlohmann::json rep;
  rep["experiment"] = "comparison";
  rep["n"] = cfg.n;
  rep["d"] = 1;
  rep["seed"] = cfg.seed;
  rep["A"] = cmp.A;
  rep["B"] = cmp.B;
  rep["worst_sampled_ratio"] = cmp.worst_ratio;
  rep["samples"] = cmp.samples;
  rep["form_inequality_holds"] = cmp.worst_ratio <= 1.0 + 1e-9;
  os << rep.dump(2) << '\n';
}

void run_appendix(const ExperimentConfig& cfg, std::ostream& os) {
  nlohmann::json rep = concentration_validators(cfg.seed);
  nlohmann::json omega = nlohmann::json::array();
  for (double t : {50.0, 100.0, 200.0}) {
    const auto wt = omega_weights(t);
    omega.push_back({{"t", t},
                     {"sum", wt.sum()},
                     {"sup", wt.sup()},
                     {"sup_times_t", wt.sup() * t},
                     {"derivative_sup", wt.derivative_sup()},
                     {"derivative_sup_times_t2",
                      wt.derivative_sup() * t * t},
                     {"mass_outside_window", 1.0 - wt.window_mass(0.1)}});
  }
  rep["omega_weights"] = omega;
  os << rep.dump(2) << '\n';
}

}  // namespace

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errors;
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), cfg.experiment) == ids.end()) {
    errors.push_back("experiment: unknown id '" + cfg.experiment + "'");
    return errors;
  }
  const std::string& id = cfg.experiment;
  const bool needs_n = id != "appendix";
  if (needs_n && cfg.n < 2) errors.push_back("n: must be >= 2");
  if ((id == "return-probs" || id == "renewal-moments" ||
       id == "single-piece-tv" || id == "fixed-points" || id == "coupling") &&
      cfg.trials <= 0)
    errors.push_back("trials: must be positive");
  if (id == "single-piece-tv" && cfg.t < 0)
    errors.push_back("t: must be nonnegative");
  if (id == "fixed-points" && cfg.t < 0 && cfg.steps < 0)
    errors.push_back("t: either t or steps is required");
  if (id == "pdm-spectrum" && (cfg.M < 1 || 2 * cfg.M >= cfg.n))
    errors.push_back("M: need 1 <= M < n/2");
  if (cfg.d < 0) errors.push_back("d: must be nonnegative");
  return errors;
}

ExperimentConfig parse_config(std::istream& in,
                              std::vector<std::string>& errors) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(),
               std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(),
               line.end());
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key=value");
      continue;
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "experiment") cfg.experiment = value;
      else if (key == "n") cfg.n = std::stoi(value);
      else if (key == "d") cfg.d = std::stoi(value);
      else if (key == "t") cfg.t = std::stod(value);
      else if (key == "steps" || key == "T") cfg.steps = std::stoll(value);
      else if (key == "trials") cfg.trials = std::stoll(value);
      else if (key == "M") cfg.M = std::stoi(value);
      else if (key == "N") cfg.N = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "out") cfg.out = value;
      else errors.push_back(key + ": unknown key");
    } catch (const std::exception&) {
      errors.push_back(key + ": bad value '" + value + "'");
    }
  }
  return cfg;
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  RowWriter w{out, cfg, t_or_T_of(cfg)};
  const std::string& id = cfg.experiment;
  if (id == "coupling") {
    run_coupling(cfg, out);
    return;
  }
  if (id == "comparison") {
    run_comparison(cfg, out);
    return;
  }
  if (id == "appendix") {
    run_appendix(cfg, out);
    return;
  }
  w.header();
  if (id == "return-probs") run_return_probs(cfg, w);
  else if (id == "renewal-moments") run_renewal_moments(cfg, w);
  else if (id == "single-piece-tv") run_single_piece(cfg, w);
  else if (id == "fixed-points") run_fixed_points(cfg, w);
  else if (id == "hitting") run_hitting(cfg, w);
  else if (id == "eigen-sums") run_eigen_sums(cfg, w);
  else if (id == "d2-identity") run_d2_identity(cfg, w);
  else if (id == "pdm-spectrum") run_pdm_spectrum(cfg, w);
  else throw std::invalid_argument("run_experiment: unknown id " + id);
}

}  // namespace puzzlemix
