// Command-line driver: one subcommand per experiment, plus `accept` for
// the acceptance battery and a few table/matrix exporters.
//
// Exit codes: 0 ok, 2 config error, 3 precondition error. Statistical
// outcomes of experiments never affect the exit status; `accept` returns
// 1 when a criterion fails.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "puzzlemix/acceptance.hpp"
#include "puzzlemix/chains.hpp"
#include "puzzlemix/experiments.hpp"
#include "puzzlemix/group.hpp"
#include "puzzlemix/parallel.hpp"
#include "puzzlemix/potential.hpp"
#include "puzzlemix/spectral.hpp"

namespace {

int run_one(const puzzlemix::ExperimentConfig& cfg) {
  const auto errors = puzzlemix::validate(cfg);
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
    return 2;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.out.empty()) {
      puzzlemix::run_experiment(cfg, std::cout);
    } else {
      std::ofstream out(cfg.out);
      if (!out) {
        std::cerr << "config error: out: cannot open '" << cfg.out << "'\n";
        return 2;
      }
      puzzlemix::run_experiment(cfg, out);
    }
    std::cerr << "wall time: "
              << std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count()
              << " s\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const std::length_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"puzzle mixing laboratory"};
  app.require_subcommand(1);

  puzzlemix::ExperimentConfig cfg;
  auto add_common = [&](CLI::App* sub, bool needs_trials) {
    sub->add_option("--n", cfg.n, "side length");
    sub->add_option("--d", cfg.d, "tracked pieces");
    sub->add_option("--t", cfg.t, "scaled time");
    sub->add_option("--T,--steps", cfg.steps, "explicit chain steps");
    auto* tr = sub->add_option("--trials", cfg.trials,
                               "trials / renewals / runs");
    if (needs_trials) tr->required();
    sub->add_option("--M", cfg.M, "jump range (P_{d,M})");
    sub->add_option("--N", cfg.N, "matrix power");
    sub->add_option("--seed", cfg.seed, "rng seed");
    sub->add_option("--workers", cfg.workers,
                    "worker threads (default: PUZZLEMIX_WORKERS or cores)");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  for (const auto& id : puzzlemix::experiment_ids()) {
    auto* sub = app.add_subcommand(id, "run the " + id + " experiment");
    add_common(sub, id == "return-probs" || id == "renewal-moments" ||
                        id == "single-piece-tv" || id == "fixed-points" ||
                        id == "coupling");
    sub->callback([&, id] {
      cfg.experiment = id;
      std::exit(run_one(cfg));
    });
  }

  // run from a flat key=value config document
  {
    static std::string config_path;
    auto* sub = app.add_subcommand("run", "run an experiment from a config file");
    sub->add_option("--config", config_path, "key=value file")->required();
    sub->callback([&] {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "config error: cannot open '" << config_path << "'\n";
        std::exit(2);
      }
      std::vector<std::string> errors;
      puzzlemix::ExperimentConfig parsed =
          puzzlemix::parse_config(in, errors);
      for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
      if (!errors.empty()) std::exit(2);
      std::exit(run_one(parsed));
    });
  }

  // exporters
  {
    static int n = 16;
    static std::string out_path;
    auto* sub = app.add_subcommand("green-table",
                                   "export the potential kernel as CSV");
    sub->add_option("--n", n, "side length")->required();
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->callback([&] {
      try {
        puzzlemix::PotentialTable table(n);
        if (out_path.empty()) {
          table.write_csv(std::cout);
        } else {
          std::ofstream out(out_path);
          table.write_csv(out);
        }
      } catch (const std::exception& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        std::exit(3);
      }
      std::exit(0);
    });
  }
  {
    static std::string kind = "marginal";
    static int n = 3, d = 1, M = 1;
    static std::string out_path;
    auto* sub = app.add_subcommand(
        "export-matrix", "export a chain matrix as sparse triples");
    sub->add_option("--chain", kind,
                    "lazy-srw|srw|marginal|symmetrized|product|three-cycle|"
                    "full-puzzle|s-walk");
    sub->add_option("--n", n, "side length (group degree for three-cycle)")
        ->required();
    sub->add_option("--d", d, "tracked pieces");
    sub->add_option("--M", M, "jump range");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->callback([&] {
      try {
        puzzlemix::ChainMatrix cm;
        if (kind == "s-walk") {
          cm.P = puzzlemix::s_generator_walk_matrix(n);
          cm.kind = puzzlemix::ChainKind::Marginal;  // unused
        } else {
          puzzlemix::ChainKind ck;
          if (kind == "lazy-srw") ck = puzzlemix::ChainKind::LazySrw;
          else if (kind == "srw") ck = puzzlemix::ChainKind::Srw;
          else if (kind == "marginal") ck = puzzlemix::ChainKind::Marginal;
          else if (kind == "symmetrized")
            ck = puzzlemix::ChainKind::Symmetrized;
          else if (kind == "product") ck = puzzlemix::ChainKind::ProductWalk;
          else if (kind == "three-cycle")
            ck = puzzlemix::ChainKind::ThreeCycle;
          else if (kind == "full-puzzle")
            ck = puzzlemix::ChainKind::FullPuzzle;
          else {
            std::cerr << "config error: chain: unknown kind '" << kind
                      << "'\n";
            std::exit(2);
          }
          puzzlemix::MatrixOptions opt;
          opt.M = M;
          cm = puzzlemix::build_matrix(ck, n, d, opt);
        }
        if (out_path.empty()) {
          cm.write_triples(std::cout);
        } else {
          std::ofstream out(out_path);
          cm.write_triples(out);
        }
      } catch (const std::length_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        std::exit(3);
      } catch (const std::invalid_argument& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        std::exit(3);
      }
      std::exit(0);
    });
  }
  {
    static int n = 16;
    static std::string out_path;
    auto* sub = app.add_subcommand(
        "spectrum", "export eigenvalues/overlaps of P' as CSV");
    sub->add_option("--n", n, "side length")->required();
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->callback([&] {
      const auto s = puzzlemix::p_prime_spectrum(n);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
      }
      *os << "index,eigenvalue,overlap\n";
      for (int i = 0; i < s.eigenvalues.size(); ++i)
        *os << i << ',' << s.eigenvalues[i] << ',' << s.overlaps[i] << '\n';
      std::exit(0);
    });
  }

  // acceptance battery
  {
    static bool list = false;
    static int criterion = 0;
    static int workers = 0;
    static std::string out_path, fixture;
    auto* sub = app.add_subcommand("accept", "run the acceptance criteria");
    sub->add_flag("--list", list, "enumerate criteria without running");
    sub->add_option("--criterion", criterion, "run a single criterion 1..12");
    sub->add_option("--workers", workers, "worker threads");
    sub->add_option("--out", out_path, "JSON report path");
    sub->add_option("--fixture", fixture,
                    "verdict fixture to compare against");
    sub->callback([&] {
      if (list) {
        for (int id = 1; id <= puzzlemix::kCriterionCount; ++id)
          std::cout << id << ": " << puzzlemix::criterion_title(id) << "\n";
        std::exit(0);
      }
      const int w = workers > 0 ? workers : puzzlemix::default_workers();
      std::vector<int> ids;
      if (criterion > 0) ids.push_back(criterion);
      else
        for (int id = 1; id <= puzzlemix::kCriterionCount; ++id)
          ids.push_back(id);

      nlohmann::json fixture_json;
      if (!fixture.empty()) {
        std::ifstream in(fixture);
        if (!in) {
          std::cerr << "config error: cannot open fixture '" << fixture
                    << "'\n";
          std::exit(2);
        }
        in >> fixture_json;
      }

      nlohmann::json report = nlohmann::json::array();
      bool all_pass = true;
      bool fixture_ok = true;
      for (int id : ids) {
        const auto res = puzzlemix::run_criterion(id, w);
        puzzlemix::print_report(res, std::cout);
        report.push_back(puzzlemix::to_json(res));
        all_pass = all_pass && res.pass;
        if (!fixture_json.is_null()) {
          const auto key = std::to_string(id);
          if (fixture_json.contains(key) &&
              fixture_json[key].get<bool>() != res.pass) {
            std::cout << "fixture mismatch for criterion " << id << "\n";
            fixture_ok = false;
          }
        }
      }
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
      }
      std::exit(all_pass && fixture_ok ? 0 : 1);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 2 = config error
  }
  return 0;
}
