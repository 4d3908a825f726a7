// Command-line front end: simulate, verify, search, speed, oracle.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpa/commands.hpp"

namespace {

using namespace qpa;

struct AngleFlags {
  std::optional<double> theta, alpha, beta, gamma;
  std::string solution;

  void attach(CLI::App* app) {
    app->add_option("--theta", theta, "theta in degrees, [0, 90]");
    app->add_option("--alpha", alpha, "alpha in degrees, [-180, 180]");
    app->add_option("--beta", beta, "beta in degrees, [-180, 180]");
    app->add_option("--gamma", gamma, "gamma in degrees, [-180, 180]");
    app->add_option("--solution", solution, "take angles from a published run, e.g. B5 or G16");
  }

  UnitaryParams resolve() const {
    double t = 0.0, a = 0.0, b = 0.0, g = 0.0;
    if (!solution.empty()) {
      const auto& r = published_solution(solution);
      t = r.theta;
      a = r.alpha;
      b = r.beta;
      g = r.gamma;
    }
    return UnitaryParams::from_angles(theta.value_or(t), alpha.value_or(a), beta.value_or(b), gamma.value_or(g));
  }
};

CodeScheme code_from_flag(const std::string& s) { return parse_code(s); }

// Expands `--config FILE` into `--key=value` arguments placed ahead of the
// user's own flags, so explicitly given flags take precedence (last one wins).
std::vector<std::string> expand_arguments(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) return args;

  std::vector<std::string> user;
  std::optional<std::string> config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      user.push_back(args[i]);
    }
  }

  std::vector<std::string> out{args[0]};
  if (args[0] == "search") {
    if (const char* env = std::getenv(cli::kSeedEnvVar); env != nullptr && *env != '\0') {
      out.push_back(std::string("--seed=") + env);
    }
  }
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) {
      throw ParseError("cannot read config file '" + *config_path + "'");
    }
    for (const auto& [key, value] : cli::parse_key_value_config(in)) {
      std::string flag = key;
      for (char& c : flag) {
        if (c == '_') c = '-';
      }
      out.push_back("--" + flag + "=" + value);
    }
  }
  out.insert(out.end(), user.begin(), user.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum particle automaton density classification toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // simulate
  cli::SimulateOptions sim;
  AngleFlags sim_angles;
  std::string sim_format = "csv";
  bool sim_compat6 = false, sim_pgm_binary = false;
  auto* simulate = app.add_subcommand("simulate", "evolve from a basis state and write a probability heatmap");
  sim_angles.attach(simulate);
  simulate->add_option("--cells", sim.cells, "lattice length L (even)");
  simulate->add_option("--start", sim.start_cell, "initial cell");
  simulate->add_option("--steps", sim.steps, "number of steps M");
  simulate->add_option("-o,--output", sim.output, "output path, '-' for stdout");
  simulate->add_option("--format", sim_format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}));
  simulate->add_flag("--compat6", sim_compat6, "six-decimal CSV values");
  simulate->add_flag("--pgm-binary", sim_pgm_binary, "write P5 instead of P2");

  // verify
  cli::VerifyOptions ver;
  std::string ver_file;
  auto* verify = app.add_subcommand("verify", "check solution records against the fitness routine");
  verify->add_option("--file", ver_file, "solution-record file (default: built-in published dataset)");
  verify->add_option("--max-steps", ver.max_steps, "step cap");
  verify->add_option("--step-tolerance", ver.step_tolerance, "allowed |best_step - M|");
  verify->add_option("--max-unverified", ver.max_unverified, "rows allowed to miss a perfect score");
  verify->add_option("--threads", ver.threads, "worker threads (0 = all cores)");

  // search
  cli::SearchOptions search;
  std::string search_code = "binary";
  auto* srch = app.add_subcommand("search", "run the genetic algorithm");
  srch->add_option("--pop-size", search.ga.pop_size);
  srch->add_option("--max-gen", search.ga.max_gen);
  srch->add_option("--crossover-rate", search.ga.crossover_rate);
  srch->add_option("--mutation-rate", search.ga.mutation_rate);
  srch->add_option("--theta-std", search.ga.theta_std, "degrees");
  srch->add_option("--phase-std", search.ga.phase_std, "degrees, shared by alpha/beta/gamma");
  srch->add_option("--z-std", search.ga.z_std);
  srch->add_option("--code", search_code)->check(CLI::IsMember({"binary", "gray"}));
  srch->add_option("--max-steps", search.ga.max_steps);
  srch->add_option("--seed", search.ga.master_seed, std::string("master seed (default from ") + cli::kSeedEnvVar + ", else 1)");
  srch->add_option("--threads", search.ga.threads, "worker threads (0 = all cores)");
  srch->add_option("--solutions", search.solution_path, "append the best individual to this record file");
  srch->add_option("--history", search.history_path, "per-generation CSV path (default stdout)");
  srch->add_option("--run-id", search.run_id);
  srch->add_option("--config", "key=value file; flags override it");

  // speed
  cli::SpeedOptions spd;
  AngleFlags spd_angles;
  auto* speed = app.add_subcommand("speed", "measure probability-peak propagation speed");
  spd_angles.attach(speed);
  speed->add_option("--first", spd.window.first, "first step of the fit window");
  speed->add_option("--last", spd.window.last, "last step of the fit window");
  speed->add_option("--cells", spd.cells, "lattice length (0 = wrap-free default)");

  // oracle
  cli::OracleOptions orc;
  AngleFlags orc_angles;
  auto* oracle = app.add_subcommand("oracle", "compare pairwise and dense-matrix evolution");
  orc_angles.attach(oracle);
  oracle->add_option("--cells", orc.cells, "lattice length L (even)");
  oracle->add_option("--steps", orc.steps, "number of steps");

  for (auto* sub : {simulate, verify, speed, oracle}) {
    sub->add_option("--config", "key=value file; flags override it");
  }

  try {
    auto args = expand_arguments(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  try {
    if (*simulate) {
      sim.params = sim_angles.resolve();
      sim.format = sim_format == "pgm" ? cli::HeatmapFormat::Pgm : cli::HeatmapFormat::Csv;
      sim.precision = sim_compat6 ? CsvPrecision::Compat6 : CsvPrecision::Full;
      sim.pgm_encoding = sim_pgm_binary ? PgmEncoding::Binary : PgmEncoding::Ascii;
      return cli::cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*verify) {
      if (ver_file.empty()) {
        ver.records = published_solutions();
      } else {
        std::ifstream in(ver_file);
        if (!in) {
          std::cerr << "error: cannot read '" << ver_file << "'\n";
          return cli::kExitUsage;
        }
        ver.records = parse_solution_file(in);
      }
      return cli::cmd_verify(ver, std::cout, std::cerr);
    }
    if (*srch) {
      search.ga.code = code_from_flag(search_code);
      return cli::cmd_search(search, std::cout, std::cerr);
    }
    if (*speed) {
      spd.params = spd_angles.resolve();
      return cli::cmd_speed(spd, std::cout, std::cerr);
    }
    if (*oracle) {
      orc.params = orc_angles.resolve();
      return cli::cmd_oracle(orc, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
