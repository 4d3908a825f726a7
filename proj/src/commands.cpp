#include "qpa/commands.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace qpa::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string fmt_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Writes through `fn` to the file at `path`, or to `out` when path is "-".
template <typename Fn>
bool write_output(const std::string& path, std::ostream& out, std::ostream& err, std::ios::openmode mode, Fn fn) {
  if (path == "-") {
    fn(out);
    return static_cast<bool>(out);
  }
  std::ofstream file(path, mode);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  fn(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

}  // namespace

std::map<std::string, std::string> parse_key_value_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    }
    out[std::string(key)] = std::string(trim(t.substr(eq + 1)));
  }
  return out;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto u = build_block_unitary(opts.params);
    const auto trace = evolve(init_basis_state(opts.cells, opts.start_cell), u, opts.steps);
    const auto rows = trace.probability_matrix();
    const auto mode = opts.format == HeatmapFormat::Pgm && opts.pgm_encoding == PgmEncoding::Binary
                          ? std::ios::out | std::ios::binary
                          : std::ios::out;
    const bool ok = write_output(opts.output, out, err, mode, [&](std::ostream& os) {
      if (opts.format == HeatmapFormat::Csv) {
        write_heatmap_csv(os, rows, opts.precision);
      } else {
        write_heatmap_pgm(os, rows, opts.pgm_encoding);
      }
    });
    return ok ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

VerifyReport verify_solutions(const VerifyOptions& opts) {
  VerifyReport report;
  report.rows.resize(opts.records.size());

  auto check = [&](std::size_t i) {
    const SolutionRecord& rec = opts.records[i];
    VerifyRow row;
    row.record = rec;
    row.report = fitness_appendix(rec.params(), rec.partition(), rec.code, opts.max_steps);
    row.solved = row.report.fitness == static_cast<int>(kPartitionBits);
    row.step_delta = static_cast<long long>(row.report.best_step) - static_cast<long long>(rec.m_steps);
    row.within_tolerance = row.solved && std::llabs(row.step_delta) <= static_cast<long long>(opts.step_tolerance);
    report.rows[i] = std::move(row);
  };

  std::size_t threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = std::min(threads, std::max<std::size_t>(1, opts.records.size()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < threads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < opts.records.size(); i += threads) check(i);
    }));
  }
  for (auto& j : jobs) j.get();

  for (const auto& row : report.rows) {
    report.solved += row.solved ? 1 : 0;
    report.solved_within_tolerance += row.within_tolerance ? 1 : 0;
  }
  const std::size_t unsolved = report.rows.size() - report.solved;
  report.passed = unsolved <= opts.max_unverified && report.solved_within_tolerance == report.solved;
  return report;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  VerifyReport report;
  try {
    report = verify_solutions(opts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << "run_id,code,fitness,best_step,published_m,delta,status\n";
  for (const auto& row : report.rows) {
    const char* status = row.within_tolerance ? "ok" : (row.solved ? "step-mismatch" : "unsolved");
    out << row.record.run_id << ',' << code_name(row.record.code) << ',' << row.report.fitness << ','
        << row.report.best_step << ',' << row.record.m_steps << ',' << row.step_delta << ',' << status << '\n';
  }
  out << "# solved " << report.solved << '/' << report.rows.size() << ", within +/-" << opts.step_tolerance
      << " steps " << report.solved_within_tolerance << '/' << report.solved << ": "
      << (report.passed ? "PASS" : "FAIL") << '\n';
  return report.passed ? kExitOk : kExitShortfall;
}

std::string format_history_line(const ga::GenerationRecord& rec) {
  std::ostringstream os;
  os << rec.generation << ',' << rec.best_fitness << ',' << fmt_double("%.6f", rec.mean_fitness) << ','
     << fmt_double("%.17g", rec.best.theta) << ',' << fmt_double("%.17g", rec.best.alpha) << ','
     << fmt_double("%.17g", rec.best.beta) << ',' << fmt_double("%.17g", rec.best.gamma) << ',' << rec.best.z;
  return os.str();
}

SolutionRecord record_from_individual(const ga::Individual& ind, CodeScheme code, std::string run_id) {
  SolutionRecord r;
  r.run_id = std::move(run_id);
  r.code = code;
  r.theta = ind.theta;
  r.alpha = ind.alpha;
  r.beta = ind.beta;
  r.gamma = ind.gamma;
  const Partition p(ind.z);
  r.z_bits = partition_bit_string(p);
  r.m_steps = ind.best_step;
  r.zero_bit_count = p.zero_bit_count();
  return r;
}

int cmd_search(const SearchOptions& opts, std::ostream& out, std::ostream& err) {
  ga::GaResult result;
  std::ostringstream history;
  history << kHistoryHeader << '\n';
  try {
    result = ga::run_ga(opts.ga, [&](const ga::GenerationRecord& rec) { history << format_history_line(rec) << '\n'; });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string history_path = opts.history_path.empty() ? "-" : opts.history_path;
  if (!write_output(history_path, out, err, std::ios::out, [&](std::ostream& os) { os << history.str(); })) {
    return kExitUsage;
  }

  const std::string run_id = opts.run_id.empty() ? "search-" + std::to_string(opts.ga.master_seed) : opts.run_id;
  const SolutionRecord rec = record_from_individual(result.best, opts.ga.code, run_id);
  if (!opts.solution_path.empty()) {
    const bool ok = write_output(opts.solution_path, out, err, std::ios::out | std::ios::app, [&](std::ostream& os) {
      os << "# fitness=" << result.best.fitness << " generations=" << result.history.back().generation
         << " seed=" << opts.ga.master_seed << '\n'
         << format_solution_line(rec, 17) << '\n';
    });
    if (!ok) return kExitUsage;
  }
  if (history_path != "-") {
    out << "best fitness " << result.best.fitness << " at step " << result.best.best_step << " after generation "
        << result.history.back().generation << '\n'
        << format_solution_line(rec, 17) << '\n';
  }
  return kExitOk;
}

oracle::SpeedEstimate run_speed(const SpeedOptions& opts) {
  const std::size_t cells = opts.cells == 0 ? oracle::speed_lattice_cells(opts.window.last) : opts.cells;
  const auto trace = evolve(init_basis_state(cells, 0), build_block_unitary(opts.params), opts.window.last);
  return oracle::measure_speed(trace, opts.window);
}

int cmd_speed(const SpeedOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto est = run_speed(opts);
    out << "speed " << fmt_double("%.6f", est.speed) << '\n' << "window " << opts.window.first << '-'
        << opts.window.last << '\n' << "method " << est.method << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

double oracle_deviation(const OracleOptions& opts) {
  const auto u = build_block_unitary(opts.params);
  const auto start = init_basis_state(opts.cells, 0);
  return oracle::max_deviation(evolve(start, u, opts.steps), oracle::oracle_evolve(start, u, opts.steps));
}

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
  double dev = 0.0;
  try {
    dev = oracle_deviation(opts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const bool ok = dev < kOracleTolerance;
  out << "max deviation " << fmt_double("%.3e", dev) << " over L=" << opts.cells << ", " << opts.steps
      << " steps: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitShortfall;
}

}  // namespace qpa::cli
