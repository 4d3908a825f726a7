#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpa/density.hpp"
#include "qpa/ga.hpp"
#include "qpa/heatmap.hpp"
#include "qpa/oracle.hpp"
#include "qpa/solutions.hpp"
#include "qpa/unitary.hpp"

namespace qpa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitShortfall = 1,
  kExitUsage = 2,
};

// Environment variable consulted for the default search seed.
inline constexpr const char* kSeedEnvVar = "QPA_SEED";

// Plain-text configuration: one `key = value` per line, '#' comment lines,
// surrounding whitespace ignored. Throws ParseError on a line without '=' or
// with an empty key; later duplicates overwrite earlier ones.
std::map<std::string, std::string> parse_key_value_config(std::istream& in);

// ---- simulate -------------------------------------------------------------

enum class HeatmapFormat { Csv, Pgm };

struct SimulateOptions {
  UnitaryParams params;
  std::size_t cells = 32;
  std::size_t start_cell = 0;
  std::size_t steps = kDefaultMaxSteps;
  std::string output = "-";  // "-" writes to the output stream
  HeatmapFormat format = HeatmapFormat::Csv;
  CsvPrecision precision = CsvPrecision::Full;
  PgmEncoding pgm_encoding = PgmEncoding::Ascii;
};

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::vector<SolutionRecord> records;
  std::size_t max_steps = kDefaultMaxSteps;
  std::size_t step_tolerance = 2;
  std::size_t max_unverified = 2;
  std::size_t threads = 0;
};

struct VerifyRow {
  SolutionRecord record;
  FitnessReport report;
  bool solved = false;          // reached a perfect score within max_steps
  long long step_delta = 0;     // report.best_step - record.m_steps, meaningful when solved
  bool within_tolerance = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;  // same order as the input records
  std::size_t solved = 0;
  std::size_t solved_within_tolerance = 0;
  bool passed = false;
};

// A report passes when at most max_unverified rows fail to reach a perfect
// score and every solved row lands within step_tolerance of its published M.
VerifyReport verify_solutions(const VerifyOptions& opts);

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

// ---- search ---------------------------------------------------------------

struct SearchOptions {
  ga::GaConfig ga;
  std::string solution_path;  // record appended here; empty skips
  std::string history_path;   // per-generation CSV; empty writes it to the output stream
  std::string run_id;         // defaults to "search-<seed>"
};

// Header of the per-generation history CSV.
inline constexpr const char* kHistoryHeader = "generation,best_f,mean_f,theta,alpha,beta,gamma,z";

std::string format_history_line(const ga::GenerationRecord& rec);
SolutionRecord record_from_individual(const ga::Individual& ind, CodeScheme code, std::string run_id);

int cmd_search(const SearchOptions& opts, std::ostream& out, std::ostream& err);

// ---- speed ----------------------------------------------------------------

struct SpeedOptions {
  UnitaryParams params;
  oracle::SpeedWindow window;
  std::size_t cells = 0;  // 0 picks a lattice large enough to avoid wrap-around
};

oracle::SpeedEstimate run_speed(const SpeedOptions& opts);
int cmd_speed(const SpeedOptions& opts, std::ostream& out, std::ostream& err);

// ---- oracle ---------------------------------------------------------------

inline constexpr double kOracleTolerance = 1e-12;

struct OracleOptions {
  UnitaryParams params;
  std::size_t cells = 32;
  std::size_t steps = 64;
};

// Max entrywise deviation between pairwise and dense evolution from cell 0.
double oracle_deviation(const OracleOptions& opts);
int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace qpa::cli
