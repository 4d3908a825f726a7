#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpa/density.hpp"
#include "qpa/unitary.hpp"

namespace qpa {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One solution row: unitary angles, partition bits in cell order (leftmost
// character is partition index 0) and the step count M at which it solves.
//
// Line format, comma separated, '#' starts a comment line:
//   run_id,code,theta,alpha,beta,gamma,z_bits,m_steps,zero_bit_count
struct SolutionRecord {
  std::string run_id;
  CodeScheme code = CodeScheme::Binary;
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::string z_bits;
  std::size_t m_steps = 0;
  std::size_t zero_bit_count = 0;

  UnitaryParams params() const { return UnitaryParams::from_angles(theta, alpha, beta, gamma); }
  Partition partition() const;

  bool operator==(const SolutionRecord&) const = default;
};

std::string_view code_name(CodeScheme code);
CodeScheme parse_code(std::string_view name);  // "binary" or "gray"; throws ParseError

// Cell-order bit string of a partition (index 0 first).
std::string partition_bit_string(const Partition& p);

SolutionRecord parse_solution_line(std::string_view line);
// Skips blank and '#' lines. Errors carry the 1-based line number.
std::vector<SolutionRecord> parse_solution_file(std::istream& in);

// Angles with `angle_digits` digits after the decimal point.
std::string format_solution_line(const SolutionRecord& r, int angle_digits = 6);

// The twenty-five published solutions: nine binary-code rows (B1..B9) then sixteen Gray-code rows (G1..G16).
const std::vector<SolutionRecord>& published_solutions();

// Looks up a run id such as "B5" or "G16"; throws std::out_of_range if absent.
const SolutionRecord& published_solution(std::string_view run_id);

}  // namespace qpa
