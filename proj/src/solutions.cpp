#include "qpa/solutions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

namespace qpa {

namespace {

// Reference runs, binary code then Gray code, angles to six decimals.
constexpr std::string_view kPublished = R"(# run_id,code,theta,alpha,beta,gamma,z_bits,m_steps,zero_bit_count
B1,binary,11.050685,-55.57717,113.034549,-140.809934,11010001100100010011000011111111,2048,15
B2,binary,8.0667,-24.173737,44.174208,-129.677467,00010000100111110111110000011101,1368,16
B3,binary,10.880958,-19.904022,104.97193,-176.437282,01110100011000000111101101100100,1880,17
B4,binary,75.337518,5.369795,43.854368,-49.357459,10101110011111000110000001101100,2034,16
B5,binary,7.259019,-27.299086,-62.015774,111.243832,11110001000110011111110011000000,2048,16
B6,binary,13.700568,76.91783,111.454715,134.389406,11011001000011010011000110001111,1184,16
B7,binary,23.718054,-86.090944,127.961266,106.217157,01000110000001101011011111000111,1594,16
B8,binary,25.152128,170.66293,-49.58397,-5.4686,11010001000000111100011010011111,1182,16
B9,binary,57.076225,-111.908294,88.120218,-106.898772,01011000000100001111110111011001,768,16
G1,gray,4.407264,119.105462,-56.65684,155.808914,10011011000111011000010010010111,2048,16
G2,gray,22.357464,117.90735,-9.633698,151.621098,01011101111111000110100011000000,2012,16
G3,gray,10.431628,-129.653366,35.876261,-37.38258,10111011111100001101100010000001,811,16
G4,gray,7.303212,-36.827341,42.439786,13.288965,01001100001000000101111111011100,2048,17
G5,gray,12.565333,-133.764371,-116.992579,27.211073,01011100101111000101111011000000,624,16
G6,gray,6.568701,167.726702,-105.341636,125.939087,00010111000100000001111101111010,2046,17
G7,gray,27.507306,-72.340869,-127.871776,-23.952314,11001000011110000000110111011101,1904,16
G8,gray,20.083639,93.743705,-44.820769,-109.822316,01001011111011010101111100000000,1274,16
G9,gray,27.284116,-29.442762,-49.124343,32.082641,00000001111101111111000101110000,620,16
G10,gray,10.472256,-63.163587,11.258074,-110.796705,01111011010100011010000100110111,1978,15
G11,gray,28.257343,41.031094,-28.261072,-83.989587,00110001000111110011011100010110,1572,16
G12,gray,36.973794,105.346366,168.109796,110.596441,11100101110001001000010101011011,632,16
G13,gray,12.472202,-24.919773,1.682202,-178.873208,11110000100001010110011111000011,1750,16
G14,gray,29.280147,-124.541844,120.74784,62.525769,01110001011110100000000101110111,800,16
G15,gray,24.339945,148.928022,87.470762,-106.736046,11100000000001110011001111110101,2048,16
G16,gray,37.054707,-22.12085,-48.986319,14.976938,01100101111110011100110011000000,684,16
)";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_angle(std::string_view field, const char* name, double lower, double upper) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + name + " value '" + std::string(field) + "'");
  }
  if (!(v >= lower && v <= upper)) {
    throw ParseError(std::string(name) + " out of range: " + std::string(field));
  }
  return v;
}

std::size_t parse_count(std::string_view field, const char* name) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + name + " value '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

Partition SolutionRecord::partition() const {
  if (z_bits.size() != kPartitionBits) {
    throw ParseError("z_bits must have 32 characters");
  }
  std::vector<int> bits;
  bits.reserve(kPartitionBits);
  for (char c : z_bits) {
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Partition::from_bits(bits);
}

std::string_view code_name(CodeScheme code) { return code == CodeScheme::Gray ? "gray" : "binary"; }

CodeScheme parse_code(std::string_view name) {
  if (name == "binary") return CodeScheme::Binary;
  if (name == "gray") return CodeScheme::Gray;
  throw ParseError("unknown code scheme '" + std::string(name) + "' (expected binary or gray)");
}

std::string partition_bit_string(const Partition& p) {
  std::string s(kPartitionBits, '0');
  for (std::size_t j = 0; j < kPartitionBits; ++j) {
    s[j] = p.bit(j) ? '1' : '0';
  }
  return s;
}

SolutionRecord parse_solution_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 9) {
    throw ParseError("expected 9 comma-separated fields, got " + std::to_string(fields.size()));
  }

  SolutionRecord r;
  r.run_id = std::string(fields[0]);
  if (r.run_id.empty()) {
    throw ParseError("empty run_id");
  }
  r.code = parse_code(fields[1]);
  r.theta = parse_angle(fields[2], "theta", 0.0, 90.0);
  r.alpha = parse_angle(fields[3], "alpha", -180.0, 180.0);
  r.beta = parse_angle(fields[4], "beta", -180.0, 180.0);
  r.gamma = parse_angle(fields[5], "gamma", -180.0, 180.0);
  r.z_bits = std::string(fields[6]);
  if (r.z_bits.size() != kPartitionBits) {
    throw ParseError("z_bits must have 32 characters, got " + std::to_string(r.z_bits.size()));
  }
  if (r.z_bits.find_first_not_of("01") != std::string::npos) {
    throw ParseError("z_bits may only contain '0' and '1'");
  }
  r.m_steps = parse_count(fields[7], "m_steps");
  r.zero_bit_count = parse_count(fields[8], "zero_bit_count");
  const auto zeros = static_cast<std::size_t>(std::count(r.z_bits.begin(), r.z_bits.end(), '0'));
  if (zeros != r.zero_bit_count) {
    throw ParseError("zero_bit_count " + std::to_string(r.zero_bit_count) + " does not match the " +
                     std::to_string(zeros) + " zero bits in z_bits");
  }
  return r;
}

std::vector<SolutionRecord> parse_solution_file(std::istream& in) {
  std::vector<SolutionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      out.push_back(parse_solution_line(t));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string format_solution_line(const SolutionRecord& r, int angle_digits) {
  auto angle = [angle_digits](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", angle_digits, v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << r.run_id << ',' << code_name(r.code) << ',' << angle(r.theta) << ',' << angle(r.alpha) << ','
     << angle(r.beta) << ',' << angle(r.gamma) << ',' << r.z_bits << ',' << r.m_steps << ',' << r.zero_bit_count;
  return os.str();
}

const std::vector<SolutionRecord>& published_solutions() {
  static const std::vector<SolutionRecord> records = [] {
    std::istringstream in{std::string(kPublished)};
    return parse_solution_file(in);
  }();
  return records;
}

const SolutionRecord& published_solution(std::string_view run_id) {
  for (const auto& r : published_solutions()) {
    if (r.run_id == run_id) return r;
  }
  throw std::out_of_range("no published solution with run id '" + std::string(run_id) + "'");
}

}  // namespace qpa
