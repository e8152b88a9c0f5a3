#include "reefkit/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "reefkit/error.hpp"
#include "reefkit/report.hpp"

namespace reefkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::uint64_t to_unsigned(std::string_view v, std::size_t line) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(line, "expected a natural number, got '" + std::string(v) + "'");
  return out;
}

double to_real(std::string_view v, std::size_t line) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(line, "expected a real number, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(line, "expected true/false, got '" + std::string(v) + "'");
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[sieve]\n"
      << "limit = " << c.sieve_limit << "\n"
      << "[arithmetic]\n"
      << "rational_mode = " << (c.rational_mode ? "true" : "false") << "\n"
      << "lcm_budget = " << c.lcm_budget << "\n"
      << "stabilization_threshold = " << format_real(c.stabilization_threshold) << "\n"
      << "[run]\n"
      << "seed = " << c.random_seed << "\n"
      << "output_dir = " << c.output_dir.string() << "\n"
      << "delta = " << format_real(c.delta) << "\n"
      << "[tolerance]\n"
      << "exact = " << format_real(c.exact_tolerance) << "\n"
      << "sieve = " << format_real(c.sieve_tolerance) << "\n";
  out << serialize_baselines(c.pinned_baselines);
  return out.str();
}

std::string serialize_baselines(const std::map<std::string, double>& baselines) {
  std::string out = "[baselines]\n";
  for (const auto& [k, v] : baselines) out += k + " = " + format_real(v) + "\n";
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "sieve" && section != "arithmetic" && section != "run" && section != "tolerance" &&
          section != "baselines") {
        fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (section.empty()) fail(line_no, "key outside any section");

    if (section == "sieve" && key == "limit") {
      c.sieve_limit = to_unsigned(value, line_no);
    } else if (section == "arithmetic" && key == "rational_mode") {
      c.rational_mode = to_bool(value, line_no);
    } else if (section == "arithmetic" && key == "lcm_budget") {
      c.lcm_budget = to_unsigned(value, line_no);
    } else if (section == "arithmetic" && key == "stabilization_threshold") {
      c.stabilization_threshold = to_real(value, line_no);
    } else if (section == "run" && key == "seed") {
      c.random_seed = to_unsigned(value, line_no);
    } else if (section == "run" && key == "output_dir") {
      c.output_dir = std::string(value);
    } else if (section == "run" && key == "delta") {
      c.delta = to_real(value, line_no);
    } else if (section == "tolerance" && key == "exact") {
      c.exact_tolerance = to_real(value, line_no);
    } else if (section == "tolerance" && key == "sieve") {
      c.sieve_tolerance = to_real(value, line_no);
    } else if (section == "baselines") {
      c.pinned_baselines[key] = to_real(value, line_no);
    } else {
      fail(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace reefkit
