#pragma once

// Tabular diagnostics with metadata and named verdicts, emitted as CSV, JSON
// or a small SVG plot.

#include <cstdint>
#include <deque>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "reefkit/scalar.hpp"

namespace reefkit {

/// Integers stay integers; exact non-integral rationals are kept as "p/q" text.
using Cell = std::variant<std::int64_t, double, std::string>;

Cell make_cell(const Rational& x);
Cell make_cell(double x);
Cell make_cell(std::uint64_t x);
Cell make_cell(std::int64_t x);
Cell make_cell(int x);
Cell make_cell(bool x);
Cell make_cell(std::string x);
Cell make_cell(const char* x);

/// Numeric view of a cell, parsing "p/q" text; nullopt for other text.
std::optional<double> cell_number(const Cell& c);
std::string cell_text(const Cell& c);

struct Column {
  std::string name;
  std::vector<Cell> values;
  friend bool operator==(const Column&, const Column&) = default;
};

enum class VerdictStatus { pass, fail, report_only };
std::string_view to_string(VerdictStatus s);

struct Verdict {
  std::string check;  // the invariant or criterion tested
  VerdictStatus status = VerdictStatus::report_only;
  std::string detail;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct DiagnosticsReport {
  std::string title;
  std::deque<Column> columns;  // add_column references stay valid
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Verdict> verdicts;

  Column& add_column(std::string name);
  Column& column(std::string_view name);
  void add_meta(std::string key, std::string value);
  void add_verdict(std::string check, VerdictStatus status, std::string detail = {});
  void add_check(std::string check, bool ok, std::string detail = {});

  std::size_t row_count() const;
  /// False iff some pass/fail verdict failed; report-only rows never count.
  bool passed() const;

  friend bool operator==(const DiagnosticsReport&, const DiagnosticsReport&) = default;
};

enum class ReportFormat { csv, json, svg };

std::string to_csv(const DiagnosticsReport& r);
std::string to_json(const DiagnosticsReport& r);
DiagnosticsReport report_from_json(std::string_view text);
/// Line/scatter plot of the first two numeric columns.
std::string to_svg(const DiagnosticsReport& r);

/// Writes the report in the given format. Throws IoError.
void emit_report(const DiagnosticsReport& r, ReportFormat format, const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string format_real(double x);

}  // namespace reefkit
