#include "reefkit/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <json.hpp>

#include "reefkit/error.hpp"

namespace reefkit {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

Cell make_cell(const Rational& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return static_cast<std::int64_t>(x.get_num().get_si());
  return x.get_str();
}
Cell make_cell(double x) {
  if (!std::isfinite(x)) return format_real(x);
  return x;
}
Cell make_cell(std::uint64_t x) {
  if (x > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return std::to_string(x);
  return static_cast<std::int64_t>(x);
}
Cell make_cell(std::int64_t x) { return x; }
Cell make_cell(int x) { return static_cast<std::int64_t>(x); }
Cell make_cell(bool x) { return std::string(x ? "true" : "false"); }
Cell make_cell(std::string x) { return x; }
Cell make_cell(const char* x) { return std::string(x); }

std::optional<double> cell_number(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  const auto& s = std::get<std::string>(c);
  if (looks_rational(s)) return parse_rational(s).get_d();
  return std::nullopt;
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::report_only: return "report-only";
  }
  return "report-only";
}

namespace {

VerdictStatus parse_status(std::string_view s) {
  if (s == "pass") return VerdictStatus::pass;
  if (s == "fail") return VerdictStatus::fail;
  if (s == "report-only") return VerdictStatus::report_only;
  throw InvalidInput("unknown verdict status: " + std::string(s));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Column& DiagnosticsReport::add_column(std::string name) {
  columns.push_back({std::move(name), {}});
  return columns.back();
}

Column& DiagnosticsReport::column(std::string_view name) {
  for (auto& c : columns)
    if (c.name == name) return c;
  throw InvalidInput("no column named " + std::string(name));
}

void DiagnosticsReport::add_meta(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void DiagnosticsReport::add_verdict(std::string check, VerdictStatus status, std::string detail) {
  verdicts.push_back({std::move(check), status, std::move(detail)});
}

void DiagnosticsReport::add_check(std::string check, bool ok, std::string detail) {
  add_verdict(std::move(check), ok ? VerdictStatus::pass : VerdictStatus::fail, std::move(detail));
}

std::size_t DiagnosticsReport::row_count() const {
  std::size_t n = 0;
  for (const auto& c : columns) n = std::max(n, c.values.size());
  return n;
}

bool DiagnosticsReport::passed() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](const Verdict& v) { return v.status == VerdictStatus::fail; });
}

std::string to_csv(const DiagnosticsReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(r.columns[i].name);
  }
  out += '\n';
  const std::size_t rows = r.row_count();
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      if (i) out += ',';
      const auto& values = r.columns[i].values;
      if (row < values.size()) out += csv_escape(cell_text(values[row]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const DiagnosticsReport& r) {
  ordered_json j;
  j["title"] = r.title;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = meta;
  ordered_json cols = ordered_json::array();
  for (const auto& c : r.columns) {
    ordered_json values = ordered_json::array();
    for (const auto& cell : c.values) {
      std::visit([&](const auto& v) { values.push_back(v); }, cell);
    }
    cols.push_back({{"name", c.name}, {"values", values}});
  }
  j["columns"] = cols;
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"check", v.check}, {"status", std::string(to_string(v.status))}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  return j.dump(2) + "\n";
}

DiagnosticsReport report_from_json(std::string_view text) {
  DiagnosticsReport r;
  try {
    const auto j = ordered_json::parse(text);
    r.title = j.at("title").get<std::string>();
    for (const auto& [k, v] : j.at("metadata").items()) r.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("columns")) {
      Column col{c.at("name").get<std::string>(), {}};
      for (const auto& v : c.at("values")) {
        if (v.is_number_integer()) {
          col.values.emplace_back(v.get<std::int64_t>());
        } else if (v.is_number_float()) {
          col.values.emplace_back(v.get<double>());
        } else {
          col.values.emplace_back(v.get<std::string>());
        }
      }
      r.columns.push_back(std::move(col));
    }
    for (const auto& v : j.at("verdicts")) {
      r.verdicts.push_back({v.at("check").get<std::string>(), parse_status(v.at("status").get<std::string>()),
                            v.at("detail").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string to_svg(const DiagnosticsReport& r) {
  constexpr double width = 640, height = 400, margin = 56;
  std::vector<const Column*> numeric;
  for (const auto& c : r.columns) {
    if (c.values.empty()) continue;
    const bool all = std::all_of(c.values.begin(), c.values.end(),
                                 [](const Cell& cell) { return cell_number(cell).has_value(); });
    if (all) numeric.push_back(&c);
    if (numeric.size() == 2) break;
  }
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
      width, height, width, height, margin, xml_escape(r.title));
  out += fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{3}\" x2=\"{0}\" y2=\"{1}\" stroke=\"black\"/>\n",
      margin, height - margin, width - margin, margin);
  if (numeric.size() < 2) return out + "</svg>\n";

  const auto& xs = numeric[0]->values;
  const auto& ys = numeric[1]->values;
  const std::size_t n = std::min(xs.size(), ys.size());
  double x0 = *cell_number(xs[0]), x1 = x0, y0 = *cell_number(ys[0]), y1 = y0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = *cell_number(xs[i]), y = *cell_number(ys[i]);
    x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
  const auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };
  std::string points;
  std::string dots;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = px(*cell_number(xs[i])), y = py(*cell_number(ys[i]));
    points += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", x, y);
    dots += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"steelblue\"/>\n", x, y);
  }
  out += fmt::format("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>\n", points);
  out += dots;
  out += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
      width / 2, height - 16, xml_escape(numeric[0]->name));
  out += fmt::format(
      "<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
      "transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">{}</text>\n",
      height / 2, height / 2, xml_escape(numeric[1]->name));
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n", margin,
                     height - margin + 14, format_real(x0));
  out += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
      width - margin, height - margin + 14, format_real(x1));
  out += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
      margin - 4, height - margin, format_real(y0));
  out += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
      margin - 4, margin + 4, format_real(y1));
  return out + "</svg>\n";
}

void emit_report(const DiagnosticsReport& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  switch (format) {
    case ReportFormat::csv: out << to_csv(r); break;
    case ReportFormat::json: out << to_json(r); break;
    case ReportFormat::svg: out << to_svg(r); break;
  }
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace reefkit
