#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "reefkit/arith_core.hpp"
#include "reefkit/config.hpp"
#include "reefkit/correlation.hpp"
#include "reefkit/error.hpp"
#include "reefkit/reef.hpp"
#include "reefkit/report.hpp"
#include "reefkit/twin_primes.hpp"
#include "reefkit/verify.hpp"

namespace reefkit::cli {

namespace {

struct Globals {
  std::string config_path;
  std::string sieve_cache;
  std::string out_path;
  std::string json_path;
  std::string svg_path;
  std::optional<std::uint64_t> seed;
  bool real = false;
};

struct Context {
  Globals globals;
  ExperimentConfig config;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  SieveTables sieve(natural limit) const {
    SieveBudget budget{std::max<natural>(config.sieve_limit, 1)};
    limit = std::max<natural>(limit, 1);
    if (limit > budget.max_limit) {
      throw BudgetExceeded(fmt::format("sieve of size {} exceeds configured sieve limit {}", limit, budget.max_limit));
    }
    if (!globals.sieve_cache.empty()) return load_or_build_sieve(globals.sieve_cache, limit, budget);
    return build_sieve(limit, budget);
  }
};

// --- argument helpers -------------------------------------------------------

std::vector<natural> parse_list(const std::string& text, const char* what) {
  std::vector<natural> out;
  const auto to_nat = [&](std::string_view s) {
    natural v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw InvalidInput(fmt::format("malformed {} '{}'", what, text));
    }
    return v;
  };
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(to_nat(item));
    } else {
      const natural lo = to_nat(item.substr(0, dots));
      const natural hi = to_nat(item.substr(dots + 2));
      if (hi < lo) throw InvalidInput(fmt::format("empty {} range '{}'", what, text));
      for (natural v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw InvalidInput(fmt::format("empty {} list", what));
  return out;
}

natural max_of(const std::vector<natural>& v) { return *std::max_element(v.begin(), v.end()); }

std::vector<std::pair<natural, std::string>> read_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::vector<std::pair<natural, std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidInput("expected 'index,value' in " + path + ": " + line);
    const std::string key = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    natural idx = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
    if (ec != std::errc() || p != key.data() + key.size() || idx == 0) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw InvalidInput("bad index in " + path + ": " + line);
    }
    first = false;
    rows.emplace_back(idx, value);
  }
  return rows;
}

template <Scalar T>
T convert(const std::string& text) {
  if constexpr (std::is_same_v<T, Rational>) {
    return parse_rational(text);
  } else {
    return parse_real(text);
  }
}

bool is_builtin(const std::string& name) {
  return name == "one" || name == "mu" || name == "lambda" || name == "phi_over_n";
}

/// Whether a function argument forces real mode.
bool forces_real(const std::string& source) {
  if (source.empty()) return false;
  if (source == "lambda") return true;
  if (is_builtin(source)) return false;
  for (const auto& [idx, value] : read_pairs(source)) {
    if (!looks_rational(value)) {
      // Decimals without exponent are still exact.
      try {
        parse_rational(value);
      } catch (const InvalidInput&) {
        return true;
      }
    }
  }
  return false;
}

template <Scalar T>
TabulatedFunction<T> resolve_function(const std::string& source, natural limit, const SieveTables& sieve) {
  if (source == "one") return tabulate<T>(limit, [](natural) { return T(1); }, "one");
  if (source == "mu") {
    return tabulate<T>(limit, [&](natural n) { return from_integer<T>(sieve.mu(n)); }, "mu");
  }
  if (source == "phi_over_n") {
    return tabulate<T>(
        limit,
        [&](natural n) {
          T v = from_integer<T>(sieve.phi(n));
          v /= from_integer<T>(static_cast<std::int64_t>(n));
          return v;
        },
        "phi_over_n");
  }
  if (source == "lambda") {
    if constexpr (std::is_same_v<T, Rational>) {
      throw InvalidInput("lambda requires real mode");
    } else {
      return tabulate<T>(limit, [&](natural n) { return sieve.lambda(n); }, "lambda");
    }
  }
  TabulatedFunction<T> f(limit, source);
  natural top = 0;
  for (const auto& [idx, value] : read_pairs(source)) {
    top = std::max(top, idx);
    if (idx <= limit) f[idx] = convert<T>(value);
  }
  if (top < limit) {
    throw InvalidInput(fmt::format("insufficient tabulation range: {} covers 1..{}, need 1..{}", source, top, limit));
  }
  return f;
}

template <Scalar T>
EratosthenesTransform<T> read_support(const std::string& path, natural min_limit) {
  const auto rows = read_pairs(path);
  natural top = min_limit;
  for (const auto& [q, v] : rows) top = std::max(top, q);
  EratosthenesTransform<T> g(std::max<natural>(top, 1));
  for (const auto& [q, v] : rows) g[q] = convert<T>(v);
  return g;
}

template <Scalar T>
Cell cell_of(const T& v) {
  return make_cell(v);
}

void describe_mode(DiagnosticsReport& r, bool real) { r.add_meta("mode", real ? "real" : "rational"); }

int finish(const Context& ctx, const DiagnosticsReport& report) {
  if (ctx.globals.out_path.empty()) {
    *ctx.out << to_csv(report);
  } else {
    emit_report(report, ReportFormat::csv, ctx.globals.out_path);
  }
  if (!ctx.globals.json_path.empty()) emit_report(report, ReportFormat::json, ctx.globals.json_path);
  if (!ctx.globals.svg_path.empty()) emit_report(report, ReportFormat::svg, ctx.globals.svg_path);
  bool ok = true;
  for (const auto& v : report.verdicts) {
    if (v.status == VerdictStatus::fail) {
      *ctx.err << "check failed: " << v.check << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
      ok = false;
    }
  }
  return ok ? kOk : kCheckFailure;
}

// --- subcommands --------------------------------------------------------------

struct SieveArgs {
  natural limit = 0;
  natural rows = 0;
  bool check = false;
};

int cmd_sieve(const Context& ctx, const SieveArgs& a) {
  const natural limit = a.limit == 0 ? ctx.config.sieve_limit : a.limit;
  const auto sieve = ctx.sieve(limit);
  DiagnosticsReport r;
  r.title = "sieve";
  r.add_meta("limit", std::to_string(limit));
  auto& n_col = r.add_column("n");
  auto& mu = r.add_column("mu");
  auto& phi = r.add_column("phi");
  auto& omega = r.add_column("omega");
  auto& lambda = r.add_column("lambda");
  auto& spf = r.add_column("spf");
  const natural rows = a.rows == 0 ? limit : std::min(a.rows, limit);
  for (natural n = 1; n <= rows; ++n) {
    n_col.values.push_back(make_cell(n));
    mu.values.push_back(make_cell(sieve.mu(n)));
    phi.values.push_back(make_cell(static_cast<std::uint64_t>(sieve.phi(n))));
    omega.values.push_back(make_cell(static_cast<std::uint64_t>(sieve.omega(n))));
    lambda.values.push_back(make_cell(sieve.lambda(n)));
    spf.values.push_back(make_cell(static_cast<std::uint64_t>(sieve.spf(n))));
  }
  if (a.check) {
    // Divisor-sum identities via a Dirichlet-style sweep over multiples.
    std::vector<std::int64_t> mu_sum(limit + 1, 0);
    std::vector<natural> phi_sum(limit + 1, 0);
    std::vector<double> lambda_sum(limit + 1, 0.0);
    for (natural d = 1; d <= limit; ++d) {
      for (natural m = d; m <= limit; m += d) {
        mu_sum[m] += sieve.mu(d);
        phi_sum[m] += sieve.phi(d);
        lambda_sum[m] += sieve.lambda(d);
      }
    }
    natural bad = 0;
    for (natural n = 1; n <= limit; ++n) {
      if (mu_sum[n] != (n == 1) || phi_sum[n] != n ||
          std::fabs(lambda_sum[n] - std::log(static_cast<double>(n))) > 1e-9) {
        ++bad;
      }
    }
    r.add_check("sieve_divisor_sums", bad == 0, fmt::format("{} violations up to {}", bad, limit));
  }
  return finish(ctx, r);
}

struct CsumArgs {
  std::vector<std::string> positional;
  std::vector<natural> table;
};

int cmd_csum(const Context& ctx, const CsumArgs& a) {
  if (!a.table.empty()) {
    const natural qmax = a.table.at(0), nmax = a.table.at(1);
    if (qmax == 0 || nmax == 0) throw InvalidInput("csum --table needs Q, N >= 1");
    DiagnosticsReport r;
    r.title = "ramanujan sums";
    auto& q_col = r.add_column("q");
    for (natural n = 1; n <= nmax; ++n) r.add_column(std::to_string(n));
    for (natural q = 1; q <= qmax; ++q) {
      q_col.values.push_back(make_cell(q));
      const auto period = ramanujan_period(q);
      for (natural n = 1; n <= nmax; ++n) r.columns[n].values.push_back(make_cell(period[n % q]));
    }
    return finish(ctx, r);
  }
  if (a.positional.size() != 2) throw InvalidInput("csum expects 'q n' or --table Q N");
  natural q = 0;
  std::int64_t n = 0;
  const auto& qs = a.positional[0];
  const auto& ns = a.positional[1];
  auto [p1, e1] = std::from_chars(qs.data(), qs.data() + qs.size(), q);
  auto [p2, e2] = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (e1 != std::errc() || p1 != qs.data() + qs.size() || e2 != std::errc() || p2 != ns.data() + ns.size()) {
    throw InvalidInput("csum: q and n must be integers");
  }
  *ctx.out << ramanujan_sum(q, n) << "\n";
  return kOk;
}

struct ExpandArgs {
  std::string support;
  natural range = 0;
  natural check_fre = 0;
};

template <Scalar T>
int run_expand(const Context& ctx, const ExpandArgs& a) {
  const auto g = read_support<T>(a.support, a.range);
  const auto e = finite_expansion(g, a.range);
  DiagnosticsReport r;
  r.title = "finite ramanujan expansion";
  r.add_meta("support", a.support);
  r.add_meta("Q", std::to_string(a.range));
  describe_mode(r, mode_of<T>() == Mode::real);
  auto& l_col = r.add_column("l");
  auto& c_col = r.add_column("coefficient");
  for (natural l = 1; l <= a.range; ++l) {
    l_col.values.push_back(make_cell(l));
    c_col.values.push_back(cell_of(e.coefficients[l]));
  }
  if (a.check_fre > 0) {
    const auto direct = truncate(g, a.range, a.check_fre);
    natural bad = 0;
    for (natural m = 1; m <= a.check_fre; ++m) {
      const T lhs = evaluate_expansion(e, m);
      if constexpr (std::is_same_v<T, Rational>) {
        if (lhs != direct[m]) ++bad;
      } else {
        if (std::fabs(lhs - direct[m]) > 1e-9 * std::max(1.0, std::fabs(direct[m]))) ++bad;
      }
    }
    r.add_check("fre_exactness", bad == 0, fmt::format("m <= {}: {} mismatches", a.check_fre, bad));
    *ctx.err << "fre_exactness: " << (bad == 0 ? "pass" : "fail") << " (m <= " << a.check_fre << ")\n";
  }
  return finish(ctx, r);
}

struct CorrelateArgs {
  std::string f, g;
  natural n_limit = 0;
  std::string shifts;
  natural truncate_q = 0;
  std::string method;
};

template <Scalar T>
int run_correlate(const Context& ctx, const CorrelateArgs& a) {
  const auto shifts = parse_list(a.shifts, "shift");
  const natural top = a.n_limit + max_of(shifts);
  const auto sieve = ctx.sieve(top);
  const auto f = resolve_function<T>(a.f, a.n_limit, sieve);
  const auto g = resolve_function<T>(a.g, top, sieve);
  std::string method = a.method.empty() ? (a.truncate_q ? "truncated" : "direct") : a.method;
  const natural cutoff = a.truncate_q == 0 ? a.n_limit : a.truncate_q;
  if (cutoff > top) throw InvalidInput("--truncate beyond tabulated range");

  CorrelationProfile<T> profile;
  if (method == "direct") {
    profile = direct_profile(f, g, a.n_limit, shifts);
  } else if (method == "truncated") {
    profile = truncated_profile(f, eratosthenes_transform(sieve, g), a.n_limit, shifts, cutoff);
  } else if (method == "expansion") {
    const auto gp = eratosthenes_transform(sieve, g);
    profile = expansion_profile(f, finite_expansion(gp, cutoff), a.n_limit, shifts);
  } else {
    throw InvalidInput("unknown method '" + method + "'");
  }
  DiagnosticsReport r;
  r.title = "correlation";
  r.add_meta("f", a.f);
  r.add_meta("g", a.g);
  r.add_meta("N", std::to_string(a.n_limit));
  r.add_meta("method", method);
  if (method != "direct") r.add_meta("Q", std::to_string(cutoff));
  describe_mode(r, mode_of<T>() == Mode::real);
  auto& a_col = r.add_column("a");
  auto& v_col = r.add_column("value");
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    a_col.values.push_back(make_cell(shifts[i]));
    v_col.values.push_back(cell_of(profile.values[i]));
  }
  return finish(ctx, r);
}

struct GArgs {
  std::string g;
  std::string g_support;
};

/// g' from a support file, or the transform of a named/tabulated g on 1..limit.
template <Scalar T>
EratosthenesTransform<T> resolve_gprime(const GArgs& a, natural limit, const SieveTables& sieve) {
  if (!a.g_support.empty()) return read_support<T>(a.g_support, limit);
  if (a.g.empty()) throw InvalidInput("need --g or --g-support");
  return eratosthenes_transform(sieve, resolve_function<T>(a.g, limit, sieve));
}

struct DhArgs {
  std::string f;
  GArgs g;
  natural n_limit = 0;
  natural d_max = 0;
};

template <Scalar T>
int run_dh(const Context& ctx, const DhArgs& a) {
  const auto sieve = ctx.sieve(std::max(a.n_limit + a.d_max, a.d_max));
  const auto f = resolve_function<T>(a.f, a.n_limit, sieve);
  const auto gp = resolve_gprime<T>(a.g, a.n_limit, sieve);
  const auto points = dh_diagnostic(sieve, f, gp, a.n_limit, a.d_max);
  DiagnosticsReport r;
  r.title = "delange hypothesis partial sums";
  r.add_meta("f", a.f);
  r.add_meta("g", a.g.g_support.empty() ? a.g.g : a.g.g_support);
  r.add_meta("N", std::to_string(a.n_limit));
  describe_mode(r, mode_of<T>() == Mode::real);
  auto& d_col = r.add_column("d");
  auto& p_col = r.add_column("partial_sum");
  auto& i_col = r.add_column("increment");
  std::vector<double> partials;
  for (const auto& p : points) {
    d_col.values.push_back(make_cell(p.d));
    p_col.values.push_back(cell_of(p.partial));
    i_col.values.push_back(cell_of(p.increment));
    partials.push_back(to_double(p.partial));
  }
  const auto st = stabilization(partials, ctx.config.stabilization_threshold);
  r.add_verdict("dh_stabilization", VerdictStatus::report_only,
                fmt::format("last increment {} ({} threshold {})", format_real(st.last_difference),
                            st.stabilized ? "below" : "above", format_real(ctx.config.stabilization_threshold)));
  return finish(ctx, r);
}

struct CarmichaelArgs {
  std::string f;
  GArgs g;
  natural n_limit = 0;
  std::string l_list;
  bool exact = false;
  bool empirical = false;
  std::string x_list;
};

template <Scalar T>
int run_carmichael(const Context& ctx, const CarmichaelArgs& a) {
  if (a.exact == a.empirical) throw InvalidInput("carmichael needs exactly one of --exact, --empirical");
  const auto ls = parse_list(a.l_list, "l");
  DiagnosticsReport r;
  r.title = a.exact ? "carmichael coefficients (exact)" : "carmichael coefficients (empirical)";
  r.add_meta("f", a.f);
  r.add_meta("N", std::to_string(a.n_limit));
  describe_mode(r, mode_of<T>() == Mode::real);
  if (a.exact) {
    const auto sieve = ctx.sieve(a.n_limit);
    const auto f = resolve_function<T>(a.f, a.n_limit, sieve);
    const auto gp = resolve_gprime<T>(a.g, a.n_limit, sieve);
    if (gp.limit() > a.n_limit) throw InvalidInput("carmichael --exact: g' support must lie in q <= N");
    const auto coeffs = reef_coefficients(f, finite_expansion(gp, gp.limit()), a.n_limit);
    auto& l_col = r.add_column("l");
    auto& e_col = r.add_column("exact");
    auto& c_col = r.add_column("closed_form");
    auto& m_col = r.add_column("match");
    bool all = true;
    for (natural l : ls) {
      const T exact = carmichael_coefficient_exact(f, gp, a.n_limit, l, ctx.config.lcm_budget);
      const T closed = coeffs.at(l);
      bool match;
      if constexpr (std::is_same_v<T, Rational>) {
        match = exact == closed;
      } else {
        match = std::fabs(exact - closed) <= 1e-9 * std::max(1.0, std::fabs(closed));
      }
      all = all && match;
      l_col.values.push_back(make_cell(l));
      e_col.values.push_back(cell_of(exact));
      c_col.values.push_back(cell_of(closed));
      m_col.values.push_back(make_cell(match));
    }
    r.add_check("carmichael_closed_form", all);
    return finish(ctx, r);
  }
  const auto xs = parse_list(a.x_list.empty() ? "100,1000,10000" : a.x_list, "x");
  const natural x_max = max_of(xs);
  const auto sieve = ctx.sieve(std::max(a.n_limit, natural{1}));
  const auto f = resolve_function<T>(a.f, a.n_limit, sieve);
  const auto gp = resolve_gprime<T>(a.g, a.n_limit, sieve);
  std::vector<natural> shifts(x_max);
  std::iota(shifts.begin(), shifts.end(), natural{1});
  const auto profile = truncated_profile(f, gp, a.n_limit, shifts, std::min(a.n_limit, gp.limit()));
  auto& l_col = r.add_column("l");
  auto& x_col = r.add_column("x");
  auto& v_col = r.add_column("value");
  auto& d_col = r.add_column("difference");
  for (natural l : ls) {
    std::optional<double> prev;
    for (natural x : xs) {
      const T v = carmichael_coefficient_empirical<T>([&](natural s) { return profile.values[s - 1]; }, l, x);
      const double vd = to_double(v);
      l_col.values.push_back(make_cell(l));
      x_col.values.push_back(make_cell(x));
      v_col.values.push_back(cell_of(v));
      d_col.values.push_back(prev ? make_cell(std::fabs(vd - *prev)) : make_cell(""));
      prev = vd;
    }
  }
  r.add_verdict("carmichael_empirical", VerdictStatus::report_only, "finite-x averages; no limit is claimed");
  return finish(ctx, r);
}

struct ReefArgs {
  std::string f;
  GArgs g;
  natural n_limit = 0;
  std::string shifts;
  bool coefficients = false;
};

template <Scalar T>
int run_reef(const Context& ctx, const ReefArgs& a) {
  const auto sieve = ctx.sieve(a.n_limit);
  const auto f = resolve_function<T>(a.f, a.n_limit, sieve);
  const auto gp = resolve_gprime<T>(a.g, a.n_limit, sieve);
  DiagnosticsReport r;
  r.title = a.coefficients ? "explicit formula coefficients" : "explicit formula residuals";
  r.add_meta("f", a.f);
  r.add_meta("g", a.g.g_support.empty() ? a.g.g : a.g.g_support);
  r.add_meta("N", std::to_string(a.n_limit));
  describe_mode(r, mode_of<T>() == Mode::real);
  if (a.coefficients) {
    const auto coeffs = reef_coefficients(f, finite_expansion(gp, std::min(a.n_limit, gp.limit())), a.n_limit);
    auto& l_col = r.add_column("l");
    auto& c_col = r.add_column("coefficient");
    for (natural l = 1; l <= a.n_limit; ++l) {
      l_col.values.push_back(make_cell(l));
      c_col.values.push_back(cell_of(coeffs.coefficients[l]));
    }
    return finish(ctx, r);
  }
  if (a.shifts.empty()) throw InvalidInput("reef needs --shifts (or --coefficients)");
  const auto shifts = parse_list(a.shifts, "shift");
  const auto res = reef_residual(f, gp, a.n_limit, shifts);
  auto& a_col = r.add_column("a");
  auto& d_col = r.add_column("direct");
  auto& e_col = r.add_column("reef");
  auto& x_col = r.add_column("residual");
  for (const auto& row : res.rows) {
    a_col.values.push_back(make_cell(row.shift));
    d_col.values.push_back(cell_of(row.direct));
    e_col.values.push_back(cell_of(row.reef));
    x_col.values.push_back(cell_of(row.residual));
  }
  r.add_verdict("explicit_formula_residual", VerdictStatus::report_only,
                fmt::format("max |residual| = {}", format_real(to_double(res.max_abs))));
  return finish(ctx, r);
}

struct TwinsArgs {
  natural n_limit = 1'000'000;
  std::string k_range = "1..8";
  natural l_max = 100'000;
  std::optional<double> delta;
  std::string svg;
  natural q_max = 30;
};

int cmd_twins(Context ctx, const TwinsArgs& a) {
  const auto ks = parse_list(a.k_range, "k");
  const natural k_min = *std::min_element(ks.begin(), ks.end());
  const natural k_max = max_of(ks);
  if (k_max - k_min + 1 != ks.size()) throw InvalidInput("--k must be a contiguous range");
  const double delta = a.delta.value_or(ctx.config.delta);
  const auto sieve = ctx.sieve(std::max(a.n_limit + 2 * k_max, 10 * a.l_max));
  const auto hl = hl_report(sieve, a.n_limit, k_min, k_max, a.l_max, delta);
  DiagnosticsReport r;
  r.title = "von Mangoldt correlations vs singular series";
  r.add_meta("N", std::to_string(a.n_limit));
  r.add_meta("l_max", std::to_string(a.l_max));
  r.add_meta("delta", format_real(delta));
  r.add_meta("L", format_real(std::log(static_cast<double>(a.n_limit))));
  describe_mode(r, true);
  auto& s_col = r.add_column("shift");
  auto& c_col = r.add_column("correlation");
  auto& p_col = r.add_column("prediction");
  auto& q_col = r.add_column("ratio");
  for (const auto& row : hl.rows) {
    s_col.values.push_back(make_cell(row.shift));
    c_col.values.push_back(make_cell(row.correlation));
    p_col.values.push_back(make_cell(row.prediction));
    q_col.values.push_back(make_cell(row.ratio));
  }
  for (const auto& w : hl.warnings) {
    *ctx.err << "warning: " << w << "\n";
    r.add_verdict("delta_range", VerdictStatus::report_only, w);
  }
  if (!a.svg.empty()) {
    DiagnosticsReport plot;
    plot.title = r.title;
    plot.columns = {r.columns[0], r.columns[3]};
    emit_report(plot, ReportFormat::svg, a.svg);
  }
  return finish(ctx, r);
}

int cmd_twins_coefficients(const Context& ctx, const TwinsArgs& a) {
  const auto sieve = ctx.sieve(a.n_limit);
  const auto rows = coefficient_table(sieve, a.n_limit, a.q_max);
  DiagnosticsReport r;
  r.title = "truncated von Mangoldt Ramanujan coefficients";
  r.add_meta("N", std::to_string(a.n_limit));
  describe_mode(r, true);
  auto& q = r.add_column("q");
  auto& v = r.add_column("value");
  auto& ref = r.add_column("reference");
  auto& err = r.add_column("scaled_error");
  for (const auto& row : rows) {
    q.values.push_back(make_cell(row.q));
    v.values.push_back(make_cell(row.value));
    ref.values.push_back(make_cell(row.reference));
    err.values.push_back(make_cell(row.scaled_error));
  }
  return finish(ctx, r);
}

struct VerifyArgs {
  std::string suite = "identities";
  bool pin = false;
  std::string baselines;
};

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
  if (a.suite != "identities" && a.suite != "statistics" && a.suite != "all") {
    throw InvalidInput("unknown suite '" + a.suite + "' (identities, statistics, all)");
  }
  DiagnosticsReport combined;
  combined.title = "verify";
  combined.add_meta("suite", a.suite);
  combined.add_meta("seed", std::to_string(ctx.config.random_seed));
  std::vector<DiagnosticsReport> parts;
  if (a.suite != "statistics") parts.push_back(verify_identities(ctx.config));
  if (a.suite != "identities") {
    const auto sieve = ctx.sieve(statistics_sieve_limit());
    const std::filesystem::path path =
        a.baselines.empty() ? ctx.config.output_dir / "baselines.ini" : std::filesystem::path(a.baselines);
    auto baselines = ctx.config.pinned_baselines;
    if (a.pin) {
      const auto stats = collect_statistics(sieve);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write baselines " + path.string());
      out << serialize_baselines(stats);
      *ctx.err << "pinned " << stats.size() << " baselines to " << path.string() << "\n";
      baselines = stats;
    } else if (std::filesystem::exists(path)) {
      for (const auto& [k, v] : load_config(path).pinned_baselines) baselines[k] = v;
    }
    parts.push_back(verify_statistics(ctx.config, sieve, baselines));
  }
  auto& check = combined.add_column("check");
  auto& status = combined.add_column("status");
  auto& detail = combined.add_column("detail");
  for (const auto& p : parts) {
    for (const auto& v : p.verdicts) {
      check.values.push_back(make_cell(v.check));
      status.values.push_back(make_cell(std::string(to_string(v.status))));
      detail.values.push_back(make_cell(v.detail));
      combined.verdicts.push_back(v);
    }
  }
  return finish(ctx, combined);
}

template <class Fn>
int dispatch_mode(bool real, Fn&& fn) {
  if (real) return fn(double{});
  return fn(Rational{});
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reefkit: correlations of arithmetic functions via finite Ramanujan expansions", "reefkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  auto& g = ctx.globals;
  app.add_option("--config", g.config_path, "Config file (default: $REEFKIT_CONFIG)");
  app.add_option("--sieve-cache", g.sieve_cache, "Binary sieve cache file");
  app.add_option("--out", g.out_path, "Write CSV here instead of stdout");
  app.add_option("--json", g.json_path, "Also write the report as JSON");
  app.add_option("--svg", g.svg_path, "Also write an SVG plot of the first two numeric columns");
  app.add_option("--seed", g.seed, "Override the configured random seed");
  app.add_flag("--real", g.real, "Force real (double) mode");

  SieveArgs sieve_args;
  auto* sieve_cmd = app.add_subcommand("sieve", "Tabulate mu, phi, omega, Lambda, spf");
  sieve_cmd->add_option("--limit", sieve_args.limit, "Table size (default: config sieve limit)");
  sieve_cmd->add_option("--rows", sieve_args.rows, "Rows to print (default: all)");
  sieve_cmd->add_flag("--check", sieve_args.check, "Verify divisor-sum identities");

  CsumArgs csum_args;
  auto* csum_cmd = app.add_subcommand("csum", "Ramanujan sum c_q(n), or a table with --table Q N");
  csum_cmd->add_option("args", csum_args.positional, "q n");
  csum_cmd->add_option("--table", csum_args.table, "Q N")->expected(2);

  ExpandArgs expand_args;
  auto* expand_cmd = app.add_subcommand("expand", "Finite Ramanujan expansion coefficients of a g' support");
  expand_cmd->add_option("--support", expand_args.support, "CSV of q,value")->required();
  expand_cmd->add_option("--range", expand_args.range, "Range Q")->required();
  expand_cmd->add_option("--check-fre", expand_args.check_fre, "Check the expansion identity for m <= M");

  CorrelateArgs corr_args;
  auto* corr_cmd = app.add_subcommand("correlate", "C_{f,g}(N, a) over a range of shifts");
  corr_cmd->add_option("--f", corr_args.f, "one|mu|lambda|phi_over_n|FILE")->required();
  corr_cmd->add_option("--g", corr_args.g, "one|mu|lambda|phi_over_n|FILE")->required();
  corr_cmd->add_option("--N", corr_args.n_limit, "N")->required();
  corr_cmd->add_option("--shifts", corr_args.shifts, "a1..a2 or a,b,c")->required();
  corr_cmd->add_option("--truncate", corr_args.truncate_q, "Cut g' at q <= Q");
  corr_cmd->add_option("--method", corr_args.method, "direct|truncated|expansion");

  DhArgs dh_args;
  auto* dh_cmd = app.add_subcommand("diagnose-dh", "Partial sums of the Delange Hypothesis series of C'");
  dh_cmd->add_option("--f", dh_args.f)->required();
  dh_cmd->add_option("--g", dh_args.g.g);
  dh_cmd->add_option("--g-support", dh_args.g.g_support);
  dh_cmd->add_option("--N", dh_args.n_limit)->required();
  dh_cmd->add_option("--d-max", dh_args.d_max)->required();

  CarmichaelArgs car_args;
  auto* car_cmd = app.add_subcommand("carmichael", "Carmichael coefficients of a -> C_{f,g_N}(N, a)");
  car_cmd->add_option("--f", car_args.f)->required();
  car_cmd->add_option("--g", car_args.g.g);
  car_cmd->add_option("--g-support", car_args.g.g_support);
  car_cmd->add_option("--N", car_args.n_limit)->required();
  car_cmd->add_option("--l", car_args.l_list, "l1..l2 or list")->required();
  car_cmd->add_flag("--exact", car_args.exact, "Full-period average (sparse support)");
  car_cmd->add_flag("--empirical", car_args.empirical, "Finite-x averages");
  car_cmd->add_option("--x", car_args.x_list, "x values for --empirical");

  ReefArgs reef_args;
  auto* reef_cmd = app.add_subcommand("reef", "Explicit-formula residuals or coefficients");
  reef_cmd->add_option("--f", reef_args.f)->required();
  reef_cmd->add_option("--g", reef_args.g.g);
  reef_cmd->add_option("--g-support", reef_args.g.g_support);
  reef_cmd->add_option("--N", reef_args.n_limit)->required();
  reef_cmd->add_option("--shifts", reef_args.shifts);
  reef_cmd->add_flag("--coefficients", reef_args.coefficients, "Dump (l, coefficient)");

  TwinsArgs twins_args;
  auto* twins_cmd = app.add_subcommand("twins", "Lambda-Lambda correlations against the singular series");
  twins_cmd->add_option("--N", twins_args.n_limit);
  twins_cmd->add_option("--k", twins_args.k_range, "k range, shifts are 2k");
  twins_cmd->add_option("--l-max", twins_args.l_max);
  twins_cmd->add_option("--delta", twins_args.delta);
  twins_cmd->add_option("--svg", twins_args.svg, "SVG of ratio against shift");
  auto* coef_cmd = twins_cmd->add_subcommand("coefficients", "Table of truncated Lambda coefficients");
  coef_cmd->add_option("--N", twins_args.n_limit);
  coef_cmd->add_option("--q-max", twins_args.q_max);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run self-check suites");
  verify_cmd->add_option("--suite", verify_args.suite, "identities|statistics|all");
  verify_cmd->add_flag("--pin", verify_args.pin, "Write statistics baselines");
  verify_cmd->add_option("--baselines", verify_args.baselines, "Baselines file");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    std::string config_path = g.config_path;
    if (config_path.empty()) {
      if (const char* env = std::getenv("REEFKIT_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) ctx.config = load_config(config_path);
    if (g.seed) ctx.config.random_seed = *g.seed;

    if (sieve_cmd->parsed()) return cmd_sieve(ctx, sieve_args);
    if (csum_cmd->parsed()) return cmd_csum(ctx, csum_args);
    if (expand_cmd->parsed()) {
      const bool real = g.real || !ctx.config.rational_mode || forces_real(expand_args.support);
      return dispatch_mode(real, [&]<class T>(T) { return run_expand<T>(ctx, expand_args); });
    }
    if (corr_cmd->parsed()) {
      const bool real = g.real || !ctx.config.rational_mode || forces_real(corr_args.f) || forces_real(corr_args.g);
      return dispatch_mode(real, [&]<class T>(T) { return run_correlate<T>(ctx, corr_args); });
    }
    if (dh_cmd->parsed()) {
      const bool real = g.real || !ctx.config.rational_mode || forces_real(dh_args.f) || forces_real(dh_args.g.g) ||
                        forces_real(dh_args.g.g_support);
      return dispatch_mode(real, [&]<class T>(T) { return run_dh<T>(ctx, dh_args); });
    }
    if (car_cmd->parsed()) {
      const bool real = g.real || !ctx.config.rational_mode || forces_real(car_args.f) ||
                        forces_real(car_args.g.g) || forces_real(car_args.g.g_support);
      return dispatch_mode(real, [&]<class T>(T) { return run_carmichael<T>(ctx, car_args); });
    }
    if (reef_cmd->parsed()) {
      const bool real = g.real || !ctx.config.rational_mode || forces_real(reef_args.f) ||
                        forces_real(reef_args.g.g) || forces_real(reef_args.g.g_support);
      return dispatch_mode(real, [&]<class T>(T) { return run_reef<T>(ctx, reef_args); });
    }
    if (twins_cmd->parsed()) {
      if (coef_cmd->parsed()) return cmd_twins_coefficients(ctx, twins_args);
      return cmd_twins(ctx, twins_args);
    }
    if (verify_cmd->parsed()) return cmd_verify(ctx, verify_args);
    err << "usage error: unknown subcommand\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace reefkit::cli
