#include "ucr/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ucr/errors.hpp"
#include "ucr/quantum_states.hpp"
#include "ucr/specfun.hpp"

namespace ucr::report {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_tolerance(std::string_view text, std::string_view what) {
  const double v = parse_number<double>(text, what);
  if (!std::isfinite(v) || v <= 0.0) {
    throw UsageError(std::string(what) + " must be a positive number, got '" + std::string(trim(text)) + "'");
  }
  return v;
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw UsageError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

SamplingRule parse_rule(std::string_view s) {
  if (s == "midpoint") return SamplingRule::midpoint;
  if (s == "uniform-time") return SamplingRule::uniform_time;
  if (s == "random") return SamplingRule::random;
  throw UsageError("unknown sampling rule '" + std::string(s) + "'");
}

std::string json_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string cell_text(const Cell& cell, bool json) {
  struct Visitor {
    bool json;
    std::string operator()(const std::string& s) const { return json ? '"' + json_escape(s) + '"' : s; }
    std::string operator()(const Number& n) const {
      if (json && !std::isfinite(n.value)) return "null";
      return format_number(n.value, n.digits);
    }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{json}, cell);
}

double tolerance_or(const RunConfig& config, double fallback) {
  return config.tol.value_or(fallback);
}

std::array<double, 6> moment_fields(const ScaledMoments& m) {
  return {m.mean_x, m.mean_x2, m.mean_p, m.mean_p2, m.var_x, m.var_p};
}

double max_deviation(const ScaledMoments& a, const ScaledMoments& b) {
  const auto fa = moment_fields(a);
  const auto fb = moment_fields(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) worst = std::max(worst, std::abs(fa[i] - fb[i]));
  return worst;
}

PotentialModel model_for(SystemKind kind) { return PotentialModel::unit(kind); }

}  // namespace

quadrature::QuadratureSpec RunConfig::quadrature_spec() const {
  quadrature::QuadratureSpec spec;
  spec.rel_tol = quad_tol;
  spec.abs_tol = quad_tol / 100.0;
  return spec;
}

std::vector<int> parse_levels(std::string_view text) {
  std::vector<int> levels;
  std::string_view rest = trim(text);
  if (rest.empty()) throw UsageError("empty level list");
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const int first = parse_number<int>(item.substr(0, dots), "level");
      const int last = parse_number<int>(item.substr(dots + 2), "level");
      if (last < first) throw UsageError("descending level range '" + std::string(item) + "'");
      for (int n = first; n <= last; ++n) levels.push_back(n);
    } else {
      levels.push_back(parse_number<int>(item, "level"));
    }
  }
  return levels;
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(view.substr(0, eq)));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    entries[key] = std::string(trim(view.substr(eq + 1)));
  }
  return entries;
}

void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "system") {
      try {
        config.system = parse_system(value);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    } else if (key == "n") {
      config.levels = parse_levels(value);
    } else if (key == "points") {
      config.points = parse_number<int>(value, "points");
    } else if (key == "samples") {
      config.samples = parse_number<long>(value, "samples");
    } else if (key == "tol") {
      config.tol = parse_tolerance(value, "tol");
    } else if (key == "quad-tol") {
      config.quad_tol = parse_tolerance(value, "quad-tol");
    } else if (key == "format") {
      config.format = parse_format(value);
    } else if (key == "out") {
      config.out_path = value;
    } else if (key == "oracle") {
      config.oracle = value;
    } else if (key == "rule") {
      config.rule = parse_rule(value);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "count") {
      config.count = parse_number<int>(value, "count");
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

void validate_levels(SystemKind system, const std::vector<int>& levels) {
  if (levels.empty()) throw UsageError("no levels given (use --n)");
  const int lowest = system == SystemKind::harmonic_oscillator ? 0 : 1;
  for (int n : levels) {
    if (n < lowest) {
      throw UsageError("level n = " + std::to_string(n) + " is invalid for system '" +
                       std::string(to_string(system)) + "' (need n >= " + std::to_string(lowest) + ")");
    }
  }
}

std::string format_number(double value, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, value + 0.0);
  return buf.data();
}

ComparisonRow compare_level(const PotentialModel& model, int n, double tolerance,
                            const quadrature::QuadratureSpec& spec) {
  const EigenLevel level = eigen_level(model, n);
  ComparisonRow row;
  row.system = model.kind();
  row.n = n;
  row.classical = classical_moments_quadrature(ClassicalEnsemble(model, level.energy, spec), spec);
  row.quantum = quantum_moments_quadrature(level, spec);
  row.bound = commutator_bound(level);
  row.max_abs_dev = max_deviation(row.classical, row.quantum);

  ScaledMoments reference = row.classical;
  if (row.system == SystemKind::infinite_well) {
    const double nn = n;
    const double correction = 2.0 / (nn * nn * std::numbers::pi * std::numbers::pi);
    reference = ScaledMoments::from_means(reference.mean_x, reference.mean_x2 - correction,
                                          reference.mean_p, reference.mean_p2, reference.realm,
                                          reference.method);
  }
  row.parity_ok = max_deviation(reference, row.quantum) < tolerance &&
                  row.quantum.product >= row.bound - 1e-12;
  return row;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i], false);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  out << "[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n " : "\n ") << "{";
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? ", " : "") << '"' << json_escape(table.header[i]) << "\": " << cell_text(row[i], true);
    }
    out << "}";
  }
  out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    write_json(out, table);
  } else {
    write_csv(out, table);
  }
}

Table comparison_table(const std::vector<ComparisonRow>& rows) {
  Table table;
  table.header = {"system", "n",     "realm", "method",  "mean_x", "mean_x2",  "mean_p",
                  "mean_p2", "var_x", "var_p", "product", "bound",  "parity_ok"};
  for (const ComparisonRow& row : rows) {
    for (const ScaledMoments* m : {&row.classical, &row.quantum}) {
      table.rows.push_back({std::string(to_string(row.system)), static_cast<long>(row.n),
                            std::string(to_string(m->realm)), std::string(to_string(m->method)),
                            Number{m->mean_x}, Number{m->mean_x2}, Number{m->mean_p}, Number{m->mean_p2},
                            Number{m->var_x}, Number{m->var_p}, Number{m->product}, Number{row.bound},
                            row.parity_ok});
    }
  }
  return table;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  validate_levels(config.system, config.levels);
  const double tolerance = tolerance_or(config, kDefaultParityTolerance);
  const PotentialModel model = model_for(config.system);
  const auto spec = config.quadrature_spec();

  std::vector<std::future<ComparisonRow>> pending;
  for (int n : config.levels) {
    pending.push_back(std::async(std::launch::async, [&, n] { return compare_level(model, n, tolerance, spec); }));
  }
  std::vector<ComparisonRow> rows;
  for (auto& f : pending) rows.push_back(f.get());

  write_table(out, comparison_table(rows), config.format);
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.parity_ok; });
  if (!all_ok) {
    for (const ComparisonRow& r : rows) {
      if (!r.parity_ok) {
        err << "parity failure: " << to_string(r.system) << " n=" << r.n
            << " max_abs_dev=" << format_number(r.max_abs_dev) << '\n';
      }
    }
  }
  return all_ok ? kExitOk : kExitParity;
}

int cmd_density(const RunConfig& config, std::ostream& out, std::ostream&) {
  validate_levels(config.system, config.levels);
  if (config.levels.size() != 1) throw UsageError("density needs exactly one level");
  if (config.points < 2) throw UsageError("density needs --points >= 2");

  const EigenLevel level = eigen_level(model_for(config.system), config.levels.front());
  Table table;
  table.header = {"x_scaled", "p_qm", "p_cl", "clipped_flag"};
  for (const DensityPoint& p : density_grid(level, config.points)) {
    table.rows.push_back({Number{p.x_scaled}, Number{p.p_qm}, Number{p.p_cl}, static_cast<long>(p.clipped)});
  }
  write_table(out, table, config.format);
  return kExitOk;
}

int cmd_airy_zeros(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.count < 1) throw UsageError("airy-zeros needs --count >= 1");
  Table table;
  table.header = {"n", "scaled_energy"};
  for (int n = 1; n <= config.count; ++n) {
    table.rows.push_back({static_cast<long>(n), Number{specfun::airy_zero(n).scaled_energy, 10}});
  }
  write_table(out, table, config.format);
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.oracle != "trajectory") throw UsageError("unknown oracle '" + config.oracle + "'");
  if (config.samples < 2) throw UsageError("verify needs --samples >= 2");
  const double tolerance = tolerance_or(config, kDefaultVerifyTolerance);
  const PotentialModel model = model_for(config.system);

  const ScaledMoments ensemble = classical_moments_quadrature(ClassicalEnsemble(model), config.quadrature_spec());
  const ScaledMoments timed = trajectory_moments(build_trajectory(model), config.samples, config.rule, config.seed);

  const std::array<const char*, 7> names = {"mean_x", "mean_x2", "mean_p", "mean_p2", "var_x", "var_p", "product"};
  const std::array<double, 7> a = {timed.mean_x, timed.mean_x2, timed.mean_p, timed.mean_p2,
                                   timed.var_x,  timed.var_p,   timed.product};
  const std::array<double, 7> b = {ensemble.mean_x, ensemble.mean_x2, ensemble.mean_p, ensemble.mean_p2,
                                   ensemble.var_x,  ensemble.var_p,   ensemble.product};
  Table table;
  table.header = {"system", "field", "trajectory", "quadrature", "deviation", "ok"};
  bool all_ok = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double dev = std::abs(a[i] - b[i]);
    const bool ok = dev < tolerance;
    all_ok = all_ok && ok;
    table.rows.push_back({std::string(to_string(config.system)), std::string(names[i]), Number{a[i]},
                          Number{b[i]}, Number{dev}, ok});
  }
  write_table(out, table, config.format);
  if (!all_ok) err << "verify: deviation above tolerance " << format_number(tolerance) << '\n';
  return all_ok ? kExitOk : kExitParity;
}

}  // namespace ucr::report
