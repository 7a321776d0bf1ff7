#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ucr/classical_ensemble.hpp"
#include "ucr/quadrature.hpp"
#include "ucr/trajectory_oracle.hpp"

namespace ucr::report {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitParity = 2;
inline constexpr int kExitUsage = 64;

/// Bad command-line or config input; maps to exit status 64.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  SystemKind system = SystemKind::harmonic_oscillator;
  std::vector<int> levels;
  int points = 101;
  long samples = 1000000;
  /// Parity tolerance for compare (default 1e-6) or deviation tolerance for
  /// verify (default 1e-4) when unset.
  std::optional<double> tol;
  /// Relative quadrature tolerance; the absolute one is 1/100 of it.
  double quad_tol = 1e-10;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;
  std::string oracle = "trajectory";
  SamplingRule rule = SamplingRule::midpoint;
  std::uint64_t seed = 0;
  int count = 5;

  quadrature::QuadratureSpec quadrature_spec() const;
};

inline constexpr double kDefaultParityTolerance = 1e-6;
inline constexpr double kDefaultVerifyTolerance = 1e-4;

/// "0,1,5,20", "1..5" or mixtures such as "1..3,7". Throws UsageError.
std::vector<int> parse_levels(std::string_view text);

/// key=value lines; '#' starts a comment. Throws UsageError on a malformed
/// line.
std::map<std::string, std::string> parse_config(std::string_view text);

/// Applies recognised keys (system, n, points, samples, tol, quad-tol,
/// format, out, oracle, rule, seed, count). Throws UsageError on unknown keys
/// or bad values.
void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries);

/// Throws UsageError when a level is outside the system's range or the list
/// is empty.
void validate_levels(SystemKind system, const std::vector<int>& levels);

/// "%.<digits>g" with -0 printed as 0.
std::string format_number(double value, int digits = 12);

struct ComparisonRow {
  SystemKind system = SystemKind::harmonic_oscillator;
  int n = 0;
  ScaledMoments classical;
  ScaledMoments quantum;
  double bound = 0.0;
  /// Largest |classical - quantum| over the means and variances.
  double max_abs_dev = 0.0;
  bool parity_ok = false;
};

/// Classical ensemble at E_n against the n-th stationary state. Well rows
/// are judged against the finite-n value 1/3 - 2/(n^2 pi^2) of <X^2> (the
/// raw deviation still lands in max_abs_dev).
ComparisonRow compare_level(const PotentialModel& model, int n, double tolerance,
                            const quadrature::QuadratureSpec& spec = {});

/// One column value: text, number printed with `digits` significant
/// digits, integer or boolean.
struct Number {
  double value = 0.0;
  int digits = 12;
};
using Cell = std::variant<std::string, Number, long, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table);
/// Array of flat objects keyed by the header; non-finite numbers become null.
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

Table comparison_table(const std::vector<ComparisonRow>& rows);

// Subcommands. Each writes its report to `out`, diagnostics to `err`, and
// returns the process exit status.
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_density(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_airy_zeros(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ucr::report
