// ucr: classical-ensemble vs stationary-state moment tables.
//
//   ucr compare    --system ho --n 0,1,5,20
//   ucr density    --system well --n 5 --points 11
//   ucr airy-zeros --count 5
//   ucr verify     --system bouncer --samples 1000000
//
// Exit status: 0 ok, 1 computation error, 2 parity/verify failure, 64 usage.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ucr/errors.hpp"
#include "ucr/report.hpp"

namespace {

using ucr::report::RunConfig;

struct Flags {
  std::map<std::string, std::string> given;
  std::optional<std::string> config_path;
};

void add_flag(CLI::App* cmd, Flags& flags, const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      "--" + key, [&flags, key](const std::string& v) { flags.given[key] = v; }, help);
}

void add_common(CLI::App* cmd, Flags& flags) {
  add_flag(cmd, flags, "format", "Output format: csv or json");
  add_flag(cmd, flags, "out", "Write the report to this path instead of stdout");
  add_flag(cmd, flags, "quad-tol", "Relative quadrature tolerance (absolute is 1/100 of it)");
  cmd->add_option_function<std::string>(
      "--config", [&flags](const std::string& v) { flags.config_path = v; },
      "key=value config file (default: $UCR_CONFIG); flags override it");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ucr::report::UsageError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments and uncertainty products of classical ensembles and quantum stationary states"};
  app.require_subcommand(1);
  Flags flags;

  auto* compare = app.add_subcommand("compare", "Classical vs quantum moment table per level");
  auto* density = app.add_subcommand("density", "Quantum and classical position densities on a grid");
  auto* zeros = app.add_subcommand("airy-zeros", "Scaled bouncer energies (magnitudes of Ai zeros)");
  auto* verify = app.add_subcommand("verify", "Trajectory time averages vs ensemble quadrature");

  for (auto* cmd : {compare, density, verify}) {
    add_flag(cmd, flags, "system", "ho, well or bouncer");
    add_common(cmd, flags);
  }
  for (auto* cmd : {compare, density}) add_flag(cmd, flags, "n", "Levels, e.g. 0,1,5 or 1..5");
  for (auto* cmd : {compare, verify}) add_flag(cmd, flags, "tol", "Parity / deviation tolerance");
  add_flag(density, flags, "points", "Grid points (>= 2)");
  add_flag(verify, flags, "samples", "Time samples over one period");
  add_flag(verify, flags, "oracle", "Verification oracle (trajectory)");
  add_flag(verify, flags, "rule", "midpoint, uniform-time or random");
  add_flag(verify, flags, "seed", "Seed for --rule random");
  add_flag(zeros, flags, "count", "Number of zeros");
  add_common(zeros, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ucr::report::kExitOk : ucr::report::kExitUsage;
  }

  try {
    RunConfig config;
    std::optional<std::string> config_path = flags.config_path;
    if (!config_path) {
      if (const char* env = std::getenv("UCR_CONFIG"); env != nullptr && *env != '\0') config_path = env;
    }
    if (config_path) ucr::report::apply_config(config, ucr::report::parse_config(read_file(*config_path)));
    ucr::report::apply_config(config, flags.given);

    std::ofstream file;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) {
        std::cerr << "ucr: cannot open '" << config.out_path << "' for writing\n";
        return ucr::report::kExitComputation;
      }
    }
    std::ostream& out = config.out_path.empty() ? std::cout : file;

    if (compare->parsed()) return ucr::report::cmd_compare(config, out, std::cerr);
    if (density->parsed()) return ucr::report::cmd_density(config, out, std::cerr);
    if (zeros->parsed()) return ucr::report::cmd_airy_zeros(config, out, std::cerr);
    return ucr::report::cmd_verify(config, out, std::cerr);
  } catch (const ucr::report::UsageError& e) {
    std::cerr << "ucr: " << e.what() << '\n';
    return ucr::report::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ucr: " << e.what() << '\n';
    return ucr::report::kExitComputation;
  }
}
