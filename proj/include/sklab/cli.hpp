#pragma once

#include "sklab/io.hpp"
#include "sklab/theta.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sklab {

enum class OutputFormat { Json, Table };

/// Shared settings. Precedence: command-line flags, then SKLAB_OMEGA,
/// SKLAB_SEED and SKLAB_FORMAT, then these defaults.
struct RunConfig {
  cplx omega{0.2, 1.3};
  double tail_eps = 1e-14;
  double zero_tol = 1e-9;
  double rank_tol = 1e-9;
  double iso_tol = 1e-8;
  double bracket_tol = 1e-6;
  double h = 1e-3;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Json;

  /// Throws InvalidArgument unless all tolerances are positive and Im(omega) > 0.
  void validate() const;
  /// Defaults overridden by the SKLAB_* environment variables that are set.
  static RunConfig from_environment();
};

OutputFormat parse_format(const std::string& text);

struct ResidualRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Row that passes when value <= tolerance.
ResidualRow upper_bound_row(std::string name, double value, double tolerance);
/// Row that passes when value >= tolerance.
ResidualRow lower_bound_row(std::string name, double value, double tolerance);

json residual_table(const std::vector<ResidualRow>& rows);
bool all_pass(const std::vector<ResidualRow>& rows);

/// Serializes a result. JSON mode keeps field order; table mode prints
/// residual tables as aligned columns and other values as key: value lines,
/// reals with 17 significant digits.
std::string report(const json& results, OutputFormat format);

/// Invariant suite of the theta module at level d.
std::vector<ResidualRow> theta_checks(int d, const RunConfig& cfg, int samples = 100);

/// Invariant suites of every module, for levels up to dmax.
std::vector<ResidualRow> check_all(int dmax, const RunConfig& cfg);

/// Entry point of the sklab command. Returns 0 on success, 1 on a
/// verification failure and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sklab
