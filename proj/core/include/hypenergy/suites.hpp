#pragma once

// Experiment suites: each runs one family of checks over a prime grid and
// returns one row per check.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypenergy/set_spec.hpp"

namespace hypenergy {

/// Bad suite name, set description or parameter (exit code 2 in the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::uint32_t> kDefaultPrimes = {11, 53, 101, 401, 1009, 2003};

struct SuiteConfig {
  /// Empty: the suite's own default grid.
  std::vector<std::uint32_t> primes;
  std::optional<SetSpec> a, b, c, d;
  std::optional<std::int64_t> lambda;
  std::uint64_t seed = 1;
  /// Replaces the envelope of every envelope-style bound.
  std::optional<double> envelope;
  /// Record wall time per row; otherwise millis is 0 so output is byte-stable.
  bool timing = false;
};

struct ExperimentRow {
  std::string suite;
  std::string check;
  /// 0 for rows computed over the integers or rationals.
  std::uint32_t p = 0;
  std::string a, b, c, d;
  std::string lambda;
  /// Exact where the left side is a count.
  std::string lhs;
  std::string main_term;
  double rhs = 0;
  double ratio = 0;
  std::optional<double> exponent;
  bool pass = false;
  /// Failing rows with asserted = false are reported, never fatal.
  bool asserted = true;
  double millis = 0;
  std::vector<std::string> notes;
};

struct SuiteInfo {
  std::string name;
  std::string summary;
  /// Operations the suite exercises, by library function name.
  std::vector<std::string> ops;
  std::vector<std::uint32_t> default_primes;
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& name);

/// Throws ConfigError for an unknown suite or unusable parameters.
std::vector<ExperimentRow> run_suite(const std::string& name, const SuiteConfig& config);

/// Rows that are asserted and did not pass.
std::vector<const ExperimentRow*> failed_rows(const std::vector<ExperimentRow>& rows);

}  // namespace hypenergy
