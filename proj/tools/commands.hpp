#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace szpiro::cli {

enum ExitCode : int { kCertified = 0, kPropertyFails = 1, kInputError = 2, kResourceLimit = 3 };

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::string>> hints;
  /// Overrides SZPIRO_MAX_SPAIRS, which overrides the built-in budget.
  std::optional<std::size_t> max_spairs;
  bool quick = false;
  bool inject_fault = false;
};

struct CommandResult {
  int exit_code = kCertified;
  nlohmann::json report;
};

CommandResult run_diagnose(const std::string& path, const CommandOptions& opts = {});
CommandResult run_ring(const std::string& path, const CommandOptions& opts = {});
CommandResult run_regularize(const std::string& path, const CommandOptions& opts = {});
CommandResult run_symmetrize(const std::string& path, const CommandOptions& opts = {});
CommandResult run_selftest(const CommandOptions& opts = {});
CommandResult run_verify(const std::string& report_path);

/// Effective S-pair budget for the given flag value.
std::optional<std::size_t> spair_budget(const std::optional<std::size_t>& flag);

// Property suites shared by selftest and the acceptance binary.
struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && cases > 0; }
};

/// pluecker_sum vanishes on random matrices over F_p, p = 2^31 - 1, for each parameter shape.
SuiteResult pluecker_suite(std::size_t per_shape, std::uint64_t seed, bool inject_fault = false);
/// Hand-checked 2 x 4 instance [12][34] - [13][24] + [14][23] = 0.
SuiteResult pluecker_numeric();
/// Random symmetric pairs under random elementary ops stay symmetric with symplectic E.
SuiteResult symplectic_suite(std::size_t pairs, std::uint64_t seed, bool inject_fault = false);
/// check_acyclic_minimal agrees with truncated linear-algebra exactness on every fixture.
SuiteResult oracle_equivalence_suite(int max_degree = 6);

}  // namespace szpiro::cli
