#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dshift {

/// A constant measured by a suite next to the value printed in the source
/// it is compared with.
struct MeasuredConstant {
  double value = 0.0;
  /// Exact value when one exists ("a+b*sqrt2").
  std::optional<std::string> exact;
  std::optional<double> paper_value;
  std::string verdict;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// First few failing cases, for diagnosis.
  std::vector<std::string> examples;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<CheckResult> checks;
  std::map<std::string, MeasuredConstant> measured_constants;
  std::vector<std::string> discrepancy_notes;

  void add(CheckResult check);
  void merge(const VerificationReport& other);
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite in order). `size` is the number of
/// random cases drawn by each randomized check. Throws DomainError for an
/// unknown suite.
VerificationReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t size);

}  // namespace dshift
