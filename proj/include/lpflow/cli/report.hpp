#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace lpflow::cli {

inline constexpr const char* kVersion = "0.1.0";

/// One checked property: `value` compared against `limit`.
struct CaseResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool at_most = true;  // pass iff value <= limit; otherwise value >= limit
  bool passed = false;
  std::string detail;
};

CaseResult check_at_most(std::string name, double value, double limit, std::string detail = {});
CaseResult check_at_least(std::string name, double value, double limit, std::string detail = {});
/// A failed case carrying an error message instead of a measurement.
CaseResult errored(std::string name, const std::string& message);

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;
  bool passed() const;
  int failures() const;
};

/// JUnit-style XML without timing attributes, so identical runs give identical bytes.
void write_junit(std::ostream& out, const std::vector<SuiteResult>& suites);
/// Fixed-width table: suite, case, value, comparison, limit, PASS/FAIL.
void write_table(std::ostream& out, const std::vector<SuiteResult>& suites);

/// Shortest round-trip representation of a double ("inf", "nan" spelled out).
std::string format_number(double x);

/// {"tool", "version", "command", "config_hash", "seed"}
nlohmann::ordered_json provenance(const std::string& command, const std::string& config_hash, std::uint64_t seed);

}  // namespace lpflow::cli
