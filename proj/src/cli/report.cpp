#include "lpflow/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace lpflow::cli {

CaseResult check_at_most(std::string name, double value, double limit, std::string detail) {
  return {std::move(name), value, limit, true, value <= limit, std::move(detail)};
}

CaseResult check_at_least(std::string name, double value, double limit, std::string detail) {
  return {std::move(name), value, limit, false, value >= limit, std::move(detail)};
}

CaseResult errored(std::string name, const std::string& message) {
  return {std::move(name), std::nan(""), 0.0, true, false, "error: " + message};
}

bool SuiteResult::passed() const { return failures() == 0; }

int SuiteResult::failures() const {
  int n = 0;
  for (const auto& c : cases) n += c.passed ? 0 : 1;
  return n;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string short_number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

void write_junit(std::ostream& out, const std::vector<SuiteResult>& suites) {
  int tests = 0, failures = 0;
  for (const auto& s : suites) {
    tests += static_cast<int>(s.cases.size());
    failures += s.failures();
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<testsuites name=\"lpflow verify\" tests=\"" << tests << "\" failures=\"" << failures << "\">\n";
  for (const auto& s : suites) {
    out << "  <testsuite name=\"" << xml_escape(s.name) << "\" tests=\"" << s.cases.size() << "\" failures=\""
        << s.failures() << "\">\n";
    for (const auto& c : s.cases) {
      const std::string msg = "value " + format_number(c.value) + (c.at_most ? " <= " : " >= ") + format_number(c.limit) +
                              (c.detail.empty() ? "" : "; " + c.detail);
      out << "    <testcase classname=\"" << xml_escape(s.name) << "\" name=\"" << xml_escape(c.name) << "\">\n";
      out << "      <properties><property name=\"value\" value=\"" << format_number(c.value)
          << "\"/><property name=\"limit\" value=\"" << format_number(c.limit) << "\"/></properties>\n";
      if (!c.passed) out << "      <failure message=\"" << xml_escape(msg) << "\"/>\n";
      out << "      <system-out>" << xml_escape(msg) << "</system-out>\n";
      out << "    </testcase>\n";
    }
    out << "  </testsuite>\n";
  }
  out << "</testsuites>\n";
}

void write_table(std::ostream& out, const std::vector<SuiteResult>& suites) {
  char line[256];
  std::snprintf(line, sizeof line, "%-13s %-34s %11s %2s %11s  %s\n", "suite", "case", "value", "", "limit", "result");
  out << line;
  for (const auto& s : suites)
    for (const auto& c : s.cases) {
      std::snprintf(line, sizeof line, "%-13s %-34s %11s %2s %11s  %s\n", s.name.c_str(), c.name.c_str(),
                    short_number(c.value).c_str(), c.at_most ? "<=" : ">=", short_number(c.limit).c_str(),
                    c.passed ? "PASS" : "FAIL");
      out << line;
      if (!c.passed && !c.detail.empty()) out << "    " << c.detail << '\n';
    }
  int total = 0, failed = 0;
  for (const auto& s : suites) {
    total += static_cast<int>(s.cases.size());
    failed += s.failures();
  }
  out << (failed == 0 ? "all " : "") << total - failed << " of " << total << " checks passed\n";
}

nlohmann::ordered_json provenance(const std::string& command, const std::string& config_hash, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["tool"] = "lpflow";
  j["version"] = kVersion;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  return j;
}

}  // namespace lpflow::cli
