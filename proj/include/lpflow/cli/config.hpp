#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lpflow/euler_sim.hpp"

namespace lpflow::cli {

/// Flat key-value settings grouped in INI sections. Every key has a default;
/// files may override any subset but may not introduce unknown keys.
class Config {
 public:
  static Config defaults();
  /// Throws Error(Io) when the file is unreadable and Error(InvalidArgument)
  /// on syntax errors or unknown keys.
  static Config load(const std::string& path);

  const std::string& get(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  /// INI text with sections and keys in a fixed order.
  void dump(std::ostream& out) const;
  /// FNV-1a of the dump.
  std::uint64_t hash() const;

  SimConfig sim_config() const;

 private:
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
  };
  Entry* find(const std::string& section, const std::string& key);
  const Entry* find(const std::string& section, const std::string& key) const;
  std::vector<Entry> entries_;
};

std::uint64_t fnv1a(std::string_view text);
/// 16 lowercase hex digits.
std::string hex64(std::uint64_t h);

}  // namespace lpflow::cli
