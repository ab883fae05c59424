#include "lpflow/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpflow/error.hpp"

namespace lpflow::cli {

namespace {

template <class T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) fail(ErrorKind::InvalidArgument, "bad number '" + text + "' for " + what);
  return value;
}

}  // namespace

Config Config::defaults() {
  Config c;
  c.entries_ = {
      {"simulate", "n", "128"},
      {"simulate", "initial", "taylor_green"},
      {"simulate", "alpha", "0.5"},
      {"simulate", "j0", "1"},
      {"simulate", "j1", "3"},
      {"simulate", "seed", "1"},
      {"simulate", "amplitude", "1"},
      {"simulate", "dt", "0.001"},
      {"simulate", "steps", "100"},
      {"simulate", "stride", "10"},
      {"simulate", "dealias", "two_thirds"},
      {"scan", "grid", "256"},
      {"scan", "seed", "1"},
      {"scan", "calibration_levels", "3"},
      {"scan", "probes", "8"},
      {"verify", "grid", "128"},
      {"verify", "commutator_grid", "64"},
      {"verify", "trajectory_grid", "64"},
      {"verify", "seed", "1"},
      {"traject", "k", "3"},
      {"traject", "max_step", "0.00390625"},
  };
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read config " + path);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("config parse error: ") + e.what());
  }
  Config c = defaults();
  for (const auto& [section, keys] : tree) {
    if (keys.empty() && !keys.data().empty()) fail(ErrorKind::InvalidArgument, "key '" + section + "' outside a section");
    for (const auto& [key, value] : keys) c.set(section, key, value.data());
  }
  return c;
}

Config::Entry* Config::find(const std::string& section, const std::string& key) {
  for (auto& e : entries_)
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
  return const_cast<Config*>(this)->find(section, key);
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) fail(ErrorKind::InvalidArgument, "unknown config key " + section + "." + key);
  return e->value;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  return parse_number<int>(get(section, key), section + "." + key);
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_number<double>(get(section, key), section + "." + key);
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key) const {
  return parse_number<std::uint64_t>(get(section, key), section + "." + key);
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  Entry* e = find(section, key);
  if (!e) fail(ErrorKind::InvalidArgument, "unknown config key " + section + "." + key);
  e->value = value;
}

void Config::dump(std::ostream& out) const {
  std::string current;
  for (const auto& e : entries_) {
    if (e.section != current) {
      if (!current.empty()) out << '\n';
      out << '[' << e.section << "]\n";
      current = e.section;
    }
    out << e.key << " = " << e.value << '\n';
  }
}

std::uint64_t Config::hash() const {
  std::ostringstream s;
  dump(s);
  return fnv1a(s.str());
}

SimConfig Config::sim_config() const {
  SimConfig s;
  s.n = get_int("simulate", "n");
  s.initial = get("simulate", "initial");
  s.alpha = get_double("simulate", "alpha");
  s.j0 = get_int("simulate", "j0");
  s.j1 = get_int("simulate", "j1");
  s.seed = get_u64("simulate", "seed");
  s.amplitude = get_double("simulate", "amplitude");
  s.dt = get_double("simulate", "dt");
  s.steps = get_int("simulate", "steps");
  s.stride = get_int("simulate", "stride");
  s.dealias = get("simulate", "dealias");
  return s;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpflow::cli
