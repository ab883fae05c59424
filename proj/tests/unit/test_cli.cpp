#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lpflow/cli/commands.hpp"
#include "lpflow/cli/config.hpp"
#include "lpflow/cli/report.hpp"
#include "lpflow/error.hpp"

using namespace lpflow;
using namespace lpflow::cli;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("lpflow_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("config files override defaults and reject unknown keys") {
  const fs::path dir = temp_dir("config");
  write_file(dir / "a.ini", "[simulate]\nn = 64\ninitial = shear\n\n[scan]\nprobes = 4\n");
  const Config c = Config::load((dir / "a.ini").string());
  CHECK(c.get_int("simulate", "n") == 64);
  CHECK(c.get("simulate", "initial") == "shear");
  CHECK(c.get_int("scan", "probes") == 4);
  CHECK(c.get_double("simulate", "dt") == 0.001);
  CHECK(c.sim_config().n == 64);
  CHECK(c.hash() != Config::defaults().hash());

  // The dump reloads to the same settings.
  std::ostringstream dump;
  c.dump(dump);
  write_file(dir / "b.ini", dump.str());
  CHECK(Config::load((dir / "b.ini").string()).hash() == c.hash());

  write_file(dir / "bad.ini", "[simulate]\nsteps_per_day = 3\n");
  CHECK_THROWS_AS(Config::load((dir / "bad.ini").string()), Error);
  write_file(dir / "nan.ini", "[simulate]\nn = many\n");
  CHECK_THROWS_AS(Config::load((dir / "nan.ini").string()).get_int("simulate", "n"), Error);
  CHECK_THROWS_AS(Config::load((dir / "missing.ini").string()), Error);
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(255) == "00000000000000ff");
  fs::remove_all(dir);
}

TEST_CASE("report helpers") {
  CHECK(check_at_most("a", 1e-13, 1e-12).passed);
  CHECK_FALSE(check_at_most("a", 1e-11, 1e-12).passed);
  CHECK(check_at_least("b", 2.0, 1.8).passed);
  CHECK_FALSE(errored("c", "boom").passed);
  CHECK(format_number(0.1) == "0.1");
  SuiteResult s{"demo", {check_at_most("x", 1.0, 2.0), check_at_least("y", 1.0, 2.0)}};
  CHECK(s.failures() == 1);
  std::ostringstream junit;
  write_junit(junit, {s});
  CHECK(junit.str().find("failures=\"1\"") != std::string::npos);
  CHECK(junit.str().find("time=") == std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == kUsage);
  CHECK(run_cli({"frobnicate"}).code == kUsage);
  CHECK(run_cli({"--help"}).code == kPass);
  CHECK(run_cli({"simulate"}).code == kUsage);
  CHECK(run_cli({"simulate", "--config", "/nonexistent/file.ini"}).code == kUsage);
  const Run bad = run_cli({"verify", "bogus"});
  CHECK(bad.code == kBadInput);
  CHECK(bad.err.find("unknown suite") != std::string::npos);
  CHECK(run_cli({"scan", "--synth", "0.5", "--grid", "64", "--quantity", "nope"}).code == kBadInput);
  CHECK(run_cli({"scan", "--synth", "0.5", "--grid", "64", "--quantity", "Pk_v", "--krange", "4:2"}).code == kBadInput);
  CHECK(run_cli({"scan", "--synth", "0.5", "--grid", "64", "--quantity", "Pk_v", "--krange", "x"}).code == kBadInput);
  const Run dump = run_cli({"config", "--dump"});
  CHECK(dump.code == kPass);
  CHECK(dump.out.find("[simulate]") != std::string::npos);
}

TEST_CASE("scan of a synthetic field writes csv and json") {
  const fs::path dir = temp_dir("scan");
  const Run r = run_cli({"scan", "--synth", "0.5", "--grid", "128", "--j1", "5", "--krange", "2:5", "--quantity",
                         "Pk_v,R_leqk", "--out", dir.string(), "--workers", "2"});
  CHECK(r.code == kPass);
  CHECK(fs::exists(dir / "Pk_v.csv"));
  std::ifstream in(dir / "R_leqk.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["schema"] == "scanv1");
  CHECK(j["rows"].size() == 4);
  CHECK(j["provenance"]["command"] == "scan");
  CHECK(run_cli({"report", dir.string()}).code == kPass);
  CHECK(fs::exists(dir / "summary.csv"));
  fs::remove_all(dir);
}

TEST_CASE("synth writes a file that scan reads back") {
  const fs::path dir = temp_dir("synth");
  const std::string file = (dir / "v.lpsv").string();
  CHECK(run_cli({"synth", "--alpha", "0.4", "--grid", "64", "--j1", "4", "--out", file}).code == kPass);
  CHECK(run_cli({"synth", "--grid", "64", "--out", file}).code == kBadInput);
  CHECK(run_cli({"scan", file, "--quantity", "Pk_v", "--krange", "1:4", "--alpha", "0.4", "--out", (dir / "s").string()})
            .code == kPass);
  fs::remove_all(dir);
}

TEST_CASE("simulate refuses to overwrite without --force") {
  const fs::path dir = temp_dir("simulate");
  write_file(dir / "run.ini", "[simulate]\nn = 32\nsteps = 4\nstride = 2\n");
  const std::string cfg = (dir / "run.ini").string(), out = (dir / "series").string();
  CHECK(run_cli({"simulate", "--config", cfg, "--out", out}).code == kPass);
  CHECK(fs::exists(dir / "series" / "provenance.json"));
  const Run again = run_cli({"simulate", "--config", cfg, "--out", out});
  CHECK(again.code == kBadInput);
  CHECK(again.err.find("--force") != std::string::npos);
  CHECK(run_cli({"simulate", "--config", cfg, "--out", out, "--force"}).code == kPass);
  CHECK(run_cli({"traject", out, "--taylor", "1", "--out", (dir / "tr").string()}).code == kPass);
  CHECK(fs::exists(dir / "tr" / "path.csv"));
  CHECK(fs::exists(dir / "tr" / "taylor.json"));
  fs::remove_all(dir);
}
