#include "lpflow/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "lpflow/cli/config.hpp"
#include "lpflow/cli/report.hpp"
#include "lpflow/cli/verify.hpp"
#include "lpflow/commutator.hpp"
#include "lpflow/error.hpp"
#include "lpflow/holder.hpp"
#include "lpflow/parallel.hpp"
#include "lpflow/rough_synth.hpp"
#include "lpflow/scale_scan.hpp"
#include "lpflow/snapshot_io.hpp"
#include "lpflow/trajectories.hpp"

namespace fs = std::filesystem;

namespace lpflow::cli {

namespace {

using json = nlohmann::ordered_json;

std::pair<int, int> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const int lo = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string rest = text.substr(colon + 1);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidArgument, std::string("bad ") + what + " '" + text + "', expected lo:hi");
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create directory " + dir);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  return f;
}

Config load_config(const std::string& path) { return path.empty() ? Config::defaults() : Config::load(path); }

std::string config_hash(const Config& c) { return hex64(c.hash()); }

/// Report JSON with provenance attached.
json with_provenance(const std::function<void(std::ostream&)>& writer, const json& prov) {
  std::ostringstream s;
  writer(s);
  json j = json::parse(s.str());
  j["provenance"] = prov;
  return j;
}

std::string fixed(double x, int digits = 3) {
  if (!std::isfinite(x)) return format_number(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// --- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string out = "series";
  bool force = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Config cfg = Config::load(a.config);
  const SimConfig sim = cfg.sim_config();
  if (fs::exists(a.out)) {
    if (!a.force) fail(ErrorKind::InvalidArgument, "output " + a.out + " exists; pass --force to replace it");
    fs::remove_all(a.out);
  }
  const SnapshotSeries s = simulate(sim);
  s.save(a.out);
  const double e0 = kinetic_energy(s.velocities.front());
  double drift = 0.0;
  for (const auto& v : s.velocities) drift = std::max(drift, std::abs(kinetic_energy(v) - e0) / e0);
  json j = provenance("simulate", config_hash(cfg), sim.seed);
  j["snapshots"] = s.size();
  j["t_end"] = s.times.back();
  j["energy_drift"] = drift;
  open_out(fs::path(a.out) / "provenance.json") << j.dump(2) << '\n';
  out << "wrote " << s.size() << " snapshots to " << a.out << "; relative energy drift " << format_number(drift) << '\n';
  return kPass;
}

// --- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string config;
  double alpha = 0.0;
  std::string named;
  int grid = 256;
  int j0 = 1;
  int j1 = -1;
  std::uint64_t seed = 1;
  std::string out;
};

VecField make_synthetic(const LPBank& bank, double alpha, const std::string& named, int j0, int j1,
                        std::uint64_t seed) {
  if (!named.empty()) return synth_named(bank.grid(), named);
  return synth_lacunary(bank, alpha, j0, j1 < 0 ? bank.grid().kspatial - 1 : j1, seed);
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const Config cfg = load_config(a.config);
  if (a.named.empty() == (a.alpha == 0.0)) fail(ErrorKind::InvalidArgument, "give exactly one of --alpha and --named");
  const TorusGrid g(a.grid);
  const LPBank bank(g);
  const VecField v = make_synthetic(bank, a.alpha, a.named, a.j0, a.j1, a.seed);
  write_lpsv(a.out, 0.0, std::vector<Field>{v[0], v[1]});
  json j = provenance("synth", config_hash(cfg), a.seed);
  j["grid"] = a.grid;
  if (a.named.empty()) {
    j["alpha"] = a.alpha;
    j["j0"] = a.j0;
    j["j1"] = a.j1 < 0 ? g.kspatial - 1 : a.j1;
    j["lp_seminorm"] = lp_seminorm(bank, v, a.alpha);
  } else {
    j["named"] = a.named;
  }
  open_out(a.out + ".json") << j.dump(2) << '\n';
  out << "wrote " << a.out << '\n';
  return kPass;
}

// --- scan -----------------------------------------------------------------

struct ScanArgs {
  std::string config;
  std::string input;
  double synth = 0.0;
  std::string named;
  int grid = 0;
  std::uint64_t seed = 0;
  int j1 = -1;
  std::vector<std::string> quantities;
  std::string krange;
  std::string fit;
  double alpha = 0.0;
  double time = NAN;
  std::string kind = "auto";
  std::string symbol = "mollifier";
  std::string out = "scan";
};

bool is_commutator_quantity(const std::string& q) { return q == "commutator_r1" || q == "commutator_r2"; }

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const Config cfg = load_config(a.config);
  for (const auto& q : a.quantities)
    if (!is_commutator_quantity(q)) quantity_spec(q);
  const Symbol symbol = parse_symbol(a.symbol);
  const int sources = (a.input.empty() ? 0 : 1) + (a.synth != 0.0 ? 1 : 0) + (a.named.empty() ? 0 : 1);
  if (sources != 1) fail(ErrorKind::InvalidArgument, "give exactly one input: a path, --synth or --named");

  const std::uint64_t seed = a.seed ? a.seed : cfg.get_u64("scan", "seed");
  std::unique_ptr<TorusGrid> grid;
  VecField v;
  double t = 0.0;
  std::string kind = "synthetic";
  if (!a.input.empty()) {
    if (fs::is_directory(a.input)) {
      const SnapshotSeries s = SnapshotSeries::load(a.input);
      const std::size_t idx = std::isnan(a.time) ? 0 : s.index_of(a.time);
      grid = std::make_unique<TorusGrid>(s.grid);
      v = s.velocities[idx];
      t = s.times[idx];
      kind = "euler";
    } else {
      const SnapshotFile f = read_lpsv(a.input);
      grid = std::make_unique<TorusGrid>(f.grid);
      v = as_velocity(f);
      t = f.time;
    }
  } else {
    grid = std::make_unique<TorusGrid>(a.grid ? a.grid : cfg.get_int("scan", "grid"));
  }
  if (a.kind == "synthetic" || a.kind == "euler") kind = a.kind;
  else if (a.kind != "auto") fail(ErrorKind::InvalidArgument, "--kind must be auto, synthetic or euler");

  const TorusGrid& g = *grid;
  const LPBank bank(g);
  if (a.input.empty()) v = make_synthetic(bank, a.synth, a.named, 1, a.j1, seed);
  const EulerSnapshot snap(t, v, kind == "euler" ? 2 : 0);

  const double alpha = a.alpha > 0.0 ? a.alpha : (a.synth > 0.0 ? a.synth : 1.0 / 3.0);
  int k_lo = 1, k_hi = kind == "euler" ? g.kmax : g.kspatial - 2;
  if (!a.krange.empty()) std::tie(k_lo, k_hi) = parse_range(a.krange, "--krange");
  if (k_lo > k_hi) fail(ErrorKind::InvalidArgument, "empty k-range " + a.krange);
  int fit_lo = k_lo, fit_hi = k_hi;
  if (!a.fit.empty()) std::tie(fit_lo, fit_hi) = parse_range(a.fit, "--fit");

  ensure_dir(a.out);
  const json prov = provenance("scan", config_hash(cfg), seed);
  bool all_pass = true;
  for (const auto& q : a.quantities) {
    ScanReport report;
    std::function<void(std::ostream&)> csv;
    std::vector<double> bounds;
    if (is_commutator_quantity(q)) {
      CommutatorScanOptions o;
      o.r = q == "commutator_r1" ? 1 : 2;
      // Commutator levels stop at kmax unless the range was given explicitly.
      o.k_lo = k_lo;
      o.k_hi = a.krange.empty() ? std::min(k_hi, g.kmax) : k_hi;
      o.fit_lo = fit_lo;
      o.fit_hi = a.fit.empty() ? o.k_hi : fit_hi;
      o.alpha = alpha;
      o.field_kind = kind;
      o.probes = cfg.get_int("scan", "probes");
      o.seed = seed;
      o.calibration_levels = cfg.get_int("scan", "calibration_levels");
      const CommutatorScan c = commutator_norm_scan(bank, snap, symbol, o);
      report = c.report;
      bounds = c.l1_bounds;
      csv = [c](std::ostream& s) { c.write_csv(s); };
    } else {
      ScanOptions o;
      o.k_lo = k_lo;
      o.k_hi = k_hi;
      o.fit_lo = fit_lo;
      o.fit_hi = fit_hi;
      o.alpha = alpha;
      o.field_kind = kind;
      o.calibration_levels = cfg.get_int("scan", "calibration_levels");
      report = scan(bank, snap, q, o);
      csv = [report](std::ostream& s) { report.write_csv(s); };
    }
    auto f = open_out(fs::path(a.out) / (q + ".csv"));
    csv(f);
    json j = with_provenance([&](std::ostream& s) { report.write_json(s); }, prov);
    if (!bounds.empty()) {
      j["l1_bounds"] = json::array();
      for (double b : bounds) j["l1_bounds"].push_back(std::isnan(b) ? json(nullptr) : json(b));
    }
    open_out(fs::path(a.out) / (q + ".json")) << j.dump(2) << '\n';
    all_pass = all_pass && report.verdict;
    out << q << ": slope " << (report.fitted ? fixed(report.fit.slope) : std::string("n/a")) << " (predicted "
        << fixed(report.predicted_slope) << "), dispersion " << fixed(report.dispersion, 2) << ", verdict "
        << (report.empty ? "pass (empty)" : report.verdict ? "pass" : "fail") << '\n';
  }
  return all_pass ? kPass : kVerdictFail;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string config;
  std::string suite;
  int grid = 0;
  std::string out = "verify";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Config cfg = load_config(a.config);
  VerifyOptions o;
  o.grid = a.grid ? a.grid : cfg.get_int("verify", "grid");
  o.commutator_grid = a.grid ? a.grid : cfg.get_int("verify", "commutator_grid");
  o.trajectory_grid = a.grid ? a.grid : cfg.get_int("verify", "trajectory_grid");
  o.seed = cfg.get_u64("verify", "seed");
  const std::vector<SuiteResult> suites = run_verify(a.suite, o);
  ensure_dir(a.out);
  {
    auto f = open_out(fs::path(a.out) / "junit.xml");
    write_junit(f, suites);
  }
  std::ostringstream table;
  write_table(table, suites);
  open_out(fs::path(a.out) / "table.txt") << table.str();
  json j = provenance("verify " + a.suite, config_hash(cfg), o.seed);
  j["grids"] = {{"identities", o.grid}, {"commutators", o.commutator_grid}, {"trajectories", o.trajectory_grid}};
  open_out(fs::path(a.out) / "provenance.json") << j.dump(2) << '\n';
  out << table.str();
  bool ok = true;
  for (const auto& s : suites) ok = ok && s.passed();
  return ok ? kPass : kVerdictFail;
}

// --- traject --------------------------------------------------------------

struct TrajectArgs {
  std::string config;
  std::string input;
  std::string steady;
  int grid = 64;
  int k = -1;
  std::vector<double> x0{1.0, 2.0};
  double t0 = NAN;
  double t1 = NAN;
  int taylor = -1;
  double tau = 0.0;
  std::string ladder;
  std::string out = "traject";
};

int cmd_traject(const TrajectArgs& a, std::ostream& out) {
  const Config cfg = load_config(a.config);
  if (a.input.empty() == a.steady.empty()) fail(ErrorKind::InvalidArgument, "give exactly one of a series path and --steady");
  if (a.x0.size() != 2) fail(ErrorKind::InvalidArgument, "--x0 needs two coordinates");
  const Point x0{a.x0[0], a.x0[1]};
  std::unique_ptr<SnapshotSeries> series;
  std::unique_ptr<TorusGrid> grid;
  VecField steady_v;
  if (!a.input.empty()) {
    series = std::make_unique<SnapshotSeries>(SnapshotSeries::load(a.input));
    grid = std::make_unique<TorusGrid>(series->grid);
  } else {
    grid = std::make_unique<TorusGrid>(a.grid);
    steady_v = synth_named(*grid, a.steady);
  }
  const LPBank bank(*grid);
  const int k = a.k >= 0 ? a.k : cfg.get_int("traject", "k");
  auto source = [&](int level) {
    return series ? FlowSource::from_series(bank, *series, level) : FlowSource::steady(bank, steady_v, level);
  };
  const double t0 = !std::isnan(a.t0) ? a.t0 : series ? series->times.front() : 0.0;
  const double t1 = !std::isnan(a.t1) ? a.t1 : series ? series->times.back() : 1.0;
  FlowOptions fo;
  fo.max_step = cfg.get_double("traject", "max_step");

  ensure_dir(a.out);
  const FlowSource src = source(k);
  const Path p = integrate_flow(src, x0, t0, t1, fo);
  {
    auto f = open_out(fs::path(a.out) / "path.csv");
    p.write_csv(f);
  }
  out << "path k=" << k << " from t=" << format_number(t0) << " to " << format_number(t1) << ", halving error "
      << format_number(p.halving_error) << '\n';
  bool ok = true;
  json prov = provenance("traject", config_hash(cfg), 0);
  if (a.taylor >= 0) {
    const double tau = a.tau > 0.0 ? a.tau : series ? std::min(4 * series->spacing(), src.t_end() - t0) : 0.1;
    const TaylorReport r = taylor_check(src, x0, t0, a.taylor, tau);
    open_out(fs::path(a.out) / "taylor.json") << with_provenance([&](std::ostream& s) { r.write_json(s); }, prov).dump(2)
                                              << '\n';
    const bool pass = std::abs(r.fitted_order - (a.taylor + 1)) <= 0.2;
    ok = ok && pass;
    out << "Taylor N=" << a.taylor << ": remainder order " << fixed(r.fitted_order) << " (expected " << a.taylor + 1
        << ") " << (pass ? "pass" : "fail") << '\n';
  }
  if (!a.ladder.empty()) {
    const auto [lo, hi] = parse_range(a.ladder, "--ladder");
    std::vector<FlowSource> ladder;
    std::vector<int> ks;
    for (int kk = lo; kk <= hi; ++kk) {
      ladder.push_back(source(kk));
      ks.push_back(kk);
    }
    std::vector<Point> starts{x0};
    for (Point q : start_lattice(4)) starts.push_back(q);
    for (Point q : peak_starts(bank, series ? series->velocities.front() : steady_v, ks)) starts.push_back(q);
    const ConvergenceReport r = trajectory_convergence(ladder, starts, t0, t1, fo);
    auto f = open_out(fs::path(a.out) / "ladder.csv");
    f << "k,difference\n";
    f.precision(17);
    for (std::size_t i = 0; i < r.differences.size(); ++i) f << r.ks[i] << ',' << r.differences[i] << '\n';
    out << "ladder " << lo << ".." << hi << ": rate " << fixed(r.rate) << ", " << (r.monotone ? "monotone" : "not monotone")
        << " (evidence of convergence, not a uniqueness certificate)\n";
    ok = ok && r.monotone;
  }
  return ok ? kPass : kVerdictFail;
}

// --- report ---------------------------------------------------------------

int cmd_report(const std::string& dir, std::ostream& out) {
  if (!fs::is_directory(dir)) fail(ErrorKind::Io, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  auto summary = open_out(fs::path(dir) / "summary.csv");
  summary << "file,quantity,field_kind,alpha,predicted_slope,fitted_slope,r2,c_fit,dispersion,verdict\n";
  bool ok = true;
  int count = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception&) {
      fail(ErrorKind::Io, "malformed JSON in " + path.string());
    }
    if (!j.contains("schema") || j["schema"] != "scanv1") continue;
    const bool pass = j["verdict"] == "pass";
    ok = ok && pass;
    ++count;
    const auto num = [](const json& x) { return x.is_number() ? format_number(x.get<double>()) : x.dump(); };
    summary << path.filename().string() << ',' << j["quantity"].get<std::string>() << ','
            << j["field_kind"].get<std::string>() << ',' << num(j["alpha"]) << ',' << num(j["predicted_slope"]) << ','
            << (j["fit"]["fitted"].get<bool>() ? num(j["fit"]["slope"]) : "") << ',' << num(j["fit"]["r2"]) << ','
            << num(j["c_fit"]) << ',' << num(j["dispersion"]) << ',' << j["verdict"].get<std::string>() << '\n';
    out << j["quantity"].get<std::string>() << ": " << j["verdict"].get<std::string>() << '\n';
  }
  out << count << " scan reports summarized in " << (fs::path(dir) / "summary.csv").string() << '\n';
  return ok ? kPass : kVerdictFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Littlewood-Paley and Euler toolkit on the 2-torus", "lpflow"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  std::function<int()> action;

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "run the Euler solver and store a snapshot series");
  c_sim->add_option("--config", sim.config, "run configuration")->required()->check(CLI::ExistingFile);
  c_sim->add_option("--out", sim.out, "output directory");
  c_sim->add_flag("--force", sim.force, "replace an existing output directory");
  c_sim->callback([&] { action = [&] { return cmd_simulate(sim, out); }; });

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synth", "write a synthetic velocity field");
  c_syn->add_option("--config", syn.config)->check(CLI::ExistingFile);
  c_syn->add_option("--alpha", syn.alpha, "lacunary exponent")->check(CLI::Range(0.0, 1.0));
  c_syn->add_option("--named", syn.named, "taylor_green, shear or two_shell");
  c_syn->add_option("--grid", syn.grid);
  c_syn->add_option("--j0", syn.j0);
  c_syn->add_option("--j1", syn.j1);
  c_syn->add_option("--seed", syn.seed);
  c_syn->add_option("--out", syn.out, "LPSV1 file")->required();
  c_syn->callback([&] { action = [&] { return cmd_synth(syn, out); }; });

  ScanArgs sc;
  auto* c_scan = app.add_subcommand("scan", "per-level norms, fitted exponents and inequality verdicts");
  c_scan->add_option("input", sc.input, "series directory or LPSV1 file");
  c_scan->add_option("--config", sc.config)->check(CLI::ExistingFile);
  c_scan->add_option("--synth", sc.synth, "scan a lacunary field with this exponent")->check(CLI::Range(0.0, 1.0));
  c_scan->add_option("--named", sc.named, "scan a closed-form field");
  c_scan->add_option("--grid", sc.grid);
  c_scan->add_option("--seed", sc.seed);
  c_scan->add_option("--j1", sc.j1, "top lacunary shell");
  c_scan->add_option("--quantity", sc.quantities, "quantity ids")->required()->delimiter(',');
  c_scan->add_option("--krange", sc.krange, "levels lo:hi");
  c_scan->add_option("--fit", sc.fit, "fit levels lo:hi");
  c_scan->add_option("--alpha", sc.alpha, "exponent for the predicted slopes");
  c_scan->add_option("--time", sc.time, "snapshot time in a series");
  c_scan->add_option("--kind", sc.kind, "auto, synthetic or euler");
  c_scan->add_option("--symbol", sc.symbol, "kernel symbol for commutator quantities");
  c_scan->add_option("--out", sc.out, "report directory");
  c_scan->callback([&] { action = [&] { return cmd_scan(sc, out); }; });

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "run identity and oracle suites");
  c_ver->add_option("suite", ver.suite, "identities, commutators, trajectories or all")->required();
  c_ver->add_option("--config", ver.config)->check(CLI::ExistingFile);
  c_ver->add_option("--grid", ver.grid, "grid size for the selected suites");
  c_ver->add_option("--out", ver.out, "report directory");
  c_ver->callback([&] { action = [&] { return cmd_verify(ver, out); }; });

  TrajectArgs tr;
  auto* c_tr = app.add_subcommand("traject", "particle paths, Taylor remainders and k-ladders");
  c_tr->add_option("input", tr.input, "series directory");
  c_tr->add_option("--config", tr.config)->check(CLI::ExistingFile);
  c_tr->add_option("--steady", tr.steady, "closed-form steady field instead of a series");
  c_tr->add_option("--grid", tr.grid);
  c_tr->add_option("--k", tr.k, "level of the advecting field");
  c_tr->add_option("--x0", tr.x0, "starting point x1,x2")->delimiter(',')->expected(2);
  c_tr->add_option("--t0", tr.t0);
  c_tr->add_option("--t1", tr.t1);
  c_tr->add_option("--taylor", tr.taylor, "Taylor order N (0..3)");
  c_tr->add_option("--tau", tr.tau, "largest Taylor step");
  c_tr->add_option("--ladder", tr.ladder, "k-ladder lo:hi");
  c_tr->add_option("--out", tr.out, "output directory");
  c_tr->callback([&] { action = [&] { return cmd_traject(tr, out); }; });

  std::string report_dir;
  auto* c_rep = app.add_subcommand("report", "summarize scan reports in a directory");
  c_rep->add_option("dir", report_dir)->required();
  c_rep->callback([&] { action = [&] { return cmd_report(report_dir, out); }; });

  std::string dump_config;
  bool dump = false;
  auto* c_cfg = app.add_subcommand("config", "print configuration");
  c_cfg->add_flag("--dump", dump, "print every key with its value")->required();
  c_cfg->add_option("--config", dump_config)->check(CLI::ExistingFile);
  c_cfg->callback([&] {
    action = [&] {
      load_config(dump_config).dump(out);
      return static_cast<int>(kPass);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  set_worker_count(workers);
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace lpflow::cli
