// lqgtool: command-line front end for the lqg library.

#include <omp.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lqg/area.hpp"
#include "lqg/cone.hpp"
#include "lqg/error.hpp"
#include "lqg/excursion.hpp"
#include "lqg/matedcrt.hpp"
#include "lqg/params.hpp"
#include "lqg/processes.hpp"
#include "lqg/verify.hpp"
#include "lqg/version.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised when a run completes but its result fails the requested threshold.
struct AcceptanceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_gamma(const std::string& s) {
  if (s == "sqrt2") return std::numbers::sqrt2;
  if (s == "sqrt8over3") return std::sqrt(8.0 / 3.0);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw lqg::ParameterError("gamma: expected a number, sqrt2 or sqrt8over3, got '" + s + "'");
  return v;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LQG_OUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  return p;
}

// Write to a sibling temp file, then rename over the target.
void atomic_write(const fs::path& target, const std::string& content) {
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string iso_time_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ojson options_to_json(const CLI::App* app) {
  ojson j = ojson::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty()) continue;
    const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (key == "help") continue;
    if (opt->get_type_size() == 0) {
      j[key] = opt->count() > 0;
    } else if (opt->count() > 0) {
      j[key] = opt->results().back();
    } else if (!opt->get_default_str().empty()) {
      j[key] = opt->get_default_str();
    } else {
      j[key] = nullptr;
    }
  }
  return j;
}

// Everything a command needs to record its run.
struct RunContext {
  std::string command;
  const CLI::App* app = nullptr;
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> outputs;

  void write(const fs::path& p, const std::string& content) {
    atomic_write(p, content);
    outputs.push_back(p);
  }

  // meta.json beside the first output.
  void write_meta(std::uint64_t seed, bool has_seed) {
    if (outputs.empty()) return;
    ojson meta;
    meta["tool"] = "lqgtool";
    meta["version"] = lqg::version();
    meta["command"] = command;
    meta["config"] = options_to_json(app);
    meta["seed"] = has_seed ? ojson(seed) : ojson(nullptr);
    meta["threads"] = omp_get_max_threads();
    meta["started_at"] = iso_time_utc(started);
    meta["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto outs = ojson::array();
    for (const auto& p : outputs) outs.push_back(p.filename().string());
    meta["outputs"] = outs;
    const fs::path dir = outputs.front().has_parent_path() ? outputs.front().parent_path() : fs::path(".");
    atomic_write(dir / "meta.json", meta.dump(2) + "\n");
  }
};

// ---- laws ----

struct Grid {
  double lo = 0, hi = 1;
  std::size_t points = 2;
  double at(std::size_t k) const {
    return points == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
};

Grid parse_grid(const std::string& s) {
  Grid g;
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
  try {
    if (b == std::string::npos) throw std::invalid_argument("shape");
    std::size_t used = 0;
    g.lo = std::stod(s.substr(0, a));
    g.hi = std::stod(s.substr(a + 1, b - a - 1));
    const std::string n = s.substr(b + 1);
    const long long pts = std::stoll(n, &used);
    if (used != n.size() || pts < 1) throw std::invalid_argument("points");
    g.points = static_cast<std::size_t>(pts);
  } catch (const std::exception&) {
    throw lqg::ParameterError("grid: expected lo:hi:points, got '" + s + "'");
  }
  if (!(g.hi >= g.lo)) throw lqg::ParameterError("grid: hi must be >= lo");
  return g;
}

struct LawsArgs {
  std::string which, gamma = "sqrt2", grid, out;
  double a = 1.0, t = 1.0, phi = -1.0, z_r = 1.0, z_phi = -1.0, u = 1.0;
};

int run_laws(const LawsArgs& args, RunContext& ctx) {
  const auto p = lqg::derive_params(parse_gamma(args.gamma), args.a);
  const Grid g = parse_grid(args.grid);
  std::string csv;
  if (args.which == "area") {
    const auto law = lqg::make_area_law(p);
    csv = "t,pdf,cdf\n";
    for (std::size_t k = 0; k < g.points; ++k) {
      const double t = g.at(k);
      const double pdf = t > 0 ? lqg::disk_area_pdf(law, t) : 0.0;
      const double cdf = t > 0 ? lqg::disk_area_cdf(law, t) : 0.0;
      csv += fmt17(t) + "," + fmt17(pdf) + "," + fmt17(cdf) + "\n";
    }
  } else {
    csv = "input,value\n";
    for (std::size_t k = 0; k < g.points; ++k) {
      const double x = g.at(k);
      double v = 0;
      if (args.which == "time_t") {
        // input: |z| along the ray arg z = phi
        const double phi = args.phi < 0 ? 0.5 * p.theta : args.phi;
        v = lqg::time_t_pdf(p, {x, phi}, args.t);
      } else if (args.which == "exit_point") {
        // input: signed exit coordinate, positive on the angle-zero ray
        const double phi = args.z_phi < 0 ? 0.5 * p.theta : args.z_phi;
        // lambda > 1, so the density vanishes at the vertex
        v = x == 0.0 ? 0.0 : lqg::exit_point_pdf_given_z(p, {args.z_r, phi}, lqg::BoundaryPoint::from_signed(x));
      } else {
        // input: t
        v = lqg::cone_survival(p, {args.u, lqg::BoundarySide::angle_zero}, x);
      }
      csv += fmt17(x) + "," + fmt17(v) + "\n";
    }
  }
  ctx.write(resolve_out(args.out), csv);
  ctx.write_meta(0, false);
  return kExitOk;
}

// ---- sample excursion ----

struct ExcursionArgs {
  std::string gamma = "sqrt2", out, summary, method = "h_transform";
  double a = 1.0, delta = 0.01, c = 1.0, dt = 1e-4;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

lqg::ExcursionMethod parse_method(const std::string& m) {
  return m == "rejection" ? lqg::ExcursionMethod::rejection : lqg::ExcursionMethod::h_transform;
}

int run_sample_excursion(const ExcursionArgs& args, RunContext& ctx) {
  const auto p = lqg::derive_params(parse_gamma(args.gamma), args.a);
  if (args.n == 0) throw lqg::ParameterError("n must be >= 1");
  lqg::ExcursionOptions opt;
  opt.method = parse_method(args.method);
  const auto batch = lqg::sample_excursion_batch(p, args.delta, args.c, args.dt, args.n, args.seed, opt);
  std::string csv;
  for (std::size_t i = 0; i < batch.samples.size(); ++i) {
    if (i > 0) csv += "\n";
    csv += lqg::path_to_csv(batch.samples[i].lr_path);
  }
  const fs::path out = resolve_out(args.out);
  fs::path summary = args.summary.empty() ? fs::path(out).replace_extension(".summary.json") : resolve_out(args.summary);
  ojson s;
  s["n"] = batch.durations.size();
  s["acceptance_rate"] = batch.acceptance_rate();
  s["durations"] = batch.durations;
  ctx.write(out, csv);
  ctx.write(summary, s.dump(2) + "\n");
  ctx.write_meta(args.seed, true);
  return kExitOk;
}

// ---- sample field-average ----

struct FieldArgs {
  std::string kind, gamma = "sqrt2", out;
  double alpha = NAN, beta = NAN, dt = 1e-3;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

int run_sample_field(const FieldArgs& args, RunContext& ctx) {
  const auto p = lqg::derive_params(parse_gamma(args.gamma));
  const lqg::RngStream stream{args.seed, 0};
  lqg::FieldAverageProcess f;
  if (args.kind == "wedge") {
    if (std::isnan(args.alpha)) throw lqg::ParameterError("--alpha is required for --kind wedge");
    f = lqg::sample_thick_wedge_average(p, args.alpha, args.dt, args.n, args.n, stream);
  } else if (args.kind == "disk") {
    if (std::isnan(args.beta)) throw lqg::ParameterError("--beta is required for --kind disk");
    f = lqg::sample_disk_conditioned_average(p, args.beta, args.dt, args.n, stream);
  } else if (args.kind == "bead") {
    if (std::isnan(args.alpha)) throw lqg::ParameterError("--alpha is required for --kind bead");
    f = lqg::sample_bessel_excursion_average(p, lqg::bead_dimension(p, args.alpha), args.dt, stream);
  } else {
    f = lqg::sample_bessel_excursion_average(p, lqg::disk_bessel_dimension(p), args.dt, stream,
                                             lqg::FieldKind::disk_bessel);
  }
  std::string csv = "s,X\n";
  csv.reserve(f.values.size() * 44);
  for (std::size_t k = 0; k < f.values.size(); ++k) csv += fmt17(f.time(k)) + "," + fmt17(f.values[k]) + "\n";
  ctx.write(resolve_out(args.out), csv);
  ctx.write_meta(args.seed, true);
  return kExitOk;
}

// ---- area-mc ----

struct AreaArgs {
  std::string gamma = "sqrt2", out, method = "h_transform";
  double a = 1.0, delta = 0.01, c = 1.0, dt = 1e-4, ks_threshold = NAN;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  bool durations = false;
};

int run_area_mc(const AreaArgs& args, RunContext& ctx) {
  const auto p = lqg::derive_params(parse_gamma(args.gamma), args.a);
  lqg::ExcursionOptions opt;
  opt.method = parse_method(args.method);
  opt.record_path = false;
  const auto report = lqg::mc_area_comparison(p, args.delta, args.c, args.dt, args.n, args.seed, opt);
  ctx.write(resolve_out(args.out), lqg::report_to_json(report, args.durations).dump(2) + "\n");
  ctx.write_meta(args.seed, true);
  if (!std::isnan(args.ks_threshold) && !(report.ks < args.ks_threshold)) {
    throw AcceptanceFailure("ks " + fmt17(report.ks) + " is not below " + fmt17(args.ks_threshold));
  }
  return kExitOk;
}

// ---- map ----

struct MapArgs {
  std::string in, out, format = "json", stats_out, algorithm = "fast";
  double cell_size = 0;
  bool stats = false;
};

int run_map(const MapArgs& args, RunContext& ctx) {
  std::ifstream is(args.in);
  if (!is) throw lqg::InputError("cannot open " + args.in);
  const lqg::Path2D path = lqg::read_path_csv(is);
  const auto cells = lqg::make_cells(path, args.cell_size);
  auto g = args.algorithm == "brute" ? lqg::build_brute(cells) : lqg::build_fast(cells);
  lqg::mark_boundary(cells, g);
  const fs::path out = resolve_out(args.out);
  ctx.write(out, lqg::export_graph(g, args.format == "csv" ? lqg::GraphFormat::csv : lqg::GraphFormat::json));
  if (args.stats) {
    std::string csv = "degree,count\n";
    for (const auto& [d, c] : lqg::degree_histogram(g)) csv += std::to_string(d) + "," + std::to_string(c) + "\n";
    const fs::path stats = args.stats_out.empty() ? fs::path(out).replace_extension(".degrees.csv") : resolve_out(args.stats_out);
    ctx.write(stats, csv);
  }
  ctx.write_meta(0, false);
  return kExitOk;
}

// ---- verify ----

int run_verify(const std::string& out, RunContext& ctx) {
  const auto checks = lqg::run_analytic_suite();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    std::printf("%s %s value=%.3g tol=%.3g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance);
  }
  if (!out.empty()) {
    ctx.write(resolve_out(out), lqg::checks_to_json(checks).dump(2) + "\n");
    ctx.write_meta(0, false);
  }
  if (!all) throw AcceptanceFailure("analytic suite has failing checks");
  return kExitOk;
}

std::string json_escape_line(const std::string& s) { return ojson(s).dump(); }

void report_error(const std::string& kind, const std::string& command, const std::string& message) {
  std::string m = message;
  for (auto& ch : m) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::fprintf(stderr, "{\"error\":%s,\"command\":%s,\"message\":%s}\n", json_escape_line(kind).c_str(),
               json_escape_line(command).c_str(), json_escape_line(m).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mating-of-trees and LQG disk toolkit", "lqgtool"};
  app.set_version_flag("--version", std::string(lqg::version()));
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: LQG_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  const auto methods = CLI::IsMember({"h_transform", "rejection"});

  LawsArgs laws;
  auto* laws_cmd = app.add_subcommand("laws", "Tabulate a closed-form law on a grid");
  laws_cmd->add_option("--which", laws.which, "Law to tabulate")
      ->required()
      ->check(CLI::IsMember({"time_t", "exit_point", "survival", "area"}));
  laws_cmd->add_option("--gamma", laws.gamma, "gamma in (0,2), or sqrt2 / sqrt8over3")->capture_default_str();
  laws_cmd->add_option("--a", laws.a, "Covariance constant")->capture_default_str();
  laws_cmd->add_option("--grid", laws.grid, "lo:hi:points")->required();
  laws_cmd->add_option("--t", laws.t, "time_t: time")->capture_default_str();
  laws_cmd->add_option("--phi", laws.phi, "time_t: argument of z (default theta/2)");
  laws_cmd->add_option("--z-r", laws.z_r, "exit_point: |z|")->capture_default_str();
  laws_cmd->add_option("--z-phi", laws.z_phi, "exit_point: arg z (default theta/2)");
  laws_cmd->add_option("--u", laws.u, "survival: |u|")->capture_default_str();
  laws_cmd->add_option("--out", laws.out, "Output CSV")->required();

  auto* sample_cmd = app.add_subcommand("sample", "Draw sample paths");
  sample_cmd->require_subcommand(1);

  ExcursionArgs exc;
  auto* exc_cmd = sample_cmd->add_subcommand("excursion", "Approximate boundary-to-boundary excursions");
  exc_cmd->add_option("--gamma", exc.gamma)->capture_default_str();
  exc_cmd->add_option("--a", exc.a)->capture_default_str();
  exc_cmd->add_option("--delta", exc.delta)->capture_default_str();
  exc_cmd->add_option("--c", exc.c)->capture_default_str();
  exc_cmd->add_option("--dt", exc.dt)->capture_default_str();
  exc_cmd->add_option("--n", exc.n)->capture_default_str();
  exc_cmd->add_option("--seed", exc.seed)->capture_default_str();
  exc_cmd->add_option("--method", exc.method)->check(methods)->capture_default_str();
  exc_cmd->add_option("--out", exc.out, "Output CSV, one t,L,R block per sample")->required();
  exc_cmd->add_option("--summary", exc.summary, "Summary JSON (default: <out>.summary.json)");

  FieldArgs field;
  auto* field_cmd = sample_cmd->add_subcommand("field-average", "Field-average process of a wedge, disk or bead");
  field_cmd->add_option("--kind", field.kind)->required()->check(CLI::IsMember({"wedge", "disk", "bead", "disk-bessel"}));
  field_cmd->add_option("--gamma", field.gamma)->capture_default_str();
  field_cmd->add_option("--alpha", field.alpha, "Weight parameter (wedge, bead)");
  field_cmd->add_option("--beta", field.beta, "Conditioning level (disk)");
  field_cmd->add_option("--dt", field.dt)->capture_default_str();
  field_cmd->add_option("--n", field.n, "Steps per branch (wedge, disk)")->capture_default_str();
  field_cmd->add_option("--seed", field.seed)->capture_default_str();
  field_cmd->add_option("--out", field.out, "Output CSV s,X")->required();

  AreaArgs area;
  auto* area_cmd = app.add_subcommand("area-mc", "Compare excursion durations with the disk area law");
  area_cmd->add_option("--gamma", area.gamma)->capture_default_str();
  area_cmd->add_option("--a", area.a)->capture_default_str();
  area_cmd->add_option("--delta", area.delta)->capture_default_str();
  area_cmd->add_option("--c", area.c)->capture_default_str();
  area_cmd->add_option("--dt", area.dt)->capture_default_str();
  area_cmd->add_option("--n", area.n)->capture_default_str();
  area_cmd->add_option("--seed", area.seed)->capture_default_str();
  area_cmd->add_option("--method", area.method)->check(methods)->capture_default_str();
  area_cmd->add_option("--ks-threshold", area.ks_threshold, "Exit 1 unless ks is below this");
  area_cmd->add_flag("--durations", area.durations, "Include raw durations in the report");
  area_cmd->add_option("--out", area.out, "Report JSON")->required();

  MapArgs map;
  auto* map_cmd = app.add_subcommand("map", "Build the mated-CRT map of a path");
  map_cmd->add_option("--in", map.in, "t,L,R CSV (first block)")->required();
  map_cmd->add_option("--cell-size", map.cell_size)->required();
  map_cmd->add_option("--out", map.out)->required();
  map_cmd->add_option("--format", map.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  map_cmd->add_option("--algorithm", map.algorithm)->check(CLI::IsMember({"fast", "brute"}))->capture_default_str();
  map_cmd->add_flag("--stats", map.stats, "Also write a degree,count histogram");
  map_cmd->add_option("--stats-out", map.stats_out, "Histogram path (default: <out>.degrees.csv)");

  std::string suite, verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Run a built-in check suite");
  verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember({"analytic"}));
  verify_cmd->add_option("--out", verify_out, "Optional JSON report");

  std::string command = "lqgtool";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", command, e.what());
    std::fputs(app.help().c_str(), stdout);
    return kExitUsage;
  }

  if (threads == 0) {
    if (const char* env = std::getenv("LQG_THREADS"); env && *env) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);

  RunContext ctx;
  try {
    if (laws_cmd->parsed()) {
      ctx.command = command = "laws";
      ctx.app = laws_cmd;
      return run_laws(laws, ctx);
    }
    if (exc_cmd->parsed()) {
      ctx.command = command = "sample excursion";
      ctx.app = exc_cmd;
      return run_sample_excursion(exc, ctx);
    }
    if (field_cmd->parsed()) {
      ctx.command = command = "sample field-average";
      ctx.app = field_cmd;
      return run_sample_field(field, ctx);
    }
    if (area_cmd->parsed()) {
      ctx.command = command = "area-mc";
      ctx.app = area_cmd;
      return run_area_mc(area, ctx);
    }
    if (map_cmd->parsed()) {
      ctx.command = command = "map";
      ctx.app = map_cmd;
      return run_map(map, ctx);
    }
    ctx.command = command = "verify";
    ctx.app = verify_cmd;
    return run_verify(verify_out, ctx);
  } catch (const lqg::ParameterError& e) {
    report_error("ParameterError", command, e.what());
    return kExitUsage;
  } catch (const lqg::InputError& e) {
    report_error("InputError", command, e.what());
    return kExitUsage;
  } catch (const lqg::DomainError& e) {
    report_error("DomainError", command, e.what());
    return kExitUsage;
  } catch (const lqg::QuadratureError& e) {
    report_error("QuadratureError", command, e.what());
    return kExitFailure;
  } catch (const lqg::SamplingError& e) {
    report_error("SamplingError", command, e.what());
    return kExitFailure;
  } catch (const AcceptanceFailure& e) {
    report_error("AcceptanceFailure", command, e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    report_error("RuntimeError", command, e.what());
    return kExitFailure;
  }
}
