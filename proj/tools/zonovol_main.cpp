#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zonovol/bench.hpp"
#include "zonovol/model_io.hpp"
#include "zonovol/regions.hpp"
#include "zonovol/verify.hpp"

namespace {

using namespace zonovol;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, MethodChoice> kMethodNames = {
    {"auto", MethodChoice::Auto},
    {"exact", MethodChoice::Exact},
    {"recursive", MethodChoice::Recursive},
    {"spectral", MethodChoice::Spectral},
    {"analytic", MethodChoice::Analytic},
};

const std::map<std::string, RegionKind> kRegionNames = {
    {"reachable", RegionKind::Reachable},
    {"controllable", RegionKind::Controllable},
};

int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitError;
  }
  out << content;
  return kExitOk;
}

std::string horizon_label(const VolumeResult& res) {
  return res.infinite_horizon() ? "inf" : std::to_string(res.horizon);
}

std::string render_single(const SystemModel& model, RegionKind region,
                          const VolumeResult& res, const std::string& format,
                          bool full, double wall_ms) {
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.3f", wall_ms);
  if (format == "csv") {
    std::ostringstream out;
    out << "N,v_r,method,n_d,n_p,wall_ms\n"
        << horizon_label(res) << ',' << format_volume(res.volume, full) << ','
        << method_name(res.method) << ',' << res.det_count << ','
        << res.mult_count << ',' << wall << '\n';
    return out.str();
  }
  if (format == "json") {
    nlohmann::json j;
    j["model"] = model.name();
    j["region"] = region_name(region);
    if (res.infinite_horizon()) {
      j["N"] = "inf";
    } else {
      j["N"] = res.horizon;
    }
    j["v_r"] = res.volume;
    j["method"] = method_name(res.method);
    j["n_d"] = res.det_count;
    j["n_p"] = res.mult_count;
    j["wall_ms"] = wall_ms;
    if (!res.notes.empty()) j["note"] = res.notes;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "model:   " << model.name() << '\n'
      << "region:  " << region_name(region) << '\n'
      << "N:       " << horizon_label(res) << '\n'
      << "method:  " << method_name(res.method) << '\n'
      << "volume:  " << format_volume(res.volume, full) << '\n'
      << "n_d:     " << res.det_count << '\n'
      << "n_p:     " << res.mult_count << '\n'
      << "wall_ms: " << wall << '\n';
  if (!res.notes.empty()) out << "note:    " << res.notes << '\n';
  return out.str();
}

// "N", "lo:hi", or "lo:hi:step" -> explicit horizon list.
bool parse_horizon_range(const std::string& text, std::vector<int>& out) {
  std::vector<long long> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(piece, &used);
      if (used != piece.size()) return false;
      parts.push_back(v);
    } catch (const std::exception&) {
      return false;
    }
  }
  if (parts.empty() || parts.size() > 3) return false;
  const long long lo = parts[0];
  const long long hi = parts.size() >= 2 ? parts[1] : parts[0];
  const long long step = parts.size() == 3 ? parts[2] : 1;
  if (lo < 1 || hi < lo || step < 1) return false;
  for (long long h = lo; h <= hi; h += step) {
    out.push_back(static_cast<int>(h));
  }
  return true;
}

bool parse_dim_range(const std::string& text, int& lo, int& hi) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stoi(piece, &used));
      if (used != piece.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  if (vals.empty() || vals.size() > 2) return false;
  lo = vals[0];
  hi = vals.size() == 2 ? vals[1] : vals[0];
  return lo >= 1 && lo <= hi && hi <= 5;
}

struct VolumeArgs {
  std::string model_path;
  int horizon = 0;
  RegionKind region = RegionKind::Reachable;
  MethodChoice method = MethodChoice::Auto;
  std::string format = "text";
  std::string precision = "default";
  std::string out_path;
  std::uint64_t det_budget = kDefaultDetBudget;
};

int run_volume(const VolumeArgs& args) {
  if (args.method == MethodChoice::Analytic) {
    std::cerr << "error: the analytic method applies to the infinite horizon "
                 "only; use the 'infinite' command\n";
    return kExitUsage;
  }
  const SystemModel model = parse_model(args.model_path);
  if (args.method == MethodChoice::Exact) {
    const std::uint64_t cost = exact_det_cost(model, args.horizon);
    if (cost > args.det_budget) {
      std::cerr << "error: exact enumeration needs " << cost
                << " determinant evaluations, over the budget of "
                << args.det_budget << "; raise --det-budget\n";
      return kExitError;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const VolumeResult res =
      region_volume(model, args.region, args.horizon, args.method);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return emit(render_single(model, args.region, res, args.format,
                            args.precision == "full", wall_ms),
              args.out_path);
}

struct InfiniteArgs {
  std::string model_path;
  std::string region = "controllable";
  std::string format = "text";
  std::string precision = "default";
  std::string out_path;
};

int run_infinite(const InfiniteArgs& args) {
  if (args.region != "controllable") {
    std::cerr << "error: only the controllable region has a finite "
                 "infinite-horizon volume here; --region must be "
                 "'controllable'\n";
    return kExitUsage;
  }
  const SystemModel model = parse_model(args.model_path);
  const auto t0 = std::chrono::steady_clock::now();
  const VolumeResult res = controllable_volume_infinite(model);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return emit(render_single(model, RegionKind::Controllable, res, args.format,
                            args.precision == "full", wall_ms),
              args.out_path);
}

struct BenchArgs {
  std::string model_path;
  std::vector<int> horizons;
  std::vector<std::string> ranges;
  std::vector<MethodChoice> methods;
  RegionKind region = RegionKind::Reachable;
  std::string format = "csv";
  std::string precision = "default";
  std::string out_path;
  std::uint64_t det_budget = kDefaultDetBudget;
};

int run_bench_cmd(const BenchArgs& args) {
  BenchQuery query;
  query.region = args.region;
  query.det_budget = args.det_budget;
  query.horizons = args.horizons;
  for (const std::string& r : args.ranges) {
    if (!parse_horizon_range(r, query.horizons)) {
      std::cerr << "error: bad horizon range '" << r
                << "', expected start:stop[:step] with 1 <= start <= stop\n";
      return kExitUsage;
    }
  }
  if (query.horizons.empty()) {
    std::cerr << "error: no horizons given; use --horizon or --horizons\n";
    return kExitUsage;
  }
  query.methods = args.methods;
  if (query.methods.empty()) {
    query.methods = {MethodChoice::Exact, MethodChoice::Recursive,
                     MethodChoice::Spectral};
  }
  const SystemModel model = parse_model(args.model_path);
  const std::vector<BenchRow> rows = run_bench(model, query);
  const bool full = args.precision == "full";
  std::string rendered;
  if (args.format == "json") {
    rendered = bench_to_json(rows, full);
  } else if (args.format == "text") {
    rendered = bench_to_text(rows, full);
  } else {
    rendered = bench_to_csv(rows, full);
  }
  return emit(rendered, args.out_path);
}

struct VerifyArgs {
  std::uint64_t seed = 42;
  int trials = 50;
  std::string dims = "2:4";
  int fuzz = 10000;
};

int run_verify(const VerifyArgs& args) {
  VerifyOptions opts;
  opts.seed = args.seed;
  opts.trials = args.trials;
  opts.fuzz_instances = args.fuzz;
  if (!parse_dim_range(args.dims, opts.dim_lo, opts.dim_hi)) {
    std::cerr << "error: bad --dims '" << args.dims
              << "', expected lo:hi within 1..5\n";
    return kExitUsage;
  }
  const VerifyReport report = run_verification(opts);
  for (const PropertyOutcome& p : report.properties) {
    if (p.failures == 0) {
      std::cout << "PASS  " << p.name << " (" << p.checks << " checks)\n";
    } else {
      std::cout << "FAIL  " << p.name << " (" << p.failures << "/" << p.checks
                << " checks failed): " << p.first_failure << "\n";
    }
  }
  std::cout << "verification: " << report.properties.size() << " properties, "
            << report.total_checks() << " checks, " << report.total_failures()
            << " failures\n";
  return report.all_passed() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volumes of the reachable and controllable regions of "
               "discrete-time linear systems"};
  app.require_subcommand(1);

  VolumeArgs vol_args;
  CLI::App* vol = app.add_subcommand(
      "volume", "finite-horizon region volume of a model");
  vol->add_option("--model,-m", vol_args.model_path, "model JSON file")
      ->required();
  vol->add_option("--horizon,-N", vol_args.horizon, "number of steps")
      ->required()
      ->check(CLI::PositiveNumber);
  vol->add_option("--region", vol_args.region, "region to measure")
      ->transform(CLI::CheckedTransformer(kRegionNames, CLI::ignore_case));
  vol->add_option("--method", vol_args.method, "evaluation method")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));
  vol->add_option("--format", vol_args.format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  vol->add_option("--precision", vol_args.precision,
                  "default (4 significant digits) or full")
      ->check(CLI::IsMember({"default", "full"}));
  vol->add_option("--det-budget", vol_args.det_budget,
                  "cap on exact-method determinant evaluations");
  vol->add_option("--out", vol_args.out_path, "write the result to a file");

  InfiniteArgs inf_args;
  CLI::App* inf = app.add_subcommand(
      "infinite", "infinite-horizon controllable region volume");
  inf->add_option("--model,-m", inf_args.model_path, "model JSON file")
      ->required();
  inf->add_option("--region", inf_args.region,
                  "region to measure (controllable only)");
  inf->add_option("--format", inf_args.format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  inf->add_option("--precision", inf_args.precision,
                  "default (4 significant digits) or full")
      ->check(CLI::IsMember({"default", "full"}));
  inf->add_option("--out", inf_args.out_path, "write the result to a file");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "run several methods over several horizons");
  bench->add_option("--model,-m", bench_args.model_path, "model JSON file")
      ->required();
  bench->add_option("--horizon", bench_args.horizons,
                    "a horizon to include (repeatable)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--horizons", bench_args.ranges,
                    "horizon range start:stop[:step] (repeatable)");
  bench->add_option("--method", bench_args.methods,
                    "method to include (repeatable; default exact, "
                    "recursive, spectral)")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case));
  bench->add_option("--region", bench_args.region, "region to measure")
      ->transform(CLI::CheckedTransformer(kRegionNames, CLI::ignore_case));
  bench->add_option("--format", bench_args.format, "csv, json, or text")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  bench->add_option("--precision", bench_args.precision,
                    "default (4 significant digits) or full")
      ->check(CLI::IsMember({"default", "full"}));
  bench->add_option("--det-budget", bench_args.det_budget,
                    "cap on exact-method determinant evaluations");
  bench->add_option("--out", bench_args.out_path, "write the table to a file");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "randomized cross-validation of the volume methods");
  verify->add_option("--seed", verify_args.seed, "RNG seed");
  verify->add_option("--trials", verify_args.trials,
                     "instances per property per dimension")
      ->check(CLI::PositiveNumber);
  verify->add_option("--dims", verify_args.dims,
                     "state dimensions to cover, lo:hi within 1..5");
  verify->add_option("--fuzz", verify_args.fuzz,
                     "positivity fuzz instances")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (vol->parsed()) return run_volume(vol_args);
    if (inf->parsed()) return run_infinite(inf_args);
    if (bench->parsed()) return run_bench_cmd(bench_args);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
