// Batch experiment driver: dataset generation, fitting runs with seed
// ladders, and method comparison tables. All numerics live in the library;
// this binary only wires options, files, and exit codes together.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rpia/curve_fitters.hpp"
#include "rpia/datasets.hpp"
#include "rpia/errors.hpp"
#include "rpia/io.hpp"
#include "rpia/surface_fitters.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitConfig = 4;
constexpr int kExitIo = 5;

namespace fs = std::filesystem;

struct GenOptions {
  int example = 0;
  long m = 0;
  long p = -1;  // surfaces; defaults to m
  std::string out;
};

struct FitOptions {
  std::string input;
  std::string method = "rpia";
  long n = 0;
  int tau = 0;
  std::uint64_t seed = 0;
  int runs = 30;
  double tol = 1e-6;
  long max_iter = 10000;
  std::string out;
  std::string format = "json";
  // Weight overrides; NaN means "use the formula value".
  double omega = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double v = std::numeric_limits<double>::quiet_NaN();
  double mu_tilde = std::numeric_limits<double>::quiet_NaN();
  double mu_hat = std::numeric_limits<double>::quiet_NaN();
};

struct CompareOptions {
  FitOptions fit;
  std::vector<std::string> methods;
};

rpia::FitConfig to_config(const FitOptions& o, std::uint64_t seed) {
  rpia::FitConfig config;
  config.n = o.n;
  config.tau = o.tau;
  config.seed = seed;
  config.tol = o.tol;
  config.max_iterations = o.max_iter;
  if (!std::isnan(o.omega)) config.omega = o.omega;
  if (!std::isnan(o.gamma)) config.gamma = o.gamma;
  if (!std::isnan(o.v)) config.v = o.v;
  if (!std::isnan(o.mu_tilde)) config.mu_tilde = o.mu_tilde;
  if (!std::isnan(o.mu_hat)) config.mu_hat = o.mu_hat;
  return config;
}

// One solver per dataset, reused across the seed ladder.
std::vector<rpia::FitReport> run_batch(const rpia::Dataset& ds,
                                       const FitOptions& o,
                                       rpia::Method method) {
  std::vector<rpia::FitReport> runs;
  runs.reserve(o.runs);
  if (ds.is_surface) {
    rpia::SurfaceProblem problem =
        rpia::make_surface_problem(ds.surface, o.n);
    rpia::SurfaceSolver solver(std::move(problem.a), std::move(problem.bt),
                               ds.surface, std::move(problem.initial_net));
    for (int r = 0; r < o.runs; ++r) {
      runs.push_back(solver.run(method, to_config(o, o.seed + r)));
    }
  } else {
    rpia::CurveProblem problem = rpia::make_curve_problem(ds.curve, o.n);
    rpia::CurveSolver solver(std::move(problem.a), ds.curve,
                             std::move(problem.initial_controls));
    for (int r = 0; r < o.runs; ++r) {
      runs.push_back(solver.run(method, to_config(o, o.seed + r)));
    }
  }
  return runs;
}

void run_gen(const GenOptions& o) {
  const fs::path out(o.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  if (o.example >= 1 && o.example <= 4) {
    rpia::write_curve_csv(out, rpia::gen_curve(o.example, o.m));
  } else if (o.example >= 5 && o.example <= 8) {
    const long p = o.p >= 0 ? o.p : o.m;
    rpia::write_surface_csv(out, rpia::gen_surface(o.example, o.m, p));
  } else {
    throw rpia::ArgumentError("example id must be in 1..8");
  }
}

void run_fit(const FitOptions& o) {
  const rpia::Dataset ds = rpia::read_dataset_csv(o.input);
  const rpia::Method method = rpia::method_from_name(o.method);
  if (method == rpia::Method::kRpia && o.tau < 1) {
    throw rpia::ConfigError("rpia requires --tau");
  }
  const std::vector<rpia::FitReport> runs = run_batch(ds, o, method);

  const fs::path out_dir(o.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw rpia::IoError("cannot create output directory: " + o.out);
  }
  rpia::write_history_csv(out_dir / "history.csv", runs);
  if (o.format == "csv") {
    rpia::write_report_csv(out_dir / "report.csv", runs);
  } else {
    rpia::write_report_json(out_dir / "report.json", runs, "history.csv");
  }
}

void run_compare(const CompareOptions& o) {
  const rpia::Dataset ds = rpia::read_dataset_csv(o.fit.input);

  const fs::path out(o.fit.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream table(out);
  if (!table) throw rpia::IoError("cannot open for writing: " + o.fit.out);

  table << "method,e_inf,mean_it,mean_cpu_s\n";
  for (const std::string& name : o.methods) {
    const rpia::Method method = rpia::method_from_name(name);
    const std::vector<rpia::FitReport> runs = run_batch(ds, o.fit, method);
    double e_inf = 0.0;
    double mean_it = 0.0;
    double mean_cpu = 0.0;
    for (const rpia::FitReport& r : runs) {
      e_inf += r.final_error();
      mean_it += static_cast<double>(r.iterations);
      mean_cpu += r.wall_ms / 1000.0;
    }
    const double count = static_cast<double>(runs.size());
    table << name << ',' << rpia::format_double(e_inf / count) << ','
          << rpia::format_double(mean_it / count) << ','
          << rpia::format_double(mean_cpu / count) << "\n";
  }
  if (!table) throw rpia::IoError("write failed: " + o.fit.out);
}

void add_fit_options(CLI::App* cmd, FitOptions& o, bool input_required) {
  cmd->add_option("--input", o.input, "dataset CSV (curve or surface)")
      ->required(input_required);
  cmd->add_option("--n", o.n, "control count minus one")->required();
  cmd->add_option("--tau", o.tau, "rpia block size");
  cmd->add_option("--seed", o.seed, "base seed; run r uses seed + r");
  cmd->add_option("--runs", o.runs, "seeded repetitions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "relative-error tolerance");
  cmd->add_option("--max-iter", o.max_iter, "iteration cap");
  cmd->add_option("--omega", o.omega, "mlspia omega override");
  cmd->add_option("--gamma", o.gamma, "mlspia gamma override");
  cmd->add_option("--v-weight", o.v, "mlspia v override");
  cmd->add_option("--mu-tilde", o.mu_tilde, "lspia weight override");
  cmd->add_option("--mu-hat", o.mu_hat, "slspia weight override");
  cmd->set_config("--config", "", "TOML config file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares B-spline fitting by randomized and global "
               "progressive iterative approximation"};
  app.require_subcommand(1);

  GenOptions gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "generate an example point set");
  gen->add_option("--example", gen_opts.example, "example id in 1..8")
      ->required();
  gen->add_option("--m", gen_opts.m, "sample count minus one")->required();
  gen->add_option("--p", gen_opts.p,
                  "second direction sample count minus one (surfaces; "
                  "defaults to m)");
  gen->add_option("--out", gen_opts.out, "output CSV path")->required();

  FitOptions fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "run one method on a dataset");
  fit->add_option("--method", fit_opts.method, "rpia|lspia|slspia|mlspia")
      ->required()
      ->check(CLI::IsMember({"rpia", "lspia", "slspia", "mlspia"}));
  add_fit_options(fit, fit_opts, true);
  fit->add_option("--out", fit_opts.out,
                  "output directory for report + history")
      ->required();
  fit->add_option("--format", fit_opts.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CompareOptions cmp_opts;
  CLI::App* cmp =
      app.add_subcommand("compare", "run several methods, emit one table");
  cmp->add_option("--methods", cmp_opts.methods,
                  "comma-separated method list")
      ->delimiter(',')
      ->required();
  add_fit_options(cmp, cmp_opts.fit, true);
  cmp->add_option("--out", cmp_opts.fit.out, "comparison table CSV path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) run_gen(gen_opts);
    if (fit->parsed()) run_fit(fit_opts);
    if (cmp->parsed()) {
      if (cmp_opts.methods.empty()) {
        std::cerr << "compare: --methods must name at least one method\n";
        return kExitUsage;
      }
      run_compare(cmp_opts);
    }
  } catch (const rpia::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const rpia::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const rpia::Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
