// Command-line surface for the porous shallow-water Riemann solver.
//
// Verbs: solve, profile, classify, sweep, curve. Structured results go to
// JSON, plot data to CSV. Exit codes: 0 solved, 2 invalid input, 3 no
// solution exists, 4 wrong problem class.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "swr/cli_io.hpp"
#include "swr/constructor.hpp"
#include "swr/sampler.hpp"
#include "swr/wave_curves.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitWrongClass = 4;

std::optional<double> env_gravity() {
  const char* v = std::getenv("SWE_RIEMANN_G");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "SWE_RIEMANN_G is not a number");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "cannot open problem file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "cannot write output file: " + path.string());
  }
  out << content;
}

int exit_code_for(const swr::SolverError& e) {
  switch (e.code()) {
    case swr::ErrorCode::NotDamBreak:
    case swr::ErrorCode::SupercriticalData:
      return kExitWrongClass;
    default:
      return kExitInvalidInput;
  }
}

struct CommonArgs {
  std::string problem_path;
  std::optional<double> g_flag;
  bool allow_theta_gt1 = false;
  int curve_samples = 2048;
  int quad_panels = 256;
};

swr::RiemannProblem load_problem(const CommonArgs& args) {
  const swr::RiemannProblem p = swr::parse_problem_json(
      read_file(args.problem_path), args.g_flag, env_gravity());
  swr::ValidationOptions opts;
  opts.allow_porosity_above_one = args.allow_theta_gt1;
  return swr::validate_problem(p, opts);
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--problem", args.problem_path, "problem JSON file")
      ->required();
  cmd->add_option("--g", args.g_flag,
                  "gravity override [m/s^2] (beats file and environment)");
  cmd->add_flag("--allow-theta-gt1", args.allow_theta_gt1,
                "accept porosity values above 1");
  cmd->add_option("--curve-samples", args.curve_samples,
                  "composite-curve sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--quad-panels", args.quad_panels,
                  "quadrature panels for jump-relation diagnostics")
      ->check(CLI::PositiveNumber);
}

int run_solve(const CommonArgs& args, const std::string& out_dir) {
  const swr::RiemannProblem p = load_problem(args);
  const swr::SolveResult result = swr::solve(p);
  const fs::path out = fs::path(out_dir) / "solution.json";
  if (const auto* ws = std::get_if<swr::WaveStructure>(&result)) {
    write_file(out, swr::solution_to_json(*ws, p).dump(2) + "\n");
    std::cout << "solved: " << swr::type_label_name(ws->type_label) << " ("
              << out.string() << ")\n";
    return kExitOk;
  }
  const auto& report = std::get<swr::NoSolutionReport>(result);
  write_file(out, swr::report_to_json(report, p).dump(2) + "\n");
  std::cout << "no solution (" << out.string() << ")\n";
  return kExitNoSolution;
}

int run_profile(const CommonArgs& args, double t, double xmin, double xmax,
                int n, const std::string& out_path) {
  if (n < 2) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "profile needs --n >= 2");
  }
  if (!(xmax > xmin)) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "profile needs xmax > xmin");
  }
  const swr::RiemannProblem p = load_problem(args);
  const swr::SolveResult result = swr::solve(p);
  const auto* ws = std::get_if<swr::WaveStructure>(&result);
  if (ws == nullptr) {
    std::cerr << "no solution exists; nothing to sample\n";
    return kExitNoSolution;
  }
  swr::ProfileRequest req;
  req.structure = *ws;
  req.terrain_left = p.terrain_left;
  req.terrain_right = p.terrain_right;
  req.g = p.g;
  req.t = t;
  req.x_grid.reserve(n);
  for (int i = 0; i < n; ++i) {
    req.x_grid.push_back(xmin + (xmax - xmin) * i / (n - 1));
  }
  std::ostringstream csv;
  swr::write_profile_csv(csv, swr::profile(req));
  write_file(out_path, csv.str());
  return kExitOk;
}

int run_classify(const CommonArgs& args, const std::string& out_dir) {
  const swr::RiemannProblem p = load_problem(args);
  const swr::Classification c = swr::classify_dambreak(p);
  const fs::path out = fs::path(out_dir) / "classify.json";
  write_file(out, swr::classification_to_json(c).dump(2) + "\n");
  std::cout << "case " << swr::theorem_case_name(c.theorem_case)
            << ", verdict " << swr::verdict_name(c.solvable) << " ("
            << out.string() << ")\n";
  return kExitOk;
}

int run_sweep(const CommonArgs& args, const std::string& vary, double from,
              double to, int n, const std::string& out_path) {
  if (vary != "hR") {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "sweep supports --vary hR only");
  }
  if (n < 1) {
    throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                           "sweep needs --n >= 1");
  }
  swr::RiemannProblem p = load_problem(args);
  if (p.terrain_left.theta != p.terrain_right.theta ||
      p.terrain_left.z != p.terrain_right.z) {
    if (swr::froude_squared(p.left, p.g) >= 1.0 ||
        swr::froude_squared(p.right, p.g) >= 1.0) {
      throw swr::SolverError(swr::ErrorCode::SupercriticalData,
                             "sweep base problem is supercritical");
    }
  }
  std::vector<swr::SweepRow> rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double h_r = n == 1 ? from : from + (to - from) * i / (n - 1);
    swr::RiemannProblem q = p;
    q.right.h = h_r;
    swr::SweepRow row{h_r, "no_solution", "-", std::nullopt, 0.0, 0.0};
    try {
      const swr::SolveResult result = swr::solve(q);
      if (const auto* ws = std::get_if<swr::WaveStructure>(&result)) {
        const swr::StructureDiagnostics d =
            swr::verify_structure(*ws, q, args.quad_panels);
        row.verdict = "solved";
        row.type = swr::type_label_name(ws->type_label);
        if (ws->states.size() >= 2) {
          row.h_star = ws->states[ws->states.size() - 2].h;
        }
        row.rh_residual = d.max_rh_residual;
        row.grh_residual = std::max(std::fabs(d.grh_mass),
                                    std::fabs(d.grh_momentum));
      }
    } catch (const swr::SolverError& e) {
      row.type = swr::error_code_name(e.code());
    }
    rows.push_back(row);
  }
  std::ostringstream csv;
  swr::write_sweep_csv(csv, rows);
  write_file(out_path, csv.str());
  return kExitOk;
}

int run_curve(const CommonArgs& args, const std::string& which, int n,
              std::optional<double> hmin, std::optional<double> hmax,
              bool log_h, const std::string& out_path) {
  const swr::RiemannProblem p = load_problem(args);
  std::ostringstream csv;
  if (which == "composite") {
    const swr::CompositeCurve curve = swr::build_composite_curve(
        p.left, p.terrain_left, p.terrain_right, p.g, std::nullopt,
        n > 0 ? n : args.curve_samples);
    swr::write_composite_csv(csv, curve);
  } else {
    swr::CurveAnchor anchor{};
    anchor.g = p.g;
    if (which == "w1") {
      anchor.anchor = p.left;
      anchor.family = swr::Family::Family1;
    } else if (which == "w2b") {
      anchor.anchor = p.right;
      anchor.family = swr::Family::Family2Backward;
    } else {
      throw swr::SolverError(swr::ErrorCode::InvalidArgument,
                             "curve --which must be w1, w2b, or composite");
    }
    const double lo = hmin.value_or(anchor.anchor.h / 4.0);
    const double hi = hmax.value_or(anchor.anchor.h * 4.0);
    swr::write_curve_csv(
        csv, swr::emit_curve(anchor, lo, hi, n > 0 ? n : 512, log_h), p.g);
  }
  write_file(out_path, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Riemann solver for 1D shallow water with porosity and "
               "bed-elevation jumps"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* solve_cmd = app.add_subcommand("solve", "solve and write solution.json");
  std::string solve_out = ".";
  add_common(solve_cmd, args);
  solve_cmd->add_option("--out", solve_out, "output directory");

  auto* profile_cmd =
      app.add_subcommand("profile", "sample h, u, surface on an x grid");
  double t = 0.7, xmin = -5.0, xmax = 5.0;
  int profile_n = 401;
  std::string profile_out = "profile.csv";
  add_common(profile_cmd, args);
  profile_cmd->add_option("--t", t, "sample time [s]")->required();
  profile_cmd->add_option("--xmin", xmin, "grid start [m]");
  profile_cmd->add_option("--xmax", xmax, "grid end [m]");
  profile_cmd->add_option("--n", profile_n, "grid points");
  profile_cmd->add_option("--out", profile_out, "output CSV file");

  auto* classify_cmd =
      app.add_subcommand("classify", "dam-break case and thresholds");
  std::string classify_out = ".";
  add_common(classify_cmd, args);
  classify_cmd->add_option("--out", classify_out, "output directory");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "solve over a grid of right-state heights");
  std::string vary = "hR";
  double from = 0.0, to = 0.0;
  int sweep_n = 0;
  std::string sweep_out = "sweep.csv";
  add_common(sweep_cmd, args);
  sweep_cmd->add_option("--vary", vary, "swept parameter (hR)")->required();
  sweep_cmd->add_option("--from", from, "grid start")->required();
  sweep_cmd->add_option("--to", to, "grid end")->required();
  sweep_cmd->add_option("--n", sweep_n, "grid points")->required();
  sweep_cmd->add_option("--out", sweep_out, "output CSV file");

  auto* curve_cmd = app.add_subcommand("curve", "tabulate wave curves");
  std::string which = "w1";
  int curve_n = 0;  // 0: per-family default (512 for w1/w2b, --curve-samples for composite)
  std::optional<double> hmin, hmax;
  bool log_h = false;
  std::string curve_out = "curve.csv";
  add_common(curve_cmd, args);
  curve_cmd->add_option("--which", which, "w1 | w2b | composite")->required();
  curve_cmd->add_option("--n", curve_n, "rows (default 512, or --curve-samples for composite)");
  curve_cmd->add_option("--hmin", hmin, "lowest height [m]");
  curve_cmd->add_option("--hmax", hmax, "highest height [m]");
  curve_cmd->add_flag("--log-h", log_h, "log-spaced heights");
  curve_cmd->add_option("--out", curve_out, "output CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(args, solve_out);
    if (profile_cmd->parsed()) {
      return run_profile(args, t, xmin, xmax, profile_n, profile_out);
    }
    if (classify_cmd->parsed()) return run_classify(args, classify_out);
    if (sweep_cmd->parsed()) {
      return run_sweep(args, vary, from, to, sweep_n, sweep_out);
    }
    if (curve_cmd->parsed()) {
      return run_curve(args, which, curve_n, hmin, hmax, log_h, curve_out);
    }
  } catch (const swr::SolverError& e) {
    std::cerr << "error [" << swr::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
