// relax — command-line front end for the relaxation solver library.
//
//   relax run    <problem> [overrides]   solve one problem, write artifacts
//   relax sweep  <problem> --dx d1,d2,…  grid-refinement energy table
//   relax oracle <example1|example2>     shooting reference solution
//
// <problem> is a named experiment (example1..example6) or a path to a JSON
// config file. Reruns with identical inputs produce byte-identical
// artifacts; timings go to stdout only. On failure the tool prints one
// machine-readable JSON line to stderr and exits nonzero without writing
// partial artifacts (everything is rendered in memory first).

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relax/experiments.hpp"
#include "relax/io.hpp"
#include "relax/measure.hpp"
#include "relax/oracle.hpp"
#include "relax/solver1d.hpp"
#include "relax/solver2d.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relax;

// Thin the 2D diagnostics history (hundreds of thousands of sweeps) to a
// plottable size; 1D histories are short and are written in full.
constexpr std::size_t kDiagStride2D = 100;

// ---------------------------------------------------------------------------
// parsing helpers

double strict_stod(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

/// Grid steps accept "2^-7", "1/128" and plain decimals.
double parse_step_text(const std::string& text) {
  double v = 0.0;
  if (auto caret = text.find('^'); caret != std::string::npos) {
    v = std::pow(strict_stod(text.substr(0, caret)),
                 strict_stod(text.substr(caret + 1)));
  } else if (auto slash = text.find('/'); slash != std::string::npos) {
    v = strict_stod(text.substr(0, slash)) / strict_stod(text.substr(slash + 1));
  } else {
    v = strict_stod(text);
  }
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError("grid step must be positive and finite, got '" + text + "'");
  return v;
}

/// A step entry in a JSON config: a number or a string like "2^-7".
double step_from_json(const json& v) {
  if (v.is_string()) return parse_step_text(v.get<std::string>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!(d > 0.0) || !std::isfinite(d))
      throw ConfigError("grid step must be positive and finite");
    return d;
  }
  throw ConfigError("grid step must be a number or a string like \"2^-7\"");
}

InitialGuess parse_named_init(const std::string& s) {
  if (s == "zero") return InitialGuess::zero;
  if (s == "plus") return InitialGuess::plus;
  if (s == "minus") return InitialGuess::minus;
  if (s == "tracking") return InitialGuess::tracking;
  throw ConfigError("init must be zero, plus, minus, tracking or file, got '" + s + "'");
}

bool is_experiment_name(const std::string& s) {
  return s == "example1" || s == "example2" || s == "example3" ||
         s == "example4" || s == "example5" || s == "example6";
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

// ---------------------------------------------------------------------------
// resolved run description (config file merged with CLI flags; CLI wins)

struct ResolvedRun {
  std::string experiment;
  Overrides o;
  std::optional<BoundaryConditions> bc;
  bool init_from_file = false;
  std::string init_file;
  std::optional<bool> exact_u;
  std::string out = ".";
  std::vector<double> dx_list;  // sweep cases (possibly empty)
  // custom-problem pieces, kept as JSON until assembly
  std::optional<json> domain, w, potential;
};

BoundaryConditions parse_bc(const json& j) {
  if (!j.is_object()) throw ConfigError("bc: expected an object");
  check_keys(j, {"kind", "left", "right"}, "bc");
  if (!j.contains("kind")) throw ConfigError("bc: missing 'kind'");
  BoundaryConditions bc;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dirichlet") {
    bc.kind = BoundaryConditions::Kind::dirichlet;
    bc.left = j.value("left", 0.0);
    bc.right = j.value("right", 0.0);
  } else if (kind == "natural") {
    bc.kind = BoundaryConditions::Kind::natural;
    if (j.contains("left") || j.contains("right"))
      throw ConfigError("bc: natural boundaries take no left/right values");
  } else {
    throw ConfigError("bc: kind must be dirichlet or natural, got '" + kind + "'");
  }
  return bc;
}

void load_config_file(const std::string& path, ResolvedRun& r) {
  if (!fs::exists(path))
    throw ConfigError("config file not found: " + path);
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config " + path + ": expected a JSON object");
  check_keys(j,
             {"experiment", "dx", "dx_list", "gamma", "h", "K", "gs_sweeps",
              "tol", "splitting_a", "max_outer", "seed", "init", "init_file",
              "exact_u", "bc", "out", "domain", "w", "potential"},
             "config");
  if (!j.contains("experiment"))
    throw ConfigError("config: missing 'experiment' (example1..example6 or custom)");
  r.experiment = j.at("experiment").get<std::string>();
  if (!is_experiment_name(r.experiment) && r.experiment != "custom")
    throw ConfigError("config: experiment must be example1..example6 or custom, got '" +
                      r.experiment + "'");

  if (j.contains("dx")) r.o.dx = step_from_json(j.at("dx"));
  if (j.contains("dx_list")) {
    if (!j.at("dx_list").is_array())
      throw ConfigError("config: dx_list must be an array");
    for (const auto& v : j.at("dx_list")) r.dx_list.push_back(step_from_json(v));
  }
  if (j.contains("gamma")) r.o.gamma = j.at("gamma").get<double>();
  if (j.contains("h")) r.o.h = j.at("h").get<double>();
  if (j.contains("K")) r.o.bregman_steps = j.at("K").get<int>();
  if (j.contains("gs_sweeps")) r.o.gs_sweeps = j.at("gs_sweeps").get<int>();
  if (j.contains("tol")) r.o.tol = j.at("tol").get<double>();
  if (j.contains("splitting_a")) r.o.splitting_a = j.at("splitting_a").get<double>();
  if (j.contains("max_outer")) r.o.max_outer = j.at("max_outer").get<std::size_t>();
  if (j.contains("seed")) r.o.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("init")) {
    const std::string init = j.at("init").get<std::string>();
    if (init == "file") {
      r.init_from_file = true;
    } else {
      r.o.init = parse_named_init(init);
    }
  }
  if (j.contains("init_file")) r.init_file = j.at("init_file").get<std::string>();
  if (j.contains("exact_u")) r.exact_u = j.at("exact_u").get<bool>();
  if (j.contains("bc")) r.bc = parse_bc(j.at("bc"));
  if (j.contains("out")) r.out = j.at("out").get<std::string>();
  if (j.contains("domain")) r.domain = j.at("domain");
  if (j.contains("w")) r.w = j.at("w");
  if (j.contains("potential")) r.potential = j.at("potential");
}

// ---------------------------------------------------------------------------
// CLI flag bag shared by run and sweep

struct SolverFlags {
  std::string dx;
  std::vector<std::string> dx_list;
  bool dx_is_list = false;  // sweep binds --dx to the list, run to the scalar
  double gamma = 0.0, h = 0.0, tol = 0.0, splitting_a = 0.0;
  int bregman = 0, gs = 0;
  std::uint64_t max_outer = 0, seed = 0;
  std::string init, init_file, out;
  bool exact_u = false;

  CLI::Option* dx_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* h_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* a_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* gs_opt = nullptr;
  CLI::Option* max_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* init_opt = nullptr;
  CLI::Option* init_file_opt = nullptr;
  CLI::Option* exact_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void register_common(CLI::App* cmd) {
    gamma_opt = cmd->add_option("--gamma", gamma, "Constraint weight gamma");
    h_opt = cmd->add_option("--h", h, "Gradient-flow step h");
    k_opt = cmd->add_option("--K", bregman, "Inner Bregman iterations per outer step");
    gs_opt = cmd->add_option("--gs", gs, "Gauss-Seidel sweeps per u update");
    tol_opt = cmd->add_option("--tol", tol, "Stop when the squared constraint falls below this");
    a_opt = cmd->add_option("--splitting-a", splitting_a, "Convexity-splitting constant");
    max_opt = cmd->add_option("--max-outer", max_outer, "Outer iteration cap");
    seed_opt = cmd->add_option("--seed", seed, "Random-potential seed (example5 / custom random w)");
    init_opt = cmd->add_option("--init", init, "Initial guess: zero|plus|minus|tracking|file");
    init_file_opt = cmd->add_option("--init-file", init_file, "Nodal values used when --init file");
    exact_opt = cmd->add_flag("--exact-u", exact_u, "Tridiagonal u-solve instead of Gauss-Seidel");
    out_opt = cmd->add_option("--out", out, "Output directory (default '.')");
  }

  /// Fold the flags over whatever the config file set; flags win.
  void fold_into(ResolvedRun& r) const {
    if (dx_opt && dx_opt->count()) {
      if (dx_is_list) {
        r.dx_list.clear();
        for (const auto& s : dx_list) r.dx_list.push_back(parse_step_text(s));
      } else {
        r.o.dx = parse_step_text(dx);
      }
    }
    if (gamma_opt->count()) r.o.gamma = gamma;
    if (h_opt->count()) r.o.h = h;
    if (k_opt->count()) r.o.bregman_steps = bregman;
    if (gs_opt->count()) r.o.gs_sweeps = gs;
    if (tol_opt->count()) r.o.tol = tol;
    if (a_opt->count()) r.o.splitting_a = splitting_a;
    if (max_opt->count()) r.o.max_outer = max_outer;
    if (seed_opt->count()) r.o.seed = seed;
    if (init_opt->count()) {
      if (init == "file") {
        r.init_from_file = true;
        r.o.init.reset();
      } else {
        r.init_from_file = false;
        r.o.init = parse_named_init(init);
      }
    }
    if (init_file_opt->count()) {
      r.init_file = init_file;
      if (!init_opt->count() && !r.init_from_file) {
        r.init_from_file = true;  // --init-file alone implies --init file
        r.o.init.reset();
      }
    }
    if (exact_opt->count()) r.exact_u = exact_u;
    if (out_opt->count()) r.out = out;

    if (r.init_from_file && r.init_file.empty())
      throw ConfigError("init 'file' needs an init_file path");
    if (!r.init_from_file && !r.init_file.empty())
      throw ConfigError("init_file is only used with init 'file'");
    validate_ranges(r);
  }

  static void validate_ranges(const ResolvedRun& r) {
    if (r.o.gamma && !(*r.o.gamma > 0.0)) throw ConfigError("gamma must be positive");
    if (r.o.h && !(*r.o.h > 0.0)) throw ConfigError("h must be positive");
    if (r.o.tol && !(*r.o.tol > 0.0)) throw ConfigError("tol must be positive");
    if (r.o.bregman_steps && *r.o.bregman_steps < 1)
      throw ConfigError("K must be at least 1");
    if (r.o.gs_sweeps && *r.o.gs_sweeps < 1)
      throw ConfigError("gs_sweeps must be at least 1");
    if (r.o.max_outer && *r.o.max_outer < 1)
      throw ConfigError("max_outer must be at least 1");
  }
};

ResolvedRun resolve(const std::string& problem, const SolverFlags& flags) {
  ResolvedRun r;
  if (is_experiment_name(problem)) {
    r.experiment = problem;
  } else {
    load_config_file(problem, r);
  }
  flags.fold_into(r);
  if (r.o.seed && r.experiment != "example5" && r.experiment != "custom")
    throw ConfigError("seed applies only to example5 or a custom random w");
  return r;
}

// ---------------------------------------------------------------------------
// custom problem assembly

std::size_t cells_from(double lo, double hi, double dx, const std::string& where) {
  const double ratio = (hi - lo) / dx;
  const auto cells = static_cast<long long>(std::llround(ratio));
  if (cells < 1 || std::abs(ratio - static_cast<double>(cells)) > 1e-9 * ratio)
    throw ConfigError(where + ": dx must evenly divide the domain");
  return static_cast<std::size_t>(cells);
}

/// Sampled potential from the "w" config object; returns the seed actually
/// used when the form is random (0 otherwise).
std::pair<SampledFunction, std::uint64_t> parse_w(const json& jw,
                                                  const std::optional<std::uint64_t>& seed_override) {
  if (!jw.is_object()) throw ConfigError("w: expected an object");
  if (jw.contains("x") || jw.contains("v")) {
    check_keys(jw, {"x", "v"}, "w");
    if (!jw.contains("x") || !jw.contains("v"))
      throw ConfigError("w: tabulated form needs both x and v arrays");
    SampledFunction f;
    f.x = jw.at("x").get<std::vector<double>>();
    f.v = jw.at("v").get<std::vector<double>>();
    f.validate();
    return {f, 0};
  }
  check_keys(jw, {"form", "range", "cells", "seed", "samples"}, "w");
  if (!jw.contains("form"))
    throw ConfigError("w: needs either x/v samples or a form");
  const std::string form = jw.at("form").get<std::string>();

  double lo = 0.0, hi = 0.0;
  std::size_t cells = 0;
  std::function<double(double)> fn;
  if (form == "one_sided") {
    fn = well_one_sided; lo = 0.0; hi = 3.0; cells = 3072;
  } else if (form == "double_well") {
    fn = well_double; lo = -2.0; hi = 2.0; cells = 4096;
  } else if (form == "triple_well") {
    fn = well_triple; lo = -2.0; hi = 4.0; cells = 4098;
  } else if (form == "random") {
    std::uint64_t seed = seed_override.value_or(jw.value("seed", std::uint64_t{1}));
    const auto samples = jw.value("samples", std::size_t{64});
    double rlo = -2.0, rhi = 2.0;
    if (jw.contains("range")) {
      const auto& range = jw.at("range");
      if (!range.is_array() || range.size() != 2)
        throw ConfigError("w: range must be [lo, hi]");
      rlo = range[0].get<double>();
      rhi = range[1].get<double>();
    }
    return {random_potential(seed, samples, rlo, rhi), seed};
  } else {
    throw ConfigError("w: form must be one_sided, double_well, triple_well or random");
  }
  if (jw.contains("range")) {
    const auto& range = jw.at("range");
    if (!range.is_array() || range.size() != 2)
      throw ConfigError("w: range must be [lo, hi]");
    lo = range[0].get<double>();
    hi = range[1].get<double>();
    if (!(lo < hi)) throw ConfigError("w: range must satisfy lo < hi");
  }
  if (jw.contains("cells")) cells = jw.at("cells").get<std::size_t>();
  if (cells < 2) throw ConfigError("w: needs at least 2 cells");
  return {SampledFunction::tabulate(fn, lo, hi, cells), 0};
}

Potential parse_potential(const json& jp, const Grid1D& grid) {
  if (!jp.is_object()) throw ConfigError("potential: expected an object");
  check_keys(jp, {"form", "g", "a"}, "potential");
  if (!jp.contains("form")) throw ConfigError("potential: missing 'form'");
  const std::string form = jp.at("form").get<std::string>();

  Potential pot;
  double default_g = 0.0;
  if (form == "quadratic_tracking") {
    pot.form = PotentialForm::quadratic_tracking;
    pot.a = 0.0;
  } else if (form == "double_well") {
    pot.form = PotentialForm::double_well;
    pot.a = 4.0;
    default_g = 1.0;
  } else if (form == "tracking_well") {
    pot.form = PotentialForm::tracking_well;
    pot.a = 4.0;
    if (!jp.contains("g")) throw ConfigError("potential: tracking_well needs g");
  } else {
    throw ConfigError(
        "potential: form must be quadratic_tracking, double_well or tracking_well");
  }
  if (jp.contains("a")) pot.a = jp.at("a").get<double>();

  if (!jp.contains("g") || jp.at("g").is_number()) {
    const double g = jp.contains("g") ? jp.at("g").get<double>() : default_g;
    pot.g.assign(grid.nodes(), g);
  } else if (jp.at("g").is_array()) {
    pot.g = jp.at("g").get<std::vector<double>>();
    if (pot.g.size() != grid.nodes())
      throw ConfigError("potential: g has " + std::to_string(pot.g.size()) +
                        " values but the grid has " + std::to_string(grid.nodes()) +
                        " nodes");
  } else {
    throw ConfigError("potential: g must be a number or an array of node values");
  }
  return pot;
}

Experiment1D build_custom(const ResolvedRun& r, const Overrides& o) {
  if (!r.domain || !r.w || !r.potential)
    throw ConfigError("custom experiment needs domain, w and potential");
  if (!r.domain->is_array() || r.domain->size() != 2)
    throw ConfigError("custom: domain must be [a, b]");
  const double a = (*r.domain)[0].get<double>();
  const double b = (*r.domain)[1].get<double>();
  if (!(a < b)) throw ConfigError("custom: domain must satisfy a < b");
  if (!o.dx) throw ConfigError("custom: dx is required");

  Experiment1D e;
  e.name = "custom";
  e.problem.grid = Grid1D(a, b, cells_from(a, b, *o.dx, "custom"));

  auto [w, seed_used] = parse_w(*r.w, o.seed);
  e.problem.w = std::move(w);
  e.seed = seed_used;
  e.problem.envelope = build_envelope(e.problem.w);
  e.problem.table = ShrinkTable::from_envelope(e.problem.envelope);
  e.problem.potential = parse_potential(*r.potential, e.problem.grid);
  if (o.splitting_a) e.problem.potential.a = *o.splitting_a;
  e.problem.bc = r.bc.value_or(BoundaryConditions{});

  const double dx = e.problem.grid.dx();
  e.config.gamma = o.gamma.value_or(default_step(dx));
  e.config.h = o.h.value_or(default_step(dx));
  if (o.tol) e.config.tol = *o.tol;
  if (o.bregman_steps) e.config.bregman_steps = *o.bregman_steps;
  if (o.gs_sweeps) e.config.gs_sweeps = *o.gs_sweeps;
  if (o.max_outer) e.config.max_outer = *o.max_outer;

  const std::size_t nodes = e.problem.grid.nodes();
  switch (o.init.value_or(InitialGuess::zero)) {
    case InitialGuess::zero: e.initial_u.assign(nodes, 0.0); break;
    case InitialGuess::plus: e.initial_u.assign(nodes, 1.0); break;
    case InitialGuess::minus: e.initial_u.assign(nodes, -1.0); break;
    case InitialGuess::tracking: e.initial_u = e.problem.potential.g; break;
  }
  e.problem.validate();
  return e;
}

// ---------------------------------------------------------------------------
// initial fields from files

std::vector<double> read_u_column(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("init file not found: " + path);
  const std::string text = io::read_file(path);

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };

  std::vector<double> values;
  std::size_t u_col = 0;
  bool saw_header = false, first = true;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split(line);
    if (first) {
      first = false;
      const bool alpha = std::any_of(line.begin(), line.end(),
                                     [](unsigned char c) { return std::isalpha(c); });
      if (alpha) {
        saw_header = true;
        const auto it = std::find(fields.begin(), fields.end(), "u");
        if (it == fields.end())
          throw ConfigError("init file " + path + ": header has no 'u' column");
        u_col = static_cast<std::size_t>(it - fields.begin());
        continue;
      }
    }
    if (fields.size() <= u_col)
      throw ConfigError("init file " + path + ": row with too few columns");
    values.push_back(strict_stod(fields[u_col]));
  }
  if (!saw_header && values.empty())
    throw ConfigError("init file " + path + ": no values");
  return values;
}

std::vector<double> load_initial_1d(const std::string& path, const Grid1D& grid) {
  auto u = read_u_column(path);
  if (u.size() != grid.nodes())
    throw ConfigError("init file " + path + ": expected " +
                      std::to_string(grid.nodes()) + " node values, got " +
                      std::to_string(u.size()));
  return u;
}

Array2D load_initial_2d(const std::string& path, const Grid2D& grid) {
  const auto u = read_u_column(path);
  const std::size_t m = grid.nodes();
  if (u.size() != m * m)
    throw ConfigError("init file " + path + ": expected " + std::to_string(m * m) +
                      " node values (row-major), got " + std::to_string(u.size()));
  Array2D field(m, m);
  field.v = u;
  return field;
}

// ---------------------------------------------------------------------------
// artifact writing (render first, write after everything succeeded)

using Artifacts = std::vector<std::pair<std::string, std::string>>;

std::vector<std::string> write_artifacts(const std::string& out, const Artifacts& files) {
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  fs::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto& [name, text] : files) {
    paths.push_back((dir / name).string());
    io::write_file(paths.back(), text);
  }
  return paths;
}

void print_written(const std::vector<std::string>& paths) {
  std::printf("  wrote:");
  for (const auto& p : paths) std::printf(" %s", p.c_str());
  std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// run

int run_1d(const ResolvedRun& r) {
  Experiment1D e = (r.experiment == "custom") ? build_custom(r, r.o)
                                              : make_experiment(r.experiment, r.o);
  if (r.bc && r.experiment != "custom") e.problem.bc = *r.bc;
  if (r.exact_u) e.config.exact_u = *r.exact_u;
  if (r.init_from_file) e.initial_u = load_initial_1d(r.init_file, e.problem.grid);

  std::printf("run %s: dx=%g gamma=%g h=%g K=%d gs=%d tol=%g%s\n", e.name.c_str(),
              e.problem.grid.dx(), e.config.gamma, e.config.h,
              e.config.bregman_steps, e.config.gs_sweeps, e.config.tol,
              e.config.exact_u ? " exact-u" : "");

  SolverState s = init_state(e.problem, e.initial_u);
  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport rep = solve(e.problem, s, e.config);
  const double solve_s = seconds_since(t0);

  const MeasureField field = measure_field(e.problem.grid, e.problem.envelope,
                                           e.problem.w, s.u,
                                           default_gap_tol(e.problem.w));
  const auto oscillations = oscillation_report(e.problem.grid, field);

  io::ReportData rd;
  rd.final_energy = rep.final_energy;
  rd.final_constraint_sq = rep.final_constraint_sq;
  rd.iterations = rep.iterations;
  rd.converged = rep.converged;
  rd.oscillation_intervals = oscillations;
  if (e.has_oracle) {
    rd.oracle_energy = (e.name == "example1" ? shoot_example1() : shoot_example2()).energy;
  }
  if (e.seed != 0) rd.seed = e.seed;

  Artifacts files;
  files.emplace_back("solution.csv", io::solution_csv(e.problem.grid, s.u, s.d, s.b));
  files.emplace_back("diagnostics.csv",
                     io::diagnostics_csv(rep.energy_history, rep.constraint_history));
  files.emplace_back("measure.json", io::measure_json(field));
  files.emplace_back("report.json", io::report_json(rd));

  std::printf("  converged %s  iterations %zu  elapsed %.3f s\n",
              rep.converged ? "yes" : "no", rep.iterations, solve_s);
  std::printf("  energy %.9f  constraint %.3e\n", rep.final_energy,
              rep.final_constraint_sq);
  if (rd.oracle_energy)
    std::printf("  oracle energy %.9f  (difference %+.3e)\n", *rd.oracle_energy,
                rep.final_energy - *rd.oracle_energy);
  if (rd.seed) std::printf("  seed %llu\n", static_cast<unsigned long long>(*rd.seed));
  const auto gaps = non_contact_intervals(e.problem.envelope, e.problem.w,
                                          default_gap_tol(e.problem.w));
  std::printf("  oscillation intervals: %zu\n", oscillations.size());
  for (const auto& itv : oscillations) {
    const bool known = itv.interval >= 0 &&
                       static_cast<std::size_t>(itv.interval) < gaps.size();
    std::printf("    x in [%.6f, %.6f]  gradients in (%.6f, %.6f)  %zu cells\n",
                itv.lo, itv.hi, known ? gaps[itv.interval].lo : 0.0,
                known ? gaps[itv.interval].hi : 0.0, itv.cells);
  }

  print_written(write_artifacts(r.out, files));
  return 0;
}

int run_2d(const ResolvedRun& r) {
  if (r.o.bregman_steps || r.o.gs_sweeps)
    throw ConfigError("example6: K and gs_sweeps do not apply (single merged sweep)");
  if (r.exact_u && *r.exact_u)
    throw ConfigError("example6: exact_u applies to 1D problems only");
  if (r.bc) throw ConfigError("example6: the boundary data is fixed to u = x y");

  Experiment2D e = make_example6(r.o);
  if (r.init_from_file) {
    e.initial_u = load_initial_2d(r.init_file, e.grid);
    e.reflected_frame = false;
  }

  std::printf("run example6: delta=%g gamma=%g h=%g a=%g tol=%g frame=%s\n",
              e.grid.delta(), e.config.gamma, e.config.h, e.config.a, e.config.tol,
              e.reflected_frame ? "reflected" : "principal");

  const auto t0 = std::chrono::steady_clock::now();
  const Run2DResult res = run_example6(e);
  const double solve_s = seconds_since(t0);

  io::ReportData rd;
  rd.final_energy = res.report.final_energy;
  rd.final_constraint_sq = res.report.final_constraint_sq;
  rd.iterations = res.report.iterations;
  rd.converged = res.report.converged;

  Artifacts files;
  files.emplace_back("field.csv", io::field_csv(e.grid, res.state.u));
  files.emplace_back("contour.json", io::contour_json(e.grid, res.state.u));
  files.emplace_back("diagnostics.csv",
                     io::diagnostics_csv(res.report.energy_history,
                                         res.report.constraint_history, kDiagStride2D));
  files.emplace_back("report.json", io::report_json(rd));

  std::printf("  converged %s  iterations %zu  elapsed %.1f s\n",
              res.report.converged ? "yes" : "no", res.report.iterations, solve_s);
  std::printf("  energy %.9f  constraint %.3e\n", res.report.final_energy,
              res.report.final_constraint_sq);

  print_written(write_artifacts(r.out, files));
  return 0;
}

int cmd_run(const std::string& problem, const SolverFlags& flags) {
  const ResolvedRun r = resolve(problem, flags);
  return r.experiment == "example6" ? run_2d(r) : run_1d(r);
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const std::string& problem, const SolverFlags& flags) {
  const ResolvedRun r = resolve(problem, flags);
  if (r.init_from_file)
    throw ConfigError("sweep: init 'file' is not supported (grids change per case)");

  std::printf("sweep %s: %zu case(s)\n", r.experiment.c_str(), r.dx_list.size());
  std::vector<std::pair<double, double>> rows;
  for (const double dx : r.dx_list) {
    Overrides o = r.o;
    o.dx = dx;
    const auto t0 = std::chrono::steady_clock::now();
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    if (r.experiment == "example6") {
      if (r.o.bregman_steps || r.o.gs_sweeps)
        throw ConfigError("example6: K and gs_sweeps do not apply (single merged sweep)");
      const Run2DResult res = run_example6(make_example6(o));
      energy = res.report.final_energy;
      iterations = res.report.iterations;
      converged = res.report.converged;
    } else {
      Experiment1D e = (r.experiment == "custom") ? build_custom(r, o)
                                                  : make_experiment(r.experiment, o);
      if (r.bc && r.experiment != "custom") e.problem.bc = *r.bc;
      if (r.exact_u) e.config.exact_u = *r.exact_u;
      e.config.record_history = false;
      SolverState s = init_state(e.problem, e.initial_u);
      const SolveReport rep = solve(e.problem, s, e.config);
      energy = rep.final_energy;
      iterations = rep.iterations;
      converged = rep.converged;
    }
    rows.emplace_back(dx, energy);
    std::printf("  dx=%-12g energy=%-14.9f iterations=%-7zu %s  %.3f s\n", dx, energy,
                iterations, converged ? "converged" : "NOT CONVERGED",
                seconds_since(t0));
  }

  print_written(write_artifacts(r.out, {{"sweep.csv", io::sweep_csv(rows)}}));
  return 0;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const std::string& name, std::size_t steps_per_unit, double bisect_tol,
               const std::string& out) {
  ShootingOptions opts;
  if (steps_per_unit) opts.steps_per_unit = steps_per_unit;
  if (bisect_tol > 0.0) opts.bisect_tol = bisect_tol;

  const auto t0 = std::chrono::steady_clock::now();
  ShootingResult res;
  HamiltonianSystem sys;
  if (name == "example1") {
    res = shoot_example1(opts);
    sys = example1_system();
  } else if (name == "example2") {
    res = shoot_example2(opts);
    sys = example2_system();
  } else {
    throw ConfigError("oracle: expected example1 or example2, got '" + name + "'");
  }
  const double solve_s = seconds_since(t0);

  json j;
  j["example"] = name;
  j["x_star"] = res.x_star;
  j["energy"] = res.energy;
  j["hamiltonian_drift"] = res.hamiltonian_drift;

  Artifacts files;
  files.emplace_back("trajectory.csv", io::trajectory_csv(res.trajectory, sys));
  files.emplace_back("oracle.json", j.dump(2) + "\n");

  std::printf("oracle %s: x*=%.9f energy=%.9f drift=%.3e  elapsed %.3f s\n",
              name.c_str(), res.x_star, res.energy, res.hamiltonian_drift, solve_s);
  print_written(write_artifacts(out, files));
  return 0;
}

// ---------------------------------------------------------------------------

std::string error_json(const char* type, const std::string& message) {
  return json{{"error", {{"type", type}, {"message", message}}}}.dump();
}

int fail(const char* type, const std::string& message, int code) {
  std::fprintf(stderr, "%s\n", error_json(type, message).c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relax — relaxed nonconvex variational problems via split Bregman.\n"
      "Problems are example1..example6 or a JSON config file."};
  app.require_subcommand(1);
  // Help is long-form only: the short -h would collide with the --h step flag.
  app.set_help_flag("--help", "Print help and exit");

  std::string run_problem, sweep_problem, oracle_name;
  SolverFlags run_flags, sweep_flags;
  std::size_t oracle_steps = 0;
  double oracle_bisect_tol = 0.0;
  std::string oracle_out;

  CLI::App* run = app.add_subcommand("run", "Solve one problem and write artifacts");
  run->set_help_flag("--help", "Print help and exit");
  run->add_option("problem", run_problem, "example1..example6 or a config path")
      ->required();
  run_flags.dx_opt = run->add_option("--dx", run_flags.dx,
                                     "Grid step (accepts 2^-7, 1/128 or decimals)");
  run_flags.register_common(run);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Solve over a list of grid steps; writes sweep.csv");
  sweep->set_help_flag("--help", "Print help and exit");
  sweep->add_option("problem", sweep_problem, "example1..example6 or a config path")
      ->required();
  sweep_flags.dx_is_list = true;
  sweep_flags.dx_opt =
      sweep->add_option("--dx", sweep_flags.dx_list, "Comma-separated grid steps")
          ->delimiter(',');
  sweep_flags.register_common(sweep);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Shooting reference solution (example1 or example2)");
  oracle->set_help_flag("--help", "Print help and exit");
  oracle->add_option("example", oracle_name, "example1 or example2")->required();
  oracle->add_option("--steps", oracle_steps, "RK4 steps per unit length");
  oracle->add_option("--bisect-tol", oracle_bisect_tol, "Bisection tolerance");
  oracle->add_option("--out", oracle_out, "Output directory (default '.')");

  std::function<int()> action;
  run->callback([&] { action = [&] { return cmd_run(run_problem, run_flags); }; });
  sweep->callback([&] { action = [&] { return cmd_sweep(sweep_problem, sweep_flags); }; });
  oracle->callback([&] {
    action = [&] {
      return cmd_oracle(oracle_name, oracle_steps, oracle_bisect_tol, oracle_out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0)
      std::fprintf(stderr, "%s\n", error_json("UsageError", e.what()).c_str());
    return app.exit(e);
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    return fail("ConfigError", e.what(), 2);
  } catch (const InvalidInputError& e) {
    return fail("InvalidInputError", e.what(), 2);
  } catch (const DomainError& e) {
    return fail("DomainError", e.what(), 3);
  } catch (const SingularityError& e) {
    return fail("SingularityError", e.what(), 3);
  } catch (const ShootingError& e) {
    return fail("ShootingError", e.what(), 3);
  } catch (const json::exception& e) {
    return fail("ConfigError", e.what(), 2);
  } catch (const Error& e) {
    return fail("Error", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 4);
  }
}
