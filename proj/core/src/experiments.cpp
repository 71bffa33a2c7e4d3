#include "relax/experiments.hpp"

#include <cmath>

#include "relax/errors.hpp"

namespace relax {

double well_one_sided(double v) {
  const double r = v * v - 1.0;
  return r * r;
}

double well_double(double d) {
  const double r = d * d - 1.0;
  return r * r;
}

double well_triple(double d) {
  const double p = d * d - 1.0;
  const double q = (d - 2.0) * (d - 2.0) - 1.0;
  return p * p * q * q;
}

double default_step(double dx) { return std::max(dx, 0.01); }

SampledFunction random_potential(std::uint64_t seed, std::size_t n, double lo,
                                 double hi) {
  SplitMix64 rng(seed);
  SampledFunction f;
  f.x.resize(n);
  f.v.resize(n);
  const double dx = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    f.x[i] = (i + 1 == n) ? hi : lo + static_cast<double>(i) * dx;
    f.v[i] = rng.next_double();
  }
  f.validate();
  return f;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t cells_for(double a, double b, double dx) {
  const double raw = (b - a) / dx;
  const auto n = static_cast<std::size_t>(std::llround(raw));
  if (n < 2 || std::abs(raw - static_cast<double>(n)) > 1e-9)
    throw InvalidInputError("experiment: dx must evenly divide the domain");
  return n;
}

std::vector<double> tabulate_g(const Grid1D& grid, double (*g)(double)) {
  std::vector<double> out(grid.nodes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g(grid.node(i));
  return out;
}

double g_zero(double) { return 0.0; }
double g_one(double) { return 1.0; }
double g_example4(double x) {
  return std::sin(2.0 * M_PI * x) / 6.0 + 0.5 * std::exp(x);
}
double g_example5(double x) { return 0.25 * std::sin(2.0 * M_PI * x) + 0.5; }

std::vector<double> constant_field(std::size_t nodes, double value) {
  return std::vector<double>(nodes, value);
}

SolverConfig base_config(double dx, const Overrides& o) {
  SolverConfig cfg;
  cfg.gamma = o.gamma.value_or(default_step(dx));
  cfg.h = o.h.value_or(default_step(dx));
  if (o.tol) cfg.tol = *o.tol;
  if (o.bregman_steps) cfg.bregman_steps = *o.bregman_steps;
  if (o.gs_sweeps) cfg.gs_sweeps = *o.gs_sweeps;
  if (o.max_outer) cfg.max_outer = *o.max_outer;
  return cfg;
}

std::vector<double> pick_initial(const Overrides& o, InitialGuess fallback,
                                 const std::vector<double>& g) {
  const std::size_t nodes = g.size();
  switch (o.init.value_or(fallback)) {
    case InitialGuess::plus:
      return constant_field(nodes, 1.0);
    case InitialGuess::minus:
      return constant_field(nodes, -1.0);
    case InitialGuess::tracking:
      return g;
    case InitialGuess::zero:
    default:
      return constant_field(nodes, 0.0);
  }
}

Experiment1D assemble(std::string name, Grid1D grid, SampledFunction w,
                      Potential pot, BoundaryConditions bc,
                      const Overrides& o, InitialGuess default_init) {
  if (o.splitting_a) pot.a = *o.splitting_a;
  Experiment1D e;
  e.name = std::move(name);
  e.problem.grid = grid;
  e.problem.w = std::move(w);
  e.problem.envelope = build_envelope(e.problem.w, -kInf, kInf);
  e.problem.table = ShrinkTable::from_envelope(e.problem.envelope);
  e.problem.potential = std::move(pot);
  e.problem.bc = bc;
  e.config = base_config(grid.dx(), o);
  e.initial_u = pick_initial(o, default_init, e.problem.potential.g);
  return e;
}

}  // namespace

Experiment1D make_example1(const Overrides& o) {
  const double dx = o.dx.value_or(0.0078125);  // 2^-7
  Grid1D grid(0.0, 1.0, cells_for(0.0, 1.0, dx));
  // 3072 cells on [0,3]: the well minimum at 1 falls on a sample node, so the
  // hull contact points (and hence shrink kinks) are exact.
  SampledFunction w = SampledFunction::tabulate(well_one_sided, 0.0, 3.0, 3072);
  Potential pot{PotentialForm::quadratic_tracking, tabulate_g(grid, g_zero), 0.0};
  BoundaryConditions bc{BoundaryConditions::Kind::dirichlet, 0.0, 0.5};
  Experiment1D e = assemble("example1", grid, std::move(w), std::move(pot), bc,
                            o, InitialGuess::zero);
  e.has_oracle = true;
  return e;
}

Experiment1D make_example2(const Overrides& o) {
  const double dx = o.dx.value_or(0.0078125);
  Grid1D grid(-1.0, 1.0, cells_for(-1.0, 1.0, dx));
  // 4096 cells on [-2,2]: both well minima (+-1) land on sample nodes.
  SampledFunction w = SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  Potential pot{PotentialForm::double_well, tabulate_g(grid, g_one), 4.0};
  BoundaryConditions bc{BoundaryConditions::Kind::dirichlet, 0.0, 0.0};
  Experiment1D e = assemble("example2", grid, std::move(w), std::move(pot), bc,
                            o, InitialGuess::plus);
  e.has_oracle = true;
  return e;
}

Experiment1D make_example3(const Overrides& o) {
  const double dx = o.dx.value_or(0.0078125);
  Grid1D grid(-1.0, 1.0, cells_for(-1.0, 1.0, dx));
  // 4098 cells on [-2,4]: divisible by 6, so all three well minima (-1, 1, 3)
  // land on sample nodes and the flat hull segment spans [-1,3] exactly.
  SampledFunction w = SampledFunction::tabulate(well_triple, -2.0, 4.0, 4098);
  Potential pot{PotentialForm::double_well, tabulate_g(grid, g_one), 4.0};
  BoundaryConditions bc{BoundaryConditions::Kind::dirichlet, 0.0, 0.0};
  return assemble("example3", grid, std::move(w), std::move(pot), bc, o,
                  InitialGuess::plus);
}

Experiment1D make_example4(const Overrides& o) {
  const double dx = o.dx.value_or(0.00390625);  // 2^-8
  Grid1D grid(-1.0, 1.0, cells_for(-1.0, 1.0, dx));
  SampledFunction w = SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  Potential pot{PotentialForm::quadratic_tracking, tabulate_g(grid, g_example4),
                0.0};
  BoundaryConditions bc{BoundaryConditions::Kind::natural, 0.0, 0.0};
  Overrides adj = o;
  if (!adj.gs_sweeps) adj.gs_sweeps = 20;
  return assemble("example4", grid, std::move(w), std::move(pot), bc, adj,
                  InitialGuess::tracking);
}

Experiment1D make_example5(const Overrides& o) {
  const double dx = o.dx.value_or(0.00390625);
  Grid1D grid(-1.0, 1.0, cells_for(-1.0, 1.0, dx));
  const std::uint64_t seed = o.seed.value_or(kExample5Seed);
  SampledFunction w = random_potential(seed);
  Potential pot{PotentialForm::tracking_well, tabulate_g(grid, g_example5), 4.1};
  BoundaryConditions bc{BoundaryConditions::Kind::natural, 0.0, 0.0};
  Overrides adj = o;
  if (!adj.gs_sweeps) adj.gs_sweeps = 20;
  if (!adj.bregman_steps) adj.bregman_steps = 10;
  Experiment1D e = assemble("example5", grid, std::move(w), std::move(pot), bc,
                            adj, InitialGuess::plus);
  e.seed = seed;
  return e;
}

Experiment1D make_experiment(const std::string& name, const Overrides& o) {
  if (name == "example1") return make_example1(o);
  if (name == "example2") return make_example2(o);
  if (name == "example3") return make_example3(o);
  if (name == "example4") return make_example4(o);
  if (name == "example5") return make_example5(o);
  throw InvalidInputError("unknown experiment: " + name);
}

Experiment2D make_example6(const Overrides& o) {
  const double delta = o.dx.value_or(0.04);
  Experiment2D e;
  e.name = "example6";
  e.grid = Grid2D(-1.0, 1.0, cells_for(-1.0, 1.0, delta));
  e.config.gamma = o.gamma.value_or(e.grid.delta());
  e.config.h = o.h.value_or(e.grid.delta());
  if (o.splitting_a) e.config.a = *o.splitting_a;
  if (o.tol) e.config.tol = *o.tol;
  e.config.max_steps = o.max_outer.value_or(500000);
  switch (o.init.value_or(InitialGuess::plus)) {
    case InitialGuess::zero:
      e.initial_u = Array2D(e.grid.nodes(), e.grid.nodes(), 0.0);
      break;
    case InitialGuess::minus:
      e.initial_u = initial_field_xy(e.grid);
      e.reflected_frame = true;
      break;
    case InitialGuess::plus:
      e.initial_u = initial_field_xy(e.grid);
      break;
    default:
      throw InvalidInputError("example6: init must be zero, plus or minus");
  }
  return e;
}

Run2DResult run_example6(const Experiment2D& e) {
  Run2DResult r;
  const Array2D u0 = e.reflected_frame
                         ? reflect_negate_field(e.grid, e.initial_u)
                         : e.initial_u;
  r.state = init_state_2d(e.grid, u0);
  r.report = solve_2d(r.state, e.config);
  if (e.reflected_frame) r.state = reflect_negate_state(r.state);
  return r;
}

}  // namespace relax
