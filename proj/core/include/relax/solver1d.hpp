#pragma once

#include <cstddef>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/grid.hpp"
#include "relax/shrink.hpp"

namespace relax {

/// Node potential V(x, u). quadratic_tracking: (u - g(x))^2, convex, handled
/// fully implicitly. double_well: (u^2 - 1)^2 and tracking_well:
/// (u^2 - g(x))^2, split as (u^2 - g)^2 = 2 a u^2 + (u^4 - 2 (g + a) u^2 + g^2)
/// with the quadratic part implicit and the remainder linearized at the
/// gradient-flow anchor U_n.
enum class PotentialForm { quadratic_tracking, double_well, tracking_well };

struct Potential {
  PotentialForm form = PotentialForm::quadratic_tracking;
  std::vector<double> g;  ///< tabulated on grid nodes (all-ones for double_well)
  double a = 0.0;         ///< convexity-splitting constant (wells only)

  /// Full (unsplit) potential value given the local g value.
  double value(double g_value, double u) const;
  /// Constant curvature of the implicit part V_+ (enters the GS denominator).
  double implicit_curvature() const;
  /// Explicit numerator term from g and the linearized concave remainder.
  double explicit_term(double g_value, double anchor) const;
};

struct BoundaryConditions {
  enum class Kind { dirichlet, natural };
  Kind kind = Kind::dirichlet;
  double left = 0.0;
  double right = 0.0;
};

/// Everything fixed about a 1D relaxed problem: grid, sampled W with its
/// convex envelope and shrink table, node potential, boundary conditions.
struct Problem1D {
  Grid1D grid;
  SampledFunction w;  ///< samples the envelope was built from
  Envelope envelope;
  ShrinkTable table;
  Potential potential;
  BoundaryConditions bc;

  void validate() const;
};

struct SolverConfig {
  double gamma = 0.01;
  double h = 0.01;
  double tol = 1e-12;          ///< on ||D - d_x U||_2^2 (unweighted)
  int bregman_steps = 5;       ///< K inner iterations per outer step
  int gs_sweeps = 10;          ///< Gauss-Seidel sweeps per u-subproblem
  std::size_t max_outer = 50000;
  bool exact_u = false;        ///< tridiagonal solve instead of GS sweeps
  bool record_history = true;
};

/// Mutable solver state; warm-started across outer iterations: after each
/// inner loop U_n <- u^K, D_n <- d^K, B_n <- b^K.
struct SolverState {
  std::vector<double> u;   ///< nodes
  std::vector<double> un;  ///< gradient-flow anchor U_n (nodes)
  std::vector<double> d;   ///< cells
  std::vector<double> b;   ///< cells (Bregman variable)
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;
  double final_energy = 0.0;  ///< compute_energy_trapz of the final iterate
  double final_constraint_sq = 0.0;
  std::vector<double> energy_history;      ///< per outer iteration (trapz)
  std::vector<double> constraint_history;  ///< per outer iteration
};

/// Initial state: u = init (with Dirichlet values pinned), U_n = u,
/// d = 0, b = 0.
SolverState init_state(const Problem1D& p, const std::vector<double>& u_init);

/// Forward difference (u_{i+1} - u_i) / dx on cells.
std::vector<double> forward_diff(const Grid1D& grid, const std::vector<double>& u);

/// Unweighted squared constraint norm sum_c (d_c - u_x_c)^2.
double constraint_sq(const Problem1D& p, const SolverState& s);

/// Gauss-Seidel sweeps (ascending nodes) on the u-subproblem
///   (gamma/2)||d - u_x - b||^2 + 1/(2h)||u - U_n||^2 + V_+[u] + (dV_-[U_n], u).
/// Natural boundaries use the same rule with absent neighbor terms dropped;
/// Dirichlet boundaries stay pinned.
void gauss_seidel_u_step(const Problem1D& p, SolverState& s, double gamma,
                         double h, int sweeps);

/// Direct tridiagonal (Thomas) solve of the same Euler-Lagrange system the
/// Gauss-Seidel sweeps iterate on.
void exact_u_step(const Problem1D& p, SolverState& s, double gamma, double h);

/// d_c = shrink(u_x_c + b_c) for every cell.
void shrink_d_step(const Problem1D& p, SolverState& s, double gamma);

/// b <- b + (u_x - d).
void update_b(const Problem1D& p, SolverState& s);

/// One inner loop: K Bregman iterations of (u-step, d-step, b-update).
void bregman_inner(const Problem1D& p, SolverState& s, const SolverConfig& cfg);

/// Diagnostic-exact inner loop: each Bregman step alternates exact
/// tridiagonal u-solves with shrink d-solves to a joint fixed point before
/// the b-update, so the Bregman iterate is the exact constrained-subproblem
/// minimizer the convergence lemmas assume.
void bregman_inner_joint(const Problem1D& p, SolverState& s, double gamma,
                         double h, int bregman_steps,
                         double fix_tol = 1e-14, std::size_t max_alt = 20000);

/// Relaxed energy of a nodal field: midpoint rule on cells,
///   sum_c dx [ W_bar(u_x_c) + V(x_mid, u_mid) ]
/// with W_bar extended affinely outside its table (see eval_envelope).
double compute_energy(const Problem1D& p, const std::vector<double>& u);

/// Reported energy: same integrand, but the gradient term is integrated by
/// the trapezoid rule over the cell array of W_bar values (first and last
/// cells get half weight). Grid sweeps tabulated with this rule increase
/// monotonically toward the continuum value; compute_energy, by contrast,
/// sits within O(dx^2) of the continuum value at every resolution.
double compute_energy_trapz(const Problem1D& p, const std::vector<double>& u);

/// Discrete Rayleigh-functional ingredients used by the convergence
/// diagnostics (dx-weighted): E(U) = sum dx [W_bar(d)] + sum dx V_split(u; anchor)
/// + (dx/2h)||u - anchor||^2 and H(U) = (gamma/2) sum dx (d - u_x)^2.
double diagnostic_energy(const Problem1D& p, const SolverState& s,
                         const std::vector<double>& anchor, double h);
double diagnostic_h(const Problem1D& p, const SolverState& s, double gamma);

/// Outer gradient flow: inner loops until the constraint falls below tol or
/// max_outer is reached. Histories are recorded once per outer iteration.
SolveReport solve(const Problem1D& p, SolverState& s, const SolverConfig& cfg);

}  // namespace relax
