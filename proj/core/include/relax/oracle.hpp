#pragma once

#include <functional>
#include <vector>

#include "relax/errors.hpp"

namespace relax {

/// First-order control system u' = f_u(u, v), v' = f_v(u, v) together with
/// the conserved control Hamiltonian (closed form, piecewise in v) and the
/// Lagrangian (energy integrand) along trajectories. The x argument of the
/// right-hand sides is only used to report singularity locations.
struct HamiltonianSystem {
  std::function<double(double x, double u, double v)> du;
  std::function<double(double x, double u, double v)> dv;
  std::function<double(double u, double v)> hamiltonian;
  std::function<double(double u, double v)> lagrangian;
};

/// Sampled trajectory; e accumulates the integral of the Lagrangian.
struct Trajectory {
  std::vector<double> x, u, v, e;
  std::size_t size() const { return x.size(); }
};

/// Hamiltonian system for the relaxed obstacle problem with quadratic
/// confinement: u' = v, v' = u / (6 v^2 - 2); valid for v >= sqrt(2/3).
/// H = -(1 + u^2) for 0 <= v < sqrt(2/3), else 3 v^4 - 2 v^2 - 1 - u^2.
HamiltonianSystem example1_system();

/// Hamiltonian system for the double-well/double-well problem:
/// u' = v, v' = u (u^2 - 1) / (3 v^2 - 1); valid for |v| >= 1.
/// H = -(u^2 - 1)^2 for |v| < 1, else (v^2 - 1)(3 v^2 + 1) - (u^2 - 1)^2.
HamiltonianSystem example2_system();

/// Classical fixed-step RK4 on (u, v, e) with e' = lagrangian(u, v).
/// Records every step. n_steps >= 1.
Trajectory integrate(const HamiltonianSystem& sys, double u0, double v0,
                     double x0, double x1, std::size_t n_steps,
                     double e0 = 0.0);

/// Maximum Hamiltonian drift max_i |H(u_i, v_i) - H(u_0, v_0)| over a
/// sampled trajectory.
double hamiltonian_drift(const HamiltonianSystem& sys, const Trajectory& traj);

/// Result of a semi-analytic shooting construction: the free-boundary
/// location, the exact relaxed energy, the assembled minimizer samples and
/// the Hamiltonian drift along them.
struct ShootingResult {
  double x_star = 0.0;
  double energy = 0.0;
  double hamiltonian_drift = 0.0;
  Trajectory trajectory;  ///< assembled full-domain solution (x, u, v)
};

struct ShootingOptions {
  std::size_t steps_per_unit = 10000;  ///< fixed RK4 resolution
  double bisect_tol = 1e-10;           ///< on the shooting parameter / event
};

/// Minimizer of I[u] = int_0^1 W_bar(u') + u^2, u(0) = 0, u(1) = 1/2:
/// u = 0 on [0, x*], then the Pontryagin arc from (0, sqrt(2/3)) reaching
/// u(1) = 1/2. Bisection on x*. Reference values: x* ~ 0.4039,
/// energy ~ 0.505445, H = -1 on the arc.
ShootingResult shoot_example1(const ShootingOptions& opts = {});

/// Minimizer of I[u] = int_{-1}^1 (u'^2-1)_+^2 + (u^2-1)^2, u(+-1) = 0:
/// outer arcs with |u'| >= 1 glued to the plateau u = 1 on (x*, -x*).
/// The arc is integrated from (u, v) = (1, -1) until u crosses 0 (event
/// located by bisection on the last RK4 step); x* = arc_length - 1 < 0.
/// Reference values: x* ~ -0.0529, energy ~ 1.0241, H = 0 on the arcs.
ShootingResult shoot_example2(const ShootingOptions& opts = {});

}  // namespace relax
