#include "relax/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace relax {

namespace {

constexpr double kDenFloor = 1e-10;
const double kVStar = std::sqrt(2.0 / 3.0);

struct State {
  double u, v, e;
};

State rhs(const HamiltonianSystem& sys, double x, const State& s) {
  return {sys.du(x, s.u, s.v), sys.dv(x, s.u, s.v), sys.lagrangian(s.u, s.v)};
}

State rk4_step(const HamiltonianSystem& sys, double x, const State& s, double h) {
  const State k1 = rhs(sys, x, s);
  const State s2{s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v, s.e + 0.5 * h * k1.e};
  const State k2 = rhs(sys, x + 0.5 * h, s2);
  const State s3{s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v, s.e + 0.5 * h * k2.e};
  const State k3 = rhs(sys, x + 0.5 * h, s3);
  const State s4{s.u + h * k3.u, s.v + h * k3.v, s.e + h * k3.e};
  const State k4 = rhs(sys, x + h, s4);
  return {s.u + h / 6.0 * (k1.u + 2.0 * (k2.u + k3.u) + k4.u),
          s.v + h / 6.0 * (k1.v + 2.0 * (k2.v + k3.v) + k4.v),
          s.e + h / 6.0 * (k1.e + 2.0 * (k2.e + k3.e) + k4.e)};
}

/// Integrate until u crosses `level` from above (u decreasing). The event is
/// refined by bisection on the dense output of the crossing step: a single
/// RK4 step of size theta*h from the pre-crossing state. Returns the event
/// (x, state); appends samples up to (and including) the event to traj.
std::pair<double, State> integrate_to_crossing(const HamiltonianSystem& sys,
                                               State s, double x0, double level,
                                               double max_len, std::size_t steps_per_unit,
                                               double bisect_tol, Trajectory* traj) {
  const double h = 1.0 / static_cast<double>(steps_per_unit);
  const std::size_t max_steps =
      static_cast<std::size_t>(std::ceil(max_len / h)) + 1;
  auto push = [&](double x, const State& st) {
    if (!traj) return;
    traj->x.push_back(x);
    traj->u.push_back(st.u);
    traj->v.push_back(st.v);
    traj->e.push_back(st.e);
  };
  push(x0, s);
  double x = x0;
  for (std::size_t i = 0; i < max_steps; ++i) {
    const State next = rk4_step(sys, x, s, h);
    if (next.u - level <= 0.0) {
      // Bracketed: bisect the step fraction.
      double lo = 0.0, hi = 1.0;
      State ev = next;
      while ((hi - lo) * h > bisect_tol) {
        const double mid = 0.5 * (lo + hi);
        const State trial = rk4_step(sys, x, s, mid * h);
        if (trial.u - level <= 0.0) {
          hi = mid;
          ev = trial;
        } else {
          lo = mid;
        }
      }
      const double xe = x + hi * h;
      push(xe, ev);
      return {xe, ev};
    }
    s = next;
    x += h;
    push(x, s);
  }
  throw ShootingError("integrate_to_crossing: no crossing within budget");
}

}  // namespace

HamiltonianSystem example1_system() {
  HamiltonianSystem sys;
  sys.du = [](double, double, double v) { return v; };
  sys.dv = [](double x, double u, double v) {
    const double den = 6.0 * v * v - 2.0;
    if (std::abs(den) < kDenFloor)
      throw SingularityError("example1 rhs: denominator 6v^2-2 vanished", x);
    return u / den;
  };
  sys.hamiltonian = [](double u, double v) {
    if (v >= 0.0 && v < kVStar) return -(1.0 + u * u);
    return 3.0 * v * v * v * v - 2.0 * v * v - 1.0 - u * u;
  };
  sys.lagrangian = [](double u, double v) {
    const double w = v * v - 1.0;
    return w * w + u * u;
  };
  return sys;
}

HamiltonianSystem example2_system() {
  HamiltonianSystem sys;
  sys.du = [](double, double, double v) { return v; };
  sys.dv = [](double x, double u, double v) {
    const double den = 3.0 * v * v - 1.0;
    if (std::abs(den) < kDenFloor)
      throw SingularityError("example2 rhs: denominator 3v^2-1 vanished", x);
    return u * (u * u - 1.0) / den;
  };
  sys.hamiltonian = [](double u, double v) {
    const double uu = u * u - 1.0;
    if (std::abs(v) < 1.0) return -uu * uu;
    const double vv = v * v;
    return (vv - 1.0) * (3.0 * vv + 1.0) - uu * uu;
  };
  sys.lagrangian = [](double u, double v) {
    const double wv = v * v - 1.0;
    const double wu = u * u - 1.0;
    return wv * wv + wu * wu;
  };
  return sys;
}

Trajectory integrate(const HamiltonianSystem& sys, double u0, double v0,
                     double x0, double x1, std::size_t n_steps, double e0) {
  if (n_steps < 1) throw InvalidInputError("integrate: n_steps >= 1 required");
  Trajectory traj;
  traj.x.reserve(n_steps + 1);
  traj.u.reserve(n_steps + 1);
  traj.v.reserve(n_steps + 1);
  traj.e.reserve(n_steps + 1);
  const double h = (x1 - x0) / static_cast<double>(n_steps);
  State s{u0, v0, e0};
  double x = x0;
  traj.x.push_back(x);
  traj.u.push_back(s.u);
  traj.v.push_back(s.v);
  traj.e.push_back(s.e);
  for (std::size_t i = 0; i < n_steps; ++i) {
    s = rk4_step(sys, x, s, h);
    x = (i + 1 == n_steps) ? x1 : x0 + h * static_cast<double>(i + 1);
    traj.x.push_back(x);
    traj.u.push_back(s.u);
    traj.v.push_back(s.v);
    traj.e.push_back(s.e);
  }
  return traj;
}

double hamiltonian_drift(const HamiltonianSystem& sys, const Trajectory& traj) {
  if (traj.size() == 0) throw InvalidInputError("hamiltonian_drift: empty trajectory");
  const double h0 = sys.hamiltonian(traj.u.front(), traj.v.front());
  double drift = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    drift = std::max(drift, std::abs(sys.hamiltonian(traj.u[i], traj.v[i]) - h0));
  return drift;
}

ShootingResult shoot_example1(const ShootingOptions& opts) {
  const HamiltonianSystem sys = example1_system();
  // u(1; x*) for the arc launched from (0, sqrt(2/3)) at x*.
  const auto endpoint = [&](double xs) {
    const double len = 1.0 - xs;
    const std::size_t n = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(len * opts.steps_per_unit)));
    const Trajectory t = integrate(sys, 0.0, kVStar, xs, 1.0, n);
    return t.u.back() - 0.5;
  };

  double lo = 1e-6, hi = 1.0 - 1e-6;
  double flo = endpoint(lo), fhi = endpoint(hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw ShootingError("shoot_example1: shooting residual does not bracket a root");
  while (hi - lo > opts.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    ((endpoint(mid) > 0.0) ? lo : hi) = mid;
  }
  const double x_star = 0.5 * (lo + hi);

  ShootingResult res;
  res.x_star = x_star;
  const std::size_t n_arc = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil((1.0 - x_star) * opts.steps_per_unit)));
  const Trajectory arc = integrate(sys, 0.0, kVStar, x_star, 1.0, n_arc);
  // Plateau u = 0 contributes x* * W_bar(0) = x* (envelope value 1 at v = 0).
  res.energy = x_star + arc.e.back();
  res.hamiltonian_drift = hamiltonian_drift(sys, arc);

  // Assemble the full minimizer: flat on [0, x*], then the arc.
  const std::size_t n_flat = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(x_star * opts.steps_per_unit)));
  for (std::size_t i = 0; i < n_flat; ++i) {
    const double x = x_star * static_cast<double>(i) / static_cast<double>(n_flat);
    res.trajectory.x.push_back(x);
    res.trajectory.u.push_back(0.0);
    res.trajectory.v.push_back(0.0);
    res.trajectory.e.push_back(x);  // running energy: W_bar(0) * x
  }
  for (std::size_t i = 0; i < arc.size(); ++i) {
    res.trajectory.x.push_back(arc.x[i]);
    res.trajectory.u.push_back(arc.u[i]);
    res.trajectory.v.push_back(arc.v[i]);
    res.trajectory.e.push_back(x_star + arc.e[i]);
  }
  return res;
}

ShootingResult shoot_example2(const ShootingOptions& opts) {
  const HamiltonianSystem sys = example2_system();
  // Right arc from the plateau edge: (u, v) = (1, -1), u decreasing to 0.
  Trajectory arc;
  const auto [arc_len, end_state] = integrate_to_crossing(
      sys, State{1.0, -1.0, 0.0}, 0.0, 0.0, 2.0, opts.steps_per_unit,
      opts.bisect_tol, &arc);
  if (arc_len >= 1.0)
    throw ShootingError("shoot_example2: arc length >= domain half-width");
  const double x_star = arc_len - 1.0;  // negative

  ShootingResult res;
  res.x_star = x_star;
  res.energy = 2.0 * end_state.e;  // two symmetric arcs; plateau contributes 0
  res.hamiltonian_drift = hamiltonian_drift(sys, arc);

  // Assemble on [-1, 1]: mirrored left arc, plateau at u = 1, right arc.
  // Left arc: u(x) = u_arc(s), v(x) = -v_arc(s) at x = x* - s (reversed).
  for (std::size_t k = arc.size(); k-- > 0;) {
    res.trajectory.x.push_back(x_star - arc.x[k]);
    res.trajectory.u.push_back(arc.u[k]);
    res.trajectory.v.push_back(-arc.v[k]);
    res.trajectory.e.push_back(end_state.e - arc.e[k]);
  }
  const double plateau = -2.0 * x_star;
  const std::size_t n_flat = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(plateau * opts.steps_per_unit)));
  for (std::size_t i = 1; i < n_flat; ++i) {
    const double x =
        x_star + plateau * static_cast<double>(i) / static_cast<double>(n_flat);
    res.trajectory.x.push_back(x);
    res.trajectory.u.push_back(1.0);
    res.trajectory.v.push_back(0.0);
    res.trajectory.e.push_back(end_state.e);
  }
  // Right arc at x = -x* + s.
  for (std::size_t k = 0; k < arc.size(); ++k) {
    res.trajectory.x.push_back(-x_star + arc.x[k]);
    res.trajectory.u.push_back(arc.u[k]);
    res.trajectory.v.push_back(arc.v[k]);
    res.trajectory.e.push_back(end_state.e + arc.e[k]);
  }
  return res;
}

}  // namespace relax
