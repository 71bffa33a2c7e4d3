#include "relax/solver1d.hpp"

#include <algorithm>
#include <cmath>

namespace relax {

double Potential::value(double g_value, double u) const {
  switch (form) {
    case PotentialForm::quadratic_tracking: {
      const double r = u - g_value;
      return r * r;
    }
    case PotentialForm::double_well:
    case PotentialForm::tracking_well: {
      const double r = u * u - g_value;
      return r * r;
    }
  }
  return 0.0;
}

double Potential::implicit_curvature() const {
  return form == PotentialForm::quadratic_tracking ? 2.0 : 4.0 * a;
}

double Potential::explicit_term(double g_value, double anchor) const {
  if (form == PotentialForm::quadratic_tracking) return 2.0 * g_value;
  // Split (u^2 - g)^2 = 2 a u^2 + R(u), R(u) = u^4 - 2 (g + a) u^2 + g^2;
  // the linearized remainder contributes -R'(U_n) to the right-hand side.
  return 4.0 * (g_value + a) * anchor - 4.0 * anchor * anchor * anchor;
}

void Problem1D::validate() const {
  w.validate();
  envelope.validate();
  if (potential.g.size() != grid.nodes())
    throw InvalidInputError("Problem1D: potential.g must be node-tabulated");
  if ((potential.form != PotentialForm::quadratic_tracking) && !(potential.a > 0.0))
    throw InvalidInputError("Problem1D: well potentials need splitting a > 0");
}

SolverState init_state(const Problem1D& p, const std::vector<double>& u_init) {
  if (u_init.size() != p.grid.nodes())
    throw InvalidInputError("init_state: u_init size mismatch");
  SolverState s;
  s.u = u_init;
  if (p.bc.kind == BoundaryConditions::Kind::dirichlet) {
    s.u.front() = p.bc.left;
    s.u.back() = p.bc.right;
  }
  s.un = s.u;
  s.d.assign(p.grid.n, 0.0);
  s.b.assign(p.grid.n, 0.0);
  return s;
}

std::vector<double> forward_diff(const Grid1D& grid, const std::vector<double>& u) {
  std::vector<double> ux(grid.n);
  const double inv = 1.0 / grid.dx();
  for (std::size_t c = 0; c < grid.n; ++c) ux[c] = (u[c + 1] - u[c]) * inv;
  return ux;
}

double constraint_sq(const Problem1D& p, const SolverState& s) {
  const double inv = 1.0 / p.grid.dx();
  double sum = 0.0;
  for (std::size_t c = 0; c < p.grid.n; ++c) {
    const double r = s.d[c] - (s.u[c + 1] - s.u[c]) * inv;
    sum += r * r;
  }
  return sum;
}

namespace {

/// Per-node right-hand side pieces shared by the GS sweeps and the direct
/// solve: rhs_i = U_n,i/h + explicit_term_i + (gamma/dx)(d/b divergence).
struct NodeSystem {
  double alpha;         // gamma / dx^2
  double beta;          // gamma / dx
  double diag_interior; // 1/h + 2 alpha + cV
  double diag_boundary; // 1/h +   alpha + cV (natural boundaries)
  std::vector<double> rhs;
};

NodeSystem assemble(const Problem1D& p, const SolverState& s, double gamma,
                    double h) {
  const std::size_t n = p.grid.n;
  const double dx = p.grid.dx();
  NodeSystem sys;
  sys.alpha = gamma / (dx * dx);
  sys.beta = gamma / dx;
  const double cv = p.potential.implicit_curvature();
  sys.diag_interior = 1.0 / h + 2.0 * sys.alpha + cv;
  sys.diag_boundary = 1.0 / h + sys.alpha + cv;
  sys.rhs.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double r = s.un[i] / h +
               p.potential.explicit_term(p.potential.g[i], s.un[i]);
    if (i > 0) r += sys.beta * (s.d[i - 1] - s.b[i - 1]);
    if (i < n) r -= sys.beta * (s.d[i] - s.b[i]);
    sys.rhs[i] = r;
  }
  return sys;
}

}  // namespace

void gauss_seidel_u_step(const Problem1D& p, SolverState& s, double gamma,
                         double h, int sweeps) {
  const std::size_t n = p.grid.n;
  const NodeSystem sys = assemble(p, s, gamma, h);
  const bool natural = p.bc.kind == BoundaryConditions::Kind::natural;
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    if (natural)
      s.u[0] = (sys.rhs[0] + sys.alpha * s.u[1]) / sys.diag_boundary;
    for (std::size_t i = 1; i < n; ++i)
      s.u[i] = (sys.rhs[i] + sys.alpha * (s.u[i - 1] + s.u[i + 1])) /
               sys.diag_interior;
    if (natural)
      s.u[n] = (sys.rhs[n] + sys.alpha * s.u[n - 1]) / sys.diag_boundary;
  }
}

void exact_u_step(const Problem1D& p, SolverState& s, double gamma, double h) {
  const std::size_t n = p.grid.n;
  const NodeSystem sys = assemble(p, s, gamma, h);
  const bool natural = p.bc.kind == BoundaryConditions::Kind::natural;
  const std::size_t lo = natural ? 0 : 1;
  const std::size_t hi = natural ? n : n - 1;  // inclusive
  if (hi < lo) return;
  const std::size_t m = hi - lo + 1;

  // Thomas algorithm on the tridiagonal system over the free nodes.
  std::vector<double> cp(m), dp(m);
  auto diag = [&](std::size_t row) {
    const std::size_t i = lo + row;
    return (natural && (i == 0 || i == n)) ? sys.diag_boundary
                                           : sys.diag_interior;
  };
  auto rhs = [&](std::size_t row) {
    const std::size_t i = lo + row;
    double r = sys.rhs[i];
    if (!natural && i == 1) r += sys.alpha * s.u[0];
    if (!natural && i == n - 1) r += sys.alpha * s.u[n];
    return r;
  };
  cp[0] = -sys.alpha / diag(0);
  dp[0] = rhs(0) / diag(0);
  for (std::size_t r = 1; r < m; ++r) {
    const double denom = diag(r) + sys.alpha * cp[r - 1];
    cp[r] = -sys.alpha / denom;
    dp[r] = (rhs(r) + sys.alpha * dp[r - 1]) / denom;
  }
  s.u[lo + m - 1] = dp[m - 1];
  for (std::size_t r = m - 1; r-- > 0;)
    s.u[lo + r] = dp[r] - cp[r] * s.u[lo + r + 1];
}

void shrink_d_step(const Problem1D& p, SolverState& s, double gamma) {
  const double inv = 1.0 / p.grid.dx();
  for (std::size_t c = 0; c < p.grid.n; ++c) {
    const double z = (s.u[c + 1] - s.u[c]) * inv + s.b[c];
    s.d[c] = shrink1d(p.table, z, gamma);
  }
}

void update_b(const Problem1D& p, SolverState& s) {
  const double inv = 1.0 / p.grid.dx();
  for (std::size_t c = 0; c < p.grid.n; ++c)
    s.b[c] += (s.u[c + 1] - s.u[c]) * inv - s.d[c];
}

void bregman_inner(const Problem1D& p, SolverState& s, const SolverConfig& cfg) {
  for (int k = 0; k < cfg.bregman_steps; ++k) {
    if (cfg.exact_u)
      exact_u_step(p, s, cfg.gamma, cfg.h);
    else
      gauss_seidel_u_step(p, s, cfg.gamma, cfg.h, cfg.gs_sweeps);
    shrink_d_step(p, s, cfg.gamma);
    update_b(p, s);
  }
}

void bregman_inner_joint(const Problem1D& p, SolverState& s, double gamma,
                         double h, int bregman_steps, double fix_tol,
                         std::size_t max_alt) {
  std::vector<double> prev;
  for (int k = 0; k < bregman_steps; ++k) {
    for (std::size_t it = 0; it < max_alt; ++it) {
      prev = s.u;
      exact_u_step(p, s, gamma, h);
      shrink_d_step(p, s, gamma);
      double du = 0.0, scale = 1.0;
      for (std::size_t i = 0; i < s.u.size(); ++i) {
        du = std::max(du, std::abs(s.u[i] - prev[i]));
        scale = std::max(scale, std::abs(s.u[i]));
      }
      if (du <= fix_tol * scale) break;
    }
    update_b(p, s);
  }
}

double compute_energy(const Problem1D& p, const std::vector<double>& u) {
  if (u.size() != p.grid.nodes())
    throw InvalidInputError("compute_energy: u size mismatch");
  const double dx = p.grid.dx();
  const double inv = 1.0 / dx;
  double e = 0.0;
  for (std::size_t c = 0; c < p.grid.n; ++c) {
    const double ux = (u[c + 1] - u[c]) * inv;
    const double umid = 0.5 * (u[c] + u[c + 1]);
    const double gmid = 0.5 * (p.potential.g[c] + p.potential.g[c + 1]);
    e += dx * (eval_envelope(p.envelope, ux) + p.potential.value(gmid, umid));
  }
  return e;
}

double compute_energy_trapz(const Problem1D& p, const std::vector<double>& u) {
  if (u.size() != p.grid.nodes())
    throw InvalidInputError("compute_energy_trapz: u size mismatch");
  const double dx = p.grid.dx();
  const double inv = 1.0 / dx;
  double e = 0.0;
  for (std::size_t c = 0; c < p.grid.n; ++c) {
    const double ux = (u[c + 1] - u[c]) * inv;
    const double umid = 0.5 * (u[c] + u[c + 1]);
    const double gmid = 0.5 * (p.potential.g[c] + p.potential.g[c + 1]);
    const double weight = (c == 0 || c + 1 == p.grid.n) ? 0.5 : 1.0;
    e += dx * (weight * eval_envelope(p.envelope, ux) +
               p.potential.value(gmid, umid));
  }
  return e;
}

double diagnostic_energy(const Problem1D& p, const SolverState& s,
                         const std::vector<double>& anchor, double h) {
  const double dx = p.grid.dx();
  double e = 0.0;
  for (std::size_t c = 0; c < p.grid.n; ++c)
    e += dx * eval_envelope(p.envelope, s.d[c]);
  for (std::size_t i = 0; i < p.grid.nodes(); ++i) {
    const double gv = p.potential.g[i];
    const double u = s.u[i];
    const double w = anchor[i];
    double v;
    if (p.potential.form == PotentialForm::quadratic_tracking) {
      v = p.potential.value(gv, u);
    } else {
      // V_+(u) + R(anchor) + R'(anchor) (u - anchor), the linearized split.
      const double a = p.potential.a;
      const double rw = w * w * w * w - 2.0 * (gv + a) * w * w + gv * gv;
      const double rpw = 4.0 * w * w * w - 4.0 * (gv + a) * w;
      v = 2.0 * a * u * u + rw + rpw * (u - w);
    }
    const double pr = u - w;
    e += dx * (v + pr * pr / (2.0 * h));
  }
  return e;
}

double diagnostic_h(const Problem1D& p, const SolverState& s, double gamma) {
  const double dx = p.grid.dx();
  const double inv = 1.0 / dx;
  double sum = 0.0;
  for (std::size_t c = 0; c < p.grid.n; ++c) {
    const double r = s.d[c] - (s.u[c + 1] - s.u[c]) * inv;
    sum += r * r;
  }
  return 0.5 * gamma * dx * sum;
}

SolveReport solve(const Problem1D& p, SolverState& s, const SolverConfig& cfg) {
  p.validate();
  SolveReport rep;
  if (cfg.record_history) {
    rep.energy_history.push_back(compute_energy_trapz(p, s.u));
    rep.constraint_history.push_back(constraint_sq(p, s));
  }
  for (std::size_t n = 0; n < cfg.max_outer; ++n) {
    bregman_inner(p, s, cfg);
    s.un = s.u;
    const double c = constraint_sq(p, s);
    ++rep.iterations;
    if (cfg.record_history) {
      rep.energy_history.push_back(compute_energy_trapz(p, s.u));
      rep.constraint_history.push_back(c);
    }
    if (c <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final_energy = compute_energy_trapz(p, s.u);
  rep.final_constraint_sq = constraint_sq(p, s);
  return rep;
}

}  // namespace relax
