#include "relax/solver2d.hpp"

#include <algorithm>
#include <cmath>

#include "relax/shrink.hpp"

namespace relax {

Array2D initial_field_xy(const Grid2D& grid) {
  const std::size_t m = grid.nodes();
  Array2D u(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) u.at(i, j) = grid.node(i) * grid.node(j);
  return u;
}

Array2D initial_field_xy_negated(const Grid2D& grid) {
  Array2D u = initial_field_xy(grid);
  const std::size_t n = grid.n;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) u.at(i, j) = -u.at(i, j);
  return u;
}

Array2D reflect_negate_field(const Grid2D& grid, const Array2D& u) {
  const std::size_t m = grid.nodes();
  if (u.nx != m || u.ny != m)
    throw InvalidInputError("reflect_negate_field: field size mismatch");
  const std::size_t n = grid.n;
  Array2D v(m, m);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) v.at(i, j) = -u.at(i, n - j);
  return v;
}

State2D reflect_negate_state(const State2D& s) {
  const std::size_t n = s.grid.n;
  State2D t;
  t.grid = s.grid;
  t.u = reflect_negate_field(s.grid, s.u);
  // x-edge (i, j) reflects to the x-edge on row n-j with a sign flip; the
  // y-edge (i, j) to the y-edge (i, n-1-j) with the sign preserved, because
  // reflection also swaps the edge's endpoints.
  t.dx = Array2D(n, n + 1);
  t.bx = Array2D(n, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      t.dx.at(i, j) = -s.dx.at(i, n - j);
      t.bx.at(i, j) = -s.bx.at(i, n - j);
    }
  t.dy = Array2D(n + 1, n);
  t.by = Array2D(n + 1, n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t.dy.at(i, j) = s.dy.at(i, n - 1 - j);
      t.by.at(i, j) = s.by.at(i, n - 1 - j);
    }
  return t;
}

State2D init_state_2d(const Grid2D& grid, const Array2D& u0) {
  const std::size_t m = grid.nodes();
  if (u0.nx != m || u0.ny != m)
    throw InvalidInputError("init_state_2d: field size mismatch");
  State2D s;
  s.grid = grid;
  s.u = u0;
  const std::size_t n = grid.n;
  for (std::size_t k = 0; k <= n; ++k) {
    s.u.at(0, k) = grid.node(0) * grid.node(k);
    s.u.at(n, k) = grid.node(n) * grid.node(k);
    s.u.at(k, 0) = grid.node(k) * grid.node(0);
    s.u.at(k, n) = grid.node(k) * grid.node(n);
  }
  const double inv = 1.0 / grid.delta();
  s.dx = Array2D(n, m);
  s.dy = Array2D(m, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      s.dx.at(i, j) = (s.u.at(i + 1, j) - s.u.at(i, j)) * inv;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.dy.at(i, j) = (s.u.at(i, j + 1) - s.u.at(i, j)) * inv;
  s.bx = Array2D(n, m);
  s.by = Array2D(m, n);
  return s;
}

void update_u_2d(State2D& s, const Solver2DConfig& cfg) {
  const std::size_t n = s.grid.n;
  const double delta = s.grid.delta();
  const double h = cfg.h;
  const double gamma = cfg.gamma;
  const double a = cfg.a;
  const double denom = 1.0 + 4.0 * gamma * h / (delta * delta) + a * h;
  const double couple = gamma * h / (delta * delta) / denom;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      const double uo = s.u.at(i, j);
      const double expl = uo + h * ((1.0 + a) * uo - uo * uo * uo);
      const double div =
          delta * (s.dx.at(i - 1, j) - s.dx.at(i, j) + s.dy.at(i, j - 1) -
                   s.dy.at(i, j) - s.bx.at(i - 1, j) + s.bx.at(i, j) -
                   s.by.at(i, j - 1) + s.by.at(i, j));
      s.u.at(i, j) = expl / denom +
                     couple * (s.u.at(i - 1, j) + s.u.at(i, j - 1) +
                               s.u.at(i + 1, j) + s.u.at(i, j + 1) + div);
    }
  }
}

void update_d_2d(State2D& s, const Solver2DConfig& cfg) {
  const std::size_t n = s.grid.n;
  const double inv = 1.0 / s.grid.delta();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double nx = (s.u.at(i + 1, j) - s.u.at(i, j)) * inv + s.bx.at(i, j);
      const double ny = (s.u.at(i, j + 1) - s.u.at(i, j)) * inv + s.by.at(i, j);
      const auto [dx, dy] = shrink2d(nx, ny, cfg.gamma);
      s.dx.at(i, j) = dx;
      s.dy.at(i, j) = dy;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    s.dx.at(i, n) = (s.u.at(i + 1, n) - s.u.at(i, n)) * inv + s.bx.at(i, n);
  for (std::size_t j = 0; j < n; ++j)
    s.dy.at(n, j) = (s.u.at(n, j + 1) - s.u.at(n, j)) * inv + s.by.at(n, j);
}

void update_b_2d(State2D& s) {
  const std::size_t n = s.grid.n;
  const double inv = 1.0 / s.grid.delta();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      s.bx.at(i, j) += (s.u.at(i + 1, j) - s.u.at(i, j)) * inv - s.dx.at(i, j);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.by.at(i, j) += (s.u.at(i, j + 1) - s.u.at(i, j)) * inv - s.dy.at(i, j);
}

double constraint_sq_2d(const State2D& s) {
  const std::size_t n = s.grid.n;
  const double inv = 1.0 / s.grid.delta();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      const double r = s.dx.at(i, j) - (s.u.at(i + 1, j) - s.u.at(i, j)) * inv;
      sum += r * r;
    }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double r = s.dy.at(i, j) - (s.u.at(i, j + 1) - s.u.at(i, j)) * inv;
      sum += r * r;
    }
  return sum;
}

double energy_2d(const Grid2D& grid, const Array2D& u) {
  const std::size_t m = grid.nodes();
  if (u.nx != m || u.ny != m) throw InvalidInputError("energy_2d: size mismatch");
  const std::size_t n = grid.n;
  const double delta = grid.delta();
  const double inv = 1.0 / delta;
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u00 = u.at(i, j), u10 = u.at(i + 1, j);
      const double u01 = u.at(i, j + 1), u11 = u.at(i + 1, j + 1);
      const double gx = 0.5 * ((u10 - u00) + (u11 - u01)) * inv;
      const double gy = 0.5 * ((u01 - u00) + (u11 - u10)) * inv;
      const double rho = std::hypot(gx, gy);
      const double wbar = std::max(0.0, rho - 1.0);
      auto ac = [](double w) {
        const double r = 1.0 - w * w;
        return 0.25 * r * r;
      };
      e += delta * delta *
           (wbar + 0.25 * (ac(u00) + ac(u10) + ac(u01) + ac(u11)));
    }
  }
  return e;
}

Solve2DReport solve_2d(State2D& s, const Solver2DConfig& cfg) {
  Solve2DReport rep;
  if (cfg.record_history) {
    rep.energy_history.push_back(energy_2d(s.grid, s.u));
    rep.constraint_history.push_back(constraint_sq_2d(s));
  }
  for (std::size_t it = 0; it < cfg.max_steps; ++it) {
    update_u_2d(s, cfg);
    update_d_2d(s, cfg);
    update_b_2d(s);
    const double c = constraint_sq_2d(s);
    if (!std::isfinite(c)) throw Error("solve_2d: iteration diverged");
    ++rep.iterations;
    if (cfg.record_history) {
      rep.energy_history.push_back(energy_2d(s.grid, s.u));
      rep.constraint_history.push_back(c);
    }
    if (c <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final_energy = energy_2d(s.grid, s.u);
  rep.final_constraint_sq = constraint_sq_2d(s);
  return rep;
}

}  // namespace relax
