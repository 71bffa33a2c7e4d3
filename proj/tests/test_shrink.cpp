#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/errors.hpp"
#include "relax/experiments.hpp"
#include "relax/shrink.hpp"

using namespace relax;

namespace {

struct Fixture {
  SampledFunction f;
  Envelope env;
  ShrinkTable table;

  explicit Fixture(const SampledFunction& samples)
      : f(samples), env(build_envelope(f)), table(ShrinkTable::from_envelope(env)) {}
};

double objective(const Envelope& env, double d, double z, double gamma) {
  const double r = d - z;
  return eval_envelope(env, d) + 0.5 * gamma * r * r;
}

/// Fine-grid minimum of the proximal objective over the admissible range
/// [lo, hi] (outside it the envelope is +infinity when the extension slopes
/// are infinite, as for all hulls built here).
double brute_min(const Envelope& env, double z, double gamma, int n = 4000) {
  double best = objective(env, env.lo(), z, gamma);
  for (int k = 1; k <= n; ++k) {
    const double d = env.lo() + (env.hi() - env.lo()) * k / n;
    best = std::min(best, objective(env, d, z, gamma));
  }
  return best;
}

double objective_2d(double dx, double dy, double nx, double ny, double gamma) {
  const double rho = std::hypot(dx, dy);
  const double ex = dx - nx, ey = dy - ny;
  return std::max(rho - 1.0, 0.0) + 0.5 * gamma * (ex * ex + ey * ey);
}

}  // namespace

TEST_CASE("the table mirrors the envelope") {
  const Fixture fx(SampledFunction::tabulate(well_double, -2.0, 2.0, 512));
  CHECK(fx.table.kinks == fx.env.breakpoints);
  CHECK(fx.table.slopes == fx.env.slopes);
  CHECK(fx.table.left_slope == fx.env.left_slope);
  CHECK(fx.table.right_slope == fx.env.right_slope);
}

TEST_CASE("shrink result never loses to a brute-force scan") {
  const Fixture wells[] = {
      Fixture(SampledFunction::tabulate(well_one_sided, 0.0, 3.0, 768)),
      Fixture(SampledFunction::tabulate(well_double, -2.0, 2.0, 1024)),
      Fixture(SampledFunction::tabulate(well_triple, -2.0, 4.0, 1026)),
      Fixture(random_potential(kExample5Seed)),
  };
  SplitMix64 rng(2024);
  for (const Fixture& fx : wells) {
    for (int trial = 0; trial < 200; ++trial) {
      const double span = fx.env.hi() - fx.env.lo();
      const double z = fx.env.lo() - 1.0 + (span + 2.0) * rng.next_double();
      const double gamma = 0.05 + 4.95 * rng.next_double();
      const double d = shrink1d(fx.table, z, gamma);
      CHECK(d >= fx.env.lo());
      CHECK(d <= fx.env.hi());
      CHECK(objective(fx.env, d, z, gamma) <= brute_min(fx.env, z, gamma) + 1e-9);
    }
  }
}

TEST_CASE("shrink is monotone and nonexpansive in z") {
  const Fixture fx(SampledFunction::tabulate(well_triple, -2.0, 4.0, 1026));
  SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const double z1 = -3.0 + 8.0 * rng.next_double();
    const double z2 = z1 + 2.0 * rng.next_double();
    const double gamma = 0.05 + 4.95 * rng.next_double();
    const double d1 = shrink1d(fx.table, z1, gamma);
    const double d2 = shrink1d(fx.table, z2, gamma);
    CHECK(d2 >= d1 - 1e-12);
    CHECK(d2 - d1 <= (z2 - z1) + 1e-12);
  }
}

TEST_CASE("inside a segment the shrink slides by slope over gamma") {
  const Fixture fx(SampledFunction::tabulate(well_one_sided, 0.0, 3.0, 3072));
  const double s = fx.table.slopes.front();  // bridging segment, slope < 0
  const double gamma = 2.0;
  // Choose z so that z - s/gamma lands strictly inside the first segment.
  const double z = 0.5 * fx.table.kinks[1] + s / gamma;
  const double d = shrink1d(fx.table, z, gamma);
  CHECK(d == doctest::Approx(z - s / gamma).epsilon(1e-12));
}

TEST_CASE("at a kink the shrink sticks for a whole range of z") {
  const Fixture fx(SampledFunction::tabulate(well_double, -2.0, 2.0, 4096));
  // Kink at d = 1: slopes jump from 0 (flat span) to the first convex slope.
  const double gamma = 1.5;
  const auto sub = envelope_subdifferential(fx.env, 1.0);
  const double z_lo = 1.0 + sub.first / gamma;
  const double z_hi = 1.0 + sub.second / gamma;
  for (double t : {0.05, 0.35, 0.65, 0.95}) {
    const double z = z_lo + t * (z_hi - z_lo);
    CHECK(shrink1d(fx.table, z, gamma) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("infinite extension slopes clamp to the outermost kinks") {
  // The slide rule d + Wbar'(d)/gamma = z still applies on the outermost
  // interior segments; only z beyond kink + slope/gamma pins the boundary.
  const Fixture fx(SampledFunction::tabulate(well_double, -2.0, 2.0, 512));
  const double gamma = 0.3;
  const double z_hi = fx.table.kinks.back() + fx.table.slopes.back() / gamma;
  const double z_lo = fx.table.kinks.front() + fx.table.slopes.front() / gamma;
  CHECK(shrink1d(fx.table, z_hi + 10.0, gamma) == fx.table.kinks.back());
  CHECK(shrink1d(fx.table, z_lo - 10.0, gamma) == fx.table.kinks.front());
}

TEST_CASE("radial shrink: identity inside the unit disc, zero at the origin") {
  const auto at_origin = shrink2d(0.0, 0.0, 1.0);
  CHECK(at_origin.first == 0.0);
  CHECK(at_origin.second == 0.0);

  const auto inside = shrink2d(0.3, -0.4, 2.0);  // |nu| = 0.5 <= 1
  CHECK(inside.first == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(inside.second == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("radial shrink preserves direction and beats a radial scan") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const double angle = 6.283185307179586 * rng.next_double();
    const double rho = 4.0 * rng.next_double();
    const double gamma = 0.1 + 4.9 * rng.next_double();
    const double nx = rho * std::cos(angle), ny = rho * std::sin(angle);
    const auto [dx, dy] = shrink2d(nx, ny, gamma);

    CHECK(std::abs(dx * ny - dy * nx) <= 1e-10 * std::max(1.0, rho));  // parallel to nu

    double best = objective_2d(0.0, 0.0, nx, ny, gamma);
    const int n = 4000;
    for (int k = 1; k <= n; ++k) {
      const double r = (rho + 1.0) * k / n;
      // Scan along the ray through nu; off-ray candidates are never better.
      const double scale = rho > 0.0 ? r / rho : 0.0;
      best = std::min(best, objective_2d(nx * scale, ny * scale, nx, ny, gamma));
    }
    CHECK(objective_2d(dx, dy, nx, ny, gamma) <= best + 1e-9);
  }
}

TEST_CASE("radial shrink thresholds the radius across the kink at 1") {
  const double gamma = 2.0;
  // Just above the unit circle the result stays pinned at radius 1 until
  // rho exceeds 1 + 1/gamma, then slides inward by 1/gamma.
  const auto pinned = shrink2d(1.2, 0.0, gamma);  // 1 < 1.2 <= 1.5
  CHECK(pinned.first == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(pinned.second == 0.0);

  const auto sliding = shrink2d(3.0, 0.0, gamma);  // rho > 1 + 1/gamma
  CHECK(sliding.first == doctest::Approx(3.0 - 1.0 / gamma).epsilon(1e-13));
}
