#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/errors.hpp"
#include "relax/experiments.hpp"

using namespace relax;

namespace {

double analytic_double_well_envelope(double d) {
  const double a = std::abs(d);
  if (a <= 1.0) return 0.0;
  const double r = d * d - 1.0;
  return r * r;
}

}  // namespace

TEST_CASE("tabulate samples uniformly and pins the endpoints") {
  const auto f = SampledFunction::tabulate([](double x) { return x * x; }, -1.0, 2.0, 6);
  REQUIRE(f.x.size() == 7);
  CHECK(f.x.front() == -1.0);
  CHECK(f.x.back() == 2.0);  // last abscissa pinned exactly, no drift
  CHECK(f.v[2] == doctest::Approx(0.0));
  CHECK(f.v[6] == doctest::Approx(4.0));
  CHECK(f.lo() == -1.0);
  CHECK(f.hi() == 2.0);
}

TEST_CASE("sample validation rejects malformed tables") {
  SampledFunction f;
  f.x = {0.0, 1.0};
  f.v = {0.0};
  CHECK_THROWS_AS(f.validate(), InvalidInputError);  // size mismatch

  f.v = {0.0, 1.0};
  CHECK_NOTHROW(f.validate());

  f.x = {1.0, 1.0};
  CHECK_THROWS_AS(f.validate(), InvalidInputError);  // not strictly increasing

  f.x = {0.0, 1.0};
  f.v = {0.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(f.validate(), InvalidInputError);  // non-finite value

  f.x = {0.0};
  f.v = {0.0};
  CHECK_THROWS_AS(f.validate(), InvalidInputError);  // fewer than two samples
}

TEST_CASE("interpolation is exact at nodes, linear between, clamped only inside slack") {
  const auto f = SampledFunction::tabulate([](double x) { return 2.0 * x + 1.0; }, 0.0, 1.0, 4);
  CHECK(f.interpolate(0.25) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(f.interpolate(0.375) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(f.interpolate(1.0) == 3.0);
  CHECK(f.interpolate(1.0 + 1e-12) == doctest::Approx(3.0));  // inside slack: clamps
  CHECK_THROWS_AS(f.interpolate(1.5), DomainError);
  CHECK_THROWS_AS(f.interpolate(-0.5), DomainError);
}

TEST_CASE("envelope of a convex sample set reproduces the samples") {
  const auto f = SampledFunction::tabulate([](double x) { return x * x; }, -1.0, 1.0, 64);
  const Envelope env = build_envelope(f);
  env.validate();
  CHECK(env.segments() == 64);  // strictly convex: every sample is a hull vertex
  for (double q : {-0.93, -0.41, 0.0, 0.17, 0.85})
    CHECK(eval_envelope(env, q) == doctest::Approx(f.interpolate(q)).epsilon(1e-14));
}

TEST_CASE("symmetric quartic well: envelope matches the closed form") {
  const auto f = SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  const Envelope env = build_envelope(f);
  env.validate();

  SUBCASE("pointwise error stays below 1e-4") {
    double max_err = 0.0;
    for (int k = 0; k <= 40000; ++k) {
      const double d = -2.0 + 4.0 * k / 40000.0;
      max_err = std::max(max_err, std::abs(eval_envelope(env, d) -
                                           analytic_double_well_envelope(d)));
    }
    CHECK(max_err <= 1e-4);
  }

  SUBCASE("the flat span collapses to one exact segment") {
    // The minima sit on sample nodes, so the hull has breakpoints at exactly
    // -1 and 1 with value 0 and a single zero-slope segment between them.
    bool found = false;
    for (std::size_t i = 0; i < env.segments(); ++i) {
      if (env.breakpoints[i] == -1.0 && env.breakpoints[i + 1] == 1.0) {
        found = true;
        CHECK(env.values[i] == 0.0);
        CHECK(env.values[i + 1] == 0.0);
        CHECK(env.slopes[i] == 0.0);
      }
    }
    CHECK(found);
  }

  SUBCASE("envelope never exceeds the samples and slopes increase") {
    for (std::size_t i = 0; i < f.x.size(); ++i)
      CHECK(eval_envelope(env, f.x[i]) <= f.v[i] + 1e-12);
    for (std::size_t i = 1; i < env.slopes.size(); ++i)
      CHECK(env.slopes[i] > env.slopes[i - 1]);
  }
}

TEST_CASE("one-sided well: the bridging segment is tangent from the origin") {
  const auto f = SampledFunction::tabulate(well_one_sided, 0.0, 3.0, 3072);
  const Envelope env = build_envelope(f);
  // Tangency at d = sqrt(2/3) with slope -(4/3) sqrt(2/3).
  const double expected_slope = -(4.0 / 3.0) * std::sqrt(2.0 / 3.0);
  CHECK(env.breakpoints.front() == 0.0);
  CHECK(env.values.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(env.slopes.front() == doctest::Approx(expected_slope).epsilon(1e-3));
  // The tangent point: the first breakpoint after 0 sits near sqrt(2/3).
  CHECK(env.breakpoints[1] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(2e-3));
}

TEST_CASE("triple well: flat hull spans all three minima as one segment") {
  const auto f = SampledFunction::tabulate(well_triple, -2.0, 4.0, 4098);
  const Envelope env = build_envelope(f);
  bool found = false;
  for (std::size_t i = 0; i < env.segments(); ++i) {
    if (env.breakpoints[i] == -1.0 && env.breakpoints[i + 1] == 3.0) {
      found = true;
      CHECK(env.slopes[i] == 0.0);
      CHECK(env.values[i] == 0.0);
    }
  }
  CHECK(found);  // the collinear interior vertex at d = 1 must be dropped

  const auto intervals = non_contact_intervals(env, f, default_gap_tol(f));
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].lo == -1.0);
  CHECK(intervals[0].hi == 3.0);
}

TEST_CASE("random potential: envelope is a convex minorant touching the samples") {
  const SampledFunction f = random_potential(kExample5Seed);
  const Envelope env = build_envelope(f);
  env.validate();
  const double scale = f.max_abs_value();
  std::size_t touches = 0;
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    const double e = eval_envelope(env, f.x[i]);
    CHECK(e <= f.v[i] + 1e-12 * scale);
    if (std::abs(e - f.v[i]) <= 1e-12 * scale) ++touches;
  }
  CHECK(touches == env.breakpoints.size());  // contact exactly at hull vertices
  CHECK(env.breakpoints.front() == f.x.front());
  CHECK(env.breakpoints.back() == f.x.back());
}

TEST_CASE("non-contact intervals appear exactly where samples leave the hull") {
  // w(d) = d^4 - d^2 has minima at +-1/sqrt(2); between them the hull is a
  // flat chord strictly below the hump at 0.
  const auto f = SampledFunction::tabulate([](double d) { return d * d * (d * d - 1.0); },
                                           -1.0, 1.0, 1000);
  const Envelope env = build_envelope(f);
  const auto intervals = non_contact_intervals(env, f, default_gap_tol(f));
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].lo == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(2e-3));
  CHECK(intervals[0].hi == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(2e-3));

  // A convex sample set has no non-contact intervals at all.
  const auto g = SampledFunction::tabulate([](double d) { return std::abs(d); }, -1.0, 1.0, 100);
  const Envelope genv = build_envelope(g);
  CHECK(non_contact_intervals(genv, g, default_gap_tol(g)).empty());
}

TEST_CASE("subdifferential brackets: slope inside a segment, kink range at a vertex") {
  const auto f = SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  const Envelope env = build_envelope(f);

  const auto inside = envelope_subdifferential(env, 0.0);
  CHECK(inside.first == 0.0);
  CHECK(inside.second == 0.0);

  const auto at_kink = envelope_subdifferential(env, 1.0);
  CHECK(at_kink.first == 0.0);
  CHECK(at_kink.second > 0.0);
  CHECK(at_kink.first <= at_kink.second);
}

TEST_CASE("default gap tolerance scales with the sample magnitude") {
  const auto f = SampledFunction::tabulate(well_double, -2.0, 2.0, 4096);
  CHECK(default_gap_tol(f) == doctest::Approx(9e-6).epsilon(1e-10));
}

TEST_CASE("extension behaviour outside the table") {
  const auto f = SampledFunction::tabulate(well_double, -2.0, 2.0, 256);
  const Envelope env = build_envelope(f);  // infinite extension slopes
  CHECK(std::isinf(env.left_slope));
  CHECK(std::isinf(env.right_slope));
  // eval_envelope extends with the outermost interior slope (finite minorant).
  const double expected = env.values.back() + env.slopes.back() * 0.5;
  CHECK(eval_envelope(env, 2.5) == doctest::Approx(expected).epsilon(1e-12));

  const Envelope affine = build_envelope(f, -40.0, 40.0);
  CHECK(affine.left_slope == -40.0);
  CHECK(eval_envelope(affine, 2.5) ==
        doctest::Approx(affine.values.back() + 40.0 * 0.5).epsilon(1e-12));
}
