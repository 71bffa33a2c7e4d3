#include <doctest.h>

#include <cmath>

#include "relax/errors.hpp"
#include "relax/oracle.hpp"

using namespace relax;

namespace {

HamiltonianSystem harmonic_oscillator() {
  HamiltonianSystem sys;
  sys.du = [](double, double, double v) { return v; };
  sys.dv = [](double, double u, double) { return -u; };
  sys.hamiltonian = [](double u, double v) { return u * u + v * v; };
  sys.lagrangian = [](double u, double v) { return v * v - u * u; };
  return sys;
}

}  // namespace

TEST_CASE("RK4 integrates the harmonic oscillator at fourth order") {
  const HamiltonianSystem sys = harmonic_oscillator();
  const double period = 6.283185307179586;

  const Trajectory coarse = integrate(sys, 1.0, 0.0, 0.0, period, 100);
  const Trajectory fine = integrate(sys, 1.0, 0.0, 0.0, period, 200);
  REQUIRE(coarse.size() == 101);
  REQUIRE(fine.size() == 201);

  const double err_coarse = std::abs(coarse.u.back() - 1.0);
  const double err_fine = std::abs(fine.u.back() - 1.0);
  CHECK(err_coarse < 1e-6);
  CHECK(err_fine < err_coarse / 12.0);  // ~16x per halving for a 4th-order method

  CHECK(hamiltonian_drift(sys, fine) < 1e-8);
  CHECK(integrate(sys, 1.0, 0.0, 0.0, 1.0, 10).x.front() == 0.0);
  CHECK_THROWS_AS(integrate(sys, 1.0, 0.0, 0.0, 1.0, 0), InvalidInputError);
}

TEST_CASE("the energy channel accumulates the Lagrangian") {
  const HamiltonianSystem sys = harmonic_oscillator();
  // u = cos x, v = -sin x: integral of v^2 - u^2 over [0, pi] is 0.
  const Trajectory traj = integrate(sys, 1.0, 0.0, 0.0, 3.141592653589793, 2000);
  CHECK(traj.e.front() == 0.0);
  CHECK(traj.e.back() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("free-boundary construction, one-sided problem (frozen reference)") {
  const ShootingResult res = shoot_example1();
  CHECK(res.x_star == doctest::Approx(0.403859).epsilon(2e-6));
  CHECK(res.energy == doctest::Approx(0.505445).epsilon(2e-6));
  CHECK(res.hamiltonian_drift <= 1e-6);

  // Assembled minimizer: u(0) = 0, u(1) = 1/2, nondecreasing.
  REQUIRE(res.trajectory.size() > 2);
  CHECK(res.trajectory.x.front() == doctest::Approx(0.0));
  CHECK(res.trajectory.x.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.trajectory.u.front() == doctest::Approx(0.0));
  CHECK(res.trajectory.u.back() == doctest::Approx(0.5).epsilon(1e-6));
  for (std::size_t i = 1; i < res.trajectory.size(); ++i) {
    CHECK(res.trajectory.x[i] >= res.trajectory.x[i - 1]);
    CHECK(res.trajectory.u[i] >= res.trajectory.u[i - 1] - 1e-12);
  }

  // On the arc (v >= sqrt(2/3)) the conserved Hamiltonian equals -1.
  const HamiltonianSystem sys = example1_system();
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    if (res.trajectory.v[i] > std::sqrt(2.0 / 3.0) + 1e-6)
      CHECK(sys.hamiltonian(res.trajectory.u[i], res.trajectory.v[i]) ==
            doctest::Approx(-1.0).epsilon(1e-6));
  }
}

TEST_CASE("free-boundary construction, symmetric problem (frozen reference)") {
  const ShootingResult res = shoot_example2();
  CHECK(res.x_star == doctest::Approx(-0.052880).epsilon(2e-5));
  CHECK(res.energy == doctest::Approx(1.024079).epsilon(2e-6));
  CHECK(res.hamiltonian_drift <= 1e-6);

  REQUIRE(res.trajectory.size() > 2);
  CHECK(res.trajectory.x.front() == doctest::Approx(-1.0));
  CHECK(res.trajectory.x.back() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.trajectory.u.front() == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(res.trajectory.u.back() == doctest::Approx(0.0).epsilon(1e-8));

  double u_max = 0.0;
  for (double u : res.trajectory.u) u_max = std::max(u_max, u);
  CHECK(u_max == doctest::Approx(1.0).epsilon(1e-6));  // plateau at the well

  // On the arcs (|v| > 1) the conserved Hamiltonian equals 0.
  const HamiltonianSystem sys = example2_system();
  for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
    if (std::abs(res.trajectory.v[i]) > 1.0 + 1e-6)
      CHECK(sys.hamiltonian(res.trajectory.u[i], res.trajectory.v[i]) ==
            doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("refining the integrator does not move the answers") {
  ShootingOptions fine;
  fine.steps_per_unit = 20000;
  const ShootingResult base1 = shoot_example1();
  const ShootingResult ref1 = shoot_example1(fine);
  CHECK(std::abs(ref1.x_star - base1.x_star) <= 1e-6);
  CHECK(std::abs(ref1.energy - base1.energy) <= 1e-6);

  const ShootingResult base2 = shoot_example2();
  const ShootingResult ref2 = shoot_example2(fine);
  CHECK(std::abs(ref2.x_star - base2.x_star) <= 1e-6);
  CHECK(std::abs(ref2.energy - base2.energy) <= 1e-6);
}

TEST_CASE("singular right-hand sides are reported with their location") {
  const HamiltonianSystem sys = example1_system();
  // v' = u / (6 v^2 - 2) blows up at v = 1/sqrt(3).
  CHECK_THROWS_AS(integrate(sys, 0.5, std::sqrt(1.0 / 3.0), 0.0, 1.0, 100),
                  SingularityError);
}

TEST_CASE("determinism: repeated shooting is bitwise identical") {
  const ShootingResult a = shoot_example1();
  const ShootingResult b = shoot_example1();
  CHECK(a.x_star == b.x_star);
  CHECK(a.energy == b.energy);
  CHECK(a.trajectory.u == b.trajectory.u);
}
