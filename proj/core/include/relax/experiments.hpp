#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relax/solver1d.hpp"
#include "relax/solver2d.hpp"

namespace relax {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so tabulated random potentials are bit-identical across
/// standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Potential samplers for the named problems.
double well_one_sided(double v);  // (v^2-1)^2, meaningful for v >= 0
double well_double(double d);     // (d^2-1)^2
double well_triple(double d);     // (d^2-1)^2 ((d-2)^2-1)^2

/// gamma = h = max(dx, 0.01).
double default_step(double dx);

/// Values of a random 64-sample potential on [-2, 2]; uniform in [0, 1).
SampledFunction random_potential(std::uint64_t seed, std::size_t n = 64,
                                 double lo = -2.0, double hi = 2.0);

/// Constant initial fields (0, +1, -1) plus `tracking`, which starts at the
/// target profile g. The flat envelope segment makes the shrink step the
/// identity there, so a start whose gradients all lie inside it (e.g. u = 0
/// under natural boundary conditions) satisfies the termination criterion
/// immediately; tracking seeds gradients outside the flat segment. u = 0 is
/// also a stationary point of the (u^2-g)^2 wells, so those need a nonzero
/// start to move at all.
enum class InitialGuess { zero, plus, minus, tracking };

/// Optional overrides applied on top of an experiment's pinned defaults.
struct Overrides {
  std::optional<double> dx;
  std::optional<double> gamma;
  std::optional<double> h;
  std::optional<double> tol;
  std::optional<double> splitting_a;  // convexity-splitting constant
  std::optional<int> bregman_steps;
  std::optional<int> gs_sweeps;
  std::optional<std::size_t> max_outer;
  std::optional<std::uint64_t> seed;  // example5 potential
  std::optional<InitialGuess> init;
};

/// A fully assembled named 1D problem.
struct Experiment1D {
  std::string name;
  Problem1D problem;
  SolverConfig config;
  std::vector<double> initial_u;
  std::uint64_t seed = 0;       // nonzero only when the potential is random
  bool has_oracle = false;      // examples 1 and 2 have shooting oracles
};

/// Default seed for example 5's random potential (fixed for reproducibility):
/// this realization's minimizer oscillates on exactly two intervals,
/// (-0.672, -0.379) and (0.355, 0.641), each about 0.29 wide.
inline constexpr std::uint64_t kExample5Seed = 110;

Experiment1D make_example1(const Overrides& o = {});
Experiment1D make_example2(const Overrides& o = {});
Experiment1D make_example3(const Overrides& o = {});
Experiment1D make_example4(const Overrides& o = {});
Experiment1D make_example5(const Overrides& o = {});

/// Dispatch by name ("example1".."example5").
Experiment1D make_experiment(const std::string& name, const Overrides& o = {});

struct Experiment2D {
  std::string name;
  Grid2D grid;
  Solver2DConfig config;
  Array2D initial_u;
  /// Solve in reflected coordinates and conjugate the result back; selects
  /// the reflection partner of the principal minimizer (init `minus`).
  bool reflected_frame = false;
};

/// The 2D problem. init `plus` (default) starts from u0 = xy and finds the
/// principal minimizer; `minus` runs the identical solver in reflected
/// coordinates, yielding the partner related by u2(x,y) = -u1(x,-y); `zero`
/// starts from a zero interior. Default cap 500000 sweeps (the principal
/// run meets tol = 1e-10 after about 335000).
Experiment2D make_example6(const Overrides& o = {});

struct Run2DResult {
  Solve2DReport report;
  State2D state;
};

/// Solves the 2D experiment: a plain solve from initial_u or, when
/// reflected_frame is set, the same solve on reflection-conjugated data
/// with the final state conjugated back (see reflect_negate_state).
Run2DResult run_example6(const Experiment2D& e);

}  // namespace relax
