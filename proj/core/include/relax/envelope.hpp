#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "relax/errors.hpp"

namespace relax {

/// A function tabulated on strictly increasing abscissae with finite values.
struct SampledFunction {
  std::vector<double> x;
  std::vector<double> v;

  /// Throws InvalidInputError unless sizes match, n >= 2, x strictly
  /// increasing and every value finite.
  void validate() const;

  /// Tabulate an analytic function at n+1 uniform samples on [lo, hi].
  static SampledFunction tabulate(const std::function<double(double)>& f,
                                  double lo, double hi, std::size_t n);

  double lo() const { return x.front(); }
  double hi() const { return x.back(); }

  /// Piecewise-linear interpolation. Queries outside [lo, hi] beyond a
  /// relative slack of 1e-9 raise DomainError; inside the slack they clamp.
  double interpolate(double q) const;

  double max_abs_value() const;
};

/// Piecewise-linear convex lower envelope: breakpoints d_0 < ... < d_M with
/// values and strictly increasing interior slopes s_1 < ... < s_M. Outside
/// [d_0, d_M] the envelope continues with slope left_slope / right_slope;
/// an infinite extension slope means the corresponding proximal map clamps
/// at the boundary breakpoint.
struct Envelope {
  std::vector<double> breakpoints;
  std::vector<double> values;
  std::vector<double> slopes;  ///< size breakpoints.size() - 1
  double left_slope;           ///< may be -infinity
  double right_slope;          ///< may be +infinity

  std::size_t segments() const { return slopes.size(); }
  double lo() const { return breakpoints.front(); }
  double hi() const { return breakpoints.back(); }

  /// Throws InvalidInputError if the convexity/ordering invariants fail.
  void validate() const;
};

/// Lower convex hull of the samples (monotone chain). Collinear interior
/// points are dropped using a cross-product tolerance of 1e-12 scaled by the
/// value and domain ranges, so an exactly-flat run of samples yields a single
/// segment. Extension slopes default to -inf/+inf (clamping proximal map);
/// pass finite overrides to change the behaviour outside the table.
Envelope build_envelope(const SampledFunction& f,
                        double left_slope = -std::numeric_limits<double>::infinity(),
                        double right_slope = std::numeric_limits<double>::infinity());

/// Envelope value at d. Inside [d_0, d_M]: linear interpolation (exact at
/// breakpoints). Outside: affine extension with the extension slope when it
/// is finite, otherwise with the outermost interior slope (a finite convex
/// minorant used for energy reporting on transient states).
double eval_envelope(const Envelope& env, double d);

/// Subdifferential bounds of the envelope at d: [s_i, s_{i+1}] at breakpoints,
/// degenerate {s_i} inside a segment. Used by tests.
std::pair<double, double> envelope_subdifferential(const Envelope& env, double d);

/// Open interval between consecutive hull breakpoints over which the sampled
/// function sits strictly above its envelope (W - Wbar > tol somewhere
/// inside). `seg` indexes the envelope segment.
struct NonContactInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t seg = 0;
};

/// Default gap tolerance: 1e-6 * max |W| over the samples.
double default_gap_tol(const SampledFunction& f);

/// Maximal open intervals (between consecutive hull breakpoints) where the
/// samples exceed the envelope by more than tol. Endpoints are exactly hull
/// breakpoints.
std::vector<NonContactInterval> non_contact_intervals(const Envelope& env,
                                                      const SampledFunction& f,
                                                      double tol);

}  // namespace relax
