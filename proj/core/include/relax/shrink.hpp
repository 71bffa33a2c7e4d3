#pragma once

#include <utility>
#include <vector>

#include "relax/envelope.hpp"

namespace relax {

/// Lookup table backing the piecewise shrink operator: the envelope's kinks
/// and slopes. Extension slopes may be infinite, in which case the shrink
/// clamps at the first/last kink.
struct ShrinkTable {
  std::vector<double> kinks;   ///< envelope breakpoints d_0 < ... < d_M
  std::vector<double> slopes;  ///< segment slopes s_1 < ... < s_M
  double left_slope;           ///< s_0, may be -infinity
  double right_slope;          ///< s_{M+1}, may be +infinity

  static ShrinkTable from_envelope(const Envelope& env);
};

/// Proximal map of the piecewise-linear convex envelope:
///   shrink(z) = argmin_d  Wbar(d) + (gamma/2) (d - z)^2 .
/// On segment i the solution slides as z - s_i/gamma; for z in the closed
/// interval [d_i + s_i/gamma, d_i + s_{i+1}/gamma] it sticks at the kink d_i.
/// Infinite extension slopes clamp to d_0 / d_M. O(log M) via binary search.
double shrink1d(const ShrinkTable& t, double z, double gamma);

/// Proximal map of the radial gradient penalty (rho - 1)_+ in 2D:
///   argmin_d (|d| - 1)_+ + (gamma/2) |d - nu|^2
/// = nu * max(1 - 1/(gamma rho), min(1, 1/rho)),  rho = |nu|;
/// returns (0, 0) for rho ~ 0. Requires gamma > 0.
std::pair<double, double> shrink2d(double nu_x, double nu_y, double gamma);

}  // namespace relax
