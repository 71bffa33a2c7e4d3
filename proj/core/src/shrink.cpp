#include "relax/shrink.hpp"

#include <cmath>

namespace relax {

ShrinkTable ShrinkTable::from_envelope(const Envelope& env) {
  env.validate();
  return ShrinkTable{env.breakpoints, env.slopes, env.left_slope,
                     env.right_slope};
}

double shrink1d(const ShrinkTable& t, double z, double gamma) {
  if (!(gamma > 0.0)) throw InvalidInputError("shrink1d: gamma must be > 0");
  const std::size_t m = t.kinks.size();  // kinks 0..m-1
  if (m == 0 || t.slopes.size() + 1 != m)
    throw InvalidInputError("shrink1d: malformed table");

  // Slope to the left of kink i (slope_at(0) = left extension slope) and to
  // the right of kink i (slope_at(i+1)); both may be infinite.
  const auto slope_at = [&](std::size_t j) -> double {
    if (j == 0) return t.left_slope;
    if (j == m) return t.right_slope;
    return t.slopes[j - 1];
  };
  // Upper z-threshold of kink i: the shrink sticks at kink i for
  // z in [k_i + s_i/gamma, k_i + s_{i+1}/gamma].
  const auto upper = [&](std::size_t i) { return t.kinks[i] + slope_at(i + 1) / gamma; };
  const auto lower = [&](std::size_t i) { return t.kinks[i] + slope_at(i) / gamma; };

  if (z > upper(m - 1)) return z - t.right_slope / gamma;  // right extension

  // Binary search for the smallest kink index with z <= upper(i).
  std::size_t lo = 0, hi = m - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (z <= upper(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (z >= lower(lo)) return t.kinks[lo];       // stick at the kink
  if (lo == 0) return z - t.left_slope / gamma;  // left extension (finite slope)
  return z - t.slopes[lo - 1] / gamma;           // slide on segment lo
}

std::pair<double, double> shrink2d(double nu_x, double nu_y, double gamma) {
  if (!(gamma > 0.0)) throw InvalidInputError("shrink2d: gamma must be > 0");
  const double rho = std::hypot(nu_x, nu_y);
  if (rho < 1e-300) return {0.0, 0.0};
  const double scale =
      std::max(1.0 - 1.0 / (gamma * rho), std::min(1.0, 1.0 / rho));
  return {scale * nu_x, scale * nu_y};
}

}  // namespace relax
