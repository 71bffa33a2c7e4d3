#include "relax/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relax {

namespace {

constexpr double kDomainSlack = 1e-9;  // relative clamp window outside tables

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

}  // namespace

void SampledFunction::validate() const {
  if (x.size() != v.size())
    throw InvalidInputError("SampledFunction: x/v size mismatch");
  if (x.size() < 2)
    throw InvalidInputError("SampledFunction: need at least 2 samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
      throw InvalidInputError("SampledFunction: non-finite sample at index " +
                              std::to_string(i));
    if (i > 0 && !(x[i] > x[i - 1]))
      throw InvalidInputError(
          "SampledFunction: abscissae not strictly increasing at index " +
          std::to_string(i));
  }
}

SampledFunction SampledFunction::tabulate(const std::function<double(double)>& f,
                                          double lo, double hi, std::size_t n) {
  if (!(lo < hi) || n < 1)
    throw InvalidInputError("SampledFunction::tabulate: need lo < hi, n >= 1");
  SampledFunction s;
  s.x.resize(n + 1);
  s.v.resize(n + 1);
  const double dx = (hi - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    // Pin the last abscissa so the domain endpoint is exact.
    s.x[i] = (i == n) ? hi : lo + dx * static_cast<double>(i);
    s.v[i] = f(s.x[i]);
  }
  s.validate();
  return s;
}

double SampledFunction::interpolate(double q) const {
  const double slack = kDomainSlack * (hi() - lo());
  if (q < lo() - slack || q > hi() + slack)
    throw DomainError("SampledFunction::interpolate: query outside domain");
  const double qc = std::clamp(q, lo(), hi());
  const auto it = std::upper_bound(x.begin(), x.end(), qc);
  const std::size_t j = std::min<std::size_t>(
      x.size() - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                        1, it - x.begin())));
  const double t = (qc - x[j - 1]) / (x[j] - x[j - 1]);
  return v[j - 1] + t * (v[j] - v[j - 1]);
}

double SampledFunction::max_abs_value() const {
  double m = 0.0;
  for (double val : v) m = std::max(m, std::abs(val));
  return m;
}

void Envelope::validate() const {
  const std::size_t m = breakpoints.size();
  if (m < 2) throw InvalidInputError("Envelope: need >= 2 breakpoints");
  if (values.size() != m || slopes.size() != m - 1)
    throw InvalidInputError("Envelope: size mismatch");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(breakpoints[i]) || !std::isfinite(values[i]))
      throw InvalidInputError("Envelope: non-finite breakpoint data");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw InvalidInputError("Envelope: breakpoints not strictly increasing");
  }
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
    if (!(slopes[i] < slopes[i + 1]))
      throw InvalidInputError("Envelope: slopes not strictly increasing");
  if (std::isnan(left_slope) || std::isnan(right_slope))
    throw InvalidInputError("Envelope: NaN extension slope");
  if (left_slope > slopes.front())
    throw InvalidInputError("Envelope: left extension slope exceeds s_1");
  if (right_slope < slopes.back())
    throw InvalidInputError("Envelope: right extension slope below s_M");
}

Envelope build_envelope(const SampledFunction& f, double left_slope,
                        double right_slope) {
  f.validate();
  const std::size_t n = f.x.size();
  // Cross-product collinearity tolerance scaled to the data. A flat run of
  // exactly-equal values gives cross == 0 and collapses to one segment.
  const double vscale = std::max(f.max_abs_value(), 1e-300);
  const double xscale = f.hi() - f.lo();
  const double tol = 1e-12 * vscale * xscale;

  std::vector<std::size_t> hull;
  hull.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull[hull.size() - 1];
      // Keep strictly convex (left) turns only; pop collinear points.
      if (cross(f.x[a], f.v[a], f.x[b], f.v[b], f.x[i], f.v[i]) <= tol)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  Envelope env;
  env.breakpoints.reserve(hull.size());
  env.values.reserve(hull.size());
  for (std::size_t idx : hull) {
    env.breakpoints.push_back(f.x[idx]);
    env.values.push_back(f.v[idx]);
  }
  env.slopes.resize(env.breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < env.breakpoints.size(); ++i)
    env.slopes[i] = (env.values[i + 1] - env.values[i]) /
                    (env.breakpoints[i + 1] - env.breakpoints[i]);
  env.left_slope = left_slope;
  env.right_slope = right_slope;
  env.validate();
  return env;
}

double eval_envelope(const Envelope& env, double d) {
  if (d <= env.lo()) {
    const double s = std::isfinite(env.left_slope) ? env.left_slope : env.slopes.front();
    return env.values.front() + s * (d - env.lo());
  }
  if (d >= env.hi()) {
    const double s = std::isfinite(env.right_slope) ? env.right_slope : env.slopes.back();
    return env.values.back() + s * (d - env.hi());
  }
  const auto it = std::upper_bound(env.breakpoints.begin(), env.breakpoints.end(), d);
  const std::size_t j = static_cast<std::size_t>(it - env.breakpoints.begin());
  return env.values[j - 1] + env.slopes[j - 1] * (d - env.breakpoints[j - 1]);
}

std::pair<double, double> envelope_subdifferential(const Envelope& env, double d) {
  const double slack = kDomainSlack * (env.hi() - env.lo());
  if (d < env.lo() - slack || d > env.hi() + slack)
    throw DomainError("envelope_subdifferential: point outside domain");
  const double dc = std::clamp(d, env.lo(), env.hi());
  // Locate the breakpoint interval containing dc.
  const auto it = std::lower_bound(env.breakpoints.begin(), env.breakpoints.end(), dc);
  const std::size_t j = static_cast<std::size_t>(it - env.breakpoints.begin());
  if (j < env.breakpoints.size() && env.breakpoints[j] == dc) {
    const double lo = (j == 0) ? env.left_slope : env.slopes[j - 1];
    const double hi = (j == env.slopes.size()) ? env.right_slope : env.slopes[j];
    return {lo, hi};
  }
  return {env.slopes[j - 1], env.slopes[j - 1]};
}

double default_gap_tol(const SampledFunction& f) {
  return 1e-6 * f.max_abs_value();
}

std::vector<NonContactInterval> non_contact_intervals(const Envelope& env,
                                                      const SampledFunction& f,
                                                      double tol) {
  f.validate();
  std::vector<NonContactInterval> out;
  std::size_t seg = 0;
  for (; seg < env.segments(); ++seg) {
    const double lo = env.breakpoints[seg];
    const double hi = env.breakpoints[seg + 1];
    // Scan samples strictly inside this segment for a gap above tol.
    const auto first = std::upper_bound(f.x.begin(), f.x.end(), lo);
    bool open = false;
    for (auto it = first; it != f.x.end() && *it < hi; ++it) {
      const std::size_t i = static_cast<std::size_t>(it - f.x.begin());
      const double gap = f.v[i] - eval_envelope(env, f.x[i]);
      if (gap > tol) {
        open = true;
        break;
      }
    }
    if (open) out.push_back({lo, hi, seg});
  }
  return out;
}

}  // namespace relax
