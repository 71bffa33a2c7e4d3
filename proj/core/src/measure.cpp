#include "relax/measure.hpp"

#include <algorithm>
#include <cmath>

namespace relax {

namespace {
constexpr double kDomainSlack = 1e-9;
}

double measure_mean(const NodeMeasure& m) {
  double sum = 0.0;
  for (const Atom& a : m.atoms) sum += a.weight * a.location;
  return sum;
}

double measure_energy(const NodeMeasure& m, const SampledFunction& f) {
  double sum = 0.0;
  for (const Atom& a : m.atoms) sum += a.weight * f.interpolate(a.location);
  return sum;
}

NodeMeasure measure_at(const Envelope& env, const SampledFunction& f,
                       const std::vector<NonContactInterval>& intervals,
                       double ux, double gap_tol, double x) {
  const double slack = kDomainSlack * (f.hi() - f.lo());
  if (ux < f.lo() - slack || ux > f.hi() + slack)
    throw DomainError("measure_at: gradient outside tabulated domain");
  ux = std::clamp(ux, f.lo(), f.hi());

  NodeMeasure m;
  m.x = x;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const NonContactInterval& iv = intervals[k];
    if (!(ux > iv.lo && ux < iv.hi)) continue;
    if (f.interpolate(ux) - eval_envelope(env, ux) <= gap_tol) break;
    const double wl = (iv.hi - ux) / (iv.hi - iv.lo);
    m.atoms = {{iv.lo, wl}, {iv.hi, 1.0 - wl}};
    m.interval = static_cast<int>(k);
    return m;
  }
  m.atoms = {{ux, 1.0}};
  return m;
}

MeasureField measure_field(const Grid1D& grid, const Envelope& env,
                           const SampledFunction& f,
                           const std::vector<double>& u, double gap_tol) {
  if (u.size() != grid.nodes())
    throw InvalidInputError("measure_field: u size mismatch");
  const std::vector<NonContactInterval> intervals =
      non_contact_intervals(env, f, gap_tol);
  const double inv = 1.0 / grid.dx();
  MeasureField field;
  field.nodes.reserve(grid.n);
  for (std::size_t c = 0; c < grid.n; ++c) {
    const double ux = (u[c + 1] - u[c]) * inv;
    field.nodes.push_back(
        measure_at(env, f, intervals, ux, gap_tol, grid.mid(c)));
  }
  return field;
}

std::vector<OscillationInterval> oscillation_report(const Grid1D& grid,
                                                    const MeasureField& field,
                                                    std::size_t min_run) {
  if (field.nodes.size() != grid.n)
    throw InvalidInputError("oscillation_report: field/grid size mismatch");
  std::vector<OscillationInterval> out;
  std::size_t c = 0;
  while (c < grid.n) {
    const int iv = field.nodes[c].interval;
    if (iv < 0) {
      ++c;
      continue;
    }
    std::size_t end = c + 1;
    while (end < grid.n && field.nodes[end].interval == iv) ++end;
    if (end - c >= min_run)
      out.push_back({grid.node(c), grid.node(end), iv, end - c});
    c = end;
  }
  return out;
}

}  // namespace relax
