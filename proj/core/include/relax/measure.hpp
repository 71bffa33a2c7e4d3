#pragma once

#include <cstddef>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/errors.hpp"
#include "relax/grid.hpp"

namespace relax {

/// One Dirac atom of a parametrized measure.
struct Atom {
  double location = 0.0;
  double weight = 1.0;
};

/// The measure attached to a single spatial location. `interval` is the index
/// of the non-contact interval that generated a two-atom measure, or -1 when
/// the measure is a single Dirac.
struct NodeMeasure {
  double x = 0.0;
  std::vector<Atom> atoms;
  int interval = -1;
};

/// A field of measures sampled at the cell midpoints of a grid.
struct MeasureField {
  std::vector<NodeMeasure> nodes;
};

/// A maximal run of adjacent cells whose measures share a non-contact
/// interval; the solution oscillates on [lo, hi].
struct OscillationInterval {
  double lo = 0.0;
  double hi = 0.0;
  int interval = -1;
  std::size_t cells = 0;
};

/// First moment sum w_k * location_k.
double measure_mean(const NodeMeasure& m);

/// Energy sum w_k * f(location_k) against a sampled integrand.
double measure_energy(const NodeMeasure& m, const SampledFunction& f);

/// Recovers the measure compatible with gradient value `ux`.
///
/// If `ux` lies strictly inside a non-contact interval (d_l, d_r) of the
/// envelope and the gap f(ux) - envelope(ux) exceeds `gap_tol`, the measure is
/// the two-point combination w_l delta_{d_l} + w_r delta_{d_r} with
/// w_l = (d_r - ux) / (d_r - d_l); otherwise it is the Dirac delta_{ux}.
/// Values outside the tabulated domain beyond a small relative slack raise
/// DomainError.
NodeMeasure measure_at(const Envelope& env, const SampledFunction& f,
                       const std::vector<NonContactInterval>& intervals,
                       double ux, double gap_tol, double x = 0.0);

/// Evaluates measures at every cell midpoint from the nodal field `u`.
MeasureField measure_field(const Grid1D& grid, const Envelope& env,
                           const SampledFunction& f,
                           const std::vector<double>& u, double gap_tol);

/// Groups adjacent two-atom cells that share a non-contact interval. Runs
/// shorter than `min_run` cells are discarded.
std::vector<OscillationInterval> oscillation_report(const Grid1D& grid,
                                                    const MeasureField& field,
                                                    std::size_t min_run = 1);

}  // namespace relax
