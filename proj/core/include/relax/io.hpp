#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relax/envelope.hpp"
#include "relax/grid.hpp"
#include "relax/measure.hpp"
#include "relax/oracle.hpp"
#include "relax/solver2d.hpp"

namespace relax::io {

/// Shortest exact decimal form of a double ("%.17g"-class round trip).
std::string format_double(double v);

/// CSV with header "x,u,ux,d,b"; one row per node. ux, d, b are cell
/// quantities, so the last row leaves those columns empty.
std::string solution_csv(const Grid1D& grid, const std::vector<double>& u,
                         const std::vector<double>& d,
                         const std::vector<double>& b);

/// CSV with header "n,energy,constraint_error"; row 0 is the initial state.
/// With stride > 1 only every stride-th row is emitted (n keeps its true
/// value) plus the final row, keeping long histories plottable but compact.
std::string diagnostics_csv(const std::vector<double>& energy,
                            const std::vector<double>& constraint,
                            std::size_t stride = 1);

/// CSV with header "x,u,v,H" for a shooting trajectory.
std::string trajectory_csv(const Trajectory& traj, const HamiltonianSystem& sys);

/// CSV with header "x,y,u", row-major over nodes.
std::string field_csv(const Grid2D& grid, const Array2D& u);

/// CSV with header "dx,energy"; one row per sweep case.
std::string sweep_csv(const std::vector<std::pair<double, double>>& rows);

/// {"nodes": [{"x":…, "interval":…, "atoms":[{"loc":…, "w":…}]}…]}
std::string measure_json(const MeasureField& field);

struct ReportData {
  double final_energy = 0.0;
  double final_constraint_sq = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::optional<double> oracle_energy;
  std::optional<std::uint64_t> seed;
  std::vector<OscillationInterval> oscillation_intervals;
};

std::string report_json(const ReportData& r);

/// Envelope serialization; infinite extension slopes map to "inf"/"-inf".
std::string envelope_json(const Envelope& env);
Envelope envelope_from_json(const std::string& text);

/// {"x":[…], "y":[…], "u":[[…]…]} with u[i][j] at (x[i], y[j]).
std::string contour_json(const Grid2D& grid, const Array2D& u);

/// Whole-file helpers; write_file creates/truncates atomically enough for
/// single-writer use and throws relax::Error on failure.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace relax::io
