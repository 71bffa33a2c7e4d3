#include "relax/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relax/errors.hpp"

namespace relax::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
}

json interval_json(const OscillationInterval& iv) {
  return json{{"lo", iv.lo}, {"hi", iv.hi}, {"interval", iv.interval},
              {"cells", iv.cells}};
}

}  // namespace

std::string solution_csv(const Grid1D& grid, const std::vector<double>& u,
                         const std::vector<double>& d,
                         const std::vector<double>& b) {
  if (u.size() != grid.nodes() || d.size() != grid.n || b.size() != grid.n)
    throw InvalidInputError("solution_csv: size mismatch");
  std::string out = "x,u,ux,d,b\n";
  const double inv = 1.0 / grid.dx();
  for (std::size_t i = 0; i <= grid.n; ++i) {
    if (i < grid.n) {
      append_row(out, {format_double(grid.node(i)), format_double(u[i]),
                       format_double((u[i + 1] - u[i]) * inv),
                       format_double(d[i]), format_double(b[i])});
    } else {
      append_row(out, {format_double(grid.node(i)), format_double(u[i]), "",
                       "", ""});
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<double>& energy,
                            const std::vector<double>& constraint,
                            std::size_t stride) {
  if (energy.size() != constraint.size())
    throw InvalidInputError("diagnostics_csv: history size mismatch");
  if (stride == 0) throw InvalidInputError("diagnostics_csv: stride must be positive");
  std::string out = "n,energy,constraint_error\n";
  for (std::size_t n = 0; n < energy.size(); ++n) {
    if (n % stride != 0 && n + 1 != energy.size()) continue;
    append_row(out, {std::to_string(n), format_double(energy[n]),
                     format_double(constraint[n])});
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj,
                           const HamiltonianSystem& sys) {
  std::string out = "x,u,v,H\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    append_row(out, {format_double(traj.x[i]), format_double(traj.u[i]),
                     format_double(traj.v[i]),
                     format_double(sys.hamiltonian(traj.u[i], traj.v[i]))});
  return out;
}

std::string field_csv(const Grid2D& grid, const Array2D& u) {
  std::string out = "x,y,u\n";
  for (std::size_t i = 0; i < u.nx; ++i)
    for (std::size_t j = 0; j < u.ny; ++j)
      append_row(out, {format_double(grid.node(i)), format_double(grid.node(j)),
                       format_double(u.at(i, j))});
  return out;
}

std::string sweep_csv(const std::vector<std::pair<double, double>>& rows) {
  std::string out = "dx,energy\n";
  for (const auto& [dx, e] : rows)
    append_row(out, {format_double(dx), format_double(e)});
  return out;
}

std::string measure_json(const MeasureField& field) {
  json nodes = json::array();
  for (const NodeMeasure& m : field.nodes) {
    json atoms = json::array();
    for (const Atom& a : m.atoms)
      atoms.push_back(json{{"loc", a.location}, {"w", a.weight}});
    nodes.push_back(
        json{{"x", m.x}, {"interval", m.interval}, {"atoms", atoms}});
  }
  return json{{"nodes", nodes}}.dump(2) + "\n";
}

std::string report_json(const ReportData& r) {
  json intervals = json::array();
  for (const OscillationInterval& iv : r.oscillation_intervals)
    intervals.push_back(interval_json(iv));
  json j{{"final_energy", r.final_energy},
         {"final_constraint_sq", r.final_constraint_sq},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"oscillation_intervals", intervals}};
  if (r.oracle_energy) j["oracle_energy"] = *r.oracle_energy;
  if (r.seed) j["seed"] = *r.seed;
  return j.dump(2) + "\n";
}

namespace {

json slope_json(double s) {
  if (std::isinf(s)) return s > 0 ? json("inf") : json("-inf");
  return json(s);
}

double slope_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw InvalidInputError("envelope_from_json: bad slope string '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

std::string envelope_json(const Envelope& env) {
  json j{{"breakpoints", env.breakpoints},
         {"values", env.values},
         {"slopes", env.slopes},
         {"left_slope", slope_json(env.left_slope)},
         {"right_slope", slope_json(env.right_slope)}};
  return j.dump(2) + "\n";
}

Envelope envelope_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("envelope_from_json: ") + e.what());
  }
  Envelope env;
  try {
    env.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    env.values = j.at("values").get<std::vector<double>>();
    env.slopes = j.at("slopes").get<std::vector<double>>();
    env.left_slope = slope_from_json(j.at("left_slope"));
    env.right_slope = slope_from_json(j.at("right_slope"));
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("envelope_from_json: ") + e.what());
  }
  env.validate();
  return env;
}

std::string contour_json(const Grid2D& grid, const Array2D& u) {
  std::vector<double> xs(grid.nodes());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = grid.node(k);
  json rows = json::array();
  for (std::size_t i = 0; i < u.nx; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < u.ny; ++j) row.push_back(u.at(i, j));
    rows.push_back(row);
  }
  return json{{"x", xs}, {"y", xs}, {"u", rows}}.dump() + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace relax::io
