#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "relax/envelope.hpp"
#include "relax/errors.hpp"
#include "relax/experiments.hpp"
#include "relax/io.hpp"
#include "relax/measure.hpp"
#include "relax/oracle.hpp"
#include "relax/solver2d.hpp"

using namespace relax;
using nlohmann::json;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("format_double round-trips doubles exactly") {
  const double values[] = {0.0,         1.0,          0.1,    1.0 / 3.0,
                           6.02e23,     -0.505445,    1e-17,  0.03125,
                           -123456.789, 2.2250738585072014e-308};
  for (double v : values) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(2.0) == "2");
  CHECK(io::format_double(-1.0) == "-1");
}

TEST_CASE("solution_csv lays out node rows with cell columns") {
  const Grid1D grid(0.0, 1.0, 2);
  const std::vector<double> u = {0.0, 0.5, 1.0};
  const std::vector<double> d = {0.25, 0.75};
  const std::vector<double> b = {0.0, -1.0};
  CHECK(io::solution_csv(grid, u, d, b) ==
        "x,u,ux,d,b\n"
        "0,0,1,0.25,0\n"
        "0.5,0.5,1,0.75,-1\n"
        "1,1,,,\n");
  CHECK_THROWS_AS(io::solution_csv(grid, u, {0.25}, b), InvalidInputError);
  CHECK_THROWS_AS(io::solution_csv(grid, {0.0, 1.0}, d, b), InvalidInputError);
}

TEST_CASE("diagnostics_csv strides long histories but keeps the last row") {
  const std::vector<double> e = {3.0, 2.0, 1.0, 0.5, 0.25};
  const std::vector<double> c = {4.0, 3.0, 2.0, 1.0, 0.0};
  const std::string full = io::diagnostics_csv(e, c);
  CHECK(count_lines(full) == 6);
  CHECK(full.substr(0, full.find('\n')) == "n,energy,constraint_error");
  CHECK(full.find("\n0,3,4\n") != std::string::npos);

  const std::string every2 = io::diagnostics_csv(e, c, 2);
  CHECK(count_lines(every2) == 4);  // header + n = 0, 2, 4
  CHECK(every2.find("\n1,") == std::string::npos);
  CHECK(every2.find("\n4,0.25,0\n") != std::string::npos);

  const std::string every3 = io::diagnostics_csv(e, c, 3);
  CHECK(count_lines(every3) == 4);  // header + n = 0, 3 and the final n = 4
  CHECK(every3.find("\n4,") != std::string::npos);

  CHECK_THROWS_AS(io::diagnostics_csv(e, c, 0), InvalidInputError);
  CHECK_THROWS_AS(io::diagnostics_csv(e, {1.0}, 1), InvalidInputError);
}

TEST_CASE("trajectory_csv tabulates the closed-form Hamiltonian") {
  Trajectory t;
  t.x = {0.0, 1.0};
  t.u = {1.0, 2.0};
  t.v = {2.0, 3.0};
  t.e = {0.0, 0.0};
  HamiltonianSystem sys;
  sys.hamiltonian = [](double u, double v) { return u + v; };
  CHECK(io::trajectory_csv(t, sys) == "x,u,v,H\n0,1,2,3\n1,2,3,5\n");
}

TEST_CASE("field_csv emits one row per node, row-major") {
  const Grid2D grid(-1.0, 1.0, 4);
  const Array2D u = initial_field_xy(grid);
  const std::string csv = io::field_csv(grid, u);
  CHECK(count_lines(csv) == 1 + 25);
  CHECK(csv.rfind("x,y,u\n-1,-1,1\n", 0) == 0);
  CHECK(csv.find("\n1,1,1\n") != std::string::npos);
}

TEST_CASE("sweep_csv of no cases is just the header") {
  CHECK(io::sweep_csv({}) == "dx,energy\n");
  CHECK(io::sweep_csv({{0.03125, 0.5}}) == "dx,energy\n0.03125,0.5\n");
}

TEST_CASE("measure_json serializes atoms and interval tags") {
  MeasureField field;
  NodeMeasure dirac;
  dirac.x = 0.25;
  dirac.atoms = {{1.5, 1.0}};
  NodeMeasure pair;
  pair.x = 0.75;
  pair.atoms = {{-1.0, 0.25}, {1.0, 0.75}};
  pair.interval = 0;
  field.nodes = {dirac, pair};

  const json j = json::parse(io::measure_json(field));
  REQUIRE(j.at("nodes").size() == 2);
  CHECK(j["nodes"][0]["x"].get<double>() == 0.25);
  CHECK(j["nodes"][0]["interval"].get<int>() == -1);
  REQUIRE(j["nodes"][0]["atoms"].size() == 1);
  CHECK(j["nodes"][0]["atoms"][0]["loc"].get<double>() == 1.5);
  CHECK(j["nodes"][1]["atoms"][1]["w"].get<double>() == 0.75);
  CHECK(j["nodes"][1]["interval"].get<int>() == 0);
}

TEST_CASE("report_json includes optional fields only when set") {
  io::ReportData r;
  r.final_energy = 0.5;
  r.final_constraint_sq = 1e-13;
  r.iterations = 886;
  r.converged = true;
  const json plain = json::parse(io::report_json(r));
  CHECK(plain.at("final_energy").get<double>() == 0.5);
  CHECK(plain.at("iterations").get<std::size_t>() == 886);
  CHECK(plain.at("converged").get<bool>());
  CHECK(!plain.contains("oracle_energy"));
  CHECK(!plain.contains("seed"));
  CHECK(plain.at("oscillation_intervals").empty());

  r.oracle_energy = 0.505445;
  r.seed = 110;
  r.oscillation_intervals = {{-0.5, 0.5, 0, 32}};
  const json rich = json::parse(io::report_json(r));
  CHECK(rich.at("oracle_energy").get<double>() == 0.505445);
  CHECK(rich.at("seed").get<std::uint64_t>() == 110);
  REQUIRE(rich.at("oscillation_intervals").size() == 1);
  CHECK(rich["oscillation_intervals"][0]["lo"].get<double>() == -0.5);
  CHECK(rich["oscillation_intervals"][0]["cells"].get<std::size_t>() == 32);
}

TEST_CASE("envelope_json round-trips bit-exactly, including infinities") {
  const SampledFunction f =
      SampledFunction::tabulate(well_double, -2.0, 2.0, 128);
  const Envelope env = build_envelope(f);
  const Envelope back = io::envelope_from_json(io::envelope_json(env));
  CHECK(back.breakpoints == env.breakpoints);
  CHECK(back.values == env.values);
  CHECK(back.slopes == env.slopes);
  CHECK(std::isinf(back.left_slope));
  CHECK(back.left_slope < 0);
  CHECK(std::isinf(back.right_slope));
  CHECK(back.right_slope > 0);

  const Envelope finite = build_envelope(f, -40.0, 40.0);
  const Envelope fb = io::envelope_from_json(io::envelope_json(finite));
  CHECK(fb.left_slope == -40.0);
  CHECK(fb.right_slope == 40.0);

  CHECK_THROWS_AS(io::envelope_from_json("not json"), InvalidInputError);
  CHECK_THROWS_AS(io::envelope_from_json("{\"breakpoints\": [0, 1]}"),
                  InvalidInputError);
}

TEST_CASE("contour_json lays the field out as u[i][j]") {
  const Grid2D grid(-1.0, 1.0, 4);
  const Array2D u = initial_field_xy(grid);
  const json j = json::parse(io::contour_json(grid, u));
  REQUIRE(j.at("x").size() == 5);
  REQUIRE(j.at("y").size() == 5);
  CHECK(j["x"][0].get<double>() == -1.0);
  CHECK(j["x"][4].get<double>() == 1.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(j["u"][i][k].get<double>() == u.at(i, k));
}

TEST_CASE("write_file and read_file round-trip bytes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "relax_io_test";
  fs::create_directories(dir);
  const std::string path = (dir / "blob.csv").string();
  const std::string content = "a,b\n1,2\n\nlast line no newline";
  io::write_file(path, content);
  CHECK(io::read_file(path) == content);
  io::write_file(path, "shorter\n");  // truncates
  CHECK(io::read_file(path) == "shorter\n");
  CHECK_THROWS_AS(io::read_file((dir / "missing.csv").string()), Error);
  fs::remove_all(dir);
}
