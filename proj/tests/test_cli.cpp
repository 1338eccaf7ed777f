#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <torsionlab/io.hpp>
#include <torsionlab/spaces.hpp>
#include <torsionlab/topology.hpp>

#include "../tools/cli.hpp"
#include "helpers.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace torsionlab;
using testlab::Matrix;

namespace {
constexpr double kPi = testlab::kPi;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"torsionlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Minimal CSV cell splitter: honours double-quoted cells and "" escapes.
std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() / "torsionlab-cli-test";
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string file(const std::string& name, const std::string& text) const {
    auto path = (dir_ / name).string();
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

std::string two_term_c3_text() {
  ComplexFile f;
  Matrix d(1, 1);
  d << 3.0;
  f.complex = make_complex({1, 1}, {d}, "");
  return write_complex_text(f);
}

std::string circle_file_text(double theta) {
  auto [k, rho] = circle_model(3, theta);
  ComplexFile f;
  f.simplices = k;
  if (theta != 0.0) f.cocycle = rho;
  f.complex = boundary_matrices(k);
  return write_complex_text(f);
}
}  // namespace

TEST_CASE("torsion of a one-by-one complex prints its entry") {
  TempDir tmp;
  auto path = tmp.file("c3.json", two_term_c3_text());
  auto r = invoke({"torsion", path});
  CHECK(r.code == 0);
  CHECK(r.out == "3.0\n");
  CHECK(r.err.empty());

  auto lap = invoke({"torsion", path, "--method", "laplacian"});
  CHECK(lap.code == 0);
  CHECK(lap.out == "3.0\n");
}

TEST_CASE("torsion twists by the cocycle in the file") {
  TempDir tmp;
  double theta = 2.0 * kPi / 7.0;
  auto path = tmp.file("circle.json", circle_file_text(theta));
  auto r = invoke({"torsion", path});
  REQUIRE(r.code == 0);
  double expected = 4.0 * std::pow(std::sin(theta / 2.0), 2.0);
  CHECK(r.out == cli::format_real(expected) + "\n");
  CHECK(std::abs(std::stod(r.out) - 0.7530204) < 1e-6);

  auto lap = invoke({"torsion", path, "--method", "laplacian"});
  CHECK(lap.code == 0);
  CHECK(std::abs(std::stod(lap.out) - expected) < 1e-9);
}

TEST_CASE("untwisted torsion uses the homology basis from the file") {
  TempDir tmp;
  auto path = tmp.file("circle.json", circle_file_text(0.0));
  auto harmonic_run = invoke({"torsion", path});
  REQUIRE(harmonic_run.code == 0);
  double harmonic_tau = std::stod(harmonic_run.out);

  // same complex with the degree-zero column doubled: tau doubles
  auto f = parse_complex_text(circle_file_text(0.0));
  HomologyBasis h = harmonic_basis(f.complex);
  h.basis[0] *= 2.0;
  f.homology = h;
  auto scaled_path = tmp.file("scaled.json", write_complex_text(f));
  auto scaled_run = invoke({"torsion", scaled_path});
  REQUIRE(scaled_run.code == 0);
  CHECK(std::abs(std::stod(scaled_run.out) - 2.0 * harmonic_tau) <
        1e-9 * harmonic_tau);
}

TEST_CASE("laplacian method refuses homology at exit code 2") {
  TempDir tmp;
  auto path = tmp.file("circle.json", circle_file_text(0.0));
  auto r = invoke({"torsion", path, "--method", "laplacian"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("file problems exit with the domain code") {
  TempDir tmp;
  auto r = invoke({"torsion", tmp.path("absent.json")});
  CHECK(r.code == 2);
  auto bad = invoke({"torsion", tmp.file("bad.json", "{relaxed: nope}")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") == 0);
}

TEST_CASE("usage errors and help") {
  auto r = invoke({"no-such-command"});
  CHECK(r.code != 0);
  auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("torsionlab") != std::string::npos);
  auto missing = invoke({"lens-table", "--p", "7"});
  CHECK(missing.code != 0);
}

TEST_CASE("lens-table distinguishes the classic pair") {
  auto r = invoke({"lens-table", "--p", "7", "--q", "1", "--compare", "2"});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 8);  // header, six characters, verdict
  CHECK(cells_of(lines[0]) ==
        std::vector<std::string>{"k", "tau[L(7,1)]", "tau[L(7,2)]"});
  auto first = cells_of(lines[1]);
  REQUIRE(first.size() == 3);
  CHECK(first[0] == "1");
  CHECK(std::abs(std::stod(first[1]) - 0.5670398) < 1e-6);
  CHECK(std::abs(std::stod(first[2]) - 2.8629366604605827) < 1e-9);
  for (int k = 1; k <= 6; ++k) {
    auto row = cells_of(lines[static_cast<size_t>(k)]);
    CHECK(std::abs(std::stod(row[1]) - testlab::lens_tau(7, 1, k)) < 1e-9);
    CHECK(std::abs(std::stod(row[2]) - testlab::lens_tau(7, 4, k)) < 1e-9);
  }
  CHECK(lines[7] == "distinct: not homeomorphic");
}

TEST_CASE("lens-table confirms a homeomorphic pair") {
  auto r = invoke({"lens-table", "--p", "7", "--q", "2", "--compare", "3"});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  CHECK(lines.back() == "indistinguishable: torsion multisets agree");

  auto plain = invoke({"lens-table", "--p", "5", "--q", "2"});
  REQUIRE(plain.code == 0);
  CHECK(lines_of(plain.out).size() == 5);  // header + four rows, no verdict
}

TEST_CASE("lens-table rejects invalid parameters") {
  CHECK(invoke({"lens-table", "--p", "6", "--q", "3"}).code == 2);
  CHECK(invoke({"lens-table", "--p", "1", "--q", "1"}).code == 2);
}

TEST_CASE("zeta-scan emits the closed-form values and flags the pole") {
  auto r = invoke({"zeta-scan", "--space", "circle", "--L",
                   "6.283185307179586", "--theta", "0", "--s-from", "-1",
                   "--s-to", "2", "--step", "0.5"});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "s,value,error_estimate,pole_flag");

  auto at = [&](size_t i) { return cells_of(lines[i]); };
  CHECK(std::abs(std::stod(at(1)[0]) + 1.0) < 1e-12);
  CHECK(std::abs(std::stod(at(1)[1])) < 1e-9);          // zeta(-1) = 0
  CHECK(std::abs(std::stod(at(2)[1]) + 1.0 / 6.0) < 1e-9);
  CHECK(std::abs(std::stod(at(3)[1]) + 1.0) < 1e-9);    // zeta(0) = -1
  // s = 1/2 is the pole row: empty value, residue L / 2 pi = 1
  auto pole = at(4);
  REQUIRE(pole.size() == 4);
  CHECK(pole[1].empty());
  CHECK(pole[2].empty());
  REQUIRE(pole[3].rfind("pole residue=", 0) == 0);
  CHECK(std::abs(std::stod(pole[3].substr(13)) - 1.0) < 1e-9);
  // s = 2: pi^4 / 45
  CHECK(std::abs(std::stod(at(7)[1]) - kPi * kPi * kPi * kPi / 45.0) < 1e-9);
  for (size_t i : {1, 2, 3, 5, 6, 7}) {
    CHECK(std::stod(at(i)[2]) >= 0.0);
    CHECK(std::stod(at(i)[2]) < 1e-6);
  }
}

TEST_CASE("zeta-scan --out writes the same CSV to a file") {
  TempDir tmp;
  std::vector<std::string> base = {"zeta-scan", "--space", "circle",
                                   "--L",       "1.0",     "--s-from",
                                   "1",         "--s-to",  "2",
                                   "--step",    "0.5"};
  auto direct = invoke(base);
  REQUIRE(direct.code == 0);
  auto with_out = base;
  with_out.push_back("--out");
  with_out.push_back(tmp.path("scan.csv"));
  auto filed = invoke(with_out);
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream in(tmp.path("scan.csv"), std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == direct.out);
}

TEST_CASE("zeta-scan covers the square torus and guards theta") {
  auto r = invoke({"zeta-scan", "--space", "torus", "--L", "1", "--s-from",
                   "2", "--s-to", "2", "--step", "1"});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  // Epstein zeta of the unit square at s = 2: 4 zeta(2) beta(2) / (2 pi)^4
  double catalan = 0.9159655941772190151;
  double expected = 4.0 * (kPi * kPi / 6.0) * catalan /
                    std::pow(2.0 * kPi, 4.0);
  CHECK(std::abs(std::stod(cells_of(lines[1])[1]) - expected) < 1e-10);

  CHECK(invoke({"zeta-scan", "--space", "torus", "--L", "1", "--theta",
                "1", "--s-from", "2", "--s-to", "2", "--step", "1"})
            .code == 2);
  CHECK(invoke({"zeta-scan", "--space", "circle", "--L", "1", "--s-from",
                "2", "--s-to", "1", "--step", "1"})
            .code == 2);
  CHECK(invoke({"zeta-scan", "--space", "circle", "--L", "1", "--s-from",
                "1", "--s-to", "2", "--step", "0"})
            .code == 2);
}

TEST_CASE("det prints the squared circumference and the twisted value") {
  auto r = invoke({"det", "--space", "circle", "--L", "6.283185307179586",
                   "--theta", "0"});
  REQUIRE(r.code == 0);
  double two_pi = 2.0 * kPi;
  CHECK(std::abs(std::stod(r.out) - two_pi * two_pi) < 1e-8 * two_pi * two_pi);

  auto twisted = invoke({"det", "--space", "circle", "--L", "1", "--theta",
                         "3.141592653589793"});
  REQUIRE(twisted.code == 0);
  CHECK(twisted.out == "16.0\n");

  CHECK(invoke({"det", "--space", "torus", "--L", "1"}).code != 0);
}

TEST_CASE("cm-check emits one row per character with tiny gaps") {
  auto r = invoke({"cm-check", "--p", "5", "--subdiv", "1"});
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "p,k,log_tau,log_T,gap");
  for (size_t i = 1; i < lines.size(); ++i) {
    auto row = cells_of(lines[i]);
    REQUIRE(row.size() == 5);
    CHECK(row[0] == "5");
    CHECK(row[1] == std::to_string(i));
    double log_tau = std::stod(row[2]);
    double expected =
        std::log(4.0 * std::pow(std::sin(kPi * double(i) / 5.0), 2.0));
    CHECK(std::abs(log_tau - expected) < 1e-10);
    CHECK(std::stod(row[4]) < 1e-6);
  }

  auto single = invoke({"cm-check", "--p", "7", "--k", "3"});
  REQUIRE(single.code == 0);
  CHECK(lines_of(single.out).size() == 2);

  CHECK(invoke({"cm-check", "--p", "7", "--k", "0"}).code == 2);
  CHECK(invoke({"cm-check", "--p", "7", "--k", "1", "--subdiv", "-1"}).code ==
        2);
}

TEST_CASE("subdivide splits every edge and keeps the cocycle") {
  TempDir tmp;
  double theta = 2.0 * kPi / 7.0;
  auto path = tmp.file("circle.json", circle_file_text(theta));
  auto r = invoke({"subdivide", path, "--levels", "1"});
  REQUIRE(r.code == 0);
  auto f = parse_complex_text(r.out);
  REQUIRE(f.simplices.has_value());
  CHECK(f.simplices->count(0) == 6);
  CHECK(f.simplices->count(1) == 6);
  REQUIRE(f.cocycle.has_value());
  CHECK(f.cocycle->fiber_dim == 2);
  // canonical output: reserializing reproduces it byte for byte
  CHECK(write_complex_text(f) == r.out);
  // the twisted torsion is unchanged by the subdivision
  auto c = twist(*f.simplices, *f.cocycle, f.simplices->vertices[0]);
  double expected = 4.0 * std::pow(std::sin(theta / 2.0), 2.0);
  CHECK(std::abs(torsion_def(c).tau - expected) < 1e-10);

  auto two = invoke({"subdivide", path, "--levels", "2"});
  REQUIRE(two.code == 0);
  auto g = parse_complex_text(two.out);
  CHECK(g.simplices->count(0) == 12);
  CHECK(g.simplices->count(1) == 12);
}

TEST_CASE("subdivide drops homology bases and requires simplices") {
  TempDir tmp;
  auto f = parse_complex_text(circle_file_text(0.0));
  f.homology = harmonic_basis(f.complex);
  auto path = tmp.file("with_h.json", write_complex_text(f));
  auto r = invoke({"subdivide", path, "--levels", "0"});
  REQUIRE(r.code == 0);
  auto g = parse_complex_text(r.out);
  CHECK_FALSE(g.homology.has_value());
  CHECK(g.simplices->count(0) == 3);

  auto chain_only = tmp.file("c3.json", two_term_c3_text());
  CHECK(invoke({"subdivide", chain_only}).code == 2);
}

TEST_CASE("the precision switch is read from the environment") {
  TempDir tmp;
  setenv("TORSIONLAB_PRECISION", "extended", 1);
  auto r = invoke({"det", "--space", "circle", "--L", "1", "--theta", "0"});
  unsetenv("TORSIONLAB_PRECISION");
  REQUIRE(r.code == 0);
  CHECK(r.out == "1.0\n");

  setenv("TORSIONLAB_PRECISION", "bogus", 1);
  auto bad = invoke({"det", "--space", "circle", "--L", "1"});
  unsetenv("TORSIONLAB_PRECISION");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("TORSIONLAB_PRECISION") != std::string::npos);

  setenv("TORSIONLAB_PRECISION", "double", 1);
  auto dbl = invoke({"det", "--space", "circle", "--L", "1"});
  unsetenv("TORSIONLAB_PRECISION");
  CHECK(dbl.code == 0);
  CHECK(dbl.out == "1.0\n");
}
