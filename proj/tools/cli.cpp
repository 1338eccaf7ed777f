#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <tuple>

#include "torsionlab/io.hpp"
#include "torsionlab/rs_torsion.hpp"
#include "torsionlab/spaces.hpp"

namespace torsionlab::cli {

namespace {

std::string format_int(long v) { return std::to_string(v); }

Precision precision_from_env() {
  const char* raw = std::getenv("TORSIONLAB_PRECISION");
  if (raw == nullptr || raw[0] == '\0') return Precision::kDouble;
  std::string v = raw;
  if (v == "double") return Precision::kDouble;
  if (v == "extended") return Precision::kExtended;
  throw InputError("TORSIONLAB_PRECISION must be \"double\" or \"extended\", "
                   "got \"" + v + "\"");
}

struct TorsionArgs {
  std::string file;
  std::string method = "def";
};

void run_torsion(const TorsionArgs& a, std::ostream& out) {
  ComplexFile f = read_complex_file(a.file);
  ChainComplex complex = f.complex;
  bool twisted = false;
  if (f.cocycle) {
    complex = twist(*f.simplices, *f.cocycle, f.simplices->vertices[0]);
    twisted = true;
  }
  TorsionValue t;
  if (a.method == "laplacian") {
    t = torsion_laplacian(complex);
  } else if (f.homology && !twisted) {
    t = torsion_def(complex, *f.homology);
  } else {
    t = torsion_def(complex);
  }
  out << format_real(t.tau) << "\n";
}

struct LensArgs {
  int p = 0;
  int q = 0;
  int compare = 0;
  bool has_compare = false;
};

void run_lens_table(const LensArgs& a, std::ostream& out) {
  // Validate both parameter sets before any output hits the stream.
  lens_model(a.p, a.q, 1);
  if (a.has_compare) lens_model(a.p, a.compare, 1);
  std::vector<std::string> header{"k", "tau[L(" + std::to_string(a.p) + "," +
                                           std::to_string(a.q) + ")]"};
  if (a.has_compare) {
    header.push_back("tau[L(" + std::to_string(a.p) + "," +
                     std::to_string(a.compare) + ")]");
  }
  out << csv_row(header);
  for (int k = 1; k < a.p; ++k) {
    std::vector<std::string> row{format_int(k)};
    row.push_back(
        format_real(torsion_def(lens_complex(lens_model(a.p, a.q, k))).tau));
    if (a.has_compare) {
      row.push_back(format_real(
          torsion_def(lens_complex(lens_model(a.p, a.compare, k))).tau));
    }
    out << csv_row(row);
  }
  if (a.has_compare) {
    bool same = multisets_match(lens_torsion_multiset(a.p, a.q),
                                lens_torsion_multiset(a.p, a.compare));
    out << (same ? "indistinguishable: torsion multisets agree"
                 : "distinct: not homeomorphic")
        << "\n";
  }
}

struct ZetaScanArgs {
  std::string space = "circle";
  double length = 1.0;
  double theta = 0.0;
  double s_from = 0.0;
  double s_to = 0.0;
  double step = 0.0;
  std::string out_path;
};

void run_zeta_scan(const ZetaScanArgs& a, std::ostream& out, Precision prec) {
  if (!(a.step > 0)) throw InputError("zeta-scan: --step must be positive");
  if (a.s_to < a.s_from) {
    throw InputError("zeta-scan: --s-to must not precede --s-from");
  }
  Spectrum spec;
  if (a.space == "circle") {
    spec = circle_spectrum(a.length, a.theta)[0];
  } else if (a.space == "torus") {
    if (a.theta != 0.0) {
      throw InputError("zeta-scan: --theta applies to the circle only");
    }
    spec = torus_spectrum(a.length * Matrix::Identity(2, 2))[0];
  } else {
    throw InputError("zeta-scan: --space must be circle or torus");
  }

  std::ostringstream csv;
  csv << csv_row({"s", "value", "error_estimate", "pole_flag"});
  long rows = static_cast<long>((a.s_to - a.s_from) / a.step + 1e-9) + 1;
  for (long i = 0; i < rows; ++i) {
    double s = a.s_from + static_cast<double>(i) * a.step;
    try {
      ZetaResult r = zeta_eval(spec, s, {}, prec);
      csv << csv_row({format_real(s), format_real(r.value),
                      format_real(r.error_estimate),
                      r.near_pole ? "near-pole" : ""});
    } catch (const PoleError& e) {
      csv << csv_row({format_real(s), "", "",
                      "pole residue=" + format_real(e.residue())});
    }
  }

  if (a.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(a.out_path, std::ios::binary);
    if (!file) throw InputError("cannot open --out file: " + a.out_path);
    file << csv.str();
    if (!file) throw InputError("write failed: " + a.out_path);
  }
}

struct DetArgs {
  std::string space = "circle";
  double length = 1.0;
  double theta = 0.0;
};

void run_det(const DetArgs& a, std::ostream& out, Precision prec) {
  if (a.space != "circle") {
    throw UnsupportedError("det: only --space circle is implemented");
  }
  double d = zeta_det(circle_spectrum(a.length, a.theta)[0], {}, prec);
  out << format_real(d) << "\n";
}

struct CmArgs {
  int p = 0;
  int k = 0;
  bool has_k = false;
  int subdiv = 2;
};

void run_cm_check(const CmArgs& a, std::ostream& out, Precision prec) {
  lens_model(a.p, 1, 1);  // fail on a bad p before the header goes out
  out << csv_row({"p", "k", "log_tau", "log_T", "gap"});
  int k_lo = a.has_k ? a.k : 1;
  int k_hi = a.has_k ? a.k : a.p - 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    TorsionComparison c = cheeger_muller_check(a.p, k, a.subdiv, {}, prec);
    out << csv_row({format_int(a.p), format_int(k),
                    format_real(c.log_combinatorial),
                    format_real(c.log_analytic), format_real(c.gap)});
  }
}

struct SubdivideArgs {
  std::string file;
  int levels = 1;
};

void run_subdivide(const SubdivideArgs& a, std::ostream& out) {
  if (a.levels < 0) throw InputError("subdivide: --levels must be >= 0");
  ComplexFile f = read_complex_file(a.file);
  if (!f.simplices) {
    throw InputError("subdivide: file carries no simplicial data");
  }
  SimplicialComplex k = *f.simplices;
  EdgeCocycle rho = f.cocycle ? *f.cocycle : EdgeCocycle{};
  for (int i = 0; i < a.levels; ++i) {
    std::tie(k, rho) = barycentric_subdivide(k, rho);
  }
  ComplexFile g;
  g.label = f.label;
  g.complex = boundary_matrices(k);
  g.complex.label = f.label;
  g.simplices = std::move(k);
  if (f.cocycle) g.cocycle = std::move(rho);
  out << write_complex_text(g);
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos &&
      s.find_first_of("0123456789") != std::string::npos) {
    s += ".0";
  }
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Reidemeister and Ray-Singer torsion calculator: combinatorial "
      "torsion of based chain complexes and twisted simplicial models, "
      "zeta-regularized determinants of explicitly diagonalizable "
      "Laplacians, and the circle comparison between the two.\n"
      "The environment variable TORSIONLAB_PRECISION (double | extended) "
      "selects the numeric path for the spectral commands."};
  app.name("torsionlab");
  app.require_subcommand(1);

  TorsionArgs torsion_args;
  auto* torsion_cmd = app.add_subcommand(
      "torsion", "Torsion of the complex in a file (twisted by its cocycle "
                 "when one is present); prints one number");
  torsion_cmd->add_option("file", torsion_args.file, "complex file (JSON)")
      ->required();
  torsion_cmd
      ->add_option("--method", torsion_args.method,
                   "def (assembled bases) or laplacian (acyclic only)")
      ->check(CLI::IsMember({"def", "laplacian"}));

  LensArgs lens_args;
  auto* lens_cmd = app.add_subcommand(
      "lens-table",
      "Torsion values of L(p,q) per character k = 1..p-1 as CSV columns "
      "k,tau[...]; with --compare, adds the second space's column and a "
      "verdict line from the multiset comparison");
  lens_cmd->add_option("--p", lens_args.p, "order of the cyclic group")
      ->required();
  lens_cmd->add_option("--q", lens_args.q, "second parameter of L(p,q)")
      ->required();
  auto* compare_opt = lens_cmd->add_option(
      "--compare", lens_args.compare, "second q to compare against");

  ZetaScanArgs zeta_args;
  auto* zeta_cmd = app.add_subcommand(
      "zeta-scan",
      "Spectral zeta values over a range of s as CSV with columns "
      "s,value,error_estimate,pole_flag; at a pole the value is left empty "
      "and pole_flag records the residue");
  zeta_cmd->add_option("--space", zeta_args.space, "circle or torus (square, side L)")
      ->check(CLI::IsMember({"circle", "torus"}));
  zeta_cmd->add_option("--L", zeta_args.length, "circumference / side length")
      ->required();
  zeta_cmd->add_option("--theta", zeta_args.theta,
                       "holonomy angle (circle only)");
  zeta_cmd->add_option("--s-from", zeta_args.s_from, "first s")->required();
  zeta_cmd->add_option("--s-to", zeta_args.s_to, "last s")->required();
  zeta_cmd->add_option("--step", zeta_args.step, "s increment")->required();
  zeta_cmd->add_option("--out", zeta_args.out_path,
                       "write the CSV to this file instead of stdout");

  DetArgs det_args;
  auto* det_cmd = app.add_subcommand(
      "det", "Zeta-regularized determinant of the circle Laplacian; prints "
             "one number");
  det_cmd->add_option("--space", det_args.space, "circle")
      ->check(CLI::IsMember({"circle"}));
  det_cmd->add_option("--L", det_args.length, "circumference")->required();
  det_cmd->add_option("--theta", det_args.theta, "holonomy angle");

  CmArgs cm_args;
  auto* cm_cmd = app.add_subcommand(
      "cm-check",
      "Analytic vs combinatorial torsion of the circle with holonomy "
      "2 pi k / p as CSV with columns p,k,log_tau,log_T,gap");
  cm_cmd->add_option("--p", cm_args.p, "denominator of the holonomy angle")
      ->required();
  auto* k_opt =
      cm_cmd->add_option("--k", cm_args.k, "single character (default: all "
                                           "k = 1..p-1)");
  cm_cmd->add_option("--subdiv", cm_args.subdiv,
                     "barycentric subdivision level of the circle model");

  SubdivideArgs subdivide_args;
  auto* subdivide_cmd = app.add_subcommand(
      "subdivide",
      "Barycentric subdivision of the simplicial complex in a file (cocycle "
      "pushed forward; any homology basis is dropped); prints the new file");
  subdivide_cmd
      ->add_option("file", subdivide_args.file, "complex file (JSON)")
      ->required();
  subdivide_cmd->add_option("--levels", subdivide_args.levels,
                            "number of subdivision rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Precision prec = precision_from_env();
    lens_args.has_compare = compare_opt->count() > 0;
    cm_args.has_k = k_opt->count() > 0;
    if (torsion_cmd->parsed()) {
      run_torsion(torsion_args, out);
    } else if (lens_cmd->parsed()) {
      run_lens_table(lens_args, out);
    } else if (zeta_cmd->parsed()) {
      run_zeta_scan(zeta_args, out, prec);
    } else if (det_cmd->parsed()) {
      run_det(det_args, out, prec);
    } else if (cm_cmd->parsed()) {
      run_cm_check(cm_args, out, prec);
    } else if (subdivide_cmd->parsed()) {
      run_subdivide(subdivide_args, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace torsionlab::cli
