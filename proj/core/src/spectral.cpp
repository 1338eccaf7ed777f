#include "torsionlab/spectral.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace torsionlab {

namespace {

using ExtendedReal = boost::multiprecision::cpp_bin_float_50;

constexpr double kTwoPi = 6.283185307179586476925286766559;

template <class Real>
struct Tuning;

template <>
struct Tuning<double> {
  static constexpr double trace_cut = 1e-18;  // relative term cutoff in sums
  static constexpr double quad_tol = 1e-13;   // panel-doubling stop
  static constexpr double exp_window = 46.0;  // e^{-46} ~ 1e-20
  static constexpr int max_rounds = 9;
};

template <>
struct Tuning<ExtendedReal> {
  static constexpr double trace_cut = 1e-38;
  static constexpr double quad_tol = 1e-30;
  static constexpr double exp_window = 95.0;
  static constexpr int max_rounds = 12;
};

template <class Real>
Real rmax(const Real& a, const Real& b) {
  return a < b ? b : a;
}

// 16-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration
// so the same code serves every Real. Built once per instantiation.
template <class Real>
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

template <class Real>
const GaussRule<Real>& gauss_rule() {
  static const GaussRule<Real> rule = [] {
    using std::abs;
    using std::cos;
    constexpr int n = 16;
    GaussRule<Real> r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      Real x = Real(-std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5)));
      Real p1 = 0, p0 = 0, dp = 0;
      for (int it = 0; it < 80; ++it) {
        p0 = 1;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        Real dx = p1 / dp;
        x -= dx;
        if (abs(dx) <= std::numeric_limits<Real>::epsilon() * 8) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2 / ((1 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// integral_a^b f(t) dt for 0 < a < b through u = log t, composite 16-point
// panels doubled until two refinements agree to quad_tol (relative).
template <class Real, class F>
Real integrate_log(F&& f, Real a, Real b, int initial_nodes, Real* err_out) {
  using std::abs;
  using std::exp;
  using std::log;
  const auto& rule = gauss_rule<Real>();
  Real ua = log(a);
  Real ub = log(b);
  auto eval = [&](int np) {
    Real h = (ub - ua) / np;
    Real total = 0;
    for (int p = 0; p < np; ++p) {
      Real c = ua + h * p + h / 2;
      Real acc = 0;
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        Real u = c + rule.nodes[i] * h / 2;
        Real t = exp(u);
        acc += rule.weights[i] * f(t) * t;
      }
      total += acc * h / 2;
    }
    return total;
  };
  int panels = std::max(1, initial_nodes / 16);
  Real prev = eval(panels);
  Real delta = 0;
  for (int round = 0; round < Tuning<Real>::max_rounds; ++round) {
    panels *= 2;
    Real next = eval(panels);
    delta = abs(next - prev);
    prev = next;
    if (delta <= Real(Tuning<Real>::quad_tol) * rmax(Real(1), abs(next))) break;
  }
  if (err_out) *err_out = delta;
  return prev;
}

// 1 / Gamma(x), finite everywhere: the recursion 1/Gamma(x) = x / Gamma(x+1)
// walks x into [0.5, 1.5) and makes the zeros at 0, -1, -2, ... exact.
template <class Real>
Real recip_gamma(Real x) {
  Real acc = 1;
  while (x < Real(0.5)) {
    acc *= x;
    x += 1;
  }
  return acc / boost::math::tgamma(x);
}

template <class Real>
struct ArithData {
  Real offset;  // reduced to [0, 2 pi), exact zero when within 1e-12 of it
  Real length;
  Real weight;
};

template <class Real>
struct LattData {
  int n = 0;
  std::vector<Real> dual;  // row-major n x n
  Real weight;
  Real covol;
  double sigma_min_dual = 1.0;
};

template <class Real>
struct EngineData {
  std::vector<ArithData<Real>> arith;
  std::vector<LattData<Real>> latt;
  int kernel = 0;
  Real eps;
  int terms = 40;
  int nodes = 64;
  Real t_max;
  double lambda_min = 0.0;
};

double canonical_offset(double offset) {
  double r = std::fmod(offset, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r < 1e-12 || kTwoPi - r < 1e-12) r = 0.0;
  return r;
}

void check_split(const MellinSplit& split) {
  if (!(split.epsilon > 0) || !std::isfinite(split.epsilon)) {
    throw InputError("MellinSplit: epsilon must be positive");
  }
  if (split.theta_terms < 1) {
    throw InputError("MellinSplit: theta_terms must be positive");
  }
  if (split.quadrature < 16) {
    throw InputError("MellinSplit: quadrature must be at least 16");
  }
  if (split.t_max != 0.0 && !(split.t_max > split.epsilon)) {
    throw InputError("MellinSplit: t_max must exceed epsilon (or be 0)");
  }
}

template <class Real>
EngineData<Real> build_engine(const Spectrum& s, const MellinSplit& split) {
  validate_spectrum(s);
  check_split(split);
  EngineData<Real> e;
  // Only the zero modes the family expansions produce belong here: the
  // small-t side subtracts them from the Poisson form of the full family
  // trace. Extra zero modes never enter the positive spectrum, so they
  // cancel before any formula and must not shift zeta(0).
  e.kernel = intrinsic_zero_modes(s);
  e.eps = Real(split.epsilon);
  e.terms = split.theta_terms;
  e.nodes = split.quadrature;
  for (const auto& f : s.arithmetic) {
    e.arith.push_back({Real(canonical_offset(f.offset)), Real(f.length),
                       Real(f.weight)});
  }
  for (const auto& f : s.lattice) {
    LattData<Real> d;
    d.n = static_cast<int>(f.basis.rows());
    Matrix dual = f.dual_basis();
    for (int i = 0; i < d.n; ++i) {
      for (int j = 0; j < d.n; ++j) d.dual.push_back(Real(dual(i, j)));
    }
    d.weight = Real(f.weight);
    d.covol = Real(f.covolume());
    Eigen::JacobiSVD<Matrix> svd(dual);
    d.sigma_min_dual = svd.singularValues().tail(1)(0);
    e.latt.push_back(std::move(d));
  }
  e.lambda_min = min_positive_eigenvalue(s);
  if (split.t_max > 0) {
    e.t_max = Real(split.t_max);
  } else {
    double horizon = (Tuning<Real>::exp_window + 20.0) / e.lambda_min;
    e.t_max = Real(std::max(2.0 * split.epsilon, horizon));
  }
  return e;
}

// Eigenvalue-side trace over the positive spectrum only.
template <class Real>
Real heat_nonzero(const EngineData<Real>& e, Real t) {
  using std::exp;
  Real cut = Real(Tuning<Real>::trace_cut);
  Real acc = 0;
  for (const auto& f : e.arith) {
    Real two_pi = Real(kTwoPi);
    auto side = [&](long start, long step) {
      for (long j = start;; j += step) {
        Real nu = (two_pi * Real(j) + f.offset) / f.length;
        Real lam = nu * nu;
        if (j == 0 && f.offset == 0) continue;  // zero mode
        Real term = f.weight * exp(-t * lam);
        acc += term;
        if (term <= cut * acc) break;  // terms decay monotonically outward
      }
    };
    side(0, +1);
    side(-1, -1);
  }
  for (const auto& f : e.latt) {
    // Radius beyond which every term is below cut relative to the largest.
    double td = static_cast<double>(t);
    double need = e.lambda_min * td - std::log(Tuning<Real>::trace_cut);
    int radius = static_cast<int>(std::sqrt(std::max(1.0, need / td)) /
                                  (kTwoPi * f.sigma_min_dual)) +
                 2;
    std::vector<int> idx(f.n, -radius);
    while (true) {
      bool nonzero = false;
      for (int i = 0; i < f.n; ++i) nonzero = nonzero || idx[i] != 0;
      if (nonzero) {
        Real lam = 0;
        for (int i = 0; i < f.n; ++i) {
          Real coord = 0;
          for (int j = 0; j < f.n; ++j) coord += f.dual[i * f.n + j] * idx[j];
          coord *= Real(kTwoPi);
          lam += coord * coord;
        }
        acc += f.weight * exp(-t * lam);
      }
      int i = 0;
      while (i < f.n && ++idx[i] > radius) idx[i++] = -radius;
      if (i == f.n) break;
    }
  }
  return acc;
}

struct PoleData {
  // exponent p -> total coefficient A of the t^{-p} leading power
  std::map<double, double> coefficients;
};

PoleData pole_data(const Spectrum& s) {
  PoleData out;
  double two_sqrt_pi = 2.0 * std::sqrt(3.1415926535897932384626433832795);
  for (const auto& f : s.arithmetic) {
    out.coefficients[0.5] += f.weight * f.length / two_sqrt_pi;
  }
  for (const auto& f : s.lattice) {
    double n = static_cast<double>(f.basis.rows());
    double four_pi = 4.0 * 3.1415926535897932384626433832795;
    out.coefficients[n / 2.0] +=
        f.weight * f.covolume() / std::pow(four_pi, n / 2.0);
  }
  return out;
}

// P(s): closed-form integral of the leading powers over [0, epsilon].
template <class Real>
Real power_term(const EngineData<Real>& e, Real s) {
  using std::pow;
  using std::sqrt;
  Real pi = boost::math::constants::pi<Real>();
  Real total = 0;
  for (const auto& f : e.arith) {
    Real a = f.weight * f.length / (2 * sqrt(pi));
    total += a * pow(e.eps, s - Real(0.5)) / (s - Real(0.5));
  }
  for (const auto& f : e.latt) {
    Real p = Real(f.n) / 2;
    Real a = f.weight * f.covol / pow(4 * pi, p);
    total += a * pow(e.eps, s - p) / (s - p);
  }
  return total;
}

// One image integral: int_0^eps t^{s-1-p} e^{-c/t} dt = c^{s-p} *
// int_{c/eps}^inf u^{p-s-1} e^{-u} du, the u-integral done numerically on a
// window past which e^{-u} is below working precision.
template <class Real>
Real image_integral(Real c, Real p, Real s, Real eps, int nodes, Real* err) {
  using std::pow;
  Real a = c / eps;
  Real upper = a + Real(Tuning<Real>::exp_window) + 30;
  Real alpha = p - s - 1;
  Real value = integrate_log(
      [&](Real u) {
        using std::exp;
        return pow(u, alpha) * exp(-u);
      },
      a, upper, nodes, err);
  Real front = pow(c, s - p);
  if (err) *err *= front;
  return front * value;
}

// I(s): the exponentially small dual-side corrections on [0, epsilon].
template <class Real>
Real image_terms(const EngineData<Real>& e, Real s, Real* err_out,
                 double* trunc_out) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::pow;
  using std::sqrt;
  Real pi = boost::math::constants::pi<Real>();
  double window = Tuning<Real>::exp_window;
  Real total = 0;
  Real err = 0;
  double trunc = 0;

  for (const auto& f : e.arith) {
    Real lead = f.weight * f.length / (2 * sqrt(pi));
    double a1 = static_cast<double>(f.length * f.length / (4 * e.eps));
    for (int k = 1; k <= e.terms; ++k) {
      Real c = (Real(k) * f.length) * (Real(k) * f.length) / 4;
      double a = a1 * k * k;
      if (a > a1 + window) {
        trunc += static_cast<double>(lead) * std::exp(-std::min(700.0, a));
        break;
      }
      Real coeff = 2 * lead * cos(Real(k) * f.offset);
      Real e1 = 0;
      total += coeff * image_integral(c, Real(0.5), s, e.eps, e.nodes, &e1);
      err += abs(coeff) * e1;
    }
    double atail = a1 * (e.terms + 1) * (e.terms + 1);
    trunc += static_cast<double>(lead) * std::exp(-std::min(700.0, atail));
  }

  for (const auto& f : e.latt) {
    Real p = Real(f.n) / 2;
    Real lead = f.weight * f.covol / pow(4 * pi, p);
    // Primal lattice vectors mu = B m: recover B from the stored dual.
    // |mu|^2 / (4 eps) <= a_min + window keeps only meaningful terms.
    Eigen::MatrixXd dual(f.n, f.n);
    for (int i = 0; i < f.n; ++i) {
      for (int j = 0; j < f.n; ++j) {
        dual(i, j) = static_cast<double>(f.dual[i * f.n + j]);
      }
    }
    Eigen::MatrixXd primal = dual.inverse().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(primal);
    double smin = svd.singularValues().tail(1)(0);
    double eps_d = static_cast<double>(e.eps);
    double len_min2 = std::numeric_limits<double>::infinity();
    // Shortest primal vector fixes the window anchor.
    {
      std::vector<int> idx(f.n, -2);
      while (true) {
        bool nonzero = false;
        for (int i = 0; i < f.n; ++i) nonzero = nonzero || idx[i] != 0;
        if (nonzero) {
          double l2 = 0;
          for (int i = 0; i < f.n; ++i) {
            double coord = 0;
            for (int j = 0; j < f.n; ++j) coord += primal(i, j) * idx[j];
            l2 += coord * coord;
          }
          len_min2 = std::min(len_min2, l2);
        }
        int i = 0;
        while (i < f.n && ++idx[i] > 2) idx[i++] = -2;
        if (i == f.n) break;
      }
    }
    double a_min = len_min2 / (4 * eps_d);
    int radius = static_cast<int>(
                     std::sqrt(4 * eps_d * (a_min + window)) / smin) +
                 2;
    std::vector<int> idx(f.n, -radius);
    while (true) {
      bool nonzero = false;
      for (int i = 0; i < f.n; ++i) nonzero = nonzero || idx[i] != 0;
      if (nonzero) {
        double l2 = 0;
        for (int i = 0; i < f.n; ++i) {
          double coord = 0;
          for (int j = 0; j < f.n; ++j) coord += primal(i, j) * idx[j];
          l2 += coord * coord;
        }
        double a = l2 / (4 * eps_d);
        if (a <= a_min + window) {
          Real e1 = 0;
          total += lead * image_integral(Real(l2) / 4, p, s, e.eps, e.nodes, &e1);
          err += abs(lead) * e1;
        }
      }
      int i = 0;
      while (i < f.n && ++idx[i] > radius) idx[i++] = -radius;
      if (i == f.n) break;
    }
    trunc += static_cast<double>(lead) * std::exp(-std::min(700.0, a_min + window));
  }

  if (err_out) *err_out = err;
  if (trunc_out) *trunc_out = trunc;
  return total;
}

// B(s): eigenvalue-side integral over [epsilon, t_max].
template <class Real>
Real tail_integral(const EngineData<Real>& e, Real s, Real* err_out,
                   double* trunc_out) {
  using std::exp;
  using std::pow;
  Real err = 0;
  Real value = integrate_log(
      [&](Real t) { return pow(t, s - 1) * heat_nonzero(e, t); }, e.eps,
      e.t_max, e.nodes, &err);
  if (err_out) *err_out = err;
  if (trunc_out) {
    // Discarded tail: roughly t_max^{s-1} e^{-lambda_min t} / lambda_min.
    double tm = static_cast<double>(e.t_max);
    double sd = static_cast<double>(s);
    *trunc_out = std::pow(tm, std::max(0.0, sd - 1.0)) *
                 std::exp(-std::min(700.0, e.lambda_min * tm)) / e.lambda_min;
  }
  return value;
}

template <class Real>
ZetaResult zeta_eval_impl(const Spectrum& spec, double s,
                          const MellinSplit& split) {
  using std::pow;
  EngineData<Real> e = build_engine<Real>(spec, split);
  Real rs = Real(s);
  Real err_i = 0, err_b = 0;
  double trunc_i = 0, trunc_b = 0;
  Real analytic = power_term(e, rs) + image_terms(e, rs, &err_i, &trunc_i) +
                  tail_integral(e, rs, &err_b, &trunc_b);
  Real kernel_part =
      -Real(e.kernel) * pow(e.eps, rs) * recip_gamma(rs + 1);
  Real value = kernel_part + analytic * recip_gamma(rs);

  ZetaResult out;
  out.value = static_cast<double>(value);
  double rg = std::abs(static_cast<double>(recip_gamma(rs)));
  out.error_estimate =
      (static_cast<double>(err_i + err_b) + trunc_i + trunc_b) * (rg + 1.0);
  return out;
}

template <class Real>
ZetaResult zeta_prime_zero_impl(const Spectrum& spec,
                                const MellinSplit& split) {
  using std::log;
  EngineData<Real> e = build_engine<Real>(spec, split);
  Real err_i = 0, err_b = 0;
  double trunc_i = 0, trunc_b = 0;
  Real zero = Real(0);
  Real g0 = power_term(e, zero) + image_terms(e, zero, &err_i, &trunc_i) +
            tail_integral(e, zero, &err_b, &trunc_b);
  Real gamma = boost::math::constants::euler<Real>();
  Real value = g0 - Real(e.kernel) * (gamma + log(e.eps));

  ZetaResult out;
  out.value = static_cast<double>(value);
  out.error_estimate = static_cast<double>(err_i + err_b) + trunc_i + trunc_b;
  return out;
}

bool spectrum_is_empty(const Spectrum& s) {
  return s.arithmetic.empty() && s.lattice.empty();
}

void pole_guard(const Spectrum& spec, double s, ZetaResult* flag_target) {
  for (const auto& [p, a] : pole_data(spec).coefficients) {
    if (std::abs(s - p) < 1e-9) {
      double residue = a * static_cast<double>(recip_gamma(p));
      throw PoleError("zeta_eval: s is a pole of the continuation", p,
                      residue);
    }
    if (flag_target && std::abs(s - p) < 1e-4) flag_target->near_pole = true;
  }
}

}  // namespace

double heat_trace(const Spectrum& s, double t) {
  validate_spectrum(s);
  if (!(t > 0)) throw InputError("heat_trace: t must be positive");
  MellinSplit split;
  EngineData<double> e = build_engine<double>(s, split);
  return s.kernel_dim + heat_nonzero(e, t);
}

double theta_trace(const Spectrum& s, double t, int terms) {
  validate_spectrum(s);
  if (!(t > 0)) throw InputError("theta_trace: t must be positive");
  if (terms < 1) throw InputError("theta_trace: terms must be positive");
  double four_pi_t = 4.0 * 3.1415926535897932384626433832795 * t;
  double total = s.kernel_dim - intrinsic_zero_modes(s);
  for (const auto& f : s.arithmetic) {
    double phi = canonical_offset(f.offset);
    // Enough images for the e^{-k^2 L^2 / 4t} tail to underflow; `terms`
    // only floors the count, matching the adaptive lattice radius below.
    int kmax = std::max(
        terms, static_cast<int>(std::sqrt(4.0 * t * 700.0) / f.length) + 2);
    double sum = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      double a = k * k * f.length * f.length / (4.0 * t);
      if (a > 700.0) break;
      sum += 2.0 * std::exp(-a) * std::cos(k * phi);
    }
    total += f.weight * f.length / std::sqrt(four_pi_t) * sum;
  }
  for (const auto& f : s.lattice) {
    int n = static_cast<int>(f.basis.rows());
    Eigen::JacobiSVD<Matrix> svd(f.basis);
    double smin = svd.singularValues().tail(1)(0);
    int radius =
        static_cast<int>(std::sqrt(4.0 * t * 700.0) / smin) + 2;
    double sum = 0.0;
    std::vector<int> idx(n, -radius);
    while (true) {
      Eigen::VectorXd m(n);
      for (int i = 0; i < n; ++i) m(i) = idx[i];
      double a = (f.basis * m).squaredNorm() / (4.0 * t);
      if (a <= 700.0) sum += std::exp(-a);
      int i = 0;
      while (i < n && ++idx[i] > radius) idx[i++] = -radius;
      if (i == n) break;
    }
    total += f.weight * f.covolume() / std::pow(four_pi_t, n / 2.0) * sum;
  }
  return total;
}

std::vector<double> pole_locations(const Spectrum& s) {
  validate_spectrum(s);
  std::vector<double> out;
  for (const auto& [p, a] : pole_data(s).coefficients) {
    if (a != 0.0) out.push_back(p);
  }
  return out;
}

double residue_probe(const Spectrum& s, double s0) {
  validate_spectrum(s);
  for (const auto& [p, a] : pole_data(s).coefficients) {
    if (std::abs(s0 - p) <= 1e-12) {
      return a * static_cast<double>(recip_gamma(p));
    }
  }
  return 0.0;
}

ZetaResult zeta_eval(const Spectrum& spec, double s, const MellinSplit& split,
                     Precision precision) {
  validate_spectrum(spec);
  check_split(split);
  if (!std::isfinite(s)) throw InputError("zeta_eval: s must be finite");
  if (spectrum_is_empty(spec)) return {0.0, 0.0, false};

  ZetaResult flags;
  pole_guard(spec, s, &flags);
  ZetaResult out = (precision == Precision::kExtended)
                       ? zeta_eval_impl<ExtendedReal>(spec, s, split)
                       : zeta_eval_impl<double>(spec, s, split);
  out.near_pole = flags.near_pole;
  return out;
}

ZetaResult zeta_prime_zero(const Spectrum& spec, const MellinSplit& split,
                           Precision precision) {
  validate_spectrum(spec);
  check_split(split);
  if (spectrum_is_empty(spec)) return {0.0, 0.0, false};
  return (precision == Precision::kExtended)
             ? zeta_prime_zero_impl<ExtendedReal>(spec, split)
             : zeta_prime_zero_impl<double>(spec, split);
}

double zeta_det(const Spectrum& spec, const MellinSplit& split,
                Precision precision) {
  return std::exp(-zeta_prime_zero(spec, split, precision).value);
}

}  // namespace torsionlab
