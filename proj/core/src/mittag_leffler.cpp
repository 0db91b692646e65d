#include "fracwave/mittag_leffler.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogMax = 709.0;

// sin(pi x) with exact argument reduction.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  return std::sin(kPi * r);
}

// 1/Gamma(x) as sign * exp(log_mag); zero at the poles of Gamma.
struct RecipGamma {
  double log_mag = 0.0;
  double sign = 0.0;
  bool zero = true;
};

RecipGamma reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return {};
  if (x > 0.0) return {-std::lgamma(x), 1.0, false};
  const double s = sin_pi(x);
  if (s == 0.0) return {};
  return {std::lgamma(1.0 - x) + std::log(std::abs(s) / kPi), s < 0.0 ? -1.0 : 1.0, false};
}

// 1/Gamma(x) directly where it is representable.
double rgamma(double x) {
  if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
  if (x <= 0.0 && x > -169.0) {
    if (x == std::floor(x)) return 0.0;
    return sin_pi(x) * std::tgamma(1.0 - x) / kPi;
  }
  const RecipGamma g = reciprocal_gamma(x);
  return g.zero ? 0.0 : g.sign * std::exp(g.log_mag);
}

// Argument of E, optionally with its phase known exactly as pi * turns.
// Propagator rays arg z = -pi gamma / 2 lose their exactness once rounded to a
// double, and far out (R ~ 1e20) that rounding alone moves Re z^(1/alpha) by
// thousands.
struct Arg {
  cplx z;
  double r = 0.0;
  double turns = 0.0;  // arg z / pi, in (-1, 1]
  bool exact = false;
};

Arg make_arg(cplx z) { return {z, std::abs(z), std::arg(z) / kPi, false}; }

Arg make_polar(double r, double turns) {
  double q = std::remainder(turns, 2.0);  // [-1, 1]
  if (q == -1.0) q = 1.0;
  cplx unit;
  if (q == 0.0) unit = {1.0, 0.0};
  else if (q == 0.5) unit = {0.0, 1.0};
  else if (q == -0.5) unit = {0.0, -1.0};
  else if (q == 1.0) unit = {-1.0, 0.0};
  else unit = std::polar(1.0, kPi * q);
  return {r * unit, r, q, true};
}

// (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha)), principal branch.
// This is both the leading asymptotic term and the residue of the Laplace
// integrand at s = z^(1/alpha). When |z^(1/alpha)| is large its imaginary part
// is carried and reduced mod 2 pi in binary128, since a double loses the phase.
cplx exponential_term(double alpha, double beta, const Arg& arg) {
  const double log_r = std::log(arg.r);
  const double theta = kPi * arg.turns;
  const double mag = std::exp(log_r / alpha);

  double re_w = 0.0;
  double im_w = 0.0;
  if (mag < 1e3) {
    const double phase = theta / alpha;
    re_w = mag * std::cos(phase);
    im_w = mag * std::sin(phase);
  } else {
    const __float128 a = alpha;
    const __float128 pi = acosq(-1);
    __float128 m;
    __float128 ph;
    __float128 c;
    __float128 s;
    if (arg.exact) {
      m = expq(logq(static_cast<__float128>(arg.r)) / a);
      // Split turns / alpha into quarter turns plus a remainder so that rays
      // landing exactly on the imaginary axis give a zero real part.
      const __float128 f = fmodq(static_cast<__float128>(arg.turns) / a, 2);
      const __float128 k = roundq(2 * f);
      const __float128 rem = (f - k / 2) * pi;
      const __float128 cr = cosq(rem);
      const __float128 sr = sinq(rem);
      switch (static_cast<int>(fmodq(k + 8, 4))) {
        case 0: c = cr; s = sr; break;
        case 1: c = -sr; s = cr; break;
        case 2: c = -cr; s = -sr; break;
        default: c = sr; s = -cr; break;
      }
    } else {
      const __float128 x = arg.z.real();
      const __float128 y = arg.z.imag();
      m = expq(logq(hypotq(x, y)) / a);
      ph = atan2q(y, x) / a;
      c = cosq(ph);
      s = sinq(ph);
    }
    const __float128 re = m * c;
    if (re > kLogMax) {
      throw Error(ErrorCode::Overflow, "exp(z^(1/alpha)) exceeds the double range");
    }
    re_w = static_cast<double>(re);
    im_w = static_cast<double>(fmodq(m * s, 2 * pi));
  }
  if (re_w > kLogMax) {
    throw Error(ErrorCode::Overflow, "exp(z^(1/alpha)) exceeds the double range");
  }
  cplx value = std::polar(std::exp(re_w), im_w) / alpha;
  if (beta != 1.0) {
    const double p = (1.0 - beta) / alpha;
    value *= std::exp(cplx(p * log_r, p * theta));
  }
  return value;
}

// -sum_{j=1}^{k} z^{-j} / Gamma(beta - alpha j). With adaptive set, k is an
// upper bound and the sum stops once terms are negligible or, past the optimal
// truncation index j ~ |z|^(1/alpha) / alpha, start to grow. Single terms can be
// accidentally tiny next to a pole of Gamma, so both tests look past them.
cplx algebraic_tail(double alpha, double beta, cplx z, int k_terms, bool adaptive,
                    double scale) {
  const double r = std::abs(z);
  const double log_r = std::log(r);
  const double optimal = std::pow(r, 1.0 / alpha);
  const cplx unit = std::conj(z) / r;  // z^{-1} / |z|^{-1}
  cplx unit_pow = 1.0;
  cplx sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  int negligible = 0;
  for (int j = 1; j <= k_terms; ++j) {
    unit_pow *= unit;
    const double x = beta - alpha * j;
    cplx term;
    if (x > -160.0 && j * log_r < 600.0) {
      term = unit_pow * (rgamma(x) * std::pow(r, -static_cast<double>(j)));
    } else {
      const RecipGamma g = reciprocal_gamma(x);
      term = g.zero ? cplx(0.0) : unit_pow * (g.sign * std::exp(g.log_mag - j * log_r));
    }
    const double mag = std::abs(term);
    if (adaptive && mag != 0.0) {
      if (alpha * j > optimal && mag > previous) break;
      previous = mag;
    }
    sum -= term;
    if (adaptive) {
      negligible = mag < 0.1 * kEps * std::max(std::abs(sum), scale) ? negligible + 1 : 0;
      if (negligible == 3) break;
    }
  }
  return sum;
}

cplx asymptotic_impl(const MLParams& p, const Arg& arg, int k_terms, bool adaptive) {
  const double alpha = p.alpha;
  const double beta = p.beta_ml;
  cplx value = 0.0;
  if (std::abs(arg.turns) <= 0.75 * alpha) {
    value = exponential_term(alpha, beta, arg);
  }
  return value + algebraic_tail(alpha, beta, arg.z, k_terms, adaptive, std::abs(value));
}

// Trapezoid rule on s(u) = mu (1 + i u)^2, u in [-n h, n h].
struct ContourPlan {
  double mu = 0.0;
  double h = 0.0;
  int n = std::numeric_limits<int>::max();
  bool residue = false;
};

// Chooses (mu, h, n) from the usual trapezoid error model for the strip
// -c < Im u < d of analyticity in the u-plane, with the pole s* = z^(1/alpha)
// either left of the contour (no residue) or right of it (residue added).
// In u-coordinates the pole sits at Im u = 1 - Re sqrt(s*/mu); the branch cut
// on the negative real axis sits at Im u = 1.
ContourPlan plan_contour(double alpha, double beta, double R, double psi, bool has_pole) {
  constexpr double kTwoPi = 2.0 * kPi;
  constexpr double kLogTol = 34.5;  // -log(1e-15)
  constexpr double kMuMin = 0.02;
  constexpr double kMuMax = 6.0;   // keeps exp(mu) * eps below 1e-13
  constexpr int kMuSteps = 40;
  const double log_pole =
      kLogTol + std::log(1.0 / alpha) + (has_pole ? R * std::cos(psi) + (1.0 - beta) * std::log(R) : 0.0);
  const double cos_half = std::cos(psi / 2.0);

  auto upper_step = [&](double mu, double d_max) {
    double best = 0.0;
    for (double f : {0.4, 0.6, 0.8, 0.9, 0.97}) {
      const double d = f * d_max;
      const double vertex = mu * (1.0 - d) * (1.0 - d);
      const double growth = (beta > alpha && vertex < 1.0) ? (beta - alpha) * -std::log(vertex) : 0.0;
      best = std::max(best, kTwoPi * d / (kLogTol + vertex + growth));
    }
    return best;
  };

  ContourPlan best;
  for (int i = 0; i <= kMuSteps; ++i) {
    const double mu = kMuMin * std::pow(kMuMax / kMuMin, static_cast<double>(i) / kMuSteps);
    const double c_opt = std::sqrt(1.0 + kLogTol / mu);
    const double n_factor = c_opt;
    const double pole_offset = has_pole ? std::sqrt(R / mu) * cos_half : 0.0;

    // Pole (if any) left of the contour.
    {
      const double b_star = 1.0 - pole_offset;
      if (!has_pole || b_star > 0.1) {
        const double d_max = std::min(1.0, b_star);
        double h = std::min(upper_step(mu, d_max),
                            kTwoPi * c_opt / (kLogTol + mu * (1.0 + c_opt) * (1.0 + c_opt)));
        if (has_pole && log_pole > 0.0) h = std::min(h, kTwoPi * b_star / log_pole);
        const int n = static_cast<int>(std::ceil(n_factor / h));
        if (n < best.n) best = {mu, h, n, false};
      }
    }
    // Pole right of the contour.
    if (has_pole) {
      const double c_pole = pole_offset - 1.0;
      if (c_pole > 0.1) {
        const double c = std::min(c_opt, 0.9 * c_pole);
        double h = std::min(upper_step(mu, 1.0),
                            kTwoPi * c / (kLogTol + mu * (1.0 + c) * (1.0 + c)));
        if (log_pole > 0.0) h = std::min(h, kTwoPi * c_pole / log_pole);
        const int n = static_cast<int>(std::ceil(n_factor / h));
        if (n < best.n) best = {mu, h, n, true};
      }
    }
  }
  return best;
}

void check_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorCode::Overflow, std::string(what) + " produced a non-finite value");
  }
}

}  // namespace

void MLParams::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "Mittag-Leffler alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(beta_ml > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "Mittag-Leffler beta must be positive, got " + std::to_string(beta_ml));
  }
}

void SymbolSpec::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be positive, got " + std::to_string(beta));
  }
  if (!std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be finite");
  }
}

double ml_series_radius(double alpha) { return std::pow(5.0, alpha); }

double ml_asymptotic_radius(double alpha) {
  return std::max(10.0, std::pow(-std::log(kEps), alpha));
}

SeriesResult ml_series(const MLParams& params, cplx z, int max_terms, double tol) {
  params.validate();
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "series tolerance must be positive");
  const double alpha = params.alpha;
  const double beta = params.beta_ml;
  const double r = std::abs(z);
  if (r == 0.0) return {rgamma(beta), 1};
  // Terms grow until alpha k + beta passes |z|^(1/alpha).
  const double peak = std::pow(r, 1.0 / alpha);
  const double log_r = std::log(r);
  const double theta = std::arg(z);

  cplx sum = 0.0;
  cplx zk = 1.0;
  int small_run = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double g = alpha * k + beta;
    cplx term;
    if (g < 170.0 && k * log_r < kLogMax) {
      term = zk / std::tgamma(g);
      zk *= z;
    } else {
      const double log_mag = k * log_r - std::lgamma(g);
      if (log_mag > kLogMax) throw Error(ErrorCode::Overflow, "series term exceeds the double range");
      term = std::polar(std::exp(log_mag), k * theta);
    }
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw Error(ErrorCode::Overflow, "series term exceeds the double range");
    }
    sum += term;
    if (g > peak && std::abs(term) <= tol * std::abs(sum)) {
      if (++small_run >= 2 || term == 0.0) return {sum, k + 1};
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "series did not converge in " + std::to_string(max_terms) + " terms");
}

cplx ml_asymptotic(const MLParams& params, cplx z, int k_terms) {
  params.validate();
  if (k_terms < 1) throw Error(ErrorCode::InvalidArgument, "k_terms must be at least 1");
  const double threshold = ml_asymptotic_radius(params.alpha);
  if (std::abs(z) < threshold) {
    throw Error(ErrorCode::RegionViolation,
                "|z| = " + std::to_string(std::abs(z)) + " is below the asymptotic threshold " +
                    std::to_string(threshold));
  }
  const cplx v = asymptotic_impl(params, make_arg(z), k_terms, false);
  check_finite(v, "asymptotic expansion");
  return v;
}

namespace {

cplx contour_impl(const MLParams& params, const Arg& arg) {
  const double alpha = params.alpha;
  const double beta = params.beta_ml;
  const cplx z = arg.z;
  if (arg.r == 0.0) return rgamma(beta);

  const double R = std::pow(arg.r, 1.0 / alpha);
  const double psi = kPi * arg.turns / alpha;
  const bool has_pole = std::abs(psi) < kPi;
  const ContourPlan plan = plan_contour(alpha, beta, R, psi, has_pole);
  if (plan.n > 20000) {
    throw Error(ErrorCode::NonConvergence, "contour quadrature needs too many nodes");
  }

  cplx sum = 0.0;
  for (int k = -plan.n; k <= plan.n; ++k) {
    const cplx w(1.0, k * plan.h);
    const cplx s = plan.mu * w * w;
    const cplx log_s = std::log(s);
    const cplx numer = std::exp(s + (alpha - beta) * log_s);
    const cplx denom = std::exp(alpha * log_s) - z;
    sum += numer / denom * w;
  }
  cplx value = sum * (plan.h * plan.mu / kPi);
  if (plan.residue) value += exponential_term(alpha, beta, arg);
  check_finite(value, "contour quadrature");
  return value;
}

cplx eval_region(const MLParams& p, const Arg& arg, MLMethod method) {
  switch (method) {
    case MLMethod::Exponential: {
      if (arg.z.real() > kLogMax) throw Error(ErrorCode::Overflow, "exp(z) exceeds the double range");
      if (arg.exact && arg.turns == 0.5) return std::polar(1.0, arg.r);
      if (arg.exact && arg.turns == -0.5) return std::polar(1.0, -arg.r);
      return std::exp(arg.z);
    }
    case MLMethod::Series: return ml_series(p, arg.z).value;
    case MLMethod::Contour: return contour_impl(p, arg);
    case MLMethod::Asymptotic: {
      const cplx v = asymptotic_impl(p, arg, 400, true);
      check_finite(v, "asymptotic expansion");
      return v;
    }
  }
  return {};
}

MLMethod pick_method(const MLParams& p, double r) {
  if (p.alpha == 1.0 && p.beta_ml == 1.0) return MLMethod::Exponential;
  if (r <= ml_series_radius(p.alpha)) return MLMethod::Series;
  if (r >= ml_asymptotic_radius(p.alpha)) return MLMethod::Asymptotic;
  return MLMethod::Contour;
}

MLEvaluation evaluate(const MLParams& params, const Arg& arg) {
  params.validate();
  const double r = arg.r;
  MLEvaluation out;
  out.method = pick_method(params, r);
  out.value = eval_region(params, arg, out.method);
  if (out.method == MLMethod::Exponential) return out;

  // Cross-check against the neighbouring method inside a 5% collar of each boundary.
  const double r_series = ml_series_radius(params.alpha);
  const double r_asym = ml_asymptotic_radius(params.alpha);
  MLMethod other = out.method;
  if (std::abs(r - r_series) <= 0.05 * r_series) {
    other = out.method == MLMethod::Series ? MLMethod::Contour : MLMethod::Series;
  } else if (std::abs(r - r_asym) <= 0.05 * r_asym) {
    other = out.method == MLMethod::Asymptotic ? MLMethod::Contour : MLMethod::Asymptotic;
  }
  if (other != out.method) {
    const cplx alt = eval_region(params, arg, other);
    const double scale = std::max(std::abs(out.value), std::numeric_limits<double>::min());
    out.boundary_discrepancy = std::abs(alt - out.value) / scale;
    out.accuracy_loss = out.boundary_discrepancy > 1e-8;
  }
  return out;
}

}  // namespace

cplx ml_contour(const MLParams& params, cplx z) {
  params.validate();
  return contour_impl(params, make_arg(z));
}

cplx ml_eval(const MLParams& params, cplx z) {
  params.validate();
  const Arg arg = make_arg(z);
  return eval_region(params, arg, pick_method(params, arg.r));
}

cplx ml_eval_polar(const MLParams& params, double modulus, double turns) {
  params.validate();
  if (!(modulus >= 0.0) || !std::isfinite(turns)) {
    throw Error(ErrorCode::InvalidArgument, "polar argument needs modulus >= 0 and finite phase");
  }
  const Arg arg = make_polar(modulus, turns);
  return eval_region(params, arg, pick_method(params, arg.r));
}

cplx ml_polar_algebraic_part(const MLParams& params, double modulus, double turns) {
  params.validate();
  if (!(modulus >= 0.0) || !std::isfinite(turns)) {
    throw Error(ErrorCode::InvalidArgument, "polar argument needs modulus >= 0 and finite phase");
  }
  const Arg arg = make_polar(modulus, turns);
  if (arg.r == 0.0) return rgamma(params.beta_ml);
  if (arg.r >= ml_asymptotic_radius(params.alpha) && std::abs(arg.turns) <= 0.75 * params.alpha) {
    const cplx v = algebraic_tail(params.alpha, params.beta_ml, arg.z, 400, true, 0.0);
    check_finite(v, "asymptotic expansion");
    return v;
  }
  return eval_region(params, arg, pick_method(params, arg.r)) -
         exponential_term(params.alpha, params.beta_ml, arg);
}

MLEvaluation ml_eval_detailed(const MLParams& params, cplx z) {
  return evaluate(params, make_arg(z));
}

cplx i_pow_neg(double gamma) {
  // exact values on the axes keep t = 0 and alpha = 1 cases clean
  const double q = std::fmod(gamma, 4.0);
  if (q == 0.0) return {1.0, 0.0};
  if (q == 1.0 || q == -3.0) return {0.0, -1.0};
  if (q == 2.0 || q == -2.0) return {-1.0, 0.0};
  if (q == 3.0 || q == -1.0) return {0.0, 1.0};
  return std::polar(1.0, -0.5 * kPi * gamma);
}

cplx ml_symbol(const SymbolSpec& spec, double t, double xi_mag, bool allow_nontempered) {
  spec.validate();
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  if (!(xi_mag >= 0.0)) throw Error(ErrorCode::InvalidArgument, "|xi| must be non-negative");
  if (!spec.tempered() && !allow_nontempered) {
    throw Error(ErrorCode::NotTempered,
                "gamma < alpha: the propagator is not a tempered distribution");
  }
  if (t == 0.0 || xi_mag == 0.0) return 1.0;
  const double modulus = std::pow(t, spec.alpha) * std::pow(xi_mag, spec.beta);
  return ml_eval_polar({spec.alpha, 1.0}, modulus, -0.5 * spec.gamma);
}

}  // namespace fracwave
