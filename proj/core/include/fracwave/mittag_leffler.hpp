#pragma once

#include <complex>

#include "fracwave/symbol.hpp"

namespace fracwave {

using cplx = std::complex<double>;

// Parameters of the two-parameter function E_{alpha,beta_ml}(z) = sum z^k / Gamma(alpha k + beta_ml).
// beta_ml is the second Mittag-Leffler parameter, unrelated to SymbolSpec::beta.
struct MLParams {
  double alpha = 1.0;
  double beta_ml = 1.0;

  void validate() const;
};

struct SeriesResult {
  cplx value;
  int terms = 0;
};

enum class MLMethod { Exponential, Series, Contour, Asymptotic };

struct MLEvaluation {
  cplx value;
  MLMethod method = MLMethod::Series;
  // Set when |z| sits next to a region boundary and the neighbouring method
  // disagrees by more than 1e-8 relative.
  bool accuracy_loss = false;
  double boundary_discrepancy = 0.0;
};

// Region boundaries of the evaluator. Taylor series for |z| <= ml_series_radius,
// asymptotic expansion for |z| >= ml_asymptotic_radius, contour quadrature between.
double ml_series_radius(double alpha);
double ml_asymptotic_radius(double alpha);

// Plain Taylor summation. Stops once a term past the peak falls below
// tol * |partial sum|. Throws NonConvergence or Overflow.
SeriesResult ml_series(const MLParams& params, cplx z, int max_terms = 20000,
                       double tol = 1e-17);

// k_terms-term large-|z| expansion. The exponential contribution
// (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha)) is included exactly when
// |arg z| <= 3 pi alpha / 4. Throws RegionViolation below ml_asymptotic_radius.
cplx ml_asymptotic(const MLParams& params, cplx z, int k_terms);

// Inverse Laplace transform along a parabolic contour, trapezoid rule.
// Valid for any z; used by ml_eval in the intermediate annulus.
cplx ml_contour(const MLParams& params, cplx z);

// Region-switched evaluation.
cplx ml_eval(const MLParams& params, cplx z);
MLEvaluation ml_eval_detailed(const MLParams& params, cplx z);

// E at z = modulus * exp(i pi turns), with the phase taken as exact. On the
// rays used by the propagator this avoids the error that rounding z to a
// double introduces in exp(z^(1/alpha)) once |z|^(1/alpha) is huge.
cplx ml_eval_polar(const MLParams& params, double modulus, double turns);

// E minus its exponential part (1/alpha) z^((1-beta)/alpha) exp(z^(1/alpha)),
// at z = modulus * exp(i pi turns). In the asymptotic region with the
// exponential inside the sector this is the algebraic sum alone, which avoids
// cancelling two nearly equal oscillating terms.
cplx ml_polar_algebraic_part(const MLParams& params, double modulus, double turns);

// i^{-gamma} = exp(-i pi gamma / 2)
cplx i_pow_neg(double gamma);

// E_alpha(i^{-gamma} t^alpha |xi|^beta). Throws NotTempered for gamma < alpha
// unless allow_nontempered is set.
cplx ml_symbol(const SymbolSpec& spec, double t, double xi_mag,
               bool allow_nontempered = false);

}  // namespace fracwave
