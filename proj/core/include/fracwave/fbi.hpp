#pragma once

#include <vector>

#include "fracwave/analysis.hpp"
#include "fracwave/dispersion.hpp"

namespace fracwave {

// Probe of real-analyticity of the kernel of e^{-itw(D)} at x0 through
//   I(lambda) = int exp(-i (t w(lambda^2 xi - lambda z) + lambda x0 z)) e^{-z^2/4} dz,
// whose Gaussian decay |I| <= C exp(-sigma lambda^2) indicates analyticity.
struct FBIConfig {
  Dispersion w = Dispersion::square();  // closed forms only
  double x0 = 0.0;
  double t = 1.0;
  double xi = 2.0;
  std::vector<double> lambdas = default_lambdas();
  // Minimum number of quadrature nodes; more are used when the phase oscillates.
  int quad_order = 128;

  static std::vector<double> default_lambdas();  // 1, 1.5, ..., 6
  void validate() const;  // InvalidArgument: lambdas >= 1 ascending, quad_order >= 64, closed-form w
};

struct FBISample {
  double lambda = 0.0;
  cplx value;
  // Cancellation floor of the quadrature sum; values below it carry no digits.
  double noise_floor = 0.0;
  double rel_change = 0.0;  // between the rule and its node-doubled refinement
  int nodes = 0;
  bool below_floor = false;
};

// Composite Gauss-Legendre on [-12, 12] split at the kinks and jumps of w,
// with panel count set by the total phase variation; checked against a rule
// with twice the panels. Throws QuadratureUnstable when the two differ by more
// than 1e-4 relative and by more than the noise floor.
FBISample fbi_sample(const FBIConfig& cfg, double lambda);
cplx fbi_integral(const FBIConfig& cfg, double lambda);

enum class FBIVerdict { Analytic, NonAnalytic, Ambiguous };
const char* to_string(FBIVerdict v) noexcept;

struct FBIFit {
  FitResult fit;      // ln|I| against lambda^2 over samples above the noise floor
  double sigma = 0.0; // -slope
  FBIVerdict verdict = FBIVerdict::Ambiguous;
  std::vector<FBISample> samples;
};

// sigma >= 0.01 gives Analytic; sigma < 0.01 with fit RMS below 0.05 gives
// NonAnalytic; anything else is Ambiguous. Needs 8 samples above the floor.
FBIFit fbi_decay_exponent(const FBIConfig& cfg);

}  // namespace fracwave
