#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/grid.hpp"
#include "fracwave/littlewood_paley.hpp"
#include "fracwave/symbol.hpp"

namespace fracwave {

enum class Observable { LinfU, LinfUSquared, L2Residual, TailMass, BandSup };

std::string_view to_string(Observable o) noexcept;
Observable parse_observable(std::string_view name);  // InvalidArgument on unknown names

struct DecaySeries {
  std::vector<double> times;
  std::vector<double> values;
  Observable observable = Observable::LinfU;
  std::uint64_t fingerprint = 0;
  std::vector<std::string> warnings;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
};

struct ScanOptions {
  double tail_radius = 0.0;            // TailMass
  std::vector<double> tail_center;     // TailMass, empty = origin
  DyadicBand band{0};                  // BandSup: ||P_N u(t)||_inf
  bool allow_nontempered = false;
  // Support radius of the datum for the periodisation heuristic; negative
  // means "estimate from the samples" (|phi| > 1e-8 max|phi|).
  double support_radius = -1.0;
};

// n log-spaced times from lo to hi inclusive.
std::vector<double> geometric_times(double lo, double hi, int count);

// Propagates phi with the Mittag-Leffler flow to every time and records each
// observable. Times must be positive and strictly increasing. Warnings are
// attached (not thrown) for a grid that violates L >= 4 (R + t^max(alpha/beta,1) + 10)
// and for TruncationRisk, i.e. relative L2 mass above 1e-6 in the outer 10% of
// the box at the last time.
std::vector<DecaySeries> decay_scan(const Field& phi, const SymbolSpec& spec,
                                    const std::vector<double>& times,
                                    const std::vector<Observable>& observables,
                                    const ScanOptions& options = {});
DecaySeries decay_scan(const Field& phi, const SymbolSpec& spec, const std::vector<double>& times,
                       Observable observable, const ScanOptions& options = {});

// Least squares of ln(value) on ln(t) over samples with lo <= t <= hi.
// Throws InsufficientData with fewer than 8 usable samples.
FitResult fit_slope(const DecaySeries& series, double lo, double hi);
// Ordinary least squares y = intercept + slope x; t_lo/t_hi report the x range.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double lo,
                     double hi);

struct ResidualNormScan {
  double sup = 0.0;
  double argmax_xi = 0.0;
  bool monotone = true;  // |m| non-increasing along the radial sample
  std::vector<double> xi;
  std::vector<double> modulus;
};

// sup over xi of |m_{t,alpha}(xi)|, the L2 operator norm of E_alpha(t).
// The sample is xi = 0 plus `samples` log-spaced points with t|xi| in [1e-8, 1e6].
ResidualNormScan residual_norm_scan(double alpha, double t, int samples = 2001);
double residual_operator_norm(double alpha, double t);

// ||E_alpha(t) phi||_2 for each t (alpha = beta = gamma).
DecaySeries strong_convergence_scan(const Field& phi, double alpha, const std::vector<double>& times);

// L2 mass of u on |x - center| > radius divided by the total. radius < L/2.
double tail_mass(const Field& u, double radius, const std::vector<double>& center = {});

enum class EnvelopeBranch {
  EqualOrders,  // alpha = gamma: N^d (1/(1+t^a N^b) + 1/(1+t^(d/2) N^(d b/(2a))))
  Tempered,     // alpha < gamma <= 1: N^d / (1 + t^a N^b)
};

EnvelopeBranch envelope_branch(const SymbolSpec& spec);  // InvalidArgument otherwise
double envelope_value(const SymbolSpec& spec, int dim, double N, double t);

struct EnvelopeCell {
  double N = 0.0;
  double t = 0.0;
  double band_sup = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

struct EnvelopeSweep {
  EnvelopeBranch branch = EnvelopeBranch::EqualOrders;
  std::vector<EnvelopeCell> cells;  // sorted by (N, t)
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max_ratio / min_ratio
};

EnvelopeSweep envelope_sweep(const Grid& grid, const SymbolSpec& spec,
                             const std::vector<DyadicBand>& bands, const std::vector<double>& times);

}  // namespace fracwave
