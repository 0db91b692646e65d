#pragma once

#include <cmath>
#include <vector>

#include "fracwave/grid.hpp"
#include "fracwave/spectral.hpp"
#include "fracwave/symbol.hpp"

namespace fracwave {

// Smooth cutoff: eta = 1 on [0, 1], 0 on [2, inf), monotone C-infinity bridge
// built from exp(-1/x).
double lp_eta(double r);

// zeta(r / N) with zeta(r) = eta(r) - eta(2r). Supported in (N/2, 2N), equal to
// 1 at r = N, and sum_j zeta(2^-j r) = 1 for every r > 0 (telescoping).
double lp_window(double r, double N);

// Band N = 2^j.
struct DyadicBand {
  int j = 0;
  double N() const { return std::ldexp(1.0, j); }
};

// A band is resolvable when N >= 2 * (2 pi / L) and 2N <= pi n / L on every axis.
bool band_resolvable(const Grid& grid, DyadicBand band);
// All resolvable bands in increasing order; throws BandUnresolvable if none.
std::vector<DyadicBand> resolvable_bands(const Grid& grid);

// P_N f = F^-1[zeta_N f^] for a space-domain field. Throws BandUnresolvable.
Field lp_project(const Field& f, DyadicBand band);

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;  // +inf allowed
  double q = 2.0;  // +inf allowed
  bool homogeneous = true;

  void validate() const;  // InvalidArgument unless p, q >= 1
};

struct BesovResult {
  double norm = 0.0;
  // Estimated contribution of the bands the grid cannot resolve.
  double tail_estimate = 0.0;
  std::vector<DyadicBand> bands;
  std::vector<double> band_norms;  // ||P_N f||_p per entry of `bands`
  double low_block_norm = 0.0;     // inhomogeneous only: ||F^-1[eta(2|xi|) f^]||_p
};

// (sum_N w_N^q ||P_N f||_p^q)^(1/q), w_N = N^s (homogeneous) or (1 + N^2)^(s/2)
// for N >= 1 plus the low block eta(2|xi|) with weight 1 (inhomogeneous).
// The homogeneous sum drops bands below 4 pi / L and estimates them by
// N^(s + d(1 - 1/p)) ||f||_1; bands past the Nyquist limit are estimated from
// the unresolved remainder of f. Throws TailDominates when the estimate
// exceeds 1% of the norm.
BesovResult besov_norm(const Field& f, const BesovSpec& spec);

// ||P_N K_t||_inf on the grid, K_t the kernel of the symbol
// E_alpha(i^-gamma t^alpha |xi|^beta). Needs pi n / L >= 4N as well as a
// resolvable band; throws BandUnresolvable otherwise.
double band_kernel_sup(const Grid& grid, const SymbolSpec& spec, double t, DyadicBand band,
                       bool allow_nontempered = false);
// Same, reusing the radial node table of `grid`.
double band_kernel_sup(const Grid& grid, const RadialFrequencies& radial, const SymbolSpec& spec,
                       double t, DyadicBand band, bool allow_nontempered = false);

}  // namespace fracwave
