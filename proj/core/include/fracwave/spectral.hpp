#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracwave/dispersion.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/symbol.hpp"

namespace fracwave {

// Distinct |xi| values of a grid and the map node -> distinct value, so a
// radial symbol is evaluated once per radius rather than once per node.
class RadialFrequencies {
 public:
  explicit RadialFrequencies(const Grid& grid);

  const std::vector<double>& radii() const noexcept { return radii_; }
  const std::vector<std::uint32_t>& node_radius() const noexcept { return node_radius_; }

  // Per-node values of a radial symbol. Radii for which `needed` returns false
  // are not evaluated and read as 0. Evaluation runs on the shared thread pool.
  std::vector<cplx> tabulate(const std::function<cplx(double)>& symbol,
                             const std::function<bool(double)>& needed = {}) const;

 private:
  std::vector<double> radii_;
  std::vector<std::uint32_t> node_radius_;
};

// Pointwise product of a frequency-domain field with per-node values.
Field multiply(const Field& spectrum, const std::vector<cplx>& values);

// E_alpha(i^-alpha (t|xi|)^alpha) - (1/alpha) e^{-i t|xi|}: the multiplier of
// the remainder after the half-wave part is split off (alpha = beta = gamma).
cplx residual_multiplier(double alpha, double t, double xi_mag);

// Holds the transform of an initial datum so several times can be propagated
// without repeating the forward FFT.
class Propagator {
 public:
  explicit Propagator(const Field& phi);

  const Field& spectrum() const noexcept { return spectrum_; }
  const RadialFrequencies& radial() const noexcept { return radial_; }

  Field ml(const SymbolSpec& spec, double t, bool allow_nontempered = false) const;
  Field halfwave(double t) const;
  Field unitary(const Dispersion& w, double t) const;
  Field residual(double alpha, double t) const;

 private:
  Field apply(const std::vector<cplx>& multiplier) const;

  Field spectrum_;
  RadialFrequencies radial_;
};

// u = F^-1[E_alpha(i^-gamma t^alpha |xi|^beta) F phi]; returns phi itself at t = 0.
// Throws NotTempered for gamma < alpha unless allowed, ShapeMismatch for a
// frequency-domain input.
Field propagate_ml(const Field& phi, const SymbolSpec& spec, double t,
                   bool allow_nontempered = false);
Field propagate_halfwave(const Field& phi, double t);
Field propagate_unitary(const Field& phi, const Dispersion& w, double t);
// E_alpha(t) phi = R_{t,alpha} * phi, the remainder of the alpha = beta = gamma flow.
Field apply_residual(const Field& phi, double alpha, double t);

// Initial data on a grid: "gaussian" exp(-|x|^2/2), "bump" exp(-1/(1-|x|^2)) on
// |x| < 1, "annulus_wave" (sin 2x - sin x)/x (d = 1 only).
Field make_preset(const std::string& name, const Grid& grid);
std::vector<std::string> preset_names();
// Radius of the support of a preset, or +inf when it is not compactly supported.
double preset_support_radius(const std::string& name);

}  // namespace fracwave
