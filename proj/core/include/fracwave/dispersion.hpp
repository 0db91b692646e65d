#pragma once

#include <string>
#include <vector>

#include "fracwave/grid.hpp"

namespace fracwave {

// Real dispersion relation w(xi) for the unitary flow e^{-i t w(xi)}.
// Closed forms are radial in d > 1 (functions of |xi|), except `linear`,
// which is c * xi_1 (transport along the first axis). In d = 1 `linear`
// and `polynomial` use the signed xi.
class Dispersion {
 public:
  enum class Kind { Abs, Square, Power, Indicator, Linear, Polynomial, Tabulated };

  static Dispersion abs();
  static Dispersion square();
  static Dispersion power(double exponent);
  static Dispersion indicator(double radius = 1.0);  // 1 on |xi| <= radius, else 0
  static Dispersion linear(double velocity);
  static Dispersion polynomial(std::vector<double> coefficients);  // c0 + c1 xi + ...
  // One real value per frequency node (centred order); must match the grid used.
  static Dispersion tabulated(Grid grid, std::vector<double> values);

  // "abs", "square", "power:<a>", "indicator[:<r>]", "linear:<c>", "poly:<c0>,<c1>,..."
  static Dispersion parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  bool closed_form() const noexcept { return kind_ != Kind::Tabulated; }
  std::string describe() const;

  // Closed-form value at a scalar frequency (signed in d = 1).
  double operator()(double xi) const;
  // w(base + delta) - w(base), computed without cancelling two large values
  // where the closed form allows it.
  double difference(double base, double delta) const;
  // Derivative bound on [lo, hi], used to size oscillatory quadratures.
  double max_slope(double lo, double hi) const;
  // Points where w is not smooth (kinks of |xi|, jumps of the indicator).
  std::vector<double> singular_points() const;

  // Values at every frequency node of `grid`. Throws ShapeMismatch for a
  // tabulated relation built on another grid.
  std::vector<double> on_grid(const Grid& grid) const;

 private:
  Dispersion(Kind kind, double param, std::vector<double> coeffs)
      : kind_(kind), param_(param), coeffs_(std::move(coeffs)) {}

  Kind kind_;
  double param_;
  std::vector<double> coeffs_;
  std::vector<int> table_points_;
  std::vector<double> table_extent_;
};

}  // namespace fracwave
