#pragma once

namespace fracwave {

// Orders of i^gamma d_t^alpha u = (-Delta)^(beta/2) u.
//   alpha: Caputo time order, 0 < alpha <= 1
//   beta:  spatial (Riesz) order, beta > 0
//   gamma: phase order; the propagator is a tempered distribution iff gamma >= alpha
struct SymbolSpec {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  bool tempered() const noexcept { return gamma >= alpha; }

  // Throws InvalidArgument when alpha or beta are out of range.
  void validate() const;
};

}  // namespace fracwave
