#pragma once

#include "fracwave/grid.hpp"

namespace fracwave {

// F[f](xi) = int f(x) e^{-i x.xi} dx, approximated on the grid:
//   F_m = dx^d sum_j f_j e^{-i x_j . xi_m}.
// The inverse uses (2 pi)^-d dxi^d, so inverse_transform(transform(f)) == f.
// Throws ShapeMismatch when the field is in the wrong domain.
Field transform(const Field& f);
Field inverse_transform(const Field& f);

}  // namespace fracwave
