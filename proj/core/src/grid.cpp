#include "fracwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave {

Grid::Grid(int dim, std::vector<int> points, std::vector<double> extent)
    : dim_(dim), points_(std::move(points)), extent_(std::move(extent)), size_(1) {
  if (dim_ < 1 || dim_ > 3) {
    throw Error(ErrorCode::InvalidArgument, "grid dimension must be 1, 2 or 3");
  }
  if (points_.size() != static_cast<std::size_t>(dim_) ||
      extent_.size() != static_cast<std::size_t>(dim_)) {
    throw Error(ErrorCode::ShapeMismatch, "grid needs one point count and one extent per axis");
  }
  for (int a = 0; a < dim_; ++a) {
    const int n = points_[a];
    if (n < 8 || (n & (n - 1)) != 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "points per axis must be a power of two >= 8, got " + std::to_string(n));
    }
    if (!(extent_[a] > 0.0) || !std::isfinite(extent_[a])) {
      throw Error(ErrorCode::InvalidArgument, "grid extent must be positive and finite");
    }
    size_ *= static_cast<std::size_t>(n);
  }
}

Grid Grid::uniform(int dim, int points, double extent) {
  const auto d = static_cast<std::size_t>(std::max(dim, 0));
  return Grid(dim, std::vector<int>(d, points), std::vector<double>(d, extent));
}

double Grid::dxi(int axis) const { return 2.0 * std::numbers::pi / extent_.at(axis); }

double Grid::nyquist() const {
  double best = 0.0;
  for (int a = 0; a < dim_; ++a) best = std::max(best, std::numbers::pi * points_[a] / extent_[a]);
  return best;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= dx(a);
  return v;
}

double Grid::dual_cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= dxi(a);
  return v;
}

void Grid::unflatten(std::size_t flat, int* index) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(points_[a]);
    index[a] = static_cast<int>(flat % n);
    flat /= n;
  }
}

Field::Field(Grid grid, Domain domain)
    : grid_(std::move(grid)), domain_(domain), samples_(grid_.size(), cplx(0.0)) {}

Field::Field(Grid grid, Domain domain, std::vector<cplx> samples)
    : grid_(std::move(grid)), domain_(domain), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw Error(ErrorCode::ShapeMismatch, "sample count " + std::to_string(samples_.size()) +
                                              " does not match grid size " +
                                              std::to_string(grid_.size()));
  }
}

std::vector<double> node_radius_squared(const Grid& grid, Domain domain,
                                        const std::vector<double>& center) {
  const int d = grid.dim();
  if (!center.empty() && center.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorCode::ShapeMismatch, "center must have one coordinate per axis");
  }
  std::vector<std::vector<double>> axis_sq(d);
  for (int a = 0; a < d; ++a) {
    const int n = grid.points(a);
    axis_sq[a].resize(n);
    for (int j = 0; j < n; ++j) {
      double c = domain == Domain::Space ? grid.x(a, j) : grid.xi(a, j);
      if (domain == Domain::Space && !center.empty()) c -= center[a];
      axis_sq[a][j] = c * c;
    }
  }
  std::vector<double> out(grid.size());
  int idx[3] = {0, 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    grid.unflatten(i, idx);
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += axis_sq[a][idx[a]];
    out[i] = r2;
  }
  return out;
}

double l2_norm(const Field& f) {
  double sum = 0.0;
  for (const cplx& v : f.samples()) sum += std::norm(v);
  const Grid& g = f.grid();
  if (f.domain() == Domain::Space) return std::sqrt(sum * g.cell_volume());
  return std::sqrt(sum * g.dual_cell_volume() / std::pow(2.0 * std::numbers::pi, g.dim()));
}

double linf_norm(const Field& f) {
  double best = 0.0;
  for (const cplx& v : f.samples()) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace fracwave
