#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fracwave {

using cplx = std::complex<double>;

// Periodic uniform grid on a box of side L_a, n_a points per axis (power of two, n_a >= 8).
// Nodes are x_j = (j - n/2) dx and xi_m = 2 pi (m - n/2) / L, so both the
// spatial and the frequency arrays are stored centred on the origin.
class Grid {
 public:
  Grid(int dim, std::vector<int> points, std::vector<double> extent);
  static Grid uniform(int dim, int points, double extent);

  int dim() const noexcept { return dim_; }
  int points(int axis) const { return points_.at(axis); }
  double extent(int axis) const { return extent_.at(axis); }
  const std::vector<int>& points() const noexcept { return points_; }
  const std::vector<double>& extent() const noexcept { return extent_; }

  double dx(int axis) const { return extent_.at(axis) / points_.at(axis); }
  double dxi(int axis) const;
  double x(int axis, int j) const { return (j - points_[axis] / 2) * dx(axis); }
  double xi(int axis, int m) const { return (m - points_[axis] / 2) * dxi(axis); }
  // Largest resolved |xi_a| over all axes: pi n / L.
  double nyquist() const;

  std::size_t size() const noexcept { return size_; }
  double cell_volume() const;       // prod dx
  double dual_cell_volume() const;  // prod dxi

  // Row-major multi-index (last axis fastest).
  void unflatten(std::size_t flat, int* index) const;

  bool operator==(const Grid& other) const noexcept {
    return dim_ == other.dim_ && points_ == other.points_ && extent_ == other.extent_;
  }

 private:
  int dim_;
  std::vector<int> points_;
  std::vector<double> extent_;
  std::size_t size_;
};

enum class Domain : std::uint8_t { Space = 0, Frequency = 1 };

// Samples of a complex field on a grid, either f(x_j) or an approximation of
// the continuum transform f^(xi_m). Immutable once built.
class Field {
 public:
  Field(Grid grid, Domain domain);  // zeros
  Field(Grid grid, Domain domain, std::vector<cplx> samples);

  const Grid& grid() const noexcept { return grid_; }
  Domain domain() const noexcept { return domain_; }
  const std::vector<cplx>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }

 private:
  Grid grid_;
  Domain domain_;
  std::vector<cplx> samples_;
};

// Squared distance of every node from `center` (space) or |xi|^2 (frequency).
std::vector<double> node_radius_squared(const Grid& grid, Domain domain,
                                        const std::vector<double>& center = {});

// Discrete L2 norm approximating the continuum one: sqrt(sum |f|^2 dx^d) in
// space, sqrt((2 pi)^-d sum |F|^2 dxi^d) in frequency.
double l2_norm(const Field& f);
double linf_norm(const Field& f);

}  // namespace fracwave
