#include "fracwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracwave/error.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {

RadialFrequencies::RadialFrequencies(const Grid& grid) : node_radius_(grid.size()) {
  const int d = grid.dim();
  const bool cubic = std::all_of(grid.extent().begin(), grid.extent().end(),
                                 [&](double L) { return L == grid.extent(0); });
  int idx[3] = {0, 0, 0};
  if (cubic) {
    // Integer keys sum k_a^2 group equal radii exactly.
    std::vector<std::int64_t> keys(grid.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      grid.unflatten(i, idx);
      std::int64_t key = 0;
      for (int a = 0; a < d; ++a) {
        const std::int64_t k = idx[a] - grid.points(a) / 2;
        key += k * k;
      }
      keys[i] = key;
    }
    std::vector<std::int64_t> unique = keys;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    const double step = grid.dxi(0);
    radii_.resize(unique.size());
    for (std::size_t u = 0; u < unique.size(); ++u) {
      radii_[u] = step * std::sqrt(static_cast<double>(unique[u]));
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      node_radius_[i] = static_cast<std::uint32_t>(
          std::lower_bound(unique.begin(), unique.end(), keys[i]) - unique.begin());
    }
    return;
  }
  const std::vector<double> r2 = node_radius_squared(grid, Domain::Frequency);
  std::vector<double> unique = r2;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  radii_.resize(unique.size());
  for (std::size_t u = 0; u < unique.size(); ++u) radii_[u] = std::sqrt(unique[u]);
  for (std::size_t i = 0; i < r2.size(); ++i) {
    node_radius_[i] = static_cast<std::uint32_t>(
        std::lower_bound(unique.begin(), unique.end(), r2[i]) - unique.begin());
  }
}

std::vector<cplx> RadialFrequencies::tabulate(const std::function<cplx(double)>& symbol,
                                              const std::function<bool(double)>& needed) const {
  constexpr std::size_t kChunk = 256;
  std::vector<cplx> per_radius(radii_.size(), cplx(0.0));
  const std::size_t chunks = (radii_.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(radii_.size(), (c + 1) * kChunk);
    for (std::size_t u = c * kChunk; u < end; ++u) {
      if (!needed || needed(radii_[u])) per_radius[u] = symbol(radii_[u]);
    }
  });
  std::vector<cplx> out(node_radius_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = per_radius[node_radius_[i]];
  return out;
}

Field multiply(const Field& spectrum, const std::vector<cplx>& values) {
  if (spectrum.domain() != Domain::Frequency) {
    throw Error(ErrorCode::ShapeMismatch, "multiplier needs a frequency-domain field");
  }
  if (values.size() != spectrum.size()) {
    throw Error(ErrorCode::ShapeMismatch, "multiplier size does not match the field");
  }
  std::vector<cplx> out(values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i] * values[i];
  return Field(spectrum.grid(), Domain::Frequency, std::move(out));
}

cplx residual_multiplier(double alpha, double t, double xi_mag) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "residual multiplier needs 0 < alpha <= 1");
  }
  if (!(t >= 0.0) || !(xi_mag >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "t and |xi| must be non-negative");
  }
  const double tau = t * xi_mag;
  if (tau == 0.0) return 1.0 - 1.0 / alpha;
  // i^-alpha tau^alpha lies on arg z = -pi alpha / 2, inside the sector where
  // the exponential part is exactly (1/alpha) e^{-i tau}.
  return ml_polar_algebraic_part({alpha, 1.0}, std::pow(tau, alpha), -0.5 * alpha);
}

Propagator::Propagator(const Field& phi) : spectrum_(transform(phi)), radial_(phi.grid()) {}

Field Propagator::apply(const std::vector<cplx>& multiplier) const {
  return inverse_transform(multiply(spectrum_, multiplier));
}

Field Propagator::ml(const SymbolSpec& spec, double t, bool allow_nontempered) const {
  spec.validate();
  if (!spec.tempered() && !allow_nontempered) {
    throw Error(ErrorCode::NotTempered, "gamma < alpha: the propagator is not a tempered distribution");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  return apply(radial_.tabulate(
      [&](double r) { return ml_symbol(spec, t, r, allow_nontempered); }));
}

Field Propagator::halfwave(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  return apply(radial_.tabulate([&](double r) { return std::polar(1.0, -t * r); }));
}

Field Propagator::unitary(const Dispersion& w, double t) const {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
  const std::vector<double> values = w.on_grid(spectrum_.grid());
  std::vector<cplx> m(values.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, -t * values[i]);
  return apply(m);
}

Field Propagator::residual(double alpha, double t) const {
  return apply(radial_.tabulate([&](double r) { return residual_multiplier(alpha, t, r); }));
}

Field propagate_ml(const Field& phi, const SymbolSpec& spec, double t, bool allow_nontempered) {
  spec.validate();
  if (!spec.tempered() && !allow_nontempered) {
    throw Error(ErrorCode::NotTempered, "gamma < alpha: the propagator is not a tempered distribution");
  }
  if (phi.domain() != Domain::Space) {
    throw Error(ErrorCode::ShapeMismatch, "initial data must be a space-domain field");
  }
  if (t == 0.0) return phi;
  return Propagator(phi).ml(spec, t, allow_nontempered);
}

Field propagate_halfwave(const Field& phi, double t) {
  if (phi.domain() != Domain::Space) {
    throw Error(ErrorCode::ShapeMismatch, "initial data must be a space-domain field");
  }
  if (t == 0.0) return phi;
  return Propagator(phi).halfwave(t);
}

Field propagate_unitary(const Field& phi, const Dispersion& w, double t) {
  return Propagator(phi).unitary(w, t);
}

Field apply_residual(const Field& phi, double alpha, double t) {
  return Propagator(phi).residual(alpha, t);
}

std::vector<std::string> preset_names() { return {"gaussian", "bump", "annulus_wave"}; }

double preset_support_radius(const std::string& name) {
  if (name == "bump") return 1.0;
  return std::numeric_limits<double>::infinity();
}

Field make_preset(const std::string& name, const Grid& grid) {
  std::vector<cplx> v(grid.size());
  if (name == "annulus_wave") {
    if (grid.dim() != 1) {
      throw Error(ErrorCode::InvalidArgument, "annulus_wave is defined for d = 1 only");
    }
    for (int j = 0; j < grid.points(0); ++j) {
      const double x = grid.x(0, j);
      v[j] = x == 0.0 ? 1.0 : (std::sin(2.0 * x) - std::sin(x)) / x;
    }
    return Field(grid, Domain::Space, std::move(v));
  }
  const std::vector<double> r2 = node_radius_squared(grid, Domain::Space);
  if (name == "gaussian") {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-0.5 * r2[i]);
  } else if (name == "bump") {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = r2[i] < 1.0 ? std::exp(-1.0 / (1.0 - r2[i])) : 0.0;
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
  }
  return Field(grid, Domain::Space, std::move(v));
}

}  // namespace fracwave
