#include "fracwave/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracwave/error.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/mittag_leffler.hpp"

namespace fracwave {
namespace {

double glue(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double lp_norm(const Field& f, double p) {
  const double dv = f.grid().cell_volume();
  if (std::isinf(p)) return linf_norm(f);
  double sum = 0.0;
  for (const cplx& v : f.samples()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * dv, 1.0 / p);
}

// l^q combination of non-negative terms.
double lq_sum(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double s = 0.0;
  for (double t : terms) s += std::pow(t, q);
  return std::pow(s, 1.0 / q);
}

double max_dxi(const Grid& g) {
  double m = 0.0;
  for (int a = 0; a < g.dim(); ++a) m = std::max(m, g.dxi(a));
  return m;
}

double min_nyquist(const Grid& g) {
  double m = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.dim(); ++a) m = std::min(m, std::numbers::pi * g.points(a) / g.extent(a));
  return m;
}

Field mask(const Field& spectrum, const std::vector<double>& radius, double (*weight)(double, double),
           double N) {
  std::vector<cplx> out(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i] * weight(radius[i], N);
  return inverse_transform(Field(spectrum.grid(), Domain::Frequency, std::move(out)));
}

double low_block(double r, double /*unused*/) { return lp_eta(2.0 * r); }

}  // namespace

double lp_eta(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = glue(2.0 - r);
  return a / (a + glue(r - 1.0));
}

double lp_window(double r, double N) {
  const double x = r / N;
  return lp_eta(x) - lp_eta(2.0 * x);
}

bool band_resolvable(const Grid& grid, DyadicBand band) {
  const double N = band.N();
  return N >= 2.0 * max_dxi(grid) && 2.0 * N <= min_nyquist(grid);
}

std::vector<DyadicBand> resolvable_bands(const Grid& grid) {
  std::vector<DyadicBand> out;
  const int lo = static_cast<int>(std::ceil(std::log2(2.0 * max_dxi(grid)))) - 1;
  const int hi = static_cast<int>(std::floor(std::log2(min_nyquist(grid) / 2.0))) + 1;
  for (int j = lo; j <= hi; ++j) {
    if (band_resolvable(grid, {j})) out.push_back({j});
  }
  if (out.empty()) throw Error(ErrorCode::BandUnresolvable, "grid resolves no dyadic band");
  return out;
}

Field lp_project(const Field& f, DyadicBand band) {
  if (!band_resolvable(f.grid(), band)) {
    throw Error(ErrorCode::BandUnresolvable,
                "band N = " + std::to_string(band.N()) + " is not resolvable on this grid");
  }
  const Field spectrum = transform(f);
  std::vector<double> radius = node_radius_squared(f.grid(), Domain::Frequency);
  for (double& r : radius) r = std::sqrt(r);
  return mask(spectrum, radius, &lp_window, band.N());
}

void BesovSpec::validate() const {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "Besov indices p and q must be >= 1");
  }
  if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "Besov smoothness must be finite");
}

BesovResult besov_norm(const Field& f, const BesovSpec& spec) {
  spec.validate();
  if (f.domain() != Domain::Space) {
    throw Error(ErrorCode::ShapeMismatch, "Besov norms take a space-domain field");
  }
  const Grid& g = f.grid();
  const int d = g.dim();
  const Field spectrum = transform(f);
  std::vector<double> radius = node_radius_squared(g, Domain::Frequency);
  for (double& r : radius) r = std::sqrt(r);

  BesovResult res;
  std::vector<DyadicBand> bands = resolvable_bands(g);
  if (!spec.homogeneous) {
    bands.erase(std::remove_if(bands.begin(), bands.end(), [](DyadicBand b) { return b.j < 0; }),
                bands.end());
    // Bands 1 <= N < 4 pi / L are not resolvable in the strict sense but the
    // low block already needs them; include them so the partition is complete.
    const int first = bands.empty() ? static_cast<int>(std::floor(std::log2(min_nyquist(g) / 2.0)))
                                    : bands.front().j - 1;
    for (int j = first; j >= 0; --j) bands.insert(bands.begin(), DyadicBand{j});
    if (bands.empty() || 2.0 * bands.back().N() > min_nyquist(g)) {
      throw Error(ErrorCode::BandUnresolvable, "grid resolves no band with N >= 1");
    }
  }

  auto weight = [&](double N) {
    return spec.homogeneous ? std::pow(N, spec.s) : std::pow(1.0 + N * N, 0.5 * spec.s);
  };

  std::vector<double> terms;
  std::vector<cplx> covered(spectrum.size(), cplx(0.0));
  if (!spec.homogeneous) {
    const Field low = mask(spectrum, radius, &low_block, 0.0);
    res.low_block_norm = lp_norm(low, spec.p);
    terms.push_back(res.low_block_norm);
    for (std::size_t i = 0; i < covered.size(); ++i) covered[i] += lp_eta(2.0 * radius[i]);
  }
  for (DyadicBand b : bands) {
    const Field pn = mask(spectrum, radius, &lp_window, b.N());
    const double norm = lp_norm(pn, spec.p);
    res.bands.push_back(b);
    res.band_norms.push_back(norm);
    terms.push_back(weight(b.N()) * norm);
    for (std::size_t i = 0; i < covered.size(); ++i) covered[i] += lp_window(radius[i], b.N());
  }
  res.norm = lq_sum(terms, spec.q);

  // Unresolved high frequencies: whatever the partition has not covered above
  // the last band, weighted by the largest admissible N^s up to Nyquist.
  const double n_top = bands.back().N();
  std::vector<cplx> rest(spectrum.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    rest[i] = radius[i] > n_top ? spectrum[i] * (1.0 - covered[i]) : cplx(0.0);
  }
  const double high_norm =
      lp_norm(inverse_transform(Field(g, Domain::Frequency, std::move(rest))), spec.p);
  const double high_weight = spec.s >= 0.0 ? weight(std::max(g.nyquist(), n_top)) : weight(n_top);
  std::vector<double> tail_terms = {high_weight * high_norm};

  if (spec.homogeneous) {
    const double e = spec.s + d * (1.0 - (std::isinf(spec.p) ? 0.0 : 1.0 / spec.p));
    const double l1 = lp_norm(f, 1.0);
    const double n_min = bands.front().N();
    double low = 0.0;
    if (l1 > 0.0) {
      if (!(e > 0.0)) {
        low = std::numeric_limits<double>::infinity();
      } else if (std::isinf(spec.q)) {
        low = std::pow(n_min / 2.0, e) * l1;
      } else {
        // sum_{N < n_min} (N^e ||f||_1)^q, geometric in N = n_min 2^-k
        low = l1 * std::pow(n_min, e) / std::pow(std::pow(2.0, spec.q * e) - 1.0, 1.0 / spec.q);
      }
    }
    tail_terms.push_back(low);
  }
  res.tail_estimate = lq_sum(tail_terms, spec.q);
  if (res.tail_estimate > 0.01 * res.norm) {
    throw Error(ErrorCode::TailDominates,
                "truncation estimate " + std::to_string(res.tail_estimate) +
                    " exceeds 1% of the resolved norm " + std::to_string(res.norm));
  }
  return res;
}

double band_kernel_sup(const Grid& grid, const SymbolSpec& spec, double t, DyadicBand band,
                       bool allow_nontempered) {
  return band_kernel_sup(grid, RadialFrequencies(grid), spec, t, band, allow_nontempered);
}

double band_kernel_sup(const Grid& grid, const RadialFrequencies& radial, const SymbolSpec& spec,
                       double t, DyadicBand band, bool allow_nontempered) {
  const double N = band.N();
  if (!band_resolvable(grid, band) || min_nyquist(grid) < 4.0 * N) {
    throw Error(ErrorCode::BandUnresolvable,
                "band N = " + std::to_string(N) + " needs pi n / L >= 4N and N >= 4 pi / L");
  }
  spec.validate();
  if (!spec.tempered() && !allow_nontempered) {
    throw Error(ErrorCode::NotTempered, "gamma < alpha: the propagator is not a tempered distribution");
  }
  std::vector<cplx> values = radial.tabulate(
      [&](double r) { return lp_window(r, N) * ml_symbol(spec, t, r, allow_nontempered); },
      [&](double r) { return r > 0.5 * N && r < 2.0 * N; });
  const Field kernel = inverse_transform(Field(grid, Domain::Frequency, std::move(values)));
  return linf_norm(kernel);
}

}  // namespace fracwave
