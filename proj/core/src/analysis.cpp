#include "fracwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracwave/error.hpp"
#include "fracwave/fft.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/parallel.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

double estimated_support_radius(const Field& phi) {
  const double peak = linf_norm(phi);
  if (peak == 0.0) return 0.0;
  const std::vector<double> r2 = node_radius_squared(phi.grid(), Domain::Space);
  double r_max = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    if (std::abs(phi[i]) > 1e-8 * peak) r_max = std::max(r_max, r2[i]);
  }
  return std::sqrt(r_max);
}

// Relative L2 mass in the outer tenth of the box along any axis.
double outer_shell_mass(const Field& u) {
  const Grid& g = u.grid();
  double total = 0.0;
  double outer = 0.0;
  int idx[3] = {0, 0, 0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.unflatten(i, idx);
    const double m = std::norm(u[i]);
    total += m;
    for (int a = 0; a < g.dim(); ++a) {
      if (std::abs(g.x(a, idx[a])) > 0.4 * g.extent(a)) {
        outer += m;
        break;
      }
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool equal_orders(const SymbolSpec& s) { return s.alpha == s.beta && s.beta == s.gamma; }

}  // namespace

std::string_view to_string(Observable o) noexcept {
  switch (o) {
    case Observable::LinfU: return "linf_u";
    case Observable::LinfUSquared: return "linf_u_squared";
    case Observable::L2Residual: return "l2_residual";
    case Observable::TailMass: return "tail_mass";
    case Observable::BandSup: return "band_sup";
  }
  return "unknown";
}

Observable parse_observable(std::string_view name) {
  for (Observable o : {Observable::LinfU, Observable::LinfUSquared, Observable::L2Residual,
                       Observable::TailMass, Observable::BandSup}) {
    if (to_string(o) == name) return o;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown observable '" + std::string(name) + "'");
}

std::vector<double> geometric_times(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorCode::InvalidArgument, "geometric grid needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> t(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int k = 0; k < count; ++k) t[k] = lo * std::exp(step * k);
  t.front() = lo;
  t.back() = hi;
  return t;
}

std::vector<DecaySeries> decay_scan(const Field& phi, const SymbolSpec& spec,
                                    const std::vector<double>& times,
                                    const std::vector<Observable>& observables,
                                    const ScanOptions& options) {
  spec.validate();
  if (!spec.tempered() && !options.allow_nontempered) {
    throw Error(ErrorCode::NotTempered, "gamma < alpha: the propagator is not a tempered distribution");
  }
  if (phi.domain() != Domain::Space) {
    throw Error(ErrorCode::ShapeMismatch, "initial data must be a space-domain field");
  }
  if (times.empty() || observables.empty()) {
    throw Error(ErrorCode::InvalidArgument, "decay scan needs times and observables");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "times must be positive and strictly increasing");
    }
  }
  const bool wants_residual =
      std::find(observables.begin(), observables.end(), Observable::L2Residual) != observables.end();
  if (wants_residual && !equal_orders(spec)) {
    throw Error(ErrorCode::InvalidArgument, "l2_residual needs alpha = beta = gamma");
  }
  const bool wants_band =
      std::find(observables.begin(), observables.end(), Observable::BandSup) != observables.end();
  if (wants_band && !band_resolvable(phi.grid(), options.band)) {
    throw Error(ErrorCode::BandUnresolvable, "band_sup band is not resolvable on this grid");
  }
  const bool wants_tail =
      std::find(observables.begin(), observables.end(), Observable::TailMass) != observables.end();
  if (wants_tail && !(options.tail_radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail_mass needs a positive radius");
  }

  const Grid& grid = phi.grid();
  const Propagator prop(phi);
  const RadialFrequencies& radial = prop.radial();
  std::vector<double> window;
  if (wants_band) {
    window.resize(radial.radii().size());
    for (std::size_t u = 0; u < window.size(); ++u) {
      window[u] = lp_window(radial.radii()[u], options.band.N());
    }
  }

  const std::size_t nt = times.size();
  std::vector<std::vector<double>> values(observables.size(), std::vector<double>(nt, 0.0));
  double last_outer = 0.0;
  parallel_for(nt, [&](std::size_t k) {
    const double t = times[k];
    const std::vector<cplx> symbol = radial.tabulate(
        [&](double r) { return ml_symbol(spec, t, r, options.allow_nontempered); });
    const Field u_hat = multiply(prop.spectrum(), symbol);
    const Field u = inverse_transform(u_hat);
    for (std::size_t o = 0; o < observables.size(); ++o) {
      double v = 0.0;
      switch (observables[o]) {
        case Observable::LinfU: v = linf_norm(u); break;
        case Observable::LinfUSquared: v = std::pow(linf_norm(u), 2); break;
        case Observable::TailMass: v = tail_mass(u, options.tail_radius, options.tail_center); break;
        case Observable::L2Residual: {
          const std::vector<cplx> m =
              radial.tabulate([&](double r) { return residual_multiplier(spec.alpha, t, r); });
          v = l2_norm(multiply(prop.spectrum(), m));
          break;
        }
        case Observable::BandSup: {
          std::vector<cplx> banded(u_hat.samples());
          const auto& node = radial.node_radius();
          for (std::size_t i = 0; i < banded.size(); ++i) banded[i] *= window[node[i]];
          v = linf_norm(inverse_transform(Field(grid, Domain::Frequency, std::move(banded))));
          break;
        }
      }
      values[o][k] = v;
    }
    if (k + 1 == nt) last_outer = outer_shell_mass(u);
  });

  std::vector<std::string> warnings;
  const double support =
      options.support_radius >= 0.0 ? options.support_radius : estimated_support_radius(phi);
  const double growth = std::pow(times.back(), std::max(spec.alpha / spec.beta, 1.0));
  const double need = 4.0 * (support + growth + 10.0);
  for (int a = 0; a < grid.dim(); ++a) {
    if (grid.extent(a) < need) {
      warnings.push_back("periodisation heuristic: L = " + format_double(grid.extent(a)) +
                         " < 4 (R + t^k + 10) = " + format_double(need));
      break;
    }
  }
  if (last_outer > 1e-6) {
    warnings.push_back("TruncationRisk: relative mass " + format_double(last_outer) +
                       " near the box edge at t = " + format_double(times.back()));
  }

  std::vector<DecaySeries> out(observables.size());
  for (std::size_t o = 0; o < observables.size(); ++o) {
    out[o].times = times;
    out[o].values = std::move(values[o]);
    out[o].observable = observables[o];
    out[o].warnings = warnings;
  }
  return out;
}

DecaySeries decay_scan(const Field& phi, const SymbolSpec& spec, const std::vector<double>& times,
                       Observable observable, const ScanOptions& options) {
  return std::move(decay_scan(phi, spec, times, std::vector<Observable>{observable}, options).front());
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "fit needs equal-length series");
  const std::size_t n = x.size();
  if (n < 8) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 8 usable samples in the window, have " + std::to_string(n));
  }
  FitResult fit;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientData, "all samples share one abscissa");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.samples = n;
  fit.t_lo = *std::min_element(x.begin(), x.end());
  fit.t_hi = *std::max_element(x.begin(), x.end());
  return fit;
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double lo,
                     double hi) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "fit needs equal-length series");
  std::vector<double> lx;
  std::vector<double> ly;
  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lo && x[i] <= hi && x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
      t_lo = std::min(t_lo, x[i]);
      t_hi = std::max(t_hi, x[i]);
    }
  }
  FitResult fit = fit_line(lx, ly);
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  return fit;
}

FitResult fit_slope(const DecaySeries& series, double lo, double hi) {
  return fit_loglog(series.times, series.values, lo, hi);
}

ResidualNormScan residual_norm_scan(double alpha, double t, int samples) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "operator norm scan needs 0 < alpha < 1");
  }
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "operator norm scan needs t > 0");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  ResidualNormScan scan;
  scan.xi.resize(samples + 1);
  scan.modulus.resize(samples + 1);
  scan.xi[0] = 0.0;
  const double lo = std::log(1e-8);
  const double hi = std::log(1e6);
  for (int k = 0; k < samples; ++k) {
    scan.xi[k + 1] = std::exp(lo + (hi - lo) * k / (samples - 1)) / t;
  }
  parallel_for(scan.xi.size(), [&](std::size_t k) {
    scan.modulus[k] = std::abs(residual_multiplier(alpha, t, scan.xi[k]));
  });
  for (std::size_t k = 0; k < scan.xi.size(); ++k) {
    if (scan.modulus[k] > scan.sup) {
      scan.sup = scan.modulus[k];
      scan.argmax_xi = scan.xi[k];
    }
    // Ties within rounding count as non-increasing.
    if (k > 0 && scan.modulus[k] > scan.modulus[k - 1] * (1.0 + 1e-12) + 1e-15) scan.monotone = false;
  }
  return scan;
}

double residual_operator_norm(double alpha, double t) { return residual_norm_scan(alpha, t).sup; }

DecaySeries strong_convergence_scan(const Field& phi, double alpha, const std::vector<double>& times) {
  if (!(alpha > 0.0) || alpha > 1.0) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  const Propagator prop(phi);
  DecaySeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.observable = Observable::L2Residual;
  parallel_for(times.size(), [&](std::size_t k) {
    if (!(times[k] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "times must be non-negative");
    const std::vector<cplx> m = prop.radial().tabulate(
        [&](double r) { return residual_multiplier(alpha, times[k], r); });
    out.values[k] = l2_norm(multiply(prop.spectrum(), m));
  });
  return out;
}

double tail_mass(const Field& u, double radius, const std::vector<double>& center) {
  if (u.domain() != Domain::Space) throw Error(ErrorCode::ShapeMismatch, "tail mass needs a space field");
  const Grid& g = u.grid();
  for (int a = 0; a < g.dim(); ++a) {
    if (!(radius >= 0.0) || radius >= 0.5 * g.extent(a)) {
      throw Error(ErrorCode::InvalidArgument, "tail radius must lie in [0, L/2)");
    }
  }
  const std::vector<double> r2 = node_radius_squared(g, Domain::Space, center);
  const double rr = radius * radius;
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double m = std::norm(u[i]);
    total += m;
    if (r2[i] > rr) outside += m;
  }
  return total > 0.0 ? outside / total : 0.0;
}

EnvelopeBranch envelope_branch(const SymbolSpec& spec) {
  if (spec.alpha == spec.gamma) return EnvelopeBranch::EqualOrders;
  if (spec.alpha < spec.gamma && spec.gamma <= 1.0) return EnvelopeBranch::Tempered;
  throw Error(ErrorCode::InvalidArgument, "envelope needs alpha = gamma or alpha < gamma <= 1");
}

double envelope_value(const SymbolSpec& spec, int dim, double N, double t) {
  const double a = spec.alpha;
  const double b = spec.beta;
  const double nd = std::pow(N, dim);
  const double first = 1.0 / (1.0 + std::pow(t, a) * std::pow(N, b));
  if (envelope_branch(spec) == EnvelopeBranch::Tempered) return nd * first;
  const double second = 1.0 / (1.0 + std::pow(t, 0.5 * dim) * std::pow(N, dim * b / (2.0 * a)));
  return nd * (first + second);
}

EnvelopeSweep envelope_sweep(const Grid& grid, const SymbolSpec& spec,
                             const std::vector<DyadicBand>& bands, const std::vector<double>& times) {
  EnvelopeSweep sweep;
  sweep.branch = envelope_branch(spec);
  if (bands.empty() || times.empty()) {
    throw Error(ErrorCode::InvalidArgument, "envelope sweep needs bands and times");
  }
  std::vector<DyadicBand> sorted_bands = bands;
  std::sort(sorted_bands.begin(), sorted_bands.end(),
            [](DyadicBand x, DyadicBand y) { return x.j < y.j; });
  std::vector<double> sorted_times = times;
  std::sort(sorted_times.begin(), sorted_times.end());

  const RadialFrequencies radial(grid);
  sweep.cells.resize(sorted_bands.size() * sorted_times.size());
  parallel_for(sweep.cells.size(), [&](std::size_t c) {
    const DyadicBand band = sorted_bands[c / sorted_times.size()];
    const double t = sorted_times[c % sorted_times.size()];
    EnvelopeCell& cell = sweep.cells[c];
    cell.N = band.N();
    cell.t = t;
    cell.band_sup = band_kernel_sup(grid, radial, spec, t, band);
    cell.envelope = envelope_value(spec, grid.dim(), cell.N, t);
    cell.ratio = cell.band_sup / cell.envelope;
  });
  sweep.min_ratio = std::numeric_limits<double>::infinity();
  sweep.max_ratio = 0.0;
  for (const auto& cell : sweep.cells) {
    sweep.min_ratio = std::min(sweep.min_ratio, cell.ratio);
    sweep.max_ratio = std::max(sweep.max_ratio, cell.ratio);
  }
  sweep.spread = sweep.max_ratio / sweep.min_ratio;
  return sweep;
}

}  // namespace fracwave
