#include "fracwave/fbi.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracwave/error.hpp"
#include "fracwave/parallel.hpp"

namespace fracwave {
namespace {

constexpr double kHalfWidth = 12.0;
constexpr int kPanelOrder = 20;
using Rule = boost::math::quadrature::gauss<double, kPanelOrder>;

struct QuadSum {
  cplx value;
  double magnitude = 0.0;  // sum of |weight * integrand| * (1 + |phase|), for the floor
  int nodes = 0;
};

// Integral of exp(-i dphi(z)) e^{-z^2/4} over [-12, 12], where dphi is the
// phase relative to its value at z = 0.
QuadSum integrate(const FBIConfig& cfg, double lambda, int panels_total) {
  const double eta0 = lambda * lambda * cfg.xi;
  auto dphase = [&](double z) {
    return cfg.t * cfg.w.difference(eta0, -lambda * z) + lambda * cfg.x0 * z;
  };

  std::vector<double> cuts = {-kHalfWidth, kHalfWidth};
  for (double s : cfg.w.singular_points()) {
    const double z = (eta0 - s) / lambda;
    if (z > -kHalfWidth && z < kHalfWidth) cuts.push_back(z);
  }
  std::sort(cuts.begin(), cuts.end());

  const auto& x = Rule::abscissa();
  const auto& wts = Rule::weights();
  QuadSum out;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c];
    const double b = cuts[c + 1];
    if (b <= a) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(panels_total * (b - a) / (2 * kHalfWidth))));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      const double half = 0.5 * h;
      for (std::size_t k = 0; k < x.size(); ++k) {
        for (int sgn : {-1, 1}) {
          if (k == 0 && x[0] == 0.0 && sgn > 0) continue;
          const double z = mid + sgn * half * x[k];
          const double phase = dphase(z);
          const double env = std::exp(-0.25 * z * z) * wts[k] * half;
          out.value += env * std::polar(1.0, -phase);
          out.magnitude += env * (1.0 + std::abs(phase));
          ++out.nodes;
        }
      }
    }
  }
  return out;
}

int base_panels(const FBIConfig& cfg, double lambda) {
  const double eta0 = lambda * lambda * cfg.xi;
  const double slope = cfg.w.max_slope(eta0 - lambda * kHalfWidth, eta0 + lambda * kHalfWidth);
  const double rate = std::abs(cfg.t) * lambda * slope + lambda * std::abs(cfg.x0);
  const double variation = 2.0 * kHalfWidth * rate;
  const double by_order = std::ceil(static_cast<double>(cfg.quad_order) / kPanelOrder);
  // about three radians of phase per 20-point panel
  const double by_phase = std::ceil(variation / 3.0);
  const double panels = std::max({by_order, by_phase, 24.0});
  if (panels > 2e6) throw Error(ErrorCode::QuadratureUnstable, "phase oscillates too fast to resolve");
  return static_cast<int>(panels);
}

}  // namespace

std::vector<double> FBIConfig::default_lambdas() {
  std::vector<double> l;
  for (int k = 0; k <= 10; ++k) l.push_back(1.0 + 0.5 * k);
  return l;
}

void FBIConfig::validate() const {
  if (!w.closed_form()) throw Error(ErrorCode::InvalidArgument, "FBI probe needs a closed-form w");
  if (quad_order < 64) throw Error(ErrorCode::InvalidArgument, "quad_order must be >= 64");
  if (!std::isfinite(x0) || !std::isfinite(t) || !std::isfinite(xi)) {
    throw Error(ErrorCode::InvalidArgument, "x0, t and xi must be finite");
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 1.0) || !std::isfinite(lambdas[i]) || (i > 0 && !(lambdas[i] > lambdas[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "lambdas must be >= 1 and strictly increasing");
    }
  }
}

FBISample fbi_sample(const FBIConfig& cfg, double lambda) {
  cfg.validate();
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be >= 1");
  }
  const int panels = base_panels(cfg, lambda);
  const QuadSum coarse = integrate(cfg, lambda, panels);
  const QuadSum fine = integrate(cfg, lambda, 2 * panels);

  FBISample s;
  s.lambda = lambda;
  const double phase0 = cfg.t * cfg.w(lambda * lambda * cfg.xi);
  s.value = fine.value * std::polar(1.0, -phase0);
  s.nodes = fine.nodes;
  s.noise_floor = 8.0 * std::numeric_limits<double>::epsilon() * fine.magnitude;
  const double mag = std::abs(fine.value);
  s.below_floor = mag < s.noise_floor;
  const double change = std::abs(fine.value - coarse.value);
  s.rel_change = change / std::max(mag, s.noise_floor);
  // A change inside the rounding floor says nothing about resolution.
  if (!s.below_floor && change > std::max(1e-4 * mag, s.noise_floor)) {
    throw Error(ErrorCode::QuadratureUnstable,
                "doubling the nodes changed I(" + std::to_string(lambda) + ") by " +
                    std::to_string(s.rel_change) + " relative");
  }
  return s;
}

cplx fbi_integral(const FBIConfig& cfg, double lambda) { return fbi_sample(cfg, lambda).value; }

const char* to_string(FBIVerdict v) noexcept {
  switch (v) {
    case FBIVerdict::Analytic: return "analytic";
    case FBIVerdict::NonAnalytic: return "non_analytic";
    case FBIVerdict::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

FBIFit fbi_decay_exponent(const FBIConfig& cfg) {
  cfg.validate();
  if (cfg.lambdas.size() < 8) throw Error(ErrorCode::InsufficientData, "need at least 8 lambda samples");
  FBIFit out;
  out.samples.resize(cfg.lambdas.size());
  parallel_for(cfg.lambdas.size(), [&](std::size_t i) { out.samples[i] = fbi_sample(cfg, cfg.lambdas[i]); });

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : out.samples) {
    if (s.below_floor) continue;
    x.push_back(s.lambda * s.lambda);
    y.push_back(std::log(std::abs(s.value)));
  }
  out.fit = fit_line(x, y);
  out.fit.t_lo = std::sqrt(out.fit.t_lo);
  out.fit.t_hi = std::sqrt(out.fit.t_hi);
  out.sigma = -out.fit.slope;
  if (out.sigma >= 0.01) {
    out.verdict = FBIVerdict::Analytic;
  } else if (out.fit.rms_residual < 0.05) {
    out.verdict = FBIVerdict::NonAnalytic;
  } else {
    out.verdict = FBIVerdict::Ambiguous;
  }
  return out;
}

}  // namespace fracwave
