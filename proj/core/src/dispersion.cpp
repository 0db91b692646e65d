#include "fracwave/dispersion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

double parse_number(std::string_view text, const std::string& context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "bad number '" + std::string(text) + "' in dispersion '" + context + "'");
  }
  return v;
}

}  // namespace

Dispersion Dispersion::abs() { return {Kind::Abs, 1.0, {}}; }
Dispersion Dispersion::square() { return {Kind::Square, 2.0, {}}; }

Dispersion Dispersion::power(double exponent) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw Error(ErrorCode::InvalidArgument, "power dispersion needs a positive exponent");
  }
  return {Kind::Power, exponent, {}};
}

Dispersion Dispersion::indicator(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "indicator radius must be positive");
  }
  return {Kind::Indicator, radius, {}};
}

Dispersion Dispersion::linear(double velocity) {
  if (!std::isfinite(velocity)) throw Error(ErrorCode::InvalidArgument, "velocity must be finite");
  return {Kind::Linear, velocity, {}};
}

Dispersion Dispersion::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs coefficients");
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
  }
  return {Kind::Polynomial, 0.0, std::move(coefficients)};
}

Dispersion Dispersion::tabulated(Grid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::ShapeMismatch, "tabulated dispersion needs one value per node");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "tabulated values must be finite");
  }
  Dispersion d(Kind::Tabulated, 0.0, std::move(values));
  d.table_points_ = grid.points();
  d.table_extent_ = grid.extent();
  return d;
}

Dispersion Dispersion::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw Error(ErrorCode::InvalidArgument, "dispersion '" + name + "' needs ':<value>'");
  };
  if (name == "abs") return abs();
  if (name == "square") return square();
  if (name == "power") {
    need_arg();
    return power(parse_number(arg, text));
  }
  if (name == "indicator") return arg.empty() ? indicator() : indicator(parse_number(arg, text));
  if (name == "linear") {
    need_arg();
    return linear(parse_number(arg, text));
  }
  if (name == "poly") {
    need_arg();
    std::vector<double> c;
    std::string_view rest = arg;
    while (true) {
      const auto comma = rest.find(',');
      c.push_back(parse_number(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return polynomial(std::move(c));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown dispersion '" + text + "'");
}

std::string Dispersion::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Abs: return "abs";
    case Kind::Square: return "square";
    case Kind::Power: os << "power:" << param_; break;
    case Kind::Indicator: os << "indicator:" << param_; break;
    case Kind::Linear: os << "linear:" << param_; break;
    case Kind::Polynomial:
      os << "poly:";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
      break;
    case Kind::Tabulated: return "tabulated";
  }
  return os.str();
}

double Dispersion::operator()(double xi) const {
  switch (kind_) {
    case Kind::Abs: return std::abs(xi);
    case Kind::Square: return xi * xi;
    case Kind::Power: return std::pow(std::abs(xi), param_);
    case Kind::Indicator: return std::abs(xi) <= param_ ? 1.0 : 0.0;
    case Kind::Linear: return param_ * xi;
    case Kind::Polynomial: {
      double v = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * xi + *it;
      return v;
    }
    case Kind::Tabulated: break;
  }
  throw Error(ErrorCode::InvalidArgument, "a tabulated dispersion has no closed form");
}

double Dispersion::difference(double base, double delta) const {
  switch (kind_) {
    case Kind::Square: return delta * (2.0 * base + delta);
    case Kind::Linear: return param_ * delta;
    case Kind::Polynomial: {
      // a^k - b^k = (a - b) sum_i a^i b^(k-1-i) with a - b = delta exactly
      const double a = base + delta;
      double total = 0.0;
      for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          s += std::pow(a, static_cast<double>(i)) * std::pow(base, static_cast<double>(k - 1 - i));
        }
        total += coeffs_[k] * delta * s;
      }
      return total;
    }
    default: return (*this)(base + delta) - (*this)(base);
  }
}

double Dispersion::max_slope(double lo, double hi) const {
  const double m = std::max(std::abs(lo), std::abs(hi));
  switch (kind_) {
    case Kind::Abs: return 1.0;
    case Kind::Square: return 2.0 * m;
    case Kind::Power: return param_ * std::pow(std::max(m, 1e-300), param_ - 1.0);
    case Kind::Indicator: return 0.0;
    case Kind::Linear: return std::abs(param_);
    case Kind::Polynomial: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * m + k * std::abs(coeffs_[k]);
      return v;
    }
    case Kind::Tabulated: break;
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<double> Dispersion::singular_points() const {
  switch (kind_) {
    case Kind::Abs: return {0.0};
    case Kind::Power: return param_ == std::floor(param_) && std::fmod(param_, 2.0) == 0.0
                                 ? std::vector<double>{}
                                 : std::vector<double>{0.0};
    case Kind::Indicator: return {-param_, param_};
    default: return {};
  }
}

std::vector<double> Dispersion::on_grid(const Grid& grid) const {
  if (kind_ == Kind::Tabulated) {
    if (grid.points() != table_points_ || grid.extent() != table_extent_) {
      throw Error(ErrorCode::ShapeMismatch, "tabulated dispersion was built for a different grid");
    }
    return coeffs_;
  }
  std::vector<double> out(grid.size());
  if (kind_ == Kind::Linear || (kind_ == Kind::Polynomial && grid.dim() == 1)) {
    int idx[3] = {0, 0, 0};
    for (std::size_t i = 0; i < out.size(); ++i) {
      grid.unflatten(i, idx);
      out[i] = (*this)(grid.xi(0, idx[0]));
    }
    return out;
  }
  const std::vector<double> r2 = node_radius_squared(grid, Domain::Frequency);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(std::sqrt(r2[i]));
  return out;
}

}  // namespace fracwave
