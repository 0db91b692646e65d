#include "cli/run.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

#include "fracwave/analysis.hpp"
#include "fracwave/fbi.hpp"
#include "fracwave/field_io.hpp"
#include "fracwave/fingerprint.hpp"
#include "fracwave/littlewood_paley.hpp"
#include "fracwave/mittag_leffler.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave::cli {
namespace {

using json = nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Numeric table with a fingerprint comment line on top.
class Csv {
 public:
  Csv(const ExperimentConfig& cfg, std::vector<std::string> columns) {
    text_ = "# fracwave " + cfg.command + " fingerprint=" + to_hex(cfg.fingerprint) + "\n";
    row(columns);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  void row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    for (double c : cells) s.push_back(fmt(c));
    row(s);
  }

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  for (char c : list + ",") {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  return out;
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json fit_json(const FitResult& f) {
  return {{"slope", f.slope},         {"intercept", f.intercept}, {"rms_residual", f.rms_residual},
          {"window", {f.t_lo, f.t_hi}}, {"samples", f.samples}};
}

Grid grid_of(const ExperimentConfig& cfg) {
  return Grid::uniform(cfg.integer("dim"), cfg.integer("n"), cfg.number("L"));
}

bool preset(const std::string& name) {
  for (const auto& p : preset_names()) {
    if (p == name) return true;
  }
  return false;
}

Field datum_of(const ExperimentConfig& cfg) {
  const std::string& d = cfg.text("datum");
  if (preset(d)) return make_preset(d, grid_of(cfg));
  Field f = read_field(d);
  if (f.domain() != Domain::Space) throw Error(ErrorCode::ValidationError, "datum file holds a spectrum");
  return f;
}

SymbolSpec symbol_of(const ExperimentConfig& cfg) {
  SymbolSpec s{cfg.number("alpha"), cfg.number("beta"), cfg.number("gamma")};
  s.validate();
  return s;
}

struct Result {
  json summary = json::object();
  std::string csv;
  const Field* field = nullptr;
};

Result ml_eval(const ExperimentConfig& cfg) {
  const MLParams p{cfg.number("alpha"), cfg.number("beta")};
  const MLEvaluation e = ml_eval_detailed(p, {cfg.number("z-re"), cfg.number("z-im")});
  static const char* const methods[] = {"exponential", "series", "contour", "asymptotic"};
  Result r;
  r.summary = {{"value", complex_json(e.value)},
               {"method", methods[static_cast<int>(e.method)]},
               {"accuracy_loss", e.accuracy_loss},
               {"boundary_discrepancy", e.boundary_discrepancy}};
  return r;
}

Result propagate(const ExperimentConfig& cfg, Field& keep) {
  const Field phi = datum_of(cfg);
  keep = propagate_ml(phi, symbol_of(cfg), cfg.number("t"), cfg.allow_nontempered);
  Result r;
  r.summary = {{"t", cfg.number("t")},
               {"l2_phi", l2_norm(phi)},
               {"l2_u", l2_norm(keep)},
               {"linf_u", linf_norm(keep)}};
  r.field = &keep;
  if (keep.grid().dim() == 1) {
    Csv csv(cfg, std::vector<std::string>{"x", "re", "im", "abs"});
    for (int j = 0; j < keep.grid().points(0); ++j) {
      csv.row(std::vector<double>{keep.grid().x(0, j), keep[j].real(), keep[j].imag(), std::abs(keep[j])});
    }
    r.csv = csv.text();
  }
  return r;
}

Result decay(const ExperimentConfig& cfg) {
  const Field phi = datum_of(cfg);
  const auto times = cfg.times();
  std::vector<Observable> obs;
  for (const auto& name : split_names(cfg.text("observable"))) {
    obs.push_back(parse_observable(name));
  }
  ScanOptions opt;
  opt.allow_nontempered = cfg.allow_nontempered;
  opt.band = {cfg.integer("band")};
  if (cfg.has("tail-radius")) opt.tail_radius = cfg.number("tail-radius");
  const std::string& d = cfg.text("datum");
  if (preset(d) && std::isfinite(preset_support_radius(d))) opt.support_radius = preset_support_radius(d);

  const auto series = decay_scan(phi, symbol_of(cfg), times, obs, opt);

  // By default the first third of the log-time range is treated as transient.
  const double lo = cfg.has("fit-lo") ? cfg.number("fit-lo")
                                      : times.front() * std::pow(times.back() / times.front(), 1.0 / 3.0);
  const double hi = cfg.has("fit-hi") ? cfg.number("fit-hi") : times.back();

  Result r;
  json fits = json::object();
  for (const auto& s : series) {
    try {
      fits[std::string(to_string(s.observable))] = fit_json(fit_slope(s, lo * (1 - 1e-12), hi * (1 + 1e-12)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
      fits[std::string(to_string(s.observable))] = nullptr;
      r.summary["fit_error"] = e.what();
    }
  }
  r.summary["fits"] = fits;
  r.summary["fit_window"] = {lo, hi};
  r.summary["rows"] = times.size() * series.size();
  r.summary["warnings"] = series.front().warnings;

  // long format: one row per (observable, t)
  const SymbolSpec spec = symbol_of(cfg);
  const std::string tail = "," + fmt(spec.alpha) + "," + fmt(spec.beta) + "," + fmt(spec.gamma) + "," +
                           std::to_string(cfg.integer("dim")) + "," + std::to_string(cfg.integer("n")) + "," +
                           fmt(cfg.number("L"));
  Csv csv(cfg, std::vector<std::string>{"t", "value", "observable", "alpha", "beta", "gamma", "d", "n", "L"});
  for (const auto& s : series) {
    const std::string name(to_string(s.observable));
    for (std::size_t i = 0; i < times.size(); ++i) {
      csv.row(std::vector<std::string>{fmt(times[i]) + "," + fmt(s.values[i]) + "," + name + tail});
    }
  }
  r.csv = csv.text();
  return r;
}

Result envelope(const ExperimentConfig& cfg) {
  std::vector<DyadicBand> bands;
  for (double j : cfg.numbers("bands")) bands.push_back({static_cast<int>(j)});
  const EnvelopeSweep sw = envelope_sweep(grid_of(cfg), symbol_of(cfg), bands, cfg.times());
  Result r;
  r.summary = {{"branch", sw.branch == EnvelopeBranch::EqualOrders ? "equal_orders" : "tempered"},
               {"min_ratio", sw.min_ratio},
               {"max_ratio", sw.max_ratio},
               {"spread", sw.spread},
               {"cells", sw.cells.size()}};
  Csv csv(cfg, std::vector<std::string>{"N", "t", "band_sup", "envelope", "ratio"});
  for (const auto& c : sw.cells) csv.row(std::vector<double>{c.N, c.t, c.band_sup, c.envelope, c.ratio});
  r.csv = csv.text();
  return r;
}

Result residual(const ExperimentConfig& cfg) {
  const double alpha = cfg.number("alpha");
  const ResidualNormScan s = residual_norm_scan(alpha, cfg.number("t"), cfg.integer("samples"));
  Result r;
  r.summary = {{"norm", s.sup},
               {"expected", (1.0 - alpha) / alpha},
               {"argmax_xi", s.argmax_xi},
               {"monotone", s.monotone}};
  Csv csv(cfg, std::vector<std::string>{"xi", "modulus"});
  for (std::size_t i = 0; i < s.xi.size(); ++i) csv.row(std::vector<double>{s.xi[i], s.modulus[i]});
  r.csv = csv.text();
  return r;
}

Result strong(const ExperimentConfig& cfg) {
  const Field phi = datum_of(cfg);
  const double alpha = cfg.number("alpha");
  const auto times = cfg.times();
  const DecaySeries s = strong_convergence_scan(phi, alpha, times);
  const double base = l2_norm(phi);
  Result r;
  json crossing = nullptr;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (s.values[i] / base < 0.1) {
      if (i == 0) break;
      // log-log interpolation between the bracketing samples
      const double a = std::log(s.values[i - 1] / base / 0.1);
      const double b = std::log(s.values[i] / base / 0.1);
      crossing = std::exp(std::log(times[i - 1]) + a / (a - b) * std::log(times[i] / times[i - 1]));
      break;
    }
  }
  r.summary = {{"l2_phi", base},
               {"final_ratio", s.values.back() / base},
               {"crossing_time_10pct", crossing},
               {"operator_norm", residual_operator_norm(alpha, times.back())}};
  Csv csv(cfg, std::vector<std::string>{"t", "l2", "ratio"});
  for (std::size_t i = 0; i < times.size(); ++i) csv.row(std::vector<double>{times[i], s.values[i], s.values[i] / base});
  r.csv = csv.text();
  return r;
}

Result tail(const ExperimentConfig& cfg) {
  const Field phi = datum_of(cfg);
  const auto times = cfg.times();
  std::vector<double> center;
  if (cfg.has("center")) center = cfg.numbers("center");
  const double radius = cfg.number("radius");
  Propagator prop(phi);
  std::vector<double> mass(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Field u = cfg.has("w") ? prop.unitary(Dispersion::parse(cfg.text("w")), times[i])
                                 : prop.ml(symbol_of(cfg), times[i], cfg.allow_nontempered);
    mass[i] = tail_mass(u, radius, center);
  }
  Result r;
  r.summary = {{"tail_mass", mass}, {"times", times}, {"datum_tail_mass", tail_mass(phi, radius, center)}};
  Csv csv(cfg, std::vector<std::string>{"t", "tail_mass"});
  for (std::size_t i = 0; i < times.size(); ++i) csv.row(std::vector<double>{times[i], mass[i]});
  r.csv = csv.text();
  return r;
}

Result fbi(const ExperimentConfig& cfg) {
  FBIConfig c;
  c.w = Dispersion::parse(cfg.text("w"));
  c.x0 = cfg.number("x0");
  c.t = cfg.number("t");
  c.xi = cfg.number("xi");
  if (cfg.has("lambdas")) c.lambdas = cfg.numbers("lambdas");
  c.quad_order = cfg.integer("quad-order");
  const FBIFit f = fbi_decay_exponent(c);
  Result r;
  r.summary = {{"sigma", f.sigma}, {"verdict", to_string(f.verdict)}, {"fit", fit_json(f.fit)}};
  Csv csv(cfg, std::vector<std::string>{"lambda", "re", "im", "abs", "noise_floor", "rel_change", "below_floor"});
  for (const auto& s : f.samples) {
    csv.row(std::vector<double>{s.lambda, s.value.real(), s.value.imag(), std::abs(s.value), s.noise_floor,
                                s.rel_change, s.below_floor ? 1.0 : 0.0});
  }
  r.csv = csv.text();
  return r;
}

Result besov(const ExperimentConfig& cfg) {
  const BesovSpec spec{cfg.number("s"), cfg.number("p"), cfg.number("q"), cfg.text("homogeneous") == "true"};
  const BesovResult b = besov_norm(datum_of(cfg), spec);
  Result r;
  r.summary = {{"norm", b.norm}, {"tail_estimate", b.tail_estimate}, {"low_block_norm", b.low_block_norm}};
  Csv csv(cfg, std::vector<std::string>{"j", "N", "band_norm"});
  for (std::size_t i = 0; i < b.bands.size(); ++i) {
    csv.row(std::vector<double>{static_cast<double>(b.bands[i].j), b.bands[i].N(), b.band_norms[i]});
  }
  r.csv = csv.text();
  return r;
}

}  // namespace

ExitCode exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UsageError: return kUsage;
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotTempered: return kValidation;
    case ErrorCode::IoError: return kIo;
    default: return kNumerical;
  }
}

void run(const ExperimentConfig& cfg, std::ostream& out) {
  Field field(Grid::uniform(1, 8, 1.0), Domain::Space);
  Result r;
  const std::string& c = cfg.command;
  if (c == "ml-eval") r = ml_eval(cfg);
  else if (c == "propagate") r = propagate(cfg, field);
  else if (c == "decay-scan") r = decay(cfg);
  else if (c == "envelope-sweep") r = envelope(cfg);
  else if (c == "residual-norm") r = residual(cfg);
  else if (c == "strong-convergence") r = strong(cfg);
  else if (c == "tail-mass") r = tail(cfg);
  else if (c == "fbi-scan") r = fbi(cfg);
  else if (c == "besov-norm") r = besov(cfg);
  else throw Error(ErrorCode::UsageError, "unknown command '" + c + "'");

  r.summary["command"] = cfg.command;
  r.summary["fingerprint"] = to_hex(cfg.fingerprint);
  r.summary["config"] = cfg.params;
  if (cfg.allow_nontempered) r.summary["config"]["allow-nontempered"] = "true";
  const std::string text = r.summary.dump(2) + "\n";

  if (!cfg.output.empty()) {
    if (r.field) write_field(cfg.output + ".fwf", *r.field);
    if (!r.csv.empty()) write_file_atomic(cfg.output + ".csv", r.csv);
    write_file_atomic(cfg.output + ".json", text);
  }
  out << text;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto report = [&](const std::string& code, const std::string& message, int status) {
    err << json{{"error", code}, {"message", message}, {"exit_code", status}}.dump() << "\n";
    return status;
  };
  try {
    const ExperimentConfig cfg = parse_config(args);
    run(cfg, out);
    return kOk;
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const Error& e) {
    return report(std::string(to_string(e.code())), e.what(), exit_code_for(e.code()));
  } catch (const std::exception& e) {
    return report("Internal", e.what(), kNumerical);
  }
}

}  // namespace fracwave::cli
