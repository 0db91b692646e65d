#include "cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fracwave/error.hpp"
#include "fracwave/fingerprint.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave::cli {
namespace {

enum class Kind { Number, Integer, NumberList, Geom, Bands, Bool, Text, Datum };

struct Key {
  std::string name;
  Kind kind;
  const char* fallback;  // nullptr: required, "": optional without default
  std::string help;
};

struct Command {
  std::string name;
  std::string about;
  std::vector<Key> keys;
  bool needs_times = false;
  bool has_gamma = false;
};

std::vector<Key> symbol_keys() {
  return {{"alpha", Kind::Number, nullptr, "Caputo order, 0 < alpha <= 1"},
          {"beta", Kind::Number, nullptr, "spatial order, beta > 0"},
          {"gamma", Kind::Number, nullptr, "phase order; gamma >= alpha unless --allow-nontempered"}};
}

std::vector<Key> grid_keys(const char* n, const char* L, const char* datum) {
  return {{"dim", Kind::Integer, "1", "spatial dimension"},
          {"n", Kind::Integer, n, "points per axis, a power of two"},
          {"L", Kind::Number, L, "box side"},
          {"datum", Kind::Datum, datum, "preset (gaussian, bump, annulus_wave) or field file"}};
}

std::vector<Key> time_keys() {
  return {{"t", Kind::NumberList, "", "times, comma separated"},
          {"t-geom", Kind::Geom, "", "log-spaced times lo:hi:count"}};
}

std::vector<Key> join(std::vector<std::vector<Key>> parts) {
  std::vector<Key> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"ml-eval",
       "Evaluate E_{alpha,beta}(z)",
       {{"alpha", Kind::Number, nullptr, "first parameter, 0 < alpha <= 1"},
        {"beta", Kind::Number, "1", "second parameter, beta > 0"},
        {"z-re", Kind::Number, nullptr, "real part of z"},
        {"z-im", Kind::Number, "0", "imaginary part of z"}}},
      {"propagate",
       "Propagate a datum to time t and dump the field",
       join({symbol_keys(), grid_keys("4096", "256", "gaussian"),
             {{"t", Kind::Number, nullptr, "time, t >= 0"}}}),
       false, true},
      {"decay-scan",
       "Observables of u(t) over a time grid, with a log-log fit",
       join({symbol_keys(), grid_keys("16384", "8192", "gaussian"), time_keys(),
             {{"observable", Kind::Text, "linf_u",
               "comma list of linf_u, linf_u_squared, l2_residual, tail_mass, band_sup"},
              {"fit-lo", Kind::Number, "", "fit window start (default: skip the first third in log t)"},
              {"fit-hi", Kind::Number, "", "fit window end (default: last time)"},
              {"tail-radius", Kind::Number, "", "radius for tail_mass"},
              {"band", Kind::Integer, "0", "j of the band N = 2^j for band_sup"}}}),
       true, true},
      {"envelope-sweep",
       "Band-kernel sup against its dyadic envelope over (N, t)",
       join({symbol_keys(),
             {{"dim", Kind::Integer, "1", "spatial dimension"},
              {"n", Kind::Integer, "16384", "points per axis, a power of two"},
              {"L", Kind::Number, "512", "box side"},
              {"bands", Kind::Bands, "-2:4", "band exponents j, lo:hi or comma list"}},
             time_keys()}),
       true, true},
      {"residual-norm",
       "sup |m_{t,alpha}|, the L2 norm of the remainder operator",
       {{"alpha", Kind::Number, nullptr, "order, 0 < alpha <= 1"},
        {"t", Kind::Number, "1", "time, t > 0"},
        {"samples", Kind::Integer, "2001", "radial sample count"}}},
      {"strong-convergence",
       "||E_alpha(t) phi||_2 over a time grid",
       join({{{"alpha", Kind::Number, nullptr, "order, 0 < alpha <= 1"}},
             grid_keys("65536", "65536", "gaussian"), time_keys()}),
       true},
      {"tail-mass",
       "L2 mass outside a ball after a Mittag-Leffler or unitary flow",
       join({{{"alpha", Kind::Number, "", "Caputo order (Mittag-Leffler flow)"},
              {"beta", Kind::Number, "", "spatial order (Mittag-Leffler flow)"},
              {"gamma", Kind::Number, "", "phase order (Mittag-Leffler flow)"},
              {"w", Kind::Text, "", "dispersion for a unitary flow: abs, square, power:a, indicator[:r], "
                                    "linear:c, poly:c0,c1,..."}},
             grid_keys("4096", "64", "bump"), time_keys(),
             {{"radius", Kind::Number, nullptr, "ball radius, below L/2"},
              {"center", Kind::NumberList, "", "ball centre, one value per axis"}}}),
       true, true},
      {"fbi-scan",
       "Gaussian decay of the FBI transform of e^{-itw(D)} at (x0, xi)",
       {{"w", Kind::Text, "square", "dispersion with a closed form"},
        {"x0", Kind::Number, "0", "base point"},
        {"t", Kind::Number, "1", "time"},
        {"xi", Kind::Number, "2", "direction"},
        {"lambdas", Kind::NumberList, "", "lambda grid (default 1, 1.5, ..., 6)"},
        {"quad-order", Kind::Integer, "128", "minimum quadrature nodes"}}},
      {"besov-norm",
       "Besov norm of a datum through its Littlewood-Paley pieces",
       join({grid_keys("4096", "256", "gaussian"),
             {{"s", Kind::Number, "0", "smoothness"},
              {"p", Kind::Number, "2", "integrability, >= 1 or inf"},
              {"q", Kind::Number, "2", "summability, >= 1 or inf"},
              {"homogeneous", Kind::Bool, "true", "homogeneous (true) or inhomogeneous norm"}}})},
  };
  return table;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::UsageError, "unknown command '" + name + "'");
}

[[noreturn]] void usage_error(const std::string& msg) { throw Error(ErrorCode::UsageError, msg); }
[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || errno == ERANGE || std::isnan(v)) {
    usage_error("--" + key + " expects a number, got '" + text + "'");
  }
  return v;
}

long parse_integer(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (text.empty() || end != begin + text.size() || errno == ERANGE) {
    usage_error("--" + key + " expects an integer, got '" + text + "'");
  }
  return v;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_text(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string canonical(const Key& key, const std::string& raw) {
  const std::string v = trim(raw);
  switch (key.kind) {
    case Kind::Number: return format_number(parse_number(key.name, v));
    case Kind::Integer: return std::to_string(parse_integer(key.name, v));
    case Kind::NumberList: {
      std::vector<std::string> parts;
      for (const auto& p : split(v, ',')) parts.push_back(format_number(parse_number(key.name, p)));
      if (parts.empty()) usage_error("--" + key.name + " is empty");
      return join_text(parts, ',');
    }
    case Kind::Geom: {
      const auto parts = split(v, ':');
      if (parts.size() != 3) usage_error("--" + key.name + " expects lo:hi:count, got '" + v + "'");
      return format_number(parse_number(key.name, parts[0])) + ":" +
             format_number(parse_number(key.name, parts[1])) + ":" +
             std::to_string(parse_integer(key.name, parts[2]));
    }
    case Kind::Bands: {
      std::vector<std::string> js;
      const auto range = split(v, ':');
      if (range.size() == 2) {
        const long lo = parse_integer(key.name, range[0]);
        const long hi = parse_integer(key.name, range[1]);
        if (hi < lo || hi - lo > 64) usage_error("--" + key.name + " range '" + v + "' is empty or too long");
        for (long j = lo; j <= hi; ++j) js.push_back(std::to_string(j));
      } else {
        for (const auto& p : split(v, ',')) js.push_back(std::to_string(parse_integer(key.name, p)));
      }
      return join_text(js, ',');
    }
    case Kind::Bool:
      if (v == "true" || v == "1" || v == "yes") return "true";
      if (v == "false" || v == "0" || v == "no") return "false";
      usage_error("--" + key.name + " expects true or false, got '" + v + "'");
    case Kind::Text:
    case Kind::Datum:
      if (v.empty()) usage_error("--" + key.name + " is empty");
      return v;
  }
  return v;
}

bool is_preset(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

void validate(const Command& cmd, ExperimentConfig& cfg) {
  auto num = [&](const char* k) { return cfg.number(k); };
  if (cfg.has("alpha")) {
    const double a = num("alpha");
    if (!(a > 0.0 && a <= 1.0)) invalid("alpha must lie in (0, 1], got " + cfg.text("alpha"));
  }
  if (cfg.has("beta") && !(num("beta") > 0.0 && std::isfinite(num("beta")))) {
    invalid("beta must be positive, got " + cfg.text("beta"));
  }
  if (cfg.has("gamma")) {
    if (!std::isfinite(num("gamma"))) invalid("gamma must be finite");
    if (num("gamma") < num("alpha") && !cfg.allow_nontempered) {
      invalid("gamma < alpha: the propagator kernel is not a tempered distribution "
              "(pass --allow-nontempered to run anyway)");
    }
  }
  if (cfg.has("dim")) {
    const int d = cfg.integer("dim");
    if (d < 1 || d > 3) invalid("dim must be 1, 2 or 3");
  }
  if (cfg.has("n")) {
    const int n = cfg.integer("n");
    if (n < 8 || (n & (n - 1)) != 0) invalid("n must be a power of two >= 8, got " + cfg.text("n"));
    if (std::pow(static_cast<double>(n), cfg.integer("dim")) > std::ldexp(1.0, 26)) {
      invalid("grid has more than 2^26 nodes");
    }
  }
  if (cfg.has("L") && !(num("L") > 0.0 && std::isfinite(num("L")))) invalid("L must be positive");

  if (cfg.has("datum")) {
    const std::string& d = cfg.text("datum");
    if (!is_preset(d)) {
      std::ifstream in(d, std::ios::binary);
      if (!in) invalid("datum '" + d + "' is neither a preset nor a readable file");
      const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      // the fingerprint must change with the file contents, not only its name
      cfg.params["datum-fnv"] = to_hex(fnv1a64(bytes));
    }
  }

  if (cmd.needs_times) {
    const bool t = cfg.has("t");
    const bool g = cfg.has("t-geom");
    if (t == g) usage_error("give exactly one of --t and --t-geom");
    if (g) {
      const auto parts = split(cfg.text("t-geom"), ':');
      const double lo = std::stod(parts[0]);
      const double hi = std::stod(parts[1]);
      const int count = std::stoi(parts[2]);
      if (!(lo > 0.0 && hi > lo && std::isfinite(hi)) || count < 2) {
        invalid("t-geom needs 0 < lo < hi and count >= 2");
      }
    }
    const auto ts = cfg.times();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (!(ts[i] > 0.0) || !std::isfinite(ts[i]) || (i > 0 && !(ts[i] > ts[i - 1]))) {
        invalid("times must be positive and strictly increasing");
      }
    }
  } else if (cfg.has("t") && cmd.name != "fbi-scan") {
    const double t = num("t");
    if (!(t >= 0.0 && std::isfinite(t))) invalid("t must be finite and >= 0");
    if (cmd.name == "residual-norm" && !(t > 0.0)) invalid("t must be positive");
  }

  if (cmd.name == "tail-mass") {
    const bool ml = cfg.has("alpha") || cfg.has("beta") || cfg.has("gamma");
    if (cfg.has("w") == ml) usage_error("tail-mass needs either --w or --alpha/--beta/--gamma");
    if (ml) {
      for (const char* k : {"alpha", "beta", "gamma"}) {
        if (!cfg.has(k)) usage_error(std::string("missing required key '") + k + "' (--" + k + ")");
      }
      if (num("gamma") < num("alpha") && !cfg.allow_nontempered) {
        invalid("gamma < alpha: the propagator kernel is not a tempered distribution "
                "(pass --allow-nontempered to run anyway)");
      }
    }
    if (!(num("radius") > 0.0 && num("radius") < 0.5 * num("L"))) invalid("radius must lie in (0, L/2)");
    if (cfg.has("center") && static_cast<int>(cfg.numbers("center").size()) != cfg.integer("dim")) {
      invalid("center needs one value per axis");
    }
  }
  if (cmd.name == "residual-norm" && cfg.integer("samples") < 16) invalid("samples must be >= 16");
  if (cmd.name == "decay-scan" && cfg.has("fit-lo") && cfg.has("fit-hi") && !(num("fit-lo") < num("fit-hi"))) {
    invalid("fit-lo must be below fit-hi");
  }
  if (cmd.name == "besov-norm") {
    if (!(num("p") >= 1.0) || !(num("q") >= 1.0)) invalid("p and q must be >= 1");
  }
}

std::string help_text() {
  std::string out = "usage: fracwave <command> [--config FILE] [--output BASE] [--key value ...]\n\ncommands:\n";
  for (const auto& c : commands()) out += "  " + c.name + std::string(20 - c.name.size(), ' ') + c.about + "\n";
  out += "\nRun `fracwave <command> --help` for its keys.\n";
  return out;
}

}  // namespace

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::UsageError, "missing required key '" + key + "'");
  return it->second;
}

double ExperimentConfig::number(const std::string& key) const {
  const std::string& v = text(key);
  if (v == "inf") return INFINITY;
  if (v == "-inf") return -INFINITY;
  return std::stod(v);
}

int ExperimentConfig::integer(const std::string& key) const { return std::stoi(text(key)); }

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& p : split(text(key), ',')) out.push_back(std::stod(p));
  return out;
}

std::vector<double> ExperimentConfig::times() const {
  if (has("t-geom")) {
    const auto parts = split(text("t-geom"), ':');
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
      out[i] = i == count - 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    }
    return out;
  }
  return numbers("t");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : commands()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      usage_error(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"fracwave: Mittag-Leffler propagators for fractional Schroedinger flows"};
  app.set_help_flag("-h,--help", "print help");
  std::string top_config;
  app.add_option("--config", top_config, "config file naming the command");
  app.require_subcommand(0, 1);

  struct Bound {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config;
    std::string output;
    bool allow = false;
  };
  std::map<std::string, Bound> bound;
  for (const auto& c : commands()) {
    Bound& b = bound[c.name];
    b.app = app.add_subcommand(c.name, c.about);
    b.app->add_option("--config", b.config, "config file of key = value lines");
    b.app->add_option("--output", b.output, "base path; writes BASE.json, BASE.csv and (propagate) BASE.fwf");
    if (c.has_gamma) b.app->add_flag("--allow-nontempered", b.allow, "permit gamma < alpha");
    for (const auto& k : c.keys) {
      std::string desc = k.help;
      if (k.fallback && *k.fallback) desc += " [" + std::string(k.fallback) + "]";
      if (!k.fallback) desc += " (required)";
      b.options[k.name] = b.app->add_option("--" + k.name, b.values[k.name], desc);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    for (auto& [name, b] : bound) {
      if (b.app->parsed()) throw HelpRequested{b.app->help()};
    }
    throw HelpRequested{help_text()};
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
  }

  std::string name;
  for (auto& [n, b] : bound) {
    if (b.app->parsed()) name = n;
  }
  std::map<std::string, std::string> file;
  std::string file_path = top_config;
  if (!name.empty() && !bound[name].config.empty()) file_path = bound[name].config;
  if (!file_path.empty()) file = read_config_file(file_path);
  if (name.empty()) {
    if (!file.count("command")) throw HelpRequested{help_text()};
    name = file["command"];
  } else if (file.count("command") && file["command"] != name) {
    usage_error("config file is for '" + file["command"] + "', not '" + name + "'");
  }
  file.erase("command");

  const Command& cmd = find_command(name);
  ExperimentConfig cfg;
  cfg.command = name;
  Bound& b = bound[name];

  cfg.output = b.output;
  cfg.allow_nontempered = b.allow;
  if (file.count("output")) {
    if (b.output.empty()) cfg.output = file["output"];
    file.erase("output");
  }
  if (file.count("allow-nontempered")) {
    const Key flag{"allow-nontempered", Kind::Bool, "false", ""};
    if (!cmd.has_gamma) usage_error("unknown key 'allow-nontempered' for " + name);
    cfg.allow_nontempered = cfg.allow_nontempered || canonical(flag, file["allow-nontempered"]) == "true";
    file.erase("allow-nontempered");
  }
  for (const auto& [k, v] : file) {
    const bool known = std::any_of(cmd.keys.begin(), cmd.keys.end(), [&](const Key& key) { return key.name == k; });
    if (!known) usage_error("unknown key '" + k + "' in " + file_path);
  }

  for (const auto& k : cmd.keys) {
    const char* source = nullptr;
    std::string raw;
    if (b.options[k.name]->count() > 0) {
      raw = b.values[k.name];
      source = "flag";
    } else if (file.count(k.name)) {
      raw = file[k.name];
      source = "file";
    } else if (k.fallback && *k.fallback) {
      raw = k.fallback;
      source = "default";
    }
    if (!source) {
      if (!k.fallback) usage_error("missing required key '" + k.name + "' (--" + k.name + ")");
      continue;
    }
    cfg.params[k.name] = canonical(k, raw);
  }

  validate(cmd, cfg);

  std::map<std::string, std::string> hashed = cfg.params;
  hashed["command"] = cfg.command;
  if (cfg.allow_nontempered) hashed["allow-nontempered"] = "true";
  cfg.fingerprint = fingerprint(hashed);
  return cfg;
}

}  // namespace fracwave::cli
