#include "ominc/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"

namespace ominc {
namespace {

const std::map<std::string, double>& freq_units() {
  static const std::map<std::string, double> u = {
      {"rad/s", 1.0},          {"mHz", 2.0 * kPi * 1e-3},
      {"Hz", 2.0 * kPi},       {"kHz", 2.0 * kPi * 1e3},
      {"MHz", 2.0 * kPi * 1e6}, {"GHz", 2.0 * kPi * 1e9}};
  return u;
}

const std::map<std::string, double>& mass_units() {
  static const std::map<std::string, double> u = {
      {"kg", 1.0},   {"g", 1e-3},  {"mg", 1e-6}, {"ug", 1e-9},
      {"ng", 1e-12}, {"pg", 1e-15}, {"fg", 1e-18}, {"ag", 1e-21}};
  return u;
}

const std::map<std::string, double>& length_units() {
  static const std::map<std::string, double> u = {
      {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
  return u;
}

const std::map<std::string, double>& power_units() {
  static const std::map<std::string, double> u = {
      {"W", 1.0},   {"mW", 1e-3}, {"uW", 1e-6},
      {"nW", 1e-9}, {"pW", 1e-12}, {"fW", 1e-15}};
  return u;
}

const std::map<std::string, double>& angle_units() {
  static const std::map<std::string, double> u = {{"rad", 1.0},
                                                  {"deg", kPi / 180.0}};
  return u;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct RawValue {
  double number = 0.0;
  std::string unit; // possibly empty
  std::string text; // original, for enum keys
};

// Raw "section.key" -> value strings from the INI text.
std::map<std::string, RawValue> tokenize(const std::string& text) {
  std::map<std::string, RawValue> out;
  static const std::set<std::string> known = {
      "system.kind",       "system.mass",     "system.omega_m",
      "system.gamma",      "system.q_factor", "system.kappa",
      "system.chi_e",      "system.ell",      "system.wavelength",
      "drive.g",           "drive.power",     "drive.g_c",
      "squeezing.mode",    "squeezing.r",     "squeezing.theta",
      "detection.eta",     "sweep.variable",  "sweep.scale",
      "sweep.from",        "sweep.to",        "sweep.points"};
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno),
                          "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno),
                        "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(key, "key outside any [section]");
    const std::string path = section + "." + key;
    if (!known.count(path))
      throw ConfigError("[" + section + "]." + key, "unknown key");
    if (value.empty())
      throw ConfigError("[" + section + "]." + key, "empty value");
    RawValue rv;
    rv.text = value;
    char* end = nullptr;
    rv.number = std::strtod(value.c_str(), &end);
    rv.unit = end ? trim(std::string(end)) : "";
    if (end == value.c_str()) rv.number = std::nan("");
    out[path] = rv;
  }
  return out;
}

class Resolver {
public:
  explicit Resolver(const std::string& text) : raw_(tokenize(text)) {}

  bool has(const std::string& path) const { return raw_.count(path) != 0; }

  std::string field(const std::string& path) const {
    const auto dot = path.find('.');
    return "[" + path.substr(0, dot) + "]." + path.substr(dot + 1);
  }

  // Dimensioned value; unit suffix is mandatory.
  double quantity(const std::string& path,
                  const std::map<std::string, double>& units) const {
    const RawValue& rv = raw_.at(path);
    if (std::isnan(rv.number))
      throw ConfigError(field(path), "expected a number, got '" + rv.text + "'");
    if (rv.unit.empty())
      throw ConfigError(field(path), "unit suffix is required");
    const auto it = units.find(rv.unit);
    if (it == units.end())
      throw ConfigError(field(path), "unknown unit '" + rv.unit + "'");
    return rv.number * it->second;
  }

  double bare(const std::string& path) const {
    const RawValue& rv = raw_.at(path);
    if (std::isnan(rv.number) || !rv.unit.empty())
      throw ConfigError(field(path),
                        "expected a bare number, got '" + rv.text + "'");
    return rv.number;
  }

  std::string word(const std::string& path) const {
    return raw_.at(path).text;
  }

  const RawValue& rv(const std::string& path) const { return raw_.at(path); }

private:
  std::map<std::string, RawValue> raw_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

Scenario table1_scenario() {
  Scenario s;
  MechanicalOscillator osc;
  osc.mass = 1e-18;              // kg
  osc.omega_m = 2.0 * kPi * 1e5; // rad/s
  osc.gamma = 2.0 * kPi * 10.0;  // rad/s (Q = 1e4)
  s.config.oscillator = osc;
  SlabReadout slab;
  slab.provenance = SlabProvenance{3.5, 25e-9, 1500e-9};
  slab.g = g_star(osc);
  s.config.readout = slab;
  s.config.squeezing = NoSqueezing{};
  s.config.detection.eta = 1.0;
  s.sweep.variable = "nu";
  s.sweep.log_scale = true;
  s.sweep.from = 2.0 * kPi * 1e3; // 1 kHz
  s.sweep.to = 2.0 * kPi * 1e7;   // 10 MHz
  s.sweep.points = 300;
  return s;
}

Scenario parse_scenario(const std::string& text) {
  const Scenario defaults = table1_scenario();
  Resolver res(text);
  Scenario s = defaults;

  // --- [system] ---
  std::string kind = "slab";
  if (res.has("system.kind")) {
    kind = res.word("system.kind");
    if (kind != "slab" && kind != "cavity")
      throw ConfigError("[system].kind", "must be 'slab' or 'cavity'");
  }
  auto& osc = s.config.oscillator;
  if (res.has("system.mass")) osc.mass = res.quantity("system.mass", mass_units());
  if (res.has("system.omega_m"))
    osc.omega_m = res.quantity("system.omega_m", freq_units());
  if (res.has("system.gamma") && res.has("system.q_factor"))
    throw ConfigError("[system].gamma",
                      "give exactly one of gamma and q_factor");
  if (res.has("system.gamma"))
    osc.gamma = res.quantity("system.gamma", freq_units());
  else if (res.has("system.q_factor")) {
    const double q = res.bare("system.q_factor");
    if (!(q > 0.0)) throw ConfigError("[system].q_factor", "must be positive");
    osc.gamma = osc.omega_m / q;
  }
  validate(osc);

  SlabProvenance prov =
      std::get<SlabReadout>(defaults.config.readout).provenance.value();
  if (res.has("system.chi_e")) prov.chi_e = res.bare("system.chi_e");
  if (res.has("system.ell")) prov.ell = res.quantity("system.ell", length_units());
  if (res.has("system.wavelength"))
    prov.wavelength = res.quantity("system.wavelength", length_units());

  // --- [drive] ---
  const bool has_g = res.has("drive.g");
  const bool has_power = res.has("drive.power");
  const bool has_gc = res.has("drive.g_c");
  if (has_g + has_power + has_gc > 1)
    throw ConfigError("[drive]",
                      "give exactly one of g, power" +
                          std::string(kind == "cavity" ? ", g_c" : ""));
  if (has_gc && kind != "cavity")
    throw ConfigError("[drive].g_c", "only valid for a cavity readout");
  if (has_power && kind != "slab")
    throw ConfigError("[drive].power", "only valid for a slab readout");

  double g_equiv = std::get<SlabReadout>(defaults.config.readout).g;
  if (has_g) {
    const auto& rvg = res.rv("drive.g");
    if (std::isnan(rvg.number))
      throw ConfigError("[drive].g", "expected a number");
    if (rvg.unit == "gstar")
      g_equiv = rvg.number * g_star(osc);
    else if (rvg.unit == "sqrt_kg_per_s")
      g_equiv = rvg.number;
    else
      throw ConfigError("[drive].g",
                        "unit must be 'gstar' or 'sqrt_kg_per_s'");
  } else if (has_power) {
    const double p = res.quantity("drive.power", power_units());
    g_equiv = coupling_from_power(p, prov).g;
  } else if (!has_gc) {
    g_equiv = g_star(osc); // default: knee coupling for the resolved oscillator
  }

  if (kind == "slab") {
    SlabReadout slab;
    slab.g = g_equiv;
    slab.provenance = prov;
    s.config.readout = slab;
  } else {
    CavityReadout cav;
    if (!res.has("system.kappa"))
      throw ConfigError("[system].kappa", "required for a cavity readout");
    cav.kappa = res.quantity("system.kappa", freq_units());
    if (has_gc)
      cav.g_c = res.quantity("drive.g_c", freq_units());
    else
      cav.g_c = std::sqrt(g_equiv * g_equiv * cav.kappa / 4.0);
    s.config.readout = cav;
  }

  // --- [squeezing] ---
  std::string mode = "none";
  if (res.has("squeezing.mode")) mode = res.word("squeezing.mode");
  if (mode != "none" && mode != "fixed" && mode != "optimal")
    throw ConfigError("[squeezing].mode",
                      "must be 'none', 'fixed' or 'optimal'");
  double r = 0.0;
  if (res.has("squeezing.r")) {
    if (mode == "none")
      throw ConfigError("[squeezing].r", "meaningless with mode = none");
    const auto& rv = res.rv("squeezing.r");
    if (std::isnan(rv.number))
      throw ConfigError("[squeezing].r", "expected a number");
    if (rv.unit.empty()) {
      r = rv.number;
    } else if (rv.unit == "dB") {
      r = squeezing_r_from_db(rv.number);
      char note[128];
      std::snprintf(note, sizeof note,
                    "[squeezing].r: %g dB -> r = %.6g (dB = 10 log10 e^{2r})",
                    rv.number, r);
      s.notes.emplace_back(note);
    } else {
      throw ConfigError("[squeezing].r", "unit must be absent or 'dB'");
    }
  } else if (mode != "none") {
    throw ConfigError("[squeezing].r", "required for mode = " + mode);
  }
  if (mode == "none") {
    if (res.has("squeezing.theta"))
      throw ConfigError("[squeezing].theta", "only valid with mode = fixed");
    s.config.squeezing = NoSqueezing{};
  } else if (mode == "fixed") {
    if (!res.has("squeezing.theta"))
      throw ConfigError("[squeezing].theta", "required for mode = fixed");
    s.config.squeezing =
        FixedAngle{r, res.quantity("squeezing.theta", angle_units())};
  } else {
    if (res.has("squeezing.theta"))
      throw ConfigError("[squeezing].theta", "only valid with mode = fixed");
    s.config.squeezing = OptimalAngle{r};
  }

  // --- [detection] ---
  if (res.has("detection.eta")) s.config.detection.eta = res.bare("detection.eta");

  // --- [sweep] ---
  auto& sw = s.sweep;
  if (res.has("sweep.variable")) {
    sw.variable = res.word("sweep.variable");
    static const std::set<std::string> vars = {"nu", "g", "power", "r", "eta"};
    if (!vars.count(sw.variable))
      throw ConfigError("[sweep].variable",
                        "must be one of nu, g, power, r, eta");
  }
  if (res.has("sweep.scale")) {
    const std::string sc = res.word("sweep.scale");
    if (sc != "log" && sc != "linear")
      throw ConfigError("[sweep].scale", "must be 'log' or 'linear'");
    sw.log_scale = sc == "log";
  }
  const auto sweep_value = [&](const std::string& path) {
    if (sw.variable == "nu") return res.quantity(path, freq_units());
    if (sw.variable == "power") return res.quantity(path, power_units());
    if (sw.variable == "g") {
      const auto& rv = res.rv(path);
      if (std::isnan(rv.number)) throw ConfigError(res.field(path), "expected a number");
      if (rv.unit == "gstar") return rv.number * g_star(osc);
      if (rv.unit == "sqrt_kg_per_s") return rv.number;
      throw ConfigError(res.field(path), "unit must be 'gstar' or 'sqrt_kg_per_s'");
    }
    return res.bare(path); // r, eta
  };
  const bool sweep_changed = res.has("sweep.variable");
  if (res.has("sweep.from")) sw.from = sweep_value("sweep.from");
  else if (sweep_changed)
    throw ConfigError("[sweep].from", "required when variable is set");
  if (res.has("sweep.to")) sw.to = sweep_value("sweep.to");
  else if (sweep_changed)
    throw ConfigError("[sweep].to", "required when variable is set");
  if (res.has("sweep.points")) {
    const double p = res.bare("sweep.points");
    if (p < 1.0 || p != std::floor(p))
      throw ConfigError("[sweep].points", "must be a positive integer");
    sw.points = static_cast<int>(p);
  }
  if (!(sw.from < sw.to) && sw.points > 1)
    throw ConfigError("[sweep].from", "need from < to");
  if (sw.log_scale && !(sw.from > 0.0))
    throw ConfigError("[sweep].from", "log scale needs positive bounds");
  if (sw.variable == "power" && kind != "slab")
    throw ConfigError("[sweep].variable", "power sweep needs a slab readout");
  if (sw.variable == "eta" && !(sw.from > 0.0 && sw.to <= 1.0))
    throw ConfigError("[sweep].from", "eta must lie in (0, 1]");

  validate(s.config);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  const auto* slab = std::get_if<SlabReadout>(&s.config.readout);
  out << "[system]\n";
  out << "kind = " << (slab ? "slab" : "cavity") << "\n";
  out << "mass = " << fmt(s.config.oscillator.mass) << " kg\n";
  out << "omega_m = " << fmt(s.config.oscillator.omega_m) << " rad/s\n";
  out << "gamma = " << fmt(s.config.oscillator.gamma) << " rad/s\n";
  if (slab && slab->provenance) {
    out << "chi_e = " << fmt(slab->provenance->chi_e) << "\n";
    out << "ell = " << fmt(slab->provenance->ell) << " m\n";
    out << "wavelength = " << fmt(slab->provenance->wavelength) << " m\n";
  }
  if (!slab) {
    const auto& cav = std::get<CavityReadout>(s.config.readout);
    out << "kappa = " << fmt(cav.kappa) << " rad/s\n";
  }
  out << "[drive]\n";
  if (slab)
    out << "g = " << fmt(slab->g) << " sqrt_kg_per_s\n";
  else
    out << "g_c = " << fmt(std::get<CavityReadout>(s.config.readout).g_c)
        << " rad/s\n";
  out << "[squeezing]\n";
  if (std::holds_alternative<NoSqueezing>(s.config.squeezing)) {
    out << "mode = none\n";
  } else if (const auto* fx = std::get_if<FixedAngle>(&s.config.squeezing)) {
    out << "mode = fixed\n";
    out << "r = " << fmt(fx->r) << "\n";
    out << "theta = " << fmt(fx->theta) << " rad\n";
  } else {
    out << "mode = optimal\n";
    out << "r = " << fmt(std::get<OptimalAngle>(s.config.squeezing).r) << "\n";
  }
  out << "[detection]\n";
  out << "eta = " << fmt(s.config.detection.eta) << "\n";
  out << "[sweep]\n";
  out << "variable = " << s.sweep.variable << "\n";
  out << "scale = " << (s.sweep.log_scale ? "log" : "linear") << "\n";
  const char* unit = s.sweep.variable == "nu"      ? " rad/s"
                     : s.sweep.variable == "g"     ? " sqrt_kg_per_s"
                     : s.sweep.variable == "power" ? " W"
                                                   : "";
  out << "from = " << fmt(s.sweep.from) << unit << "\n";
  out << "to = " << fmt(s.sweep.to) << unit << "\n";
  out << "points = " << s.sweep.points << "\n";
  return out.str();
}

} // namespace ominc
