#include "splasmon/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "splasmon/errors.hpp"

namespace splasmon {

namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  }
  return value;
}

long to_long(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(what + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"run", {"variant", "modes", "dt", "t_end", "sample_every", "snapshot_every", "seed",
               "blowup_ceiling"}},
      {"model", {"alpha", "beta", "gamma", "nu", "Omega"}},
      {"initial", {"generator", "u", "v"}},
      {"forcing", {"f", "g"}},
      {"dealias", {"mode", "pad_factor"}},
      {"output", {"sobolev", "surface_x", "surface_t"}},
  };
  return s;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (tree_ == nullptr) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }
  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

  double number(const std::string& key, double fallback) const {
    const auto v = raw(key);
    return v ? to_double(*v, where(key)) : fallback;
  }
  double required_number(const std::string& key) const {
    const auto v = raw(key);
    if (!v) throw ConfigError("missing required key " + where(key));
    return to_double(*v, where(key));
  }
  long integer(const std::string& key, long fallback) const {
    const auto v = raw(key);
    return v ? to_long(*v, where(key)) : fallback;
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

}  // namespace

ModeList parse_mode_list(const std::string& text) {
  ModeList out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) {
      throw ConfigError("mode entry '" + item + "' must have the form k:re:im");
    }
    const long k = to_long(parts[0], "mode index");
    if (k == 0) throw ConfigError("mode entry '" + item + "': k = 0 is not allowed");
    out.push_back({static_cast<int>(k),
                   Complex(to_double(parts[1], "mode real part"),
                           to_double(parts[2], "mode imaginary part"))});
  }
  return out;
}

std::string format_mode_list(const ModeList& modes) {
  std::string out;
  for (const auto& m : modes) {
    if (!out.empty()) out += ", ";
    out += std::to_string(m.k) + ":" + fmt(m.value.real()) + ":" + fmt(m.value.imag());
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [name, section] : tree) {
    const auto it = schema().find(name);
    if (it == schema().end()) {
      if (section.empty()) throw ConfigError(source + ": key '" + name + "' outside a section");
      throw ConfigError(source + ": unknown section [" + name + "]");
    }
    for (const auto& [key, _] : section) {
      if (!it->second.contains(key)) {
        throw ConfigError(source + ": unknown key '" + key + "' in section [" + name + "]");
      }
    }
  }
  const auto section = [&](const std::string& name) {
    const auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name);
  };

  RunConfig c;
  const Section run = section("run");
  const auto variant = run.raw("variant");
  if (!variant) throw ConfigError(source + ": missing required key [run] variant");
  try {
    c.kind = equation_kind_from_string(*variant);
  } catch (const ParameterError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  const long modes = run.integer("modes", 0);
  if (!run.raw("modes")) throw ConfigError(source + ": missing required key [run] modes");
  c.n_modes = static_cast<int>(modes);
  c.dt = run.required_number("dt");
  c.t_end = run.required_number("t_end");
  c.sample_every = static_cast<int>(run.integer("sample_every", c.sample_every));
  c.snapshot_every = static_cast<int>(run.integer("snapshot_every", c.snapshot_every));
  if (run.raw("seed")) c.seed = static_cast<unsigned>(run.integer("seed", 0));
  c.blowup_ceiling = run.number("blowup_ceiling", c.blowup_ceiling);

  const Section model = section("model");
  c.coeffs = coefficients_from_alpha_beta(model.number("alpha", c.coeffs.alpha),
                                          model.number("beta", c.coeffs.beta),
                                          model.number("gamma", 0.0), model.number("nu", 0.0));
  c.coeffs.Omega = model.number("Omega", 0.0);

  const Section initial = section("initial");
  c.initial.generator = initial.raw("generator").value_or("");
  c.initial.u = parse_mode_list(initial.raw("u").value_or(""));
  c.initial.v = parse_mode_list(initial.raw("v").value_or(""));
  if (c.initial.generator.empty() && c.initial.u.empty() && c.initial.v.empty()) {
    throw ConfigError(source + ": [initial] needs a generator or explicit modes");
  }

  const Section forcing = section("forcing");
  c.forcing_f = parse_mode_list(forcing.raw("f").value_or(""));
  c.forcing_g = parse_mode_list(forcing.raw("g").value_or(""));

  const Section dealias = section("dealias");
  if (const auto mode = dealias.raw("mode")) {
    try {
      c.dealias.mode = dealias_mode_from_string(*mode);
    } catch (const ParameterError& e) {
      throw ConfigError(source + ": " + e.what());
    }
  }
  c.dealias.pad_factor = dealias.number("pad_factor", c.dealias.pad_factor);

  const Section output = section("output");
  if (const auto s = output.raw("sobolev")) {
    c.sobolev.clear();
    for (const auto& item : split(*s, ',')) {
      if (!item.empty()) c.sobolev.push_back(to_double(item, "[output] sobolev"));
    }
  }
  c.surface_x = static_cast<int>(output.integer("surface_x", c.surface_x));
  c.surface_t = static_cast<int>(output.integer("surface_t", c.surface_t));

  for (const auto* list : {&c.initial.u, &c.forcing_f}) {
    for (const auto& m : *list) {
      if (m.k < 0) throw ConfigError(source + ": plus-type modes must have k > 0, got " +
                                     std::to_string(m.k));
    }
  }
  for (const auto* list : {&c.initial.v, &c.forcing_g}) {
    for (const auto& m : *list) {
      if (m.k > 0) throw ConfigError(source + ": minus-type modes must have k < 0, got " +
                                     std::to_string(m.k));
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "[run]\n";
  out << "variant = " << to_string(c.kind) << "\n";
  out << "modes = " << c.n_modes << "\n";
  out << "dt = " << fmt(c.dt) << "\n";
  out << "t_end = " << fmt(c.t_end) << "\n";
  out << "sample_every = " << c.sample_every << "\n";
  out << "snapshot_every = " << c.snapshot_every << "\n";
  if (c.seed) out << "seed = " << *c.seed << "\n";
  out << "blowup_ceiling = " << fmt(c.blowup_ceiling) << "\n";
  out << "\n[model]\n";
  out << "alpha = " << fmt(c.coeffs.alpha) << "\n";
  out << "beta = " << fmt(c.coeffs.beta) << "\n";
  out << "gamma = " << fmt(c.coeffs.gamma) << "\n";
  out << "nu = " << fmt(c.coeffs.nu) << "\n";
  out << "Omega = " << fmt(c.coeffs.Omega) << "\n";
  out << "\n[initial]\n";
  if (!c.initial.generator.empty()) out << "generator = " << c.initial.generator << "\n";
  if (!c.initial.u.empty()) out << "u = " << format_mode_list(c.initial.u) << "\n";
  if (!c.initial.v.empty()) out << "v = " << format_mode_list(c.initial.v) << "\n";
  if (!c.forcing_f.empty() || !c.forcing_g.empty()) {
    out << "\n[forcing]\n";
    if (!c.forcing_f.empty()) out << "f = " << format_mode_list(c.forcing_f) << "\n";
    if (!c.forcing_g.empty()) out << "g = " << format_mode_list(c.forcing_g) << "\n";
  }
  out << "\n[dealias]\n";
  out << "mode = " << to_string(c.dealias.mode) << "\n";
  out << "pad_factor = " << fmt(c.dealias.pad_factor) << "\n";
  out << "\n[output]\n";
  out << "sobolev = ";
  for (std::size_t i = 0; i < c.sobolev.size(); ++i) out << (i ? ", " : "") << fmt(c.sobolev[i]);
  out << "\n";
  out << "surface_x = " << c.surface_x << "\n";
  out << "surface_t = " << c.surface_t << "\n";
}

std::string config_to_string(const RunConfig& config) {
  std::ostringstream out;
  write_config(out, config);
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
  return {"fig-uv", "fig-uv-max-scan", "fig-u", "fig-szego", "fig-disp-pos", "fig-disp-neg"};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.n_modes = 1 << 11;
  c.dt = default_dt(c.n_modes);
  c.sample_every = 10;
  if (name == "fig-uv" || name == "fig-uv-max-scan" || name == "fig-disp-pos" ||
      name == "fig-disp-neg") {
    c.kind = EquationKind::bidirectional;
    c.coeffs = coefficients_from_alpha_beta(1.0, 2.0);
    c.initial = {"uv_ic", {}, {}};
    c.t_end = 0.8;
    if (name == "fig-disp-pos") c.coeffs.nu = 1.0;
    if (name == "fig-disp-neg") c.coeffs.nu = -1.0;
    return c;
  }
  if (name == "fig-u") {
    c.kind = EquationKind::unidirectional;
    c.coeffs = coefficients_from_alpha_beta(1.0, 0.0);
    c.initial = {"u_ic", {}, {}};
    c.n_modes = 1 << 12;
    c.dt = 2e-4;
    c.t_end = 1.5;
    return c;
  }
  if (name == "fig-szego") {
    c.kind = EquationKind::szego;
    c.coeffs = coefficients_from_alpha_beta(1.0, 0.0);
    c.initial = {"u_ic", {}, {}};
    c.dt = 5e-4;
    c.t_end = 1.0;
    return c;
  }
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + name + "' (available: " + names + ")");
}

std::vector<int> preset_resolutions(const std::string& name) {
  if (name == "fig-uv-max-scan") return {1 << 11, 1 << 12, 1 << 13, 1 << 14};
  if (name == "fig-u") return {1 << 12, 1 << 14};
  return {preset(name).n_modes};
}

}  // namespace splasmon
