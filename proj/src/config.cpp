#include "quadspin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "quadspin/error.hpp"

namespace quadspin {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double number_field(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError("field '" + key + "' must be a number");
  return v.get<double>();
}

int int_field(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError("field '" + key + "' must be an integer");
  return v.get<int>();
}

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("cannot parse integer '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

std::string windows_to_string(const std::vector<int>& w) {
  if (w.size() >= 2) {
    const int step = w[1] - w[0];
    bool arithmetic = step > 0;
    for (std::size_t i = 1; i < w.size() && arithmetic; ++i) arithmetic = (w[i] - w[i - 1] == step);
    if (arithmetic) {
      return std::to_string(w.front()) + ":" + std::to_string(step) + ":" + std::to_string(w.back());
    }
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out;
}

}  // namespace

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::na23:
      return "na23";
    case Preset::cs133:
      return "cs133";
    case Preset::custom:
      return "custom";
  }
  return "custom";
}

Preset parse_preset(std::string_view name) {
  if (name == "na23") return Preset::na23;
  if (name == "cs133") return Preset::cs133;
  if (name == "custom") return Preset::custom;
  throw ValidationError("unknown preset '" + std::string(name) + "' (expected na23, cs133 or custom)");
}

RelaxationParams TableValues::to_params(std::string label) const {
  RelaxationParams p;
  p.j0 = j0_ns / 1e9;
  p.j1 = j1_ns / 1e9;
  p.j2 = j2_ns / 1e9;
  p.c_q = c_q_hz2;
  p.omega_q = 2.0 * std::numbers::pi * nu_q_hz;
  p.label = std::move(label);
  p.validate();
  return p;
}

TableValues preset_table(Preset p) {
  switch (p) {
    case Preset::na23:
      return {14.0, 4.0, 3.4, 1.2e10, 16700.0};
    case Preset::cs133:
      return {590.0, 27.0, 1.28, 9.9e6, 5970.0};
    case Preset::custom:
      break;
  }
  throw ValidationError("custom preset has no table values");
}

SpinNumber preset_spin(Preset p) {
  switch (p) {
    case Preset::na23:
      return SpinNumber(3);
    case Preset::cs133:
      return SpinNumber(7);
    case Preset::custom:
      break;
  }
  throw ValidationError("custom preset has no fixed spin");
}

SimulationConfig make_preset_config(Preset p) {
  SimulationConfig cfg;
  cfg.preset = p;
  cfg.spin = preset_spin(p);
  cfg.table = preset_table(p);
  cfg.relaxation = cfg.table.to_params(std::string(preset_name(p)));
  return cfg;
}

double SimulationConfig::period() const { return 2.0 * std::numbers::pi / relaxation.omega_q; }
double SimulationConfig::nu_q() const { return relaxation.omega_q / (2.0 * std::numbers::pi); }

TimeGrid GridSpec::build(double period) const {
  if (scheme == GridScheme::uniform) {
    if (t_start_nuq < 0.0) throw ValidationError("uniform grid must start at t >= 0");
    return TimeGrid::uniform(t_start_nuq * period, t_end_nuq * period, samples);
  }
  if (scheme == GridScheme::windowed) {
    return TimeGrid::windowed(windows, samples_per_window, period);
  }
  throw ValidationError("explicit sample grids are not configurable");
}

std::vector<int> parse_window_list(std::string_view text) {
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ValidationError("window range must be start:step:stop");
    const int start = parse_int(text.substr(0, c1), "window range");
    const int step = parse_int(text.substr(c1 + 1, c2 - c1 - 1), "window range");
    const int stop = parse_int(text.substr(c2 + 1), "window range");
    if (start < 1 || step < 1 || stop < start) throw ValidationError("invalid window range");
    for (int k = start; k <= stop; k += step) out.push_back(k);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_int(piece, "window list"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::pair<int, int> parse_grid_shape(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) throw ValidationError("grid shape must look like 181x361");
  return {parse_int(text.substr(0, x), "grid shape"), parse_int(text.substr(x + 1), "grid shape")};
}

SimulationConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed configuration: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("configuration must be a JSON object");
  reject_unknown(doc,
                 {"preset", "spin", "j0_ns", "j1_ns", "j2_ns", "c_q_hz2", "nu_q_hz", "relaxation",
                  "initial", "grid", "outputs", "wigner_grid"},
                 "configuration");

  if (!doc.contains("preset") || !doc["preset"].is_string()) {
    throw ValidationError("missing field 'preset'");
  }
  SimulationConfig cfg;
  cfg.preset = parse_preset(doc["preset"].get<std::string>());

  const std::vector<std::string> table_keys = {"j0_ns", "j1_ns", "j2_ns", "c_q_hz2", "nu_q_hz"};
  if (cfg.preset == Preset::custom) {
    if (!doc.contains("spin")) throw ValidationError("missing field 'spin' for custom preset");
    for (const auto& key : table_keys) {
      if (!doc.contains(key)) throw ValidationError("missing field '" + key + "' for custom preset");
    }
  }

  TableValues table = cfg.preset == Preset::custom ? TableValues{} : preset_table(cfg.preset);
  SpinNumber spin = cfg.preset == Preset::custom ? SpinNumber(1) : preset_spin(cfg.preset);
  if (doc.contains("spin")) {
    if (!doc["spin"].is_string()) throw ValidationError("field 'spin' must be a string such as \"3/2\"");
    const SpinNumber given = SpinNumber::parse(doc["spin"].get<std::string>());
    if (cfg.preset != Preset::custom && !(given == spin)) {
      throw ValidationError("spin does not match preset " + std::string(preset_name(cfg.preset)));
    }
    spin = given;
  }
  double* slots[] = {&table.j0_ns, &table.j1_ns, &table.j2_ns, &table.c_q_hz2, &table.nu_q_hz};
  for (std::size_t i = 0; i < table_keys.size(); ++i) {
    if (!doc.contains(table_keys[i])) continue;
    const double v = number_field(doc, table_keys[i]);
    if (cfg.preset != Preset::custom && v != *slots[i]) {
      throw ValidationError("field '" + table_keys[i] + "' does not match preset " +
                            std::string(preset_name(cfg.preset)) + "; use preset \"custom\"");
    }
    *slots[i] = v;
  }
  if (!(table.j0_ns > 0.0) || !(table.j1_ns > 0.0) || !(table.j2_ns > 0.0)) {
    throw ValidationError("spectral densities j0_ns, j1_ns, j2_ns must be positive");
  }
  if (table.c_q_hz2 < 0.0) throw ValidationError("c_q_hz2 must be non-negative");
  if (!(table.nu_q_hz > 0.0)) throw ValidationError("nu_q_hz must be positive");
  if (spin.two_i() < 2) throw ValidationError("spin 1/2 has no quadrupole coupling");

  cfg.spin = spin;
  cfg.table = table;
  cfg.relaxation = table.to_params(std::string(preset_name(cfg.preset)));

  if (doc.contains("relaxation")) {
    if (!doc["relaxation"].is_boolean()) throw ValidationError("field 'relaxation' must be a boolean");
    cfg.relaxation_enabled = doc["relaxation"].get<bool>();
  }

  if (doc.contains("initial")) {
    const auto& init = doc["initial"];
    if (!init.is_object()) throw ValidationError("field 'initial' must be an object");
    reject_unknown(init, {"theta", "phi"}, "initial");
    if (init.contains("theta")) cfg.initial.theta = number_field(init, "theta");
    if (init.contains("phi")) cfg.initial.phi = number_field(init, "phi");
    (void)coherent_amplitudes(cfg.spin, cfg.initial);  // range check
  }

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (!g.is_object()) throw ValidationError("field 'grid' must be an object");
    reject_unknown(g, {"scheme", "windows", "samples_per_window", "t_start_nuq", "t_end_nuq", "samples"},
                   "grid");
    const std::string scheme = g.value("scheme", std::string("windowed"));
    if (scheme == "windowed") {
      cfg.grid.scheme = GridScheme::windowed;
      if (g.contains("windows")) {
        const auto& w = g["windows"];
        if (w.is_string()) {
          cfg.grid.windows = parse_window_list(w.get<std::string>());
        } else if (w.is_array()) {
          cfg.grid.windows.clear();
          for (const auto& k : w) {
            if (!k.is_number_integer()) throw ValidationError("window indices must be integers");
            cfg.grid.windows.push_back(k.get<int>());
          }
        } else {
          throw ValidationError("field 'windows' must be a string or an array");
        }
      }
      if (g.contains("samples_per_window")) cfg.grid.samples_per_window = int_field(g, "samples_per_window");
    } else if (scheme == "uniform") {
      cfg.grid.scheme = GridScheme::uniform;
      if (g.contains("t_start_nuq")) cfg.grid.t_start_nuq = number_field(g, "t_start_nuq");
      if (g.contains("t_end_nuq")) cfg.grid.t_end_nuq = number_field(g, "t_end_nuq");
      if (g.contains("samples")) cfg.grid.samples = int_field(g, "samples");
    } else {
      throw ValidationError("unknown grid scheme '" + scheme + "'");
    }
    (void)cfg.grid.build(cfg.period());  // validate
  }

  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    if (!o.is_array()) throw ValidationError("field 'outputs' must be an array");
    cfg.outputs.trajectory = cfg.outputs.minima = cfg.outputs.derivative = false;
    cfg.outputs.wigner = cfg.outputs.config = false;
    for (const auto& item : o) {
      if (!item.is_string()) throw ValidationError("output names must be strings");
      const auto name = item.get<std::string>();
      if (name == "trajectory") cfg.outputs.trajectory = true;
      else if (name == "minima") cfg.outputs.minima = true;
      else if (name == "derivative") cfg.outputs.derivative = true;
      else if (name == "wigner") cfg.outputs.wigner = true;
      else if (name == "config") cfg.outputs.config = true;
      else throw ValidationError("unknown output '" + name + "'");
    }
  }
  if (doc.contains("wigner_grid")) {
    if (!doc["wigner_grid"].is_string()) throw ValidationError("field 'wigner_grid' must be a string");
    const auto [nt, np] = parse_grid_shape(doc["wigner_grid"].get<std::string>());
    if (nt < 2 || np < 2) throw ValidationError("wigner_grid needs at least 2x2 nodes");
    cfg.outputs.wigner_theta = nt;
    cfg.outputs.wigner_phi = np;
  }
  return cfg;
}

SimulationConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_config(buffer.str());
}

std::string config_to_json(const SimulationConfig& cfg) {
  json doc;
  doc["preset"] = std::string(preset_name(cfg.preset));
  doc["spin"] = cfg.spin.to_string();
  doc["j0_ns"] = cfg.table.j0_ns;
  doc["j1_ns"] = cfg.table.j1_ns;
  doc["j2_ns"] = cfg.table.j2_ns;
  doc["c_q_hz2"] = cfg.table.c_q_hz2;
  doc["nu_q_hz"] = cfg.table.nu_q_hz;
  doc["relaxation"] = cfg.relaxation_enabled;
  doc["initial"] = {{"theta", cfg.initial.theta}, {"phi", cfg.initial.phi}};
  if (cfg.grid.scheme == GridScheme::uniform) {
    doc["grid"] = {{"scheme", "uniform"},
                   {"t_start_nuq", cfg.grid.t_start_nuq},
                   {"t_end_nuq", cfg.grid.t_end_nuq},
                   {"samples", cfg.grid.samples}};
  } else {
    doc["grid"] = {{"scheme", "windowed"},
                   {"windows", windows_to_string(cfg.grid.windows)},
                   {"samples_per_window", cfg.grid.samples_per_window}};
  }
  json outputs = json::array();
  if (cfg.outputs.trajectory) outputs.push_back("trajectory");
  if (cfg.outputs.minima) outputs.push_back("minima");
  if (cfg.outputs.derivative) outputs.push_back("derivative");
  if (cfg.outputs.wigner) outputs.push_back("wigner");
  if (cfg.outputs.config) outputs.push_back("config");
  doc["outputs"] = outputs;
  doc["wigner_grid"] = std::to_string(cfg.outputs.wigner_theta) + "x" + std::to_string(cfg.outputs.wigner_phi);
  return doc.dump(2) + "\n";
}

}  // namespace quadspin
