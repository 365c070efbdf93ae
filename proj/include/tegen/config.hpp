#pragma once

// Study configuration: device blocks plus per-command parameters, read from
// TOML-style text. Dimensional keys carry their unit as a suffix
// (`line_width_um`, `measured_r_g_kohm`, `delta_t_k`, `voltage_mv`); a bare
// dimensional key and any unknown key are rejected.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tegen/error.hpp"
#include "tegen/explore.hpp"
#include "tegen/kv.hpp"
#include "tegen/layout.hpp"
#include "tegen/materials.hpp"
#include "tegen/units.hpp"

namespace tegen {

struct DeviceConfig {
  std::string name;
  DeviceGeometry geometry;
  AnnealState state = AnnealState::laser_annealed;
  DeltaSSource delta_s = DeltaSSource::calibrated;
  std::optional<long> junction_pairs;  // overrides the computed layout for electrical evaluation
  std::optional<double> measured_r_g;  // ohm
  std::optional<std::string> reference;
  int line = 0;
};

struct SimulateParams {
  double delta_t_min = 0.0;
  double delta_t_max = 100.0;
  int steps = 11;
};

struct CalibrateParams {
  std::optional<std::string> thickness_device;
  AnnealState thickness_state = AnnealState::laser_annealed;
  std::optional<double> thickness_r_g;  // ohm; defaults to the reference row
  std::optional<double> voltage;        // V
  std::optional<std::string> voltage_device;
  double voltage_delta_t = 100.0;
};

struct StudyConfig {
  std::vector<DeviceConfig> devices;
  std::optional<std::string> materials_path;
  MaterialSet materials;
  SimulateParams simulate;
  std::optional<SweepSpec> sweep;
  Objective objective = Objective::max_p_u;
  CalibrateParams calibrate;

  const DeviceConfig* find_device(std::string_view name) const {
    for (const auto& d : devices) {
      if (d.name == name) return &d;
    }
    return nullptr;
  }
};

namespace detail {

enum class Kind { length, resistance, temperature, voltage, count, text };

struct Suffix {
  std::string_view name;
  double factor;
};

inline std::span<const Suffix> suffixes(Kind k) {
  static constexpr Suffix kLength[] = {{"um", units::micrometer}, {"mm", units::millimeter}, {"cm", 1.0}};
  static constexpr Suffix kResistance[] = {{"ohm", 1.0}, {"kohm", units::kilo_ohm}};
  static constexpr Suffix kTemperature[] = {{"k", 1.0}};
  static constexpr Suffix kVoltage[] = {{"v", 1.0}, {"mv", units::millivolt}};
  switch (k) {
    case Kind::length: return kLength;
    case Kind::resistance: return kResistance;
    case Kind::temperature: return kTemperature;
    case Kind::voltage: return kVoltage;
    default: return {};
  }
}

struct Field {
  std::string_view base;
  Kind kind;
  std::function<void(const kv::Entry&, double)> on_number;  // value already in internal units
  std::function<void(const kv::Entry&, const std::string&)> on_text;
};

inline void dispatch(const kv::Section& sec, const std::vector<Field>& fields) {
  for (const auto& e : sec.entries) {
    bool matched = false;
    for (const auto& f : fields) {
      if (f.kind == Kind::text || f.kind == Kind::count) {
        if (e.key != f.base) continue;
        matched = true;
        if (f.kind == Kind::text) {
          f.on_text(e, kv::as_string(e));
        } else {
          double v = kv::as_number(e);
          if (v != static_cast<double>(static_cast<long>(v))) throw ParseError(e.line, "'" + e.key + "' must be an integer");
          f.on_number(e, v);
        }
        break;
      }
      if (e.key == f.base) throw ParseError(e.line, "key '" + e.key + "' is missing its unit suffix");
      if (!e.key.starts_with(f.base) || e.key.size() <= f.base.size() + 1 || e.key[f.base.size()] != '_') continue;
      const std::string_view suffix = std::string_view(e.key).substr(f.base.size() + 1);
      for (const auto& s : suffixes(f.kind)) {
        if (s.name == suffix) {
          f.on_number(e, kv::as_number(e) * s.factor);
          matched = true;
          break;
        }
      }
      if (matched) break;
    }
    if (!matched) throw ParseError(e.line, "unknown key '" + e.key + "' in [" + sec.name + "]");
  }
}

inline AnnealState state_from(const kv::Entry& e, const std::string& s) {
  if (auto st = parse_anneal_state(s)) return *st;
  throw ParseError(e.line, "unknown anneal state '" + s + "'");
}

inline DeltaSSource delta_s_from(const kv::Entry& e, const std::string& s) {
  if (auto d = parse_delta_s_source(s)) return *d;
  throw ParseError(e.line, "delta_s must be \"bulk\" or \"calibrated\", got '" + s + "'");
}

inline auto positive_length(double& target) {
  return [&target](const kv::Entry& e, double v) {
    if (!(v > 0.0)) throw ParseError(e.line, "'" + e.key + "' must be > 0");
    target = v;
  };
}

inline DeviceConfig parse_device(const kv::Section& sec) {
  DeviceConfig d;
  d.name = sec.name.substr(std::string_view("device.").size());
  d.line = sec.line;
  bool have_width = false, have_spacing = false, have_length = false;
  auto& g = d.geometry;
  std::vector<Field> fields = {
      {"chip_width", Kind::length, positive_length(g.chip_width), {}},
      {"chip_height", Kind::length, positive_length(g.chip_height), {}},
      {"line_width", Kind::length, [&](const kv::Entry& e, double v) { positive_length(g.line_width)(e, v); have_width = true; }, {}},
      {"spacing", Kind::length, [&](const kv::Entry& e, double v) { positive_length(g.spacing)(e, v); have_spacing = true; }, {}},
      {"line_length", Kind::length, [&](const kv::Entry& e, double v) { positive_length(g.line_length)(e, v); have_length = true; }, {}},
      {"film_thickness", Kind::length, positive_length(g.film_thickness), {}},
      {"measured_r_g", Kind::resistance,
       [&](const kv::Entry& e, double v) {
         if (!(v > 0.0)) throw ParseError(e.line, "'" + e.key + "' must be > 0");
         d.measured_r_g = v;
       },
       {}},
      {"junction_pairs", Kind::count,
       [&](const kv::Entry& e, double v) {
         if (v < 1) throw ParseError(e.line, "junction_pairs must be >= 1");
         d.junction_pairs = static_cast<long>(v);
       },
       {}},
      {"state", Kind::text, {}, [&](const kv::Entry& e, const std::string& s) { d.state = state_from(e, s); }},
      {"delta_s", Kind::text, {}, [&](const kv::Entry& e, const std::string& s) { d.delta_s = delta_s_from(e, s); }},
      {"reference", Kind::text, {},
       [&](const kv::Entry& e, const std::string& s) {
         if (!reference::find(s)) throw ParseError(e.line, "unknown reference device '" + s + "'");
         d.reference = s;
       }},
  };
  dispatch(sec, fields);
  if (!have_width) throw ParseError(sec.line, "[" + sec.name + "] needs line_width_<unit>");
  if (!have_spacing) throw ParseError(sec.line, "[" + sec.name + "] needs spacing_<unit>");
  if (!have_length) g.line_length = g.chip_height;
  if (g.line_length > g.chip_height) throw ParseError(sec.line, "[" + sec.name + "] line_length exceeds chip_height");
  return d;
}

inline SweepSpec parse_sweep(const kv::Section& sec) {
  SweepSpec s;
  s.base.line_length = s.base.chip_height;
  bool have[6] = {};
  bool have_length = false;
  auto grid = [&](double& target, int slot) {
    return [&target, &have, slot](const kv::Entry& e, double v) {
      if (!(v > 0.0)) throw ParseError(e.line, "'" + e.key + "' must be > 0");
      target = v;
      have[slot] = true;
    };
  };
  std::vector<Field> fields = {
      {"width_min", Kind::length, grid(s.width.lo, 0), {}},
      {"width_max", Kind::length, grid(s.width.hi, 1), {}},
      {"width_step", Kind::length, grid(s.width.step, 2), {}},
      {"spacing_min", Kind::length, grid(s.spacing.lo, 3), {}},
      {"spacing_max", Kind::length, grid(s.spacing.hi, 4), {}},
      {"spacing_step", Kind::length, grid(s.spacing.step, 5), {}},
      {"chip_width", Kind::length, positive_length(s.base.chip_width), {}},
      {"chip_height", Kind::length, positive_length(s.base.chip_height), {}},
      {"line_length", Kind::length, [&](const kv::Entry& e, double v) { positive_length(s.base.line_length)(e, v); have_length = true; }, {}},
      {"film_thickness", Kind::length, positive_length(s.base.film_thickness), {}},
      {"delta_t", Kind::temperature,
       [&](const kv::Entry& e, double v) {
         if (!(v >= 0.0)) throw ParseError(e.line, "delta_t must be >= 0 K");
         s.delta_t = v;
       },
       {}},
      {"max_r_g", Kind::resistance, [&](const kv::Entry&, double v) { s.constraints.max_r_g = v; }, {}},
      {"min_junctions", Kind::count, [&](const kv::Entry&, double v) { s.constraints.min_junctions = static_cast<long>(v); }, {}},
      {"state", Kind::text, {}, [&](const kv::Entry& e, const std::string& v) { s.material_state = state_from(e, v); }},
      {"delta_s", Kind::text, {}, [&](const kv::Entry& e, const std::string& v) { s.delta_s_source = delta_s_from(e, v); }},
  };
  dispatch(sec, fields);
  static constexpr const char* kNames[] = {"width_min", "width_max", "width_step", "spacing_min", "spacing_max", "spacing_step"};
  for (int i = 0; i < 6; ++i) {
    if (!have[i]) throw ParseError(sec.line, std::string("[sweep] needs ") + kNames[i] + "_<unit>");
  }
  if (!have_length) s.base.line_length = s.base.chip_height;
  if (s.width.hi < s.width.lo || s.spacing.hi < s.spacing.lo) throw ParseError(sec.line, "[sweep] range max is below min");
  return s;
}

}  // namespace detail

/// Builds a validated study from a parsed document. `base_dir` anchors
/// relative paths; referenced files must exist.
inline StudyConfig parse_config(const kv::Document& doc, const std::filesystem::path& base_dir = {}) {
  using namespace detail;
  StudyConfig cfg;
  for (const auto& sec : doc.sections) {
    if (sec.name.empty()) {
      if (!sec.entries.empty()) throw ParseError(sec.entries.front().line, "key outside of a section");
    } else if (sec.name.starts_with("device.")) {
      if (sec.name.size() == std::string_view("device.").size()) throw ParseError(sec.line, "device block needs a name");
      cfg.devices.push_back(parse_device(sec));
    } else if (sec.name == "study") {
      dispatch(sec, {{"materials", Kind::text, {}, [&](const kv::Entry& e, const std::string& p) {
                        auto path = std::filesystem::path(p);
                        if (path.is_relative()) path = base_dir / path;
                        if (!std::filesystem::exists(path)) throw ParseError(e.line, "materials file '" + path.string() + "' does not exist");
                        cfg.materials_path = path.string();
                      }}});
    } else if (sec.name == "simulate") {
      auto& p = cfg.simulate;
      dispatch(sec, {{"delta_t_min", Kind::temperature, [&](const kv::Entry&, double v) { p.delta_t_min = v; }, {}},
                     {"delta_t_max", Kind::temperature, [&](const kv::Entry&, double v) { p.delta_t_max = v; }, {}},
                     {"steps", Kind::count, [&](const kv::Entry&, double v) { p.steps = static_cast<int>(v); }, {}}});
      if (p.steps < 2) throw ParseError(sec.line, "[simulate] steps must be >= 2");
      if (!(p.delta_t_min >= 0.0) || !(p.delta_t_max > p.delta_t_min)) {
        throw ParseError(sec.line, "[simulate] needs 0 <= delta_t_min < delta_t_max");
      }
    } else if (sec.name == "sweep") {
      cfg.sweep = parse_sweep(sec);
    } else if (sec.name == "optimize") {
      dispatch(sec, {{"objective", Kind::text, {}, [&](const kv::Entry& e, const std::string& s) {
                        auto o = parse_objective(s);
                        if (!o) throw ParseError(e.line, "objective must be \"max_p_u\" or \"max_v_s\"");
                        cfg.objective = *o;
                      }}});
    } else if (sec.name == "calibrate") {
      auto& c = cfg.calibrate;
      dispatch(sec, {{"thickness_device", Kind::text, {}, [&](const kv::Entry&, const std::string& s) { c.thickness_device = s; }},
                     {"thickness_state", Kind::text, {}, [&](const kv::Entry& e, const std::string& s) { c.thickness_state = state_from(e, s); }},
                     {"thickness_r_g", Kind::resistance, [&](const kv::Entry&, double v) { c.thickness_r_g = v; }, {}},
                     {"voltage", Kind::voltage, [&](const kv::Entry&, double v) { c.voltage = v; }, {}},
                     {"voltage_device", Kind::text, {}, [&](const kv::Entry&, const std::string& s) { c.voltage_device = s; }},
                     {"voltage_delta_t", Kind::temperature, [&](const kv::Entry&, double v) { c.voltage_delta_t = v; }, {}}});
    } else {
      throw ParseError(sec.line, "unknown section [" + sec.name + "]");
    }
  }
  if (cfg.devices.empty()) throw ConfigError("no device blocks");
  for (auto name : {cfg.calibrate.thickness_device, cfg.calibrate.voltage_device}) {
    if (name && !cfg.find_device(*name)) throw ConfigError("[calibrate] refers to unknown device '" + *name + "'");
  }
  if (cfg.materials_path) cfg.materials = load_materials(*cfg.materials_path);
  return cfg;
}

inline StudyConfig parse_config_file(const std::string& path) {
  return parse_config(kv::parse_file(path), std::filesystem::path(path).parent_path());
}

/// Read-only study describing the three reference chips.
inline constexpr std::string_view kPaperDevicesConfig = R"(# Reference Bi/Sb chips: 1 x 1 cm, 20 um spacing, 20/30/40 um lines.
# junction_pairs carries the published counts; the layout command still
# reports what the pitch formula gives.

[device.20x20]
line_width_um = 20
spacing_um = 20
film_thickness_um = 5.50
state = "laser_annealed"
delta_s = "calibrated"
junction_pairs = 125
measured_r_g_kohm = 82
reference = "20x20"

[device.30x20]
line_width_um = 30
spacing_um = 20
film_thickness_um = 5.50
state = "laser_annealed"
delta_s = "calibrated"
junction_pairs = 104
measured_r_g_kohm = 63.8
reference = "30x20"

[device.40x20]
line_width_um = 40
spacing_um = 20
film_thickness_um = 5.50
state = "laser_annealed"
delta_s = "calibrated"
junction_pairs = 83
measured_r_g_kohm = 31
reference = "40x20"

[simulate]
delta_t_min_k = 0
delta_t_max_k = 100
steps = 11

[sweep]
width_min_um = 20
width_max_um = 40
width_step_um = 10
spacing_min_um = 20
spacing_max_um = 20
spacing_step_um = 10
delta_t_k = 100
state = "laser_annealed"
delta_s = "calibrated"

[optimize]
objective = "max_p_u"

[calibrate]
thickness_device = "20x20"
thickness_state = "laser_annealed"
voltage_mv = 535
voltage_device = "20x20"
voltage_delta_t_k = 100
)";

inline StudyConfig paper_devices_config() { return parse_config(kv::parse_string(kPaperDevicesConfig)); }

}  // namespace tegen
