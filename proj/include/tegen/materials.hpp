#pragma once

// Thermoelectric film materials and the annealing state machine.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tegen/error.hpp"
#include "tegen/kv.hpp"
#include "tegen/units.hpp"

namespace tegen {

enum class AnnealState {
  as_deposited,
  furnace_annealed,
  laser_annealed,
  bulk_reference,  // literature bulk value, not a process outcome
};

inline constexpr std::array<AnnealState, 4> kAllAnnealStates = {
    AnnealState::as_deposited, AnnealState::furnace_annealed, AnnealState::laser_annealed,
    AnnealState::bulk_reference};

constexpr std::string_view to_string(AnnealState s) {
  switch (s) {
    case AnnealState::as_deposited: return "as_deposited";
    case AnnealState::furnace_annealed: return "furnace_annealed";
    case AnnealState::laser_annealed: return "laser_annealed";
    case AnnealState::bulk_reference: return "bulk_reference";
  }
  return "unknown";
}

inline std::optional<AnnealState> parse_anneal_state(std::string_view name) {
  for (auto s : kAllAnnealStates) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

/// Resistivity per annealing state in ohm-centimeters; absent entries are unknown.
using ResistivityTable = std::array<std::optional<double>, kAllAnnealStates.size()>;

class Material {
 public:
  /// Throws DomainError when the table violates the material invariants:
  /// positive resistivities, annealing never raising resistivity above the
  /// as-deposited value, and a positive melt limit.
  Material(std::string name, double seebeck_v_per_k, double melt_limit_celsius, ResistivityTable table)
      : name_(std::move(name)), seebeck_(seebeck_v_per_k), melt_limit_(melt_limit_celsius), table_(table) {
    if (!(melt_limit_ > 0.0)) throw DomainError("material '" + name_ + "': melt limit must be > 0 C");
    if (!std::isfinite(seebeck_)) throw DomainError("material '" + name_ + "': Seebeck coefficient must be finite");
    bool any = false;
    for (auto s : kAllAnnealStates) {
      if (const auto& r = table_[index(s)]) {
        any = true;
        if (!(*r > 0.0) || !std::isfinite(*r)) {
          throw DomainError("material '" + name_ + "': resistivity for " + std::string(to_string(s)) +
                            " must be > 0");
        }
      }
    }
    if (!any) throw DomainError("material '" + name_ + "': empty resistivity table");
    if (const auto& dep = table_[index(AnnealState::as_deposited)]) {
      for (auto s : {AnnealState::furnace_annealed, AnnealState::laser_annealed}) {
        const auto& r = table_[index(s)];
        if (r && *r > *dep) {
          throw DomainError("material '" + name_ + "': " + std::string(to_string(s)) +
                            " resistivity exceeds as_deposited");
        }
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  double seebeck() const noexcept { return seebeck_; }
  double melt_limit_celsius() const noexcept { return melt_limit_; }
  const ResistivityTable& table() const noexcept { return table_; }

  std::optional<double> find(AnnealState s) const noexcept { return table_[index(s)]; }

  static constexpr std::size_t index(AnnealState s) noexcept { return static_cast<std::size_t>(s); }

 private:
  std::string name_;
  double seebeck_;
  double melt_limit_;
  ResistivityTable table_;
};

/// Resistivity in ohm-centimeters; MissingDataError when the state is not tabulated.
inline double resistivity(const Material& m, AnnealState state) {
  if (auto r = m.find(state)) return *r;
  throw MissingDataError("material '" + m.name() + "' has no resistivity for state " +
                         std::string(to_string(state)));
}

inline Material bismuth() {
  using namespace units;
  return Material("bismuth", -70.0 * microvolt_per_kelvin, 271.0,
                  {1600.0 * micro_ohm_cm, 900.0 * micro_ohm_cm, 800.0 * micro_ohm_cm, 117.0 * micro_ohm_cm});
}

inline Material antimony() {
  using namespace units;
  return Material("antimony", 40.0 * microvolt_per_kelvin, 360.0,
                  {1100.0 * micro_ohm_cm, 825.0 * micro_ohm_cm, 825.0 * micro_ohm_cm, 40.1 * micro_ohm_cm});
}

/// The two leg materials of a Bi/Sb thermocouple.
struct MaterialSet {
  Material bismuth = tegen::bismuth();
  Material antimony = tegen::antimony();

  /// Per-pair Seebeck difference S_Sb - S_Bi from the tabulated bulk values.
  double bulk_delta_seebeck() const { return antimony.seebeck() - bismuth.seebeck(); }
};

// ---------------------------------------------------------------------------
// Annealing

enum class AnnealMethod { furnace, laser };

constexpr std::string_view to_string(AnnealMethod m) {
  return m == AnnealMethod::furnace ? "furnace" : "laser";
}

struct AnnealSchedule {
  AnnealMethod method = AnnealMethod::furnace;
  std::optional<double> temperature_celsius;  // laser schedules carry none
  double duration_hours = 0.0;
  std::string atmosphere = "Ar";

  static AnnealSchedule furnace(double celsius, double hours, std::string atmosphere = "Ar") {
    if (!(celsius > 0.0)) throw DomainError("furnace anneal requires a temperature > 0 C");
    if (!(hours >= 0.0)) throw DomainError("anneal duration must be >= 0 h");
    return {AnnealMethod::furnace, celsius, hours, std::move(atmosphere)};
  }

  static AnnealSchedule laser(double hours = 0.0, std::string atmosphere = "Ar") {
    if (!(hours >= 0.0)) throw DomainError("anneal duration must be >= 0 h");
    return {AnnealMethod::laser, std::nullopt, hours, std::move(atmosphere)};
  }
};

struct ScheduleViolation {
  std::string material;
  double limit_celsius = 0.0;
  double requested_celsius = 0.0;  // NaN when a furnace schedule carries no temperature

  std::string message() const {
    if (std::isnan(requested_celsius)) return "furnace anneal of " + material + " has no temperature";
    return "furnace anneal of " + material + " at " + std::to_string(requested_celsius) +
           " C is not below the melt limit " + std::to_string(limit_celsius) + " C";
  }
};

/// Furnace schedules must stay strictly below the material's melt limit;
/// laser schedules always pass. Returns the violation, never throws.
inline std::optional<ScheduleViolation> validate_schedule(const Material& m, const AnnealSchedule& schedule) {
  if (schedule.method == AnnealMethod::laser) return std::nullopt;
  const double t = schedule.temperature_celsius.value_or(std::numeric_limits<double>::quiet_NaN());
  if (t < m.melt_limit_celsius()) return std::nullopt;
  return ScheduleViolation{m.name(), m.melt_limit_celsius(), t};
}

class AnnealError : public DomainError {
 public:
  explicit AnnealError(ScheduleViolation v) : DomainError(v.message()), violation_(std::move(v)) {}
  const ScheduleViolation& violation() const noexcept { return violation_; }

 private:
  ScheduleViolation violation_;
};

/// Next state after running `schedule`. Any process state may be re-annealed
/// by either method; the bulk reference is not a film state and cannot be.
inline AnnealState apply_anneal(const Material& m, AnnealState current, const AnnealSchedule& schedule) {
  if (current == AnnealState::bulk_reference) {
    throw DomainError("bulk_reference is not a process state and cannot be annealed");
  }
  if (auto v = validate_schedule(m, schedule)) throw AnnealError(std::move(*v));
  return schedule.method == AnnealMethod::furnace ? AnnealState::furnace_annealed : AnnealState::laser_annealed;
}

// ---------------------------------------------------------------------------
// Override files
//
//   [material.bismuth]
//   seebeck_uv_per_k = -70
//   melt_limit_c = 271
//   resistivity_uohm_cm.as_deposited = 1600
//   ...

namespace detail {

inline Material material_from_section(const kv::Section& sec, std::string name) {
  std::optional<double> seebeck;
  std::optional<double> melt;
  ResistivityTable table{};
  static constexpr std::string_view kRhoPrefix = "resistivity_uohm_cm.";

  for (const auto& e : sec.entries) {
    if (e.key == "seebeck_uv_per_k") {
      seebeck = kv::as_number(e) * units::microvolt_per_kelvin;
    } else if (e.key == "melt_limit_c") {
      melt = kv::as_number(e);
    } else if (e.key.starts_with(kRhoPrefix)) {
      auto state = parse_anneal_state(std::string_view(e.key).substr(kRhoPrefix.size()));
      if (!state) throw ParseError(e.line, "unknown anneal state in key '" + e.key + "'");
      table[Material::index(*state)] = kv::as_number(e) * units::micro_ohm_cm;
    } else if (e.key == "seebeck" || e.key == "melt_limit" || e.key.starts_with("resistivity.") ||
               e.key == "resistivity") {
      throw ParseError(e.line, "key '" + e.key + "' is missing its unit suffix");
    } else {
      throw ParseError(e.line, "unknown key '" + e.key + "' in [" + sec.name + "]");
    }
  }
  if (!seebeck) throw ParseError(sec.line, "[" + sec.name + "] is missing seebeck_uv_per_k");
  if (!melt) throw ParseError(sec.line, "[" + sec.name + "] is missing melt_limit_c");
  bool any = false;
  for (const auto& r : table) any = any || r.has_value();
  if (!any) throw ParseError(sec.line, "[" + sec.name + "] has no resistivity_uohm_cm.<state> entries");
  return Material(std::move(name), *seebeck, *melt, table);
}

}  // namespace detail

/// Applies `[material.<name>]` sections from `doc` on top of `base`. Each
/// section replaces the named material wholesale.
inline MaterialSet apply_material_overrides(const kv::Document& doc, MaterialSet base = {}) {
  for (const auto& sec : doc.sections) {
    if (sec.name.empty()) {
      if (!sec.entries.empty()) throw ParseError(sec.entries.front().line, "key outside of a [material.<name>] section");
      continue;
    }
    if (sec.name == "material.bismuth") {
      base.bismuth = detail::material_from_section(sec, "bismuth");
    } else if (sec.name == "material.antimony") {
      base.antimony = detail::material_from_section(sec, "antimony");
    } else {
      throw ParseError(sec.line, "unknown section [" + sec.name + "]; expected material.bismuth or material.antimony");
    }
  }
  return base;
}

inline MaterialSet load_materials(const std::string& path, MaterialSet base = {}) {
  return apply_material_overrides(kv::parse_file(path), std::move(base));
}

}  // namespace tegen
