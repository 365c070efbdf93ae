#pragma once

// Lumped electrical model of a series Bi/Sb thermopile: global resistance,
// open-circuit Seebeck voltage, short-circuit and matched-load power, and the
// inverse problems used to recover film thickness and the effective Seebeck
// difference from measurements.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tegen/error.hpp"
#include "tegen/layout.hpp"
#include "tegen/materials.hpp"

namespace tegen {

/// Metal interconnect contribution, counted twice per junction pair.
struct MetalTerm {
  double rho_m = 0.0;     // ohm*cm
  double length_m = 0.0;  // cm
  double area_m = 0.0;    // cm^2
};

struct DeviceModel {
  DeviceGeometry geometry;
  LayoutCounts layout;
  double rho_bi = 0.0;  // ohm*cm
  double rho_sb = 0.0;  // ohm*cm
  std::optional<MetalTerm> metal;
  double delta_seebeck = 0.0;  // V/K, S_Sb - S_Bi
};

inline void validate(const DeviceModel& m) {
  validate(m.geometry);
  if (m.layout.junction_pairs < 1) throw GeometryError("model needs at least one junction pair");
  if (!(m.rho_bi > 0.0) || !(m.rho_sb > 0.0)) throw DomainError("leg resistivities must be > 0");
  if (!(m.delta_seebeck > 0.0)) throw DomainError("Seebeck difference must be > 0 for a Bi/Sb pair");
  if (m.metal && (!(m.metal->rho_m >= 0.0) || !(m.metal->length_m >= 0.0) || !(m.metal->area_m > 0.0))) {
    throw DomainError("metal term needs rho_m >= 0, length_m >= 0 and area_m > 0");
  }
}

/// Convenience constructor: layout from the geometry, resistivities from the
/// material table at `state`.
inline DeviceModel make_model(const DeviceGeometry& geometry, const MaterialSet& materials, AnnealState state,
                              double delta_seebeck) {
  return {geometry, compute_layout(geometry), resistivity(materials.bismuth, state),
          resistivity(materials.antimony, state), std::nullopt, delta_seebeck};
}

struct OperatingPoint {
  double delta_t = 0.0;  // K
  double r_g = 0.0;      // ohm
  double v_s = 0.0;      // V
  double p_cc = 0.0;     // W
  double p_u = 0.0;      // W
};

/// R_g = N [rho_Bi L/A + rho_Sb L/A + 2 rho_m L_m/A_m], metal term omitted when absent.
inline double global_resistance(const DeviceModel& m) {
  validate(m);
  const double area = line_cross_section(m.geometry);
  const double length = m.geometry.line_length;
  double per_pair = m.rho_bi * length / area + m.rho_sb * length / area;
  if (m.metal) per_pair += 2.0 * m.metal->rho_m * m.metal->length_m / m.metal->area_m;
  return static_cast<double>(m.layout.junction_pairs) * per_pair;
}

inline double seebeck_voltage(long junction_pairs, double delta_seebeck, double delta_t) {
  if (junction_pairs < 1) throw DomainError("junction count must be >= 1");
  if (!(delta_t >= 0.0)) throw DomainError("temperature difference must be >= 0 K");
  return static_cast<double>(junction_pairs) * delta_seebeck * delta_t;
}

inline double short_circuit_power(double v_s, double r_g) {
  if (!(r_g > 0.0)) throw DomainError("global resistance must be > 0");
  return v_s * v_s / r_g;
}

/// Power into a matched load.
inline double useful_power(double p_cc) {
  if (!(p_cc >= 0.0)) throw DomainError("short-circuit power must be >= 0");
  return p_cc / 4.0;
}

/// Operating point for a known series resistance, e.g. a measured one.
inline OperatingPoint operating_point(long junction_pairs, double delta_seebeck, double r_g, double delta_t) {
  OperatingPoint p;
  p.delta_t = delta_t;
  p.r_g = r_g;
  p.v_s = seebeck_voltage(junction_pairs, delta_seebeck, delta_t);
  p.p_cc = short_circuit_power(p.v_s, r_g);
  p.p_u = useful_power(p.p_cc);
  return p;
}

inline OperatingPoint operating_point(const DeviceModel& m, double delta_t) {
  return operating_point(m.layout.junction_pairs, m.delta_seebeck, global_resistance(m), delta_t);
}

namespace detail {

inline std::vector<double> delta_t_samples(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("power curve needs at least 2 steps");
  if (!(hi > lo) || !(lo >= 0.0)) throw DomainError("temperature range must satisfy 0 <= lo < hi");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
  }
  return out;
}

}  // namespace detail

/// Evenly spaced operating points over [lo, hi] kelvin, endpoints included.
inline std::vector<OperatingPoint> power_curve(const DeviceModel& m, double lo, double hi, int steps) {
  const double r_g = global_resistance(m);
  std::vector<OperatingPoint> out;
  for (double dt : detail::delta_t_samples(lo, hi, steps)) {
    out.push_back(operating_point(m.layout.junction_pairs, m.delta_seebeck, r_g, dt));
  }
  return out;
}

/// Same sampling with an externally supplied resistance.
inline std::vector<OperatingPoint> power_curve(long junction_pairs, double delta_seebeck, double r_g, double lo,
                                               double hi, int steps) {
  std::vector<OperatingPoint> out;
  for (double dt : detail::delta_t_samples(lo, hi, steps)) {
    out.push_back(operating_point(junction_pairs, delta_seebeck, r_g, dt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calibration

struct Residual {
  std::string device_id;
  double measured = 0.0;
  double modeled = 0.0;
  double relative_error = 0.0;
};

inline Residual make_residual(std::string id, double measured, double modeled) {
  double rel = 0.0;
  if (measured != 0.0) {
    rel = std::abs(modeled - measured) / std::abs(measured);
  } else if (modeled != 0.0) {
    rel = HUGE_VAL;
  }
  return {std::move(id), measured, modeled, rel};
}

struct CalibrationResult {
  std::string parameter_name;
  std::string unit;
  double value = 0.0;
  std::vector<Residual> residuals;
};

/// A device whose resistance was measured, for checking a fitted thickness.
struct ResistanceTarget {
  std::string device_id;
  DeviceGeometry geometry;  // film_thickness ignored
  LayoutCounts layout;
  double rho_bi = 0.0;
  double rho_sb = 0.0;
  double measured_r_g = 0.0;
};

/// Inverts the two-leg resistance for film thickness:
///   t = N (rho_Bi + rho_Sb) L / (w R_g).
/// Residuals forward-evaluate `check` with the fitted thickness; with an
/// empty check set the fitting row itself is reported.
inline CalibrationResult calibrate_thickness(double measured_r_g, const DeviceGeometry& geometry,
                                             const LayoutCounts& layout, double rho_bi, double rho_sb,
                                             std::span<const ResistanceTarget> check = {}) {
  if (!(measured_r_g > 0.0)) throw DomainError("measured resistance must be > 0");
  if (layout.junction_pairs < 1) throw DomainError("junction count must be >= 1");
  if (!(rho_bi > 0.0) || !(rho_sb > 0.0)) throw DomainError("leg resistivities must be > 0");
  if (!(geometry.line_width > 0.0) || !(geometry.line_length > 0.0)) {
    throw DomainError("line width and length must be > 0");
  }
  const double t = static_cast<double>(layout.junction_pairs) * (rho_bi + rho_sb) * geometry.line_length /
                   (geometry.line_width * measured_r_g);

  CalibrationResult result{"film_thickness", "cm", t, {}};
  auto forward = [t](const DeviceGeometry& g, const LayoutCounts& n, double rb, double rs) {
    DeviceModel m{g, n, rb, rs, std::nullopt, 1.0};
    m.geometry.film_thickness = t;
    return global_resistance(m);
  };
  if (check.empty()) {
    result.residuals.push_back(make_residual("fit", measured_r_g, forward(geometry, layout, rho_bi, rho_sb)));
  }
  for (const auto& c : check) {
    result.residuals.push_back(make_residual(c.device_id, c.measured_r_g, forward(c.geometry, c.layout, c.rho_bi, c.rho_sb)));
  }
  return result;
}

/// dS_eff = V / (N dT).
inline CalibrationResult calibrate_delta_seebeck(double v_measured, long junction_pairs, double delta_t) {
  if (junction_pairs < 1) throw DomainError("junction count must be >= 1");
  if (!(delta_t > 0.0)) throw DomainError("temperature difference must be > 0 K for calibration");
  const double ds = v_measured / (static_cast<double>(junction_pairs) * delta_t);
  CalibrationResult result{"delta_seebeck", "V/K", ds, {}};
  result.residuals.push_back(
      make_residual("voltage", v_measured, static_cast<double>(junction_pairs) * ds * delta_t));
  return result;
}

/// Fractional resistance drop 1 - after/before.
inline double anneal_resistance_drop(double r_before, double r_after) {
  if (!(r_before > 0.0) || !(r_after > 0.0)) throw DomainError("resistances must be > 0");
  return 1.0 - r_after / r_before;
}

}  // namespace tegen
