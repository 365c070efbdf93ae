#pragma once

// Chip geometry to junction layout: the N, L and A of the lumped resistance.

#include <cmath>
#include <string>

#include "tegen/error.hpp"
#include "tegen/units.hpp"

namespace tegen {

/// Planar thin-film generator geometry. All lengths in centimeters.
/// Lines run along `chip_height`; Bi and Sb lines alternate across `chip_width`.
struct DeviceGeometry {
  double chip_width = 1.0;
  double chip_height = 1.0;
  double line_width = 20.0 * units::micrometer;
  double spacing = 20.0 * units::micrometer;
  double line_length = 1.0;
  double film_thickness = 5.50 * units::micrometer;

  bool operator==(const DeviceGeometry&) const = default;
};

struct LayoutCounts {
  long total_lines = 0;
  long junction_pairs = 0;

  bool operator==(const LayoutCounts&) const = default;
};

/// Throws GeometryError unless every length is positive and finite and the
/// lines fit the chip height.
inline void validate(const DeviceGeometry& g) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw GeometryError(std::string(what) + " must be > 0");
  };
  positive(g.chip_width, "chip_width");
  positive(g.chip_height, "chip_height");
  positive(g.line_width, "line_width");
  positive(g.spacing, "spacing");
  positive(g.line_length, "line_length");
  positive(g.film_thickness, "film_thickness");
  if (g.line_length > g.chip_height) throw GeometryError("line_length exceeds chip_height");
}

/// One junction pair occupies a Bi line, a gap, an Sb line and a gap; partial
/// trailing pairs are discarded and no edge margin is reserved.
inline LayoutCounts compute_layout(const DeviceGeometry& g) {
  validate(g);
  const double pitch = 2.0 * (g.line_width + g.spacing);
  // Relative slack absorbs decimal-to-binary error on exact fits (1 cm / 80 um).
  const double ratio = g.chip_width / pitch;
  const long pairs = static_cast<long>(std::floor(ratio * (1.0 + 1e-12)));
  if (pairs < 1) {
    throw GeometryError("geometry too coarse: a junction pair pitch of " + std::to_string(pitch / units::micrometer) +
                        " um does not fit a chip width of " + std::to_string(g.chip_width / units::micrometer) +
                        " um");
  }
  return {2 * pairs, pairs};
}

/// Line section area w * t in square centimeters.
inline double line_cross_section(const DeviceGeometry& g) {
  validate(g);
  return g.line_width * g.film_thickness;
}

}  // namespace tegen
