#pragma once

// Exhaustive design-space search over line width and spacing.

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tegen/electro.hpp"
#include "tegen/error.hpp"
#include "tegen/layout.hpp"
#include "tegen/materials.hpp"
#include "tegen/reference.hpp"

namespace tegen {

enum class DeltaSSource { bulk, calibrated };

constexpr std::string_view to_string(DeltaSSource s) { return s == DeltaSSource::bulk ? "bulk" : "calibrated"; }

inline std::optional<DeltaSSource> parse_delta_s_source(std::string_view s) {
  if (s == "bulk") return DeltaSSource::bulk;
  if (s == "calibrated") return DeltaSSource::calibrated;
  return std::nullopt;
}

/// Bulk: S_Sb - S_Bi from the material table. Calibrated: from the reference
/// voltage measurement.
inline double resolve_delta_seebeck(DeltaSSource source, const MaterialSet& materials) {
  return source == DeltaSSource::bulk ? materials.bulk_delta_seebeck() : reference::calibrated_delta_seebeck();
}

/// Closed interval [lo, hi] sampled every `step`, starting at lo.
struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::vector<double> values() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be > 0");
    if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid range must satisfy lo <= hi");
    const double span = (hi - lo) / step;
    if (span > 1e7) throw DomainError("grid range has too many samples");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
  }

  static GridRange single(double v) { return {v, v, 1.0}; }
};

struct SweepConstraints {
  std::optional<long> min_junctions;
  std::optional<double> max_r_g;  // ohm
};

struct SweepSpec {
  DeviceGeometry base;  // line_width and spacing are replaced per grid cell
  GridRange width;
  GridRange spacing;
  double delta_t = 100.0;
  AnnealState material_state = AnnealState::laser_annealed;
  DeltaSSource delta_s_source = DeltaSSource::calibrated;
  SweepConstraints constraints;
  MaterialSet materials;
};

struct ConstraintFlags {
  bool below_min_junctions = false;
  bool above_max_r_g = false;

  bool any() const noexcept { return below_min_junctions || above_max_r_g; }
  bool operator==(const ConstraintFlags&) const = default;
};

struct DesignPoint {
  DeviceGeometry geometry;
  LayoutCounts layout;
  OperatingPoint point;
  ConstraintFlags flags;
};

struct SkippedCell {
  double line_width = 0.0;
  double spacing = 0.0;
  std::string reason;
};

enum class SweepStatus { ok, empty };

struct SweepResult {
  SweepStatus status = SweepStatus::empty;
  std::vector<DesignPoint> points;  // grid order: width-major, then spacing
  std::vector<SkippedCell> skipped;
};

/// Evaluates every width x spacing cell. Infeasible cells are skipped with a
/// reason; constraint violations are flagged but kept. Output order is the
/// grid order for any `threads`.
inline SweepResult sweep(const SweepSpec& spec, unsigned threads = 1) {
  if (!(spec.delta_t >= 0.0)) throw DomainError("sweep temperature difference must be >= 0 K");
  const auto widths = spec.width.values();
  const auto spacings = spec.spacing.values();
  const double ds = resolve_delta_seebeck(spec.delta_s_source, spec.materials);
  const double rho_bi = resistivity(spec.materials.bismuth, spec.material_state);
  const double rho_sb = resistivity(spec.materials.antimony, spec.material_state);

  const std::size_t cells = widths.size() * spacings.size();
  std::vector<std::optional<DesignPoint>> evaluated(cells);
  std::vector<std::string> reasons(cells);
  std::vector<std::exception_ptr> failures(cells);

  auto evaluate = [&](std::size_t i) {
    DeviceGeometry g = spec.base;
    g.line_width = widths[i / spacings.size()];
    g.spacing = spacings[i % spacings.size()];
    try {
      DeviceModel m{g, compute_layout(g), rho_bi, rho_sb, std::nullopt, ds};
      DesignPoint dp{g, m.layout, operating_point(m, spec.delta_t), {}};
      if (spec.constraints.min_junctions) {
        dp.flags.below_min_junctions = dp.layout.junction_pairs < *spec.constraints.min_junctions;
      }
      if (spec.constraints.max_r_g) dp.flags.above_max_r_g = dp.point.r_g > *spec.constraints.max_r_g;
      evaluated[i] = dp;
    } catch (const GeometryError& e) {
      reasons[i] = e.what();
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells; ++i) evaluate(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < cells; i += workers) evaluate(i);
      });
    }
  }

  SweepResult result;
  for (std::size_t i = 0; i < cells; ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
    if (evaluated[i]) {
      result.points.push_back(std::move(*evaluated[i]));
    } else {
      result.skipped.push_back({widths[i / spacings.size()], spacings[i % spacings.size()], std::move(reasons[i])});
    }
  }
  result.status = result.points.empty() ? SweepStatus::empty : SweepStatus::ok;
  return result;
}

enum class Objective { max_p_u, max_v_s };

constexpr std::string_view to_string(Objective o) { return o == Objective::max_p_u ? "max_p_u" : "max_v_s"; }

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "max_p_u") return Objective::max_p_u;
  if (s == "max_v_s") return Objective::max_v_s;
  return std::nullopt;
}

inline double objective_value(const DesignPoint& p, Objective o) {
  return o == Objective::max_p_u ? p.point.p_u : p.point.v_s;
}

/// Strict "a ranks before b": higher objective, then smaller R_g, smaller
/// width, smaller spacing.
inline bool ranks_before(const DesignPoint& a, const DesignPoint& b, Objective o) {
  const double va = objective_value(a, o);
  const double vb = objective_value(b, o);
  if (va != vb) return va > vb;
  if (a.point.r_g != b.point.r_g) return a.point.r_g < b.point.r_g;
  if (a.geometry.line_width != b.geometry.line_width) return a.geometry.line_width < b.geometry.line_width;
  return a.geometry.spacing < b.geometry.spacing;
}

class NoSolutionError : public GeometryError {
 public:
  explicit NoSolutionError(const std::string& what) : GeometryError(what) {}
};

/// Best point by `ranks_before`; the first one wins on full ties.
inline const DesignPoint& select_best(std::span<const DesignPoint> points, Objective o) {
  if (points.empty()) throw NoSolutionError("no feasible design point");
  const DesignPoint* best = &points.front();
  for (const auto& p : points.subspan(1)) {
    if (ranks_before(p, *best, o)) best = &p;
  }
  return *best;
}

/// Argmax over the points that satisfy every sweep constraint.
inline DesignPoint best_admissible(std::span<const DesignPoint> points, Objective o) {
  std::vector<DesignPoint> admissible;
  std::copy_if(points.begin(), points.end(), std::back_inserter(admissible),
               [](const DesignPoint& p) { return !p.flags.any(); });
  if (admissible.empty()) {
    throw NoSolutionError(points.empty() ? "no feasible geometry in the sweep grid"
                                         : "every feasible geometry violates a sweep constraint");
  }
  return select_best(admissible, o);
}

/// Exhaustive grid argmax.
inline DesignPoint optimize(const SweepSpec& spec, Objective o, unsigned threads = 1) {
  return best_admissible(sweep(spec, threads).points, o);
}

/// Points not dominated in (V_s, P_u), both maximized, sorted by ascending
/// V_s. Of several identical points only the first is kept.
inline std::vector<DesignPoint> pareto_front(std::span<const DesignPoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = points[a].point;
    const auto& pb = points[b].point;
    if (pa.v_s != pb.v_s) return pa.v_s > pb.v_s;
    return pa.p_u > pb.p_u;
  });

  std::vector<DesignPoint> front;
  bool have_max = false;
  double max_p_u = 0.0;
  for (std::size_t idx : order) {
    const auto& p = points[idx].point;
    // Anything already kept has V_s >= p.v_s, so p survives only with a strictly larger P_u.
    if (!have_max || p.p_u > max_p_u) {
      front.push_back(points[idx]);
      max_p_u = p.p_u;
      have_max = true;
    }
  }
  std::reverse(front.begin(), front.end());
  return front;
}

}  // namespace tegen
