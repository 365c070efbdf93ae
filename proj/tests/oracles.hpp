#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tegen/explore.hpp"

namespace oracle {

/// Places Bi line, gap, Sb line, gap, ... from the left chip edge in integer
/// nanometers and counts pairs whose full footprint stays on the chip.
inline long placed_pairs(std::int64_t chip_nm, std::int64_t width_nm, std::int64_t spacing_nm) {
  long pairs = 0;
  std::int64_t cursor = 0;
  for (;;) {
    std::int64_t end = cursor;
    end += width_nm;    // Bi line
    end += spacing_nm;  // gap
    end += width_nm;    // Sb line
    end += spacing_nm;  // gap
    if (end > chip_nm) break;
    ++pairs;
    cursor = end;
  }
  return pairs;
}

/// q dominates p: no worse in V_s and P_u and strictly better in one.
inline bool dominates(const tegen::DesignPoint& q, const tegen::DesignPoint& p) {
  return q.point.v_s >= p.point.v_s && q.point.p_u >= p.point.p_u &&
         (q.point.v_s > p.point.v_s || q.point.p_u > p.point.p_u);
}

/// O(n^2) front: non-dominated points, first occurrence of exact duplicates.
inline std::vector<std::size_t> front_indices(std::span<const tegen::DesignPoint> pts) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < pts.size() && keep; ++j) {
      if (dominates(pts[j], pts[i])) keep = false;
      if (j < i && pts[j].point.v_s == pts[i].point.v_s && pts[j].point.p_u == pts[i].point.p_u) keep = false;
    }
    if (keep) out.push_back(i);
  }
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x7e6e5eedULL);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace oracle
