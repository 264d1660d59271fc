#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cogeom/geom.hpp"

namespace cogeom {

enum class InstanceKind { kMaxima, kHull };

/// Requested instance: n points of which exactly h_target are output points
/// (maxima or hull vertices). Generated instances are oracle-verified before
/// being handed out.
struct InstanceSpec {
  uint64_t n = 0;
  uint64_t h_target = 0;
  InstanceKind kind = InstanceKind::kMaxima;
  uint64_t rng_seed = 0;
  bool shuffle = true;

  std::string header_comment() const;
};

/// Staircase of h_target undominated points plus n - h_target points each
/// strictly dominated by a staircase point. Exact duplicates never occur.
std::vector<Point> gen_maxima_instance(const InstanceSpec& spec);

/// h_target vertices in strictly convex position (chained primitive vectors
/// of strictly increasing slope, scaled until the polygon has room) plus
/// n - h_target strictly interior points. Throws if the coordinate bounds
/// cannot accommodate the request.
std::vector<Point> gen_hull_instance(const InstanceSpec& spec);

/// Classical sort-and-scan maxima: survivors of a running-max sweep over the
/// points in descending lexicographic order, returned in decreasing x.
/// Simulator-free.
std::vector<Point> oracle_maxima(std::vector<Point> pts);

/// Monotone-chain convex hull, counterclockwise, strictly convex (collinear
/// boundary points dropped; a segment degenerates to its two endpoints).
/// Simulator-free.
std::vector<Point> oracle_hull(std::vector<Point> pts);

/// Upper chain of the monotone-chain hull: lexicographic minimum to maximum,
/// strictly clockwise turns.
std::vector<Point> oracle_upper_hull(std::vector<Point> pts);

}  // namespace cogeom
