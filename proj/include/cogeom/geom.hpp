#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cogeom/iosim.hpp"

namespace cogeom {

/// Exact-integer planar point. Coordinates are capped at +/- 2^26 so that
/// every degree-2 predicate (orientation, slope comparison, objective
/// comparison) evaluates exactly in at most 128 bits.
struct Point {
  int32_t x = 0;
  int32_t y = 0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

constexpr int32_t kCoordLimit = 1 << 26;

inline bool in_coord_bounds(const Point& p) {
  return p.x >= -kCoordLimit && p.x <= kCoordLimit && p.y >= -kCoordLimit &&
         p.y <= kCoordLimit;
}

/// Lexicographic (x, y) order; the total order used for distribution keys.
inline bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

/// Sign of the cross product (q-p) x (r-p): +1 left turn, 0 collinear,
/// -1 right turn. Exact in 64-bit for bounded coordinates.
inline int orient(const Point& p, const Point& q, const Point& r) {
  int64_t v = int64_t(q.x - p.x) * int64_t(r.y - p.y) -
              int64_t(q.y - p.y) * int64_t(r.x - p.x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Rational slope dy/dx with dx > 0, plus a distinguished vertical value
/// that compares greater than every finite slope.
struct Slope {
  int64_t dy = 0;
  int64_t dx = 1;

  static Slope vertical() { return Slope{1, 0}; }
  bool is_vertical() const { return dx == 0; }

  /// Slope of the segment from a to b; callers orient pairs so this is
  /// well-defined (a != b).
  static Slope of(const Point& a, const Point& b) {
    if (a.x == b.x) return vertical();
    if (a.x < b.x) return Slope{int64_t(b.y) - a.y, int64_t(b.x) - a.x};
    return Slope{int64_t(a.y) - b.y, int64_t(a.x) - b.x};
  }
};

inline int slope_cmp(const Slope& a, const Slope& b) {
  if (a.is_vertical() && b.is_vertical()) return 0;
  if (a.is_vertical()) return 1;
  if (b.is_vertical()) return -1;
  __int128 l = static_cast<__int128>(a.dy) * b.dx;
  __int128 r = static_cast<__int128>(b.dy) * a.dx;
  return l > r ? 1 : (l < r ? -1 : 0);
}
inline bool slope_less(const Slope& a, const Slope& b) { return slope_cmp(a, b) < 0; }

/// Compares the support objective y - s*x of two points for a finite slope
/// s = dy/dx: sign of (a.y - b.y)*dx - dy*(a.x - b.x). For the vertical
/// slope the limit order applies: smaller x wins, ties broken by larger y.
inline int objective_cmp(const Point& a, const Point& b, const Slope& s) {
  if (s.is_vertical()) {
    if (a.x != b.x) return a.x < b.x ? 1 : -1;
    if (a.y != b.y) return a.y > b.y ? 1 : -1;
    return 0;
  }
  __int128 l = static_cast<__int128>(int64_t(a.y) - b.y) * s.dx;
  __int128 r = static_cast<__int128>(s.dy) * (int64_t(a.x) - b.x);
  return l > r ? 1 : (l < r ? -1 : 0);
}

template <>
struct SimTraits<Point> {
  static constexpr uint32_t kWidth = 2;
  static Point decode(const int64_t* w) {
    return Point{static_cast<int32_t>(w[0]), static_cast<int32_t>(w[1])};
  }
  static void encode(const Point& p, int64_t* w) {
    w[0] = p.x;
    w[1] = p.y;
  }
};

template <>
struct SimTraits<Slope> {
  static constexpr uint32_t kWidth = 2;
  static Slope decode(const int64_t* w) { return Slope{w[0], w[1]}; }
  static void encode(const Slope& s, int64_t* w) {
    w[0] = s.dy;
    w[1] = s.dx;
  }
};

}  // namespace cogeom
