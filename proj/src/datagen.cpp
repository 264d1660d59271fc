#include "cogeom/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "cogeom/rng.hpp"

namespace cogeom {

namespace {

uint64_t point_key(const Point& p) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(p.x)) << 32) |
         static_cast<uint32_t>(p.y);
}

void shuffle_points(std::vector<Point>& pts, SplitMix64& rng) {
  for (size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
}

std::vector<Point> lex_sorted_dedup(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string InstanceSpec::header_comment() const {
  std::string k = kind == InstanceKind::kMaxima ? "maxima" : "hull";
  return "# gen kind=" + k + " n=" + std::to_string(n) + " h=" + std::to_string(h_target) +
         " rng=" + std::string(SplitMix64::kAlgoId) + " seed=" + std::to_string(rng_seed) +
         " shuffle=" + (shuffle ? "1" : "0");
}

std::vector<Point> gen_maxima_instance(const InstanceSpec& spec) {
  const uint64_t n = spec.n, h = spec.h_target;
  if (h < 1 || h > n) throw std::invalid_argument("gen_maxima_instance: need 1 <= h <= n");
  SplitMix64 rng(spec.rng_seed);

  // h staircase points: x strictly increasing, y strictly decreasing, drawn
  // from per-step slots so both axes stay distinct.
  const int64_t lim = kCoordLimit;
  const int64_t span = 2 * lim;
  if (static_cast<int64_t>(h) > span)
    throw std::invalid_argument("gen_maxima_instance: h exceeds coordinate range");
  std::vector<Point> pts;
  pts.reserve(n);
  const int64_t slot = span / static_cast<int64_t>(h);
  for (uint64_t i = 0; i < h; ++i) {
    int64_t x = -lim + static_cast<int64_t>(i) * slot + rng.range(0, slot - 1);
    int64_t y = lim - static_cast<int64_t>(i) * slot - rng.range(0, slot - 1);
    pts.push_back(Point{static_cast<int32_t>(x), static_cast<int32_t>(y)});
  }

  std::unordered_set<uint64_t> used;
  used.reserve(n * 2);
  for (const Point& p : pts) used.insert(point_key(p));

  // fillers, each strictly dominated by a random staircase point
  uint64_t need = n - h;
  while (need > 0) {
    const Point& anchor = pts[rng.below(h)];
    Point q{static_cast<int32_t>(rng.range(-lim, anchor.x)),
            static_cast<int32_t>(rng.range(-lim, anchor.y))};
    if (q == anchor) continue;
    if (!used.insert(point_key(q)).second) continue;
    pts.push_back(q);
    --need;
  }

  if (spec.shuffle) shuffle_points(pts, rng);

  if (oracle_maxima(pts).size() != h)
    throw std::logic_error("gen_maxima_instance: oracle count mismatch");
  return pts;
}

std::vector<Point> gen_hull_instance(const InstanceSpec& spec) {
  const uint64_t n = spec.n, h = spec.h_target;
  if (h < 3 || h > n) throw std::invalid_argument("gen_hull_instance: need 3 <= h <= n");
  SplitMix64 rng(spec.rng_seed);

  // h - 1 primitive direction vectors with x >= 1, sorted by strictly
  // increasing slope, chained into a strictly convex arc. Shells of growing
  // max-norm give about 2.4 r^2 primitive directions, so the arc spans
  // roughly h^(3/2) in each coordinate.
  std::vector<Slope> dirs;
  for (int64_t r = 1; dirs.size() < h - 1; ++r) {
    if (r > kCoordLimit)
      throw std::invalid_argument("gen_hull_instance: h exceeds coordinate range");
    for (int64_t a = 1; a <= r; ++a) {
      for (int64_t b = -r; b <= r; ++b) {
        if (std::max(a, std::abs(b)) != r) continue;
        if (std::gcd(a, std::abs(b)) != 1) continue;
        dirs.push_back(Slope{b, a});
      }
    }
  }
  dirs.resize(h - 1);
  std::sort(dirs.begin(), dirs.end(), slope_less);

  std::vector<Point> hull(h);
  auto build = [&](int64_t scale) -> bool {
    int64_t x = 0, y = 0;
    int64_t minx = 0, maxx = 0, miny = 0, maxy = 0;
    std::vector<std::pair<int64_t, int64_t>> raw(h);
    raw[0] = {0, 0};
    for (uint64_t i = 0; i + 1 < h; ++i) {
      x += dirs[i].dx * scale;
      y += dirs[i].dy * scale;
      raw[i + 1] = {x, y};
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
    int64_t cx = (minx + maxx) / 2, cy = (miny + maxy) / 2;
    for (uint64_t i = 0; i < h; ++i) {
      int64_t px = raw[i].first - cx, py = raw[i].second - cy;
      if (px < -kCoordLimit || px > kCoordLimit || py < -kCoordLimit || py > kCoordLimit)
        return false;
      hull[i] = Point{static_cast<int32_t>(px), static_cast<int32_t>(py)};
    }
    return true;
  };

  // scale up until the polygon has enough interior lattice room for the
  // fillers, staying within coordinate bounds
  auto area2 = [&]() -> long double {
    long double s = 0;
    for (uint64_t i = 0; i < h; ++i) {
      const Point& a = hull[i];
      const Point& b = hull[(i + 1) % h];
      s += static_cast<long double>(a.x) * b.y - static_cast<long double>(b.x) * a.y;
    }
    return std::abs(s);
  };
  int64_t scale = 1;
  for (;; scale *= 2) {
    if (!build(scale))
      throw std::invalid_argument("gen_hull_instance: h exceeds coordinate range");
    if (n == h) break;
    if (area2() >= 16.0L * static_cast<long double>(n) + 64.0L) break;
  }

  std::vector<Point> pts = hull;
  std::unordered_set<uint64_t> used;
  used.reserve(n * 2);
  for (const Point& p : pts) used.insert(point_key(p));

  // strict interior test against the convex polygon (vertices CCW or CW as
  // chained; orient against every edge must agree strictly)
  std::vector<Point> poly = oracle_hull(hull);
  if (poly.size() != h) throw std::logic_error("gen_hull_instance: arc not strictly convex");
  auto strictly_inside = [&](const Point& q) {
    for (size_t i = 0; i < poly.size(); ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % poly.size()];
      if (orient(a, b, q) <= 0) return false;  // poly is CCW
    }
    return true;
  };

  uint64_t need = n - h;
  uint64_t fuel = 400 * n + 4000;
  while (need > 0) {
    if (fuel-- == 0)
      throw std::invalid_argument("gen_hull_instance: could not place interior points");
    // convex combination of the centroid-ish fan: pick a triangle (v0, vi,
    // vi+1) and a point inside it, then verify against the whole polygon
    size_t i = 1 + rng.below(poly.size() - 2);
    const Point& a = poly[0];
    const Point& b = poly[i];
    const Point& c = poly[i + 1];
    uint64_t u = rng.below(1000), v = rng.below(1000);
    if (u + v > 1000) {
      u = 1000 - u;
      v = 1000 - v;
    }
    int64_t w = 1000 - u - v;
    int64_t qx = (static_cast<int64_t>(w) * a.x + static_cast<int64_t>(u) * b.x +
                  static_cast<int64_t>(v) * c.x) /
                 1000;
    int64_t qy = (static_cast<int64_t>(w) * a.y + static_cast<int64_t>(u) * b.y +
                  static_cast<int64_t>(v) * c.y) /
                 1000;
    Point q{static_cast<int32_t>(qx), static_cast<int32_t>(qy)};
    if (!strictly_inside(q)) continue;
    if (!used.insert(point_key(q)).second) continue;
    pts.push_back(q);
    --need;
  }

  if (spec.shuffle) shuffle_points(pts, rng);

  if (oracle_hull(pts).size() != h)
    throw std::logic_error("gen_hull_instance: oracle count mismatch");
  return pts;
}

std::vector<Point> oracle_maxima(std::vector<Point> pts) {
  pts = lex_sorted_dedup(std::move(pts));
  std::vector<Point> out;
  int64_t best_y = INT64_MIN;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    if (it->y > best_y) {
      out.push_back(*it);
      best_y = it->y;
    }
  }
  return out;  // decreasing x
}

std::vector<Point> oracle_upper_hull(std::vector<Point> pts) {
  pts = lex_sorted_dedup(std::move(pts));
  std::vector<Point> up;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i + 1 < pts.size() && pts[i + 1].x == pts[i].x) continue;  // not the column top
    const Point& p = pts[i];
    while (up.size() >= 2 && orient(up[up.size() - 2], up.back(), p) >= 0) up.pop_back();
    up.push_back(p);
  }
  return up;
}

std::vector<Point> oracle_hull(std::vector<Point> pts) {
  pts = lex_sorted_dedup(std::move(pts));
  if (pts.size() <= 2) return pts;
  std::vector<Point> lo, up;
  for (const Point& p : pts) {
    while (lo.size() >= 2 && orient(lo[lo.size() - 2], lo.back(), p) <= 0) lo.pop_back();
    lo.push_back(p);
    while (up.size() >= 2 && orient(up[up.size() - 2], up.back(), p) >= 0) up.pop_back();
    up.push_back(p);
  }
  // counterclockwise: lower chain left-to-right, then the interior of the
  // upper chain right-to-left (the two extreme vertices are shared)
  std::vector<Point> hull(lo.begin(), lo.end());
  for (size_t i = up.size() - 1; i-- > 1;) hull.push_back(up[i]);
  return hull;
}

}  // namespace cogeom
