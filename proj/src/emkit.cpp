#include "cogeom/emkit.hpp"

#include <algorithm>

namespace cogeom {

BucketLayout BucketLayout::even_split(uint64_t n, uint64_t k) {
  BucketLayout layout;
  layout.k = k;
  layout.offsets.resize(k + 1);
  uint64_t base = n / k, rem = n % k;
  for (uint64_t i = 0; i <= k; ++i)
    layout.offsets[i] = i * base + (i < rem ? i : rem);
  return layout;
}

Point select_rank(SimVec<Point> vec, uint64_t rank, PointOrder order) {
  SimPointView view(vec, order);
  uint64_t at = select_rank_at(view, 0, vec.size(), rank);
  return vec.get(at);
}

Slope select_rank(SimVec<Slope> vec, uint64_t rank) {
  SimSlopeView view(vec);
  uint64_t at = select_rank_at(view, 0, vec.size(), rank);
  return vec.get(at);
}

BucketLayout distribute(SimVec<Point> vec, uint64_t k, PointOrder order) {
  SimPointView view(vec, order);
  return distribute_view(view, k);
}

void mergesort(SimVec<Point> vec, PointOrder order) {
  uint64_t n = vec.size();
  if (n < 2) return;
  Simulator& sim = vec.sim();
  SimVec<Point> aux = SimVec<Point>::alloc(sim, n);
  auto le = [&](const Point& a, const Point& b) {
    sim.count_comparison();
    return order == PointOrder::kLexAsc ? !lex_less(b, a) : !lex_less(a, b);
  };
  SimVec<Point> src = vec, dst = aux;
  bool data_in_vec = true;
  for (uint64_t width = 1; width < n; width *= 2) {
    for (uint64_t lo = 0; lo < n; lo += 2 * width) {
      uint64_t mid = std::min(lo + width, n);
      uint64_t hi = std::min(lo + 2 * width, n);
      uint64_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        Point a = src.get(i), b = src.get(j);
        if (le(a, b)) {
          dst.set(out++, a);
          ++i;
        } else {
          dst.set(out++, b);
          ++j;
        }
      }
      while (i < mid) dst.set(out++, src.get(i++));
      while (j < hi) dst.set(out++, src.get(j++));
    }
    std::swap(src, dst);
    data_in_vec = !data_in_vec;
  }
  if (!data_in_vec) {
    for (uint64_t i = 0; i < n; ++i) vec.set(i, src.get(i));
  }
  aux.free();
}

uint64_t dedup_sorted(SimVec<Point> vec) {
  uint64_t n = vec.size();
  if (n == 0) return 0;
  uint64_t out = 1;
  Point prev = vec.get(0);
  for (uint64_t i = 1; i < n; ++i) {
    Point cur = vec.get(i);
    vec.sim().count_comparison();
    if (cur != prev) {
      if (out != i) vec.set(out, cur);
      prev = cur;
      ++out;
    }
  }
  return out;
}

std::vector<Point> graham_upper_hull(SimVec<Point> vec) {
  // chain of the points visible from above: only the top point of each x
  // column can appear, and turns are strictly convex
  std::vector<Point> chain;
  uint64_t n = vec.size();
  Point pending{};
  bool have_pending = false;
  auto push = [&](const Point& p) {
    while (chain.size() >= 2) {
      vec.sim().count_comparison();
      if (orient(chain[chain.size() - 2], chain.back(), p) >= 0)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  };
  for (uint64_t i = 0; i < n; ++i) {
    Point p = vec.get(i);
    if (have_pending) {
      vec.sim().count_comparison();
      if (p.x != pending.x) push(pending);
    }
    pending = p;  // the column top is the last point of its column in lex order
    have_pending = true;
  }
  if (have_pending) push(pending);
  return chain;
}

namespace {

// Extreme candidates of one upper-hull chain against descending slopes:
// chain edges have strictly decreasing slopes, so a single forward merge
// scan locates, per query slope, the contact vertex (or contact edge when
// the slope ties an edge exactly).
void scan_chain_against_slopes(Simulator& sim, const std::vector<Point>& chain,
                               const std::vector<Slope>& slopes_desc,
                               std::vector<std::pair<Point, Point>>& best,
                               std::vector<bool>& has_best) {
  size_t edge = 0;
  const size_t nedges = chain.empty() ? 0 : chain.size() - 1;
  for (size_t s = 0; s < slopes_desc.size(); ++s) {
    const Slope& q = slopes_desc[s];
    Point lo, hi;
    if (q.is_vertical()) {
      // extreme of the vertical limit order: the top of the min-x column,
      // which is exactly the chain start
      lo = hi = chain[0];
    } else {
      while (edge < nedges) {
        sim.count_comparison();
        if (slope_cmp(Slope::of(chain[edge], chain[edge + 1]), q) > 0)
          ++edge;
        else
          break;
      }
      lo = chain[edge];
      hi = chain[edge];
      if (edge < nedges) {
        sim.count_comparison();
        if (slope_cmp(Slope::of(chain[edge], chain[edge + 1]), q) == 0)
          hi = chain[edge + 1];
      }
    }
    if (!has_best[s]) {
      best[s] = {lo, hi};
      has_best[s] = true;
      continue;
    }
    sim.count_comparison();
    int c = objective_cmp(lo, best[s].first, q);
    if (c > 0) {
      best[s] = {lo, hi};
    } else if (c == 0) {
      sim.count_comparison();
      if (lo.x < best[s].first.x) best[s].first = lo;
      sim.count_comparison();
      if (hi.x > best[s].second.x) best[s].second = hi;
    }
  }
}

}  // namespace

std::vector<std::pair<Point, Point>> multi_slope_extremes(
    Simulator& sim, SimVec<Point> points, const std::vector<Slope>& slopes_desc) {
  const uint64_t n = points.size();
  const uint64_t k = slopes_desc.size();
  if (n == 0) throw std::invalid_argument("multi_slope_extremes: empty point set");
  if (k == 0) return {};
  for (size_t i = 1; i < slopes_desc.size(); ++i) {
    if (slope_cmp(slopes_desc[i - 1], slopes_desc[i]) < 0)
      throw std::invalid_argument("multi_slope_extremes: slopes not descending");
  }

  std::vector<std::pair<Point, Point>> best(k);
  std::vector<bool> has_best(k, false);

  if (k * k >= n) {
    // per-slope scans
    for (uint64_t i = 0; i < n; ++i) {
      Point p = points.get(i);
      for (uint64_t s = 0; s < k; ++s) {
        if (!has_best[s]) {
          best[s] = {p, p};
          has_best[s] = true;
          continue;
        }
        sim.count_comparison();
        int c = objective_cmp(p, best[s].first, slopes_desc[s]);
        if (c > 0) {
          best[s] = {p, p};
        } else if (c == 0) {
          sim.count_comparison();
          if (p.x < best[s].first.x) best[s].first = p;
          sim.count_comparison();
          if (p.x > best[s].second.x) best[s].second = p;
        }
      }
    }
    return best;
  }

  // Slopes live in external memory too; scan them once per batch like the
  // batch itself.
  SimVec<Slope> slope_arr = SimVec<Slope>::alloc(sim, k);
  for (uint64_t s = 0; s < k; ++s) slope_arr.set(s, slopes_desc[s]);

  const uint64_t batch = k * k;
  SimVec<Point> scratch = SimVec<Point>::alloc(sim, batch);
  for (uint64_t lo = 0; lo < n; lo += batch) {
    uint64_t cnt = std::min(batch, n - lo);
    for (uint64_t i = 0; i < cnt; ++i) scratch.set(i, points.get(lo + i));
    SimVec<Point> piece = scratch.slice(0, cnt);
    mergesort(piece, PointOrder::kLexAsc);
    std::vector<Point> chain = graham_upper_hull(piece);
    std::vector<Slope> qs(k);
    for (uint64_t s = 0; s < k; ++s) qs[s] = slope_arr.get(s);
    scan_chain_against_slopes(sim, chain, qs, best, has_best);
  }
  scratch.free();
  slope_arr.free();
  for (uint64_t s = 0; s < k; ++s)
    if (!has_best[s]) throw std::logic_error("multi_slope_extremes: slope skipped");
  return best;
}

}  // namespace cogeom
