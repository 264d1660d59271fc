#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cogeom/geom.hpp"
#include "cogeom/iosim.hpp"

namespace cogeom {

/// Equal-size bucket decomposition of an n-element range: bucket i holds
/// [offsets[i], offsets[i+1]), sizes floor(n/k) or ceil(n/k) with the
/// leftmost (n mod k) buckets taking the larger size.
struct BucketLayout {
  uint64_t k = 0;
  std::vector<uint64_t> offsets;  // k + 1 entries, offsets[0] == 0

  static BucketLayout even_split(uint64_t n, uint64_t k);
  uint64_t size(uint64_t i) const { return offsets[i + 1] - offsets[i]; }
};

// ---------------------------------------------------------------------------
// Generic in-place selection and distribution.
//
// A View exposes:
//   uint64_t size() const
//   bool less(uint64_t i, uint64_t j)   strict weak (total for distinct keys)
//   void swap_at(uint64_t i, uint64_t j)
//
// These run on simulator-backed arrays (charged) and on the adversary's
// opaque handles alike; element moves are swaps only.
// ---------------------------------------------------------------------------

namespace emdetail {

template <class View>
void insertion_sort(View& v, uint64_t lo, uint64_t hi) {
  for (uint64_t i = lo + 1; i < hi; ++i)
    for (uint64_t j = i; j > lo && v.less(j, j - 1); --j) v.swap_at(j, j - 1);
}

// Two-way partition of [lo, hi) around the value at pivot_at.
// Post: [lo, p) < pivot, element p is the pivot, (p, hi) >= pivot.
template <class View>
uint64_t partition2(View& v, uint64_t lo, uint64_t hi, uint64_t pivot_at) {
  v.swap_at(pivot_at, hi - 1);
  uint64_t store = lo;
  for (uint64_t i = lo; i + 1 < hi; ++i) {
    if (v.less(i, hi - 1)) {
      v.swap_at(i, store);
      ++store;
    }
  }
  v.swap_at(store, hi - 1);
  return store;
}

template <class View>
uint64_t median5_index(View& v, uint64_t lo, uint64_t hi) {
  insertion_sort(v, lo, hi);
  return lo + (hi - lo - 1) / 2;
}

// Deterministic linear-comparison selection (median of medians, groups of
// five). Moves the rank-th smallest of [lo, hi) to position lo + rank with
// smaller elements left of it and larger ones right. Returns lo + rank.
// Duplicate keys are handled by gathering the pivot-equal run before
// descending right, so equal-heavy inputs stay linear.
template <class View>
uint64_t select_nth(View& v, uint64_t lo, uint64_t hi, uint64_t rank) {
  while (true) {
    uint64_t n = hi - lo;
    if (n <= 10) {
      insertion_sort(v, lo, hi);
      return lo + rank;
    }
    // gather group medians into a prefix block
    uint64_t nmed = 0;
    for (uint64_t g = lo; g < hi; g += 5) {
      uint64_t ge = g + 5 < hi ? g + 5 : hi;
      uint64_t med = median5_index(v, g, ge);
      v.swap_at(lo + nmed, med);
      ++nmed;
    }
    uint64_t pivot_at = select_nth(v, lo, lo + nmed, (nmed - 1) / 2);
    uint64_t p = partition2(v, lo, hi, pivot_at);
    uint64_t want = lo + rank;
    if (want < p) {
      hi = p;
    } else if (want == p) {
      return want;
    } else {
      uint64_t eq_end = p + 1;
      for (uint64_t j = eq_end; j < hi; ++j) {
        if (!v.less(p, j)) {
          v.swap_at(j, eq_end);
          ++eq_end;
        }
      }
      if (want < eq_end) return want;
      lo = eq_end;
      rank = want - eq_end;
    }
  }
}

// Recursive split distribution: realizes bucket boundaries by exact-rank
// selection, splitting the bucket range in half each level.
template <class View>
void distribute_rec(View& v, const std::vector<uint64_t>& offsets, uint64_t blo,
                    uint64_t bhi) {
  if (bhi - blo <= 1) return;
  uint64_t bmid = blo + (bhi - blo + 1) / 2;  // ceil(k/2) buckets to the left
  uint64_t lo = offsets[blo], hi = offsets[bhi], cut = offsets[bmid];
  select_nth(v, lo, hi, cut - lo - 1);  // boundary element lands at cut-1
  distribute_rec(v, offsets, blo, bmid);
  distribute_rec(v, offsets, bmid, bhi);
}

}  // namespace emdetail

/// Rank selection over a view range: returns the index (lo + rank) where the
/// element of that rank has been moved; the range is permuted around it.
template <class View>
uint64_t select_rank_at(View& v, uint64_t lo, uint64_t hi, uint64_t rank) {
  if (rank >= hi - lo) throw std::out_of_range("select_rank: rank out of range");
  return emdetail::select_nth(v, lo, hi, rank);
}

/// In-place multiway distribution of the whole view into k ordered buckets.
template <class View>
BucketLayout distribute_view(View& v, uint64_t k) {
  uint64_t n = v.size();
  if (k < 1 || k > n) throw std::invalid_argument("distribute: need 1 <= k <= n");
  BucketLayout layout = BucketLayout::even_split(n, k);
  emdetail::distribute_rec(v, layout.offsets, 0, k);
  return layout;
}

// ---------------------------------------------------------------------------
// Simulator-backed instantiations and the scan-based geometric procedures.
// ---------------------------------------------------------------------------

/// Comparator tags for point arrays.
enum class PointOrder { kLexAsc, kLexDesc };

/// View over a simulator point array with counted lexicographic comparisons.
class SimPointView {
 public:
  SimPointView(SimVec<Point> vec, PointOrder order) : vec_(vec), order_(order) {}
  uint64_t size() const { return vec_.size(); }
  bool less(uint64_t i, uint64_t j) {
    vec_.sim().count_comparison();
    Point a = vec_.get(i), b = vec_.get(j);
    return order_ == PointOrder::kLexAsc ? lex_less(a, b) : lex_less(b, a);
  }
  void swap_at(uint64_t i, uint64_t j) { vec_.swap_elems(i, j); }

 private:
  SimVec<Point> vec_;
  PointOrder order_;
};

/// View over a simulator slope array ordered by slope value.
class SimSlopeView {
 public:
  explicit SimSlopeView(SimVec<Slope> vec) : vec_(vec) {}
  uint64_t size() const { return vec_.size(); }
  bool less(uint64_t i, uint64_t j) {
    vec_.sim().count_comparison();
    return slope_less(vec_.get(i), vec_.get(j));
  }
  void swap_at(uint64_t i, uint64_t j) { vec_.swap_elems(i, j); }

 private:
  SimVec<Slope> vec_;
};

/// select_rank over simulator points (lexicographic order).
Point select_rank(SimVec<Point> vec, uint64_t rank, PointOrder order = PointOrder::kLexAsc);
/// select_rank over simulator slopes.
Slope select_rank(SimVec<Slope> vec, uint64_t rank);

/// distribute over simulator points.
BucketLayout distribute(SimVec<Point> vec, uint64_t k, PointOrder order = PointOrder::kLexAsc);

/// Stable bottom-up mergesort of a simulator point array (binary merges via
/// one auxiliary array; its measured I/O stands in wherever sorting is
/// needed).
void mergesort(SimVec<Point> vec, PointOrder order = PointOrder::kLexAsc);

/// Removes adjacent exact duplicates from a lexicographically sorted array,
/// compacting survivors to the front; returns the new length.
uint64_t dedup_sorted(SimVec<Point> vec);

/// Upper-hull chain of a lexicographically ascending, duplicate-free array:
/// the strictly convex chain from the lexicographic minimum to the maximum
/// seen from above (collinear interior points dropped).
std::vector<Point> graham_upper_hull(SimVec<Point> vec);

/// Extreme points of a nonempty point array along each query slope
/// (maximizing y - s*x with exact rational comparisons). slopes must be
/// sorted in descending order; returns, per slope, the minimum-x and
/// maximum-x points attaining the maximum. Batches points into groups of
/// k^2, upper-hulls each batch, and merge-scans the slopes against the hull
/// edges; falls back to per-slope scans when k >= sqrt(n).
std::vector<std::pair<Point, Point>> multi_slope_extremes(
    Simulator& sim, SimVec<Point> points, const std::vector<Slope>& slopes_desc);

}  // namespace cogeom
