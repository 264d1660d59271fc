#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cogeom/emkit.hpp"
#include "cogeom/geom.hpp"
#include "cogeom/maxima.hpp"

namespace cogeom {

/// Upper-hull edge crossing a fixed vertical boundary. The boundary sits
/// strictly between two consecutive distinct x values, stored as twice its
/// abscissa so the comparison 2*x(p) <=> two_ell stays integral and exact.
struct Bridge {
  Point left;
  Point right;
  int64_t two_ell = 0;

  friend bool operator==(const Bridge& a, const Bridge& b) {
    return a.left == b.left && a.right == b.right && a.two_ell == b.two_ell;
  }
};

/// Test observation points for the hull recursion.
struct HullTrace {
  /// After each pruning round inside the multi-bridge search: survivors of
  /// every collection, which bridges have been found, and the union size
  /// before/after the round.
  std::function<void(const std::vector<std::vector<Point>>& collections,
                     const std::vector<bool>& found, uint64_t before, uint64_t after)>
      on_round;
  /// When a recursion node falls back to sort-and-scan ("seed" when h grew
  /// past sqrt(n), "degenerate" when no boundary separates distinct x).
  std::function<void(const char* reason, uint64_t n, uint64_t h)> on_fallback;
  /// Entry/exit of every recursion node (absolute offset, length, seed; the
  /// exit hook also sees the chain the node returned).
  std::function<void(uint64_t lo, uint64_t len, uint64_t h)> on_node_enter;
  std::function<void(uint64_t lo, uint64_t len, uint64_t h, const std::vector<Point>& chain)>
      on_node_exit;
};

struct HullResult {
  std::vector<Point> hull;  // counterclockwise, strictly convex
  uint64_t h0 = 1;
  CostReport report;
};

namespace hulldetail {

/// Adjacent pairing with the vertical filter: walks the collection once,
/// drops the lower point of every equal-x pair (it can never be a bridge
/// endpoint once boundaries separate distinct x), writes each surviving
/// pair x-ordered into adjacent slots, and compacts. pair_starts[i] is the
/// slot of the i-th pair's left point; a trailing unpaired singleton stays.
struct Pairing {
  uint64_t new_size = 0;
  std::vector<uint32_t> pair_starts;
};
Pairing pair_and_filter(SimVec<Point> coll, uint64_t size);

/// Median of the pair slopes (lower median, exact slope order).
Slope median_pair_slope(Simulator& sim, SimVec<Point> coll, const Pairing& pairing);

}  // namespace hulldetail

struct KsRoundOutcome {
  uint64_t new_size = 0;
  std::optional<Bridge> bridge;  // set when the support segment straddles
  uint64_t dropped = 0;
};

/// One Kirkpatrick-Seidel pruning round for a single collection, given the
/// pairing, its median slope, and the extreme pair of the surrounding point
/// union along that slope. If both extremes straddle the boundary the
/// support segment is the bridge; otherwise one endpoint of every pair with
/// slope strictly beyond the median on the extreme's side is dropped and the
/// collection is compacted. Ties with the median slope are never pruned.
KsRoundOutcome ks_prune_round(Simulator& sim, SimVec<Point> coll,
                              const hulldetail::Pairing& pairing, int64_t two_ell,
                              const Slope& median, std::pair<Point, Point> extreme);

/// Finds the upper-hull bridge over every boundary. `offsets` delimits the
/// x-ordered groups inside `pts` (adjacent groups have distinct x at the
/// seam); two_ell[i] is the boundary between groups i and i+1. Iterates
/// median-slope pruning rounds with batched extreme-point queries until the
/// survivor union drops below n / ceil(log2 n), then sorts the residue and
/// reads the remaining bridges off its hull chain.
std::vector<Bridge> multi_bridge(Simulator& sim, SimVec<Point> pts,
                                 const std::vector<uint64_t>& offsets,
                                 const std::vector<int64_t>& two_ell,
                                 const HullTrace* trace = nullptr);

/// Removes from the bucket every point strictly below a flanking bridge
/// line (within that bridge's x-window) as well as the bridge endpoints
/// themselves, compacting survivors; returns the survivor count.
uint64_t bridge_prune_bucket(SimVec<Point> bucket, const std::optional<Bridge>& left,
                             const std::optional<Bridge>& right);

/// Output-sensitive upper hull of a deduplicated point array: seeded bucket
/// recursion with multi-bridge pruning, falling back to sort-and-scan when
/// h reaches sqrt(n). Returns the chain from the lexicographic minimum to
/// the maximum. The array is permuted in place.
std::vector<Point> upper_hull_sensitive(Simulator& sim, SimVec<Point> pts, uint64_t h0,
                                        SplitMix64* rng = nullptr,
                                        const HullTrace* trace = nullptr);

/// Full convex hull, counterclockwise: upper chain plus the negated upper
/// chain of the negated points, stitched without duplicating the shared
/// extreme vertices. Exact duplicates are removed first (charged).
HullResult convex_hull(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                       const HullTrace* trace = nullptr);

/// Seed-policy front end mirroring run_maxima.
HullResult run_hull(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                    const HullTrace* trace = nullptr);

}  // namespace cogeom
