#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cogeom/ackermann.hpp"
#include "cogeom/emkit.hpp"
#include "cogeom/geom.hpp"
#include "cogeom/rng.hpp"

namespace cogeom {

/// q dominates p: q is >= in both coordinates and differs (a point never
/// dominates itself, so exact duplicates are mutually undominated).
inline bool dominates(const Point& q, const Point& p) {
  return q.x >= p.x && q.y >= p.y && q != p;
}

/// How the initial seed h0 is chosen.
enum class SeedPolicy { kConstant, kLambdaOfN, kLambdaOfM, kRandomized };

/// h0 for a given policy: constant s, the argument-wise Ackermann inverse of
/// the input size or of m = M/B, or the fixed seed 2 of the randomized
/// variant.
uint64_t initial_seed(SeedPolicy policy, uint64_t s, uint64_t n, const CostParams& params);

const char* seed_policy_name(SeedPolicy p);
SeedPolicy parse_seed_policy(const std::string& text);

struct AlgoConfig {
  SeedPolicy policy = SeedPolicy::kConstant;
  uint64_t s = 2;         // policy parameter
  uint64_t rng_seed = 0;  // randomized variant only
};

struct MaximaResult {
  std::vector<Point> maxima;  // decreasing x
  uint64_t h0 = 1;
  CostReport report;  // simulator totals at completion
};

/// Test observation points for the recursion (null members are skipped).
struct MaximaTrace {
  /// After distribute + prune at a recursion node: absolute bucket offsets
  /// (k+1 entries), survivor counts per bucket, and the node's seed.
  std::function<void(const std::vector<uint64_t>& offsets,
                     const std::vector<uint64_t>& kept, uint64_t h)>
      on_prune;
  /// Before each recursive call: bucket index (ascending memory order) and
  /// the seed passed down.
  std::function<void(uint64_t bucket, uint64_t h_child)> on_child;
};

// ---------------------------------------------------------------------------
// Generic recursion. A View provides, over positions [0, size):
//   uint64_t size() const
//   bool lex_less(i, j)       strict (x, y) order          (counted)
//   bool y_less(i, j)         strict y order               (counted)
//   void swap_at(i, j)
//   id_type id(i)             identity snapshot for output
// Every predicate call is an externally visible comparison; element moves
// are swaps, so the same recursion runs against the simulator and against
// the comparison adversary's opaque handles.
// ---------------------------------------------------------------------------

namespace maxdetail {

template <class View>
struct LexOrder {
  View& v;
  uint64_t size() const { return v.size(); }
  bool less(uint64_t i, uint64_t j) { return v.lex_less(i, j); }
  void swap_at(uint64_t i, uint64_t j) { v.swap_at(i, j); }
};

}  // namespace maxdetail

/// Right-to-left pruning sweep over distributed buckets given by absolute
/// offsets: a point survives iff its y exceeds the maximum y seen in the
/// buckets to its right; survivors are compacted to their bucket front.
/// Returns per-bucket survivor counts.
template <class View>
std::vector<uint64_t> prune_buckets_view(View& v, const std::vector<uint64_t>& offsets) {
  const uint64_t k = offsets.size() - 1;
  std::vector<uint64_t> kept(k, 0);
  bool have_best = false;
  uint64_t best = 0;  // position of the running maximum-y point (final)
  for (uint64_t b = k; b-- > 0;) {
    uint64_t w = offsets[b];
    bool have_local = false;
    uint64_t local_best = 0;
    for (uint64_t j = offsets[b]; j < offsets[b + 1]; ++j) {
      if (!have_best || v.y_less(best, j)) {
        if (w != j) v.swap_at(w, j);
        if (!have_local || v.y_less(local_best, w)) local_best = w;
        have_local = true;
        ++w;
      }
    }
    kept[b] = w - offsets[b];
    if (have_local && (!have_best || v.y_less(best, local_best))) best = local_best;
    have_best = have_best || have_local;
  }
  return kept;
}

template <class View>
class MaximaEngine {
 public:
  using Id = typename View::id_type;

  MaximaEngine(View& view, SplitMix64* rng, const MaximaTrace* trace)
      : view_(view), rng_(rng), trace_(trace) {}

  std::vector<Id> run(uint64_t lo, uint64_t len, uint64_t h) {
    if (len == 0) return {};
    if (len == 1) return {view_.id(lo)};
    if (h < 1) h = 1;
    const uint64_t k = std::min(2 * h, len);

    BucketLayout layout = BucketLayout::even_split(len, k);
    std::vector<uint64_t> offsets(layout.offsets);
    for (uint64_t& o : offsets) o += lo;
    maxdetail::LexOrder<View> lex{view_};
    emdetail::distribute_rec(lex, offsets, 0, k);

    std::vector<uint64_t> kept = prune_buckets_view(view_, offsets);
    if (trace_ && trace_->on_prune) trace_->on_prune(offsets, kept, h);

    std::vector<std::vector<Id>> results(k);
    uint64_t found = 0;
    auto process = [&](uint64_t b) {
      if (kept[b] == 0) return;
      if (trace_ && trace_->on_child) trace_->on_child(b, h + found);
      results[b] = run(offsets[b], kept[b], h + found);
      found += results[b].size();
    };
    const bool reversed = rng_ != nullptr && rng_->coin();
    if (reversed) {
      for (uint64_t b = 0; b < k; ++b) process(b);
    } else {
      for (uint64_t b = k; b-- > 0;) process(b);
    }

    std::vector<Id> out;
    out.reserve(found);
    for (uint64_t b = k; b-- > 0;)
      out.insert(out.end(), results[b].begin(), results[b].end());
    return out;
  }

 private:
  View& view_;
  SplitMix64* rng_;
  const MaximaTrace* trace_;
};

/// Simulator-backed view (points under the (x, y) lexicographic order).
class SimMaximaView {
 public:
  using id_type = Point;
  explicit SimMaximaView(SimVec<Point> vec) : vec_(vec) {}
  uint64_t size() const { return vec_.size(); }
  bool lex_less(uint64_t i, uint64_t j) {
    vec_.sim().count_comparison();
    return cogeom::lex_less(vec_.get(i), vec_.get(j));
  }
  bool y_less(uint64_t i, uint64_t j) {
    vec_.sim().count_comparison();
    return vec_.get(i).y < vec_.get(j).y;
  }
  void swap_at(uint64_t i, uint64_t j) { vec_.swap_elems(i, j); }
  Point id(uint64_t i) const { return vec_.get(i); }

 private:
  SimVec<Point> vec_;
};

/// Pruning sweep over a simulator point array, for direct exercise of the
/// sweep on hand-built bucket layouts (the recursion uses the same code).
std::vector<uint64_t> prune_buckets(SimVec<Point> pts, const BucketLayout& layout);

/// Deterministic seeded maxima: distribute into min(2h, n) buckets by the
/// lexicographic key, prune with the running-max sweep, and recurse
/// right-to-left with the seed grown by the outputs found so far. Exact
/// duplicates resolve inside the recursion (rank splitting separates equal
/// keys and the prune keeps one copy). The array is permuted in place;
/// discovered maxima are also written to a fresh output array so emission
/// I/O is charged.
MaximaResult maxima_det(Simulator& sim, SimVec<Point> pts, uint64_t h0,
                        const MaximaTrace* trace = nullptr);

/// Randomized variant: seed fixed at 2, each recursion node reverses its
/// bucket order with probability 1/2. The output set never depends on the
/// seed; only the access pattern (and so the cost report) does.
MaximaResult maxima_rand(Simulator& sim, SimVec<Point> pts, uint64_t rng_seed,
                         const MaximaTrace* trace = nullptr);

/// Policy-driven front end used by the CLI and the harness.
MaximaResult run_maxima(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                        const MaximaTrace* trace = nullptr);

}  // namespace cogeom
