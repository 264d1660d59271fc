#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cogeom/ackermann.hpp"
#include "cogeom/rational.hpp"

namespace cogeom {

enum class Axis : uint8_t { kX, kY };
enum class Outcome : uint8_t { kLess, kGreater };

/// Comparison-resolution adversary over a binary region tree. The node at
/// depth d reached by the left/right path bits b1..bd owns the square
/// (i-1, i]/2^d x (2^d-i, 2^d-i+1]/2^d with i = path+1: the left child is
/// the upper-left quadrant, the right child the lower-right, so deeper-right
/// means larger x and smaller y. Unordered pairs are split by the default
/// strategy (same node: left/right; ancestor: pushed off the descendant's
/// path); ordered pairs answer from region geometry, which is a straight
/// lexicographic comparison of path bits.
///
/// Epochs, charges and node termination follow the growth schedule d_fn:
/// when a top node's resident count falls to the trigger fraction of its
/// initial size it either terminates (charge zeta reached, coordinates
/// fixed with a dominating northeast corner) or transitions (points pushed
/// to the 2^d level below, every descendant activated as a top node, one
/// extra charge each). Transitions that cannot be materialized at desk
/// scale (fanout beyond the cap, fewer resident points than descendants,
/// or the depth cap) take the termination path without a charge bump.
struct AdvConfig {
  uint64_t n = 0;
  uint64_t zeta = 1;
  GrowthFn d_fn = GrowthFn::add_const(1);
  uint32_t trigger_num = 1;
  uint32_t trigger_den = 2;
  uint64_t block_words = 64;        // B in the forced-access figure Z / (4B)
  uint64_t comparison_budget = 0;   // 0 = unlimited
  uint32_t max_fanout_log = 20;     // largest materializable 2^d
};

struct AdvNodeId {
  uint32_t depth = 0;
  uint128 path = 0;  // low `depth` bits, most significant bit = root step

  friend bool operator<(const AdvNodeId& a, const AdvNodeId& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.path < b.path;
  }
  friend bool operator==(const AdvNodeId& a, const AdvNodeId& b) {
    return a.depth == b.depth && a.path == b.path;
  }
  std::string to_string() const;
};

/// A pair ordering handed to the algorithm for free at a transition.
struct FreeFact {
  uint32_t p = 0;
  uint32_t q = 0;
  Outcome x_outcome = Outcome::kLess;  // p.x vs q.x
  Outcome y_outcome = Outcome::kGreater;
};

struct EpochRecord {
  uint64_t h_before = 0;  // top nodes at the start of the epoch
  uint64_t h_after = 0;
  uint64_t growth = 0;  // d value used by the transition
  AdvNodeId resolved;
};

struct AdvEvent {
  enum class Kind : uint8_t { kCmp, kMove, kActivate, kTerminate, kFreeInfo };
  Kind kind;
  uint64_t step = 0;
  uint32_t a = 0, b = 0;  // cmp: points; free-info: batch size in a
  Axis axis = Axis::kX;
  Outcome out = Outcome::kLess;
  AdvNodeId node;  // move target / activated node / terminated node

  const char* kind_name() const;
  std::string payload() const;  // semicolon-separated, comma-free
};

class AdvBudgetExceeded : public std::exception {
 public:
  const char* what() const noexcept override {
    return "adversary: comparison budget exceeded";
  }
};

class Adversary {
 public:
  explicit Adversary(const AdvConfig& cfg);

  uint64_t n() const { return cfg_.n; }
  const AdvConfig& config() const { return cfg_; }

  /// Resolves one coordinate comparison; p != q. Throws AdvBudgetExceeded
  /// once the configured budget is spent.
  Outcome answer(Axis axis, uint32_t p, uint32_t q);

  uint64_t comparisons() const { return comparisons_; }
  uint64_t top_node_count() const { return tops_.size(); }
  uint64_t terminated_count() const;
  bool all_terminated() const;
  uint64_t total_charge() const;
  uint64_t deep_count() const;
  uint64_t epoch() const { return epochs_.size() + 1; }
  const std::vector<EpochRecord>& epochs() const { return epochs_; }
  const std::vector<AdvEvent>& transcript() const { return events_; }
  uint64_t guard_terminations() const { return guard_terminations_; }

  /// Free orderings accumulated since the last call (adapters may ignore).
  std::vector<FreeFact> take_free_facts();

  struct TopSummary {
    AdvNodeId id;
    bool terminated = false;
    uint64_t initial_size = 0;
    uint64_t charge = 0;
  };
  std::vector<TopSummary> top_summaries() const;
  /// Point indices whose node lies in the subtree of `id`.
  std::vector<uint32_t> points_under(const AdvNodeId& id) const {
    return subtree_points(id);
  }
  /// Fixed coordinates of a point, available once its subtree terminated.
  std::optional<std::pair<Rat, Rat>> fixed_coordinate(uint32_t p) const;

  /// Asserts the structural invariants: equal charges across each top
  /// subtree, resident counts, and top-node bookkeeping. Throws on breach.
  void check_invariants() const;

  /// Fixes every remaining point inside its region (injective placement),
  /// then replays the full comparison transcript against the concrete
  /// coordinates; any mismatch is fatal. Returns per-point coordinates.
  std::vector<std::pair<Rat, Rat>> materialize();

 private:
  struct PointState {
    AdvNodeId node;
    bool deep = false;
    bool fixed = false;
    uint64_t charge = 0;
    Rat x, y;
  };
  struct TopRec {
    bool terminated = false;
    uint64_t initial_size = 0;  // ordinary points resident at activation
    uint64_t at_node = 0;       // ordinary points exactly at the node now
    uint64_t charge = 0;        // shared charge of the subtree's ordinaries
  };

  static bool is_ancestor(const AdvNodeId& a, const AdvNodeId& b);  // a above b
  static int x_region_cmp(const AdvNodeId& a, const AdvNodeId& b);  // incomparable
  Rat region_x(const AdvNodeId& node, uint64_t fraction_index, bool corner) const;
  Rat region_y(const AdvNodeId& node, uint64_t fraction_index, bool corner) const;

  AdvNodeId find_top(const AdvNodeId& node) const;
  void move_point(uint32_t p, const AdvNodeId& to, bool emit_event);
  void maybe_resolve(const AdvNodeId& top);
  void terminate(const AdvNodeId& top, bool bump_charge);
  void transition(const AdvNodeId& top, uint64_t growth);
  std::vector<uint32_t> subtree_points(const AdvNodeId& node) const;
  void assign_fixed(uint32_t p, std::optional<uint32_t> corner_depth_unused = {});
  Outcome fixed_outcome(Axis axis, uint32_t p, uint32_t q) const;

  AdvConfig cfg_;
  std::vector<PointState> points_;
  std::map<AdvNodeId, TopRec> tops_;
  std::vector<EpochRecord> epochs_;
  std::vector<AdvEvent> events_;
  std::vector<FreeFact> free_facts_;
  uint64_t comparisons_ = 0;
  uint64_t guard_terminations_ = 0;

  static constexpr uint32_t kMaxDepth = 96;
};

struct AdvRunReport {
  uint64_t comparisons = 0;
  uint64_t total_charge = 0;
  double forced_io_lower_bound = 0.0;  // Z / (4B)
  std::vector<EpochRecord> epochs;
  uint64_t top_nodes = 0;
  uint64_t terminated = 0;
  bool all_terminated = false;
  bool budget_exceeded = false;
  bool answer_correct = false;
  std::vector<uint32_t> announced;
};

/// Drives a comparison-based adapter against a fresh adversary, then
/// materializes coordinates, replays the transcript, and checks the
/// adapter's announced maxima against a quadratic dominance filter over the
/// materialized coordinates.
using AdapterFn = std::function<std::vector<uint32_t>(Adversary&)>;
AdvRunReport run_against(const AdvConfig& cfg, const AdapterFn& adapter);

/// The seeded maxima recursion over opaque handles (comparisons only).
std::vector<uint32_t> maxima_adapter(Adversary& adv, uint64_t h0 = 2);
/// Sorts by x, then sweeps with y comparisons; a deliberately sort-heavy
/// but correct baseline.
std::vector<uint32_t> sortscan_adapter(Adversary& adv);

}  // namespace cogeom
