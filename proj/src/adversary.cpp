#include "cogeom/adversary.hpp"

#include <algorithm>
#include <stdexcept>

#include "cogeom/maxima.hpp"

namespace cogeom {

namespace {

std::string path_hex(uint128 path, uint32_t depth) {
  if (depth == 0) return "r";
  std::string s;
  int digits = (static_cast<int>(depth) + 3) / 4;
  for (int d = digits - 1; d >= 0; --d) {
    int nib = static_cast<int>((path >> (4 * d)) & 0xf);
    s.push_back("0123456789abcdef"[nib]);
  }
  return s;
}

}  // namespace

std::string AdvNodeId::to_string() const {
  return "d" + std::to_string(depth) + ":" + path_hex(path, depth);
}

const char* AdvEvent::kind_name() const {
  switch (kind) {
    case Kind::kCmp:
      return "cmp";
    case Kind::kMove:
      return "move";
    case Kind::kActivate:
      return "activate";
    case Kind::kTerminate:
      return "terminate";
    case Kind::kFreeInfo:
      return "free-info";
  }
  return "?";
}

std::string AdvEvent::payload() const {
  switch (kind) {
    case Kind::kCmp:
      return std::string("axis=") + (axis == Axis::kX ? "x" : "y") +
             ";p=" + std::to_string(a) + ";q=" + std::to_string(b) +
             ";out=" + (out == Outcome::kLess ? "<" : ">");
    case Kind::kMove:
      return "p=" + std::to_string(a) + ";to=" + node.to_string();
    case Kind::kActivate:
      return "node=" + node.to_string() + ";size=" + std::to_string(a);
    case Kind::kTerminate:
      return "node=" + node.to_string() + ";points=" + std::to_string(a);
    case Kind::kFreeInfo:
      return "pairs=" + std::to_string(a);
  }
  return "";
}

Adversary::Adversary(const AdvConfig& cfg) : cfg_(cfg) {
  if (cfg_.n < 1) throw std::invalid_argument("adversary: n must be >= 1");
  if (cfg_.zeta < 1) throw std::invalid_argument("adversary: zeta must be >= 1");
  if (cfg_.trigger_num < 1 || cfg_.trigger_den < 1 || cfg_.trigger_num >= cfg_.trigger_den)
    throw std::invalid_argument("adversary: trigger fraction must be in (0, 1)");
  if (cfg_.max_fanout_log < 1 || cfg_.max_fanout_log > 24)
    throw std::invalid_argument("adversary: fanout cap out of range");
  points_.resize(cfg_.n);
  AdvNodeId root;
  tops_[root] = TopRec{false, cfg_.n, cfg_.n, 0};
}

bool Adversary::is_ancestor(const AdvNodeId& a, const AdvNodeId& b) {
  if (a.depth > b.depth) return false;
  return (b.path >> (b.depth - a.depth)) == a.path;
}

int Adversary::x_region_cmp(const AdvNodeId& a, const AdvNodeId& b) {
  uint128 pa = a.path, pb = b.path;
  if (a.depth < b.depth)
    pa <<= (b.depth - a.depth);
  else
    pb <<= (a.depth - b.depth);
  if (pa == pb) throw std::logic_error("adversary: region compare on related nodes");
  return pa < pb ? -1 : 1;
}

Rat Adversary::region_x(const AdvNodeId& node, uint64_t fraction_index, bool corner) const {
  int128 den_pow = int128(1) << node.depth;
  if (corner) return Rat(static_cast<int128>(node.path) + 1, den_pow);
  int128 two_n = 2 * static_cast<int128>(cfg_.n);
  int128 num = static_cast<int128>(node.path) * two_n +
               (2 * static_cast<int128>(fraction_index) + 1);
  return Rat(num, two_n * den_pow);
}

Rat Adversary::region_y(const AdvNodeId& node, uint64_t fraction_index, bool corner) const {
  int128 den_pow = int128(1) << node.depth;
  int128 below = den_pow - static_cast<int128>(node.path) - 1;  // 2^d - i
  if (corner) return Rat(below + 1, den_pow);
  int128 two_n = 2 * static_cast<int128>(cfg_.n);
  int128 num = below * two_n + (2 * static_cast<int128>(fraction_index) + 1);
  return Rat(num, two_n * den_pow);
}

AdvNodeId Adversary::find_top(const AdvNodeId& node) const {
  for (uint32_t d = 0; d <= node.depth; ++d) {
    AdvNodeId cand{d, node.path >> (node.depth - d)};
    if (tops_.count(cand)) return cand;
  }
  throw std::logic_error("adversary: point outside every top subtree");
}

void Adversary::move_point(uint32_t p, const AdvNodeId& to, bool emit_event) {
  PointState& ps = points_[p];
  auto it = tops_.find(ps.node);
  if (it != tops_.end() && !ps.deep) {
    if (it->second.at_node == 0) throw std::logic_error("adversary: count underflow");
    --it->second.at_node;
  }
  ps.node = to;
  if (emit_event)
    events_.push_back(AdvEvent{AdvEvent::Kind::kMove, events_.size(), p, 0, Axis::kX,
                               Outcome::kLess, to});
}

std::vector<uint32_t> Adversary::subtree_points(const AdvNodeId& node) const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < points_.size(); ++i)
    if (is_ancestor(node, points_[i].node)) out.push_back(i);
  return out;
}

void Adversary::assign_fixed(uint32_t p, std::optional<uint32_t>) {
  PointState& ps = points_[p];
  ps.x = region_x(ps.node, p, false);
  ps.y = region_y(ps.node, p, false);
  ps.fixed = true;
}

Outcome Adversary::fixed_outcome(Axis axis, uint32_t p, uint32_t q) const {
  const PointState& a = points_[p];
  const PointState& b = points_[q];
  int c = axis == Axis::kX ? cmp(a.x, b.x) : cmp(a.y, b.y);
  if (c == 0) throw std::logic_error("adversary: fixed coordinates collide");
  return c < 0 ? Outcome::kLess : Outcome::kGreater;
}

Outcome Adversary::answer(Axis axis, uint32_t p, uint32_t q) {
  if (p == q || p >= points_.size() || q >= points_.size())
    throw std::invalid_argument("adversary: bad comparison operands");
  if (cfg_.comparison_budget != 0 && comparisons_ >= cfg_.comparison_budget)
    throw AdvBudgetExceeded();
  ++comparisons_;

  PointState& a = points_[p];
  PointState& b = points_[q];
  if (!(a.fixed && b.fixed)) {
    // split unordered pairs by the default strategy
    if (a.node == b.node) {
      if (a.node.depth + 1 > kMaxDepth) {
        ++guard_terminations_;
        terminate(find_top(a.node), false);
      } else {
        AdvNodeId src = a.node;
        AdvNodeId left{src.depth + 1, src.path << 1};
        AdvNodeId right{src.depth + 1, (src.path << 1) | 1};
        move_point(p, left, true);
        move_point(q, right, true);
        maybe_resolve(src);
      }
    } else if (is_ancestor(a.node, b.node)) {
      AdvNodeId src = a.node;
      uint128 toward = (b.node.path >> (b.node.depth - src.depth - 1)) & 1;
      AdvNodeId child{src.depth + 1, (src.path << 1) | (toward ^ 1)};
      move_point(p, child, true);
      maybe_resolve(src);
    } else if (is_ancestor(b.node, a.node)) {
      AdvNodeId src = b.node;
      uint128 toward = (a.node.path >> (a.node.depth - src.depth - 1)) & 1;
      AdvNodeId child{src.depth + 1, (src.path << 1) | (toward ^ 1)};
      move_point(q, child, true);
      maybe_resolve(src);
    }
  }

  Outcome out;
  if (a.fixed && b.fixed) {
    out = fixed_outcome(axis, p, q);
  } else {
    int cx = x_region_cmp(a.node, b.node);
    // anti-diagonal layout: deeper-right means larger x and smaller y
    out = axis == Axis::kX ? (cx < 0 ? Outcome::kLess : Outcome::kGreater)
                           : (cx < 0 ? Outcome::kGreater : Outcome::kLess);
  }
  events_.push_back(
      AdvEvent{AdvEvent::Kind::kCmp, events_.size(), p, q, axis, out, AdvNodeId{}});
  return out;
}

void Adversary::maybe_resolve(const AdvNodeId& top) {
  auto it = tops_.find(top);
  if (it == tops_.end() || it->second.terminated) return;
  TopRec& rec = it->second;
  if (rec.at_node * cfg_.trigger_den > rec.initial_size * cfg_.trigger_num) return;

  if (rec.charge == cfg_.zeta - 1) {
    terminate(top, true);
    return;
  }
  SatInt growth = cfg_.d_fn(SatInt::of(tops_.size()));
  bool feasible = !growth.is_inf() && growth.value() >= 1 &&
                  growth.value() <= cfg_.max_fanout_log &&
                  top.depth + growth.value() <= kMaxDepth &&
                  (uint64_t{1} << growth.value()) <= rec.at_node;
  if (!feasible) {
    ++guard_terminations_;
    terminate(top, false);
    return;
  }
  transition(top, growth.value());
}

void Adversary::terminate(const AdvNodeId& top, bool bump_charge) {
  TopRec& rec = tops_.at(top);
  if (rec.terminated) return;
  std::vector<uint32_t> pts = subtree_points(top);

  if (bump_charge) {
    for (uint32_t i : pts) {
      if (points_[i].deep) continue;
      if (points_[i].charge != cfg_.zeta - 1)
        throw std::logic_error("adversary: charge mismatch at termination");
      points_[i].charge = cfg_.zeta;
    }
    rec.charge = cfg_.zeta;
  }

  // dominate the subtree from the region's northeast corner when a resident
  // point is available; every other point is pinned strictly inside its own
  // node's region, injectively, so no two coordinates ever collide
  std::optional<uint32_t> dominator;
  for (uint32_t i : pts) {
    if (points_[i].node == top && !points_[i].deep) {
      dominator = i;
      break;
    }
  }
  for (uint32_t i : pts) {
    if (dominator && i == *dominator) {
      points_[i].x = region_x(top, i, true);
      points_[i].y = region_y(top, i, true);
      points_[i].fixed = true;
    } else {
      assign_fixed(i);
    }
  }
  rec.terminated = true;
  events_.push_back(AdvEvent{AdvEvent::Kind::kTerminate, events_.size(),
                             static_cast<uint32_t>(pts.size()), 0, Axis::kX,
                             Outcome::kLess, top});
}

void Adversary::transition(const AdvNodeId& top, uint64_t growth) {
  TopRec rec = tops_.at(top);
  const uint64_t h_before = tops_.size();
  const uint32_t deep_depth = top.depth + static_cast<uint32_t>(growth);
  std::vector<uint32_t> pts = subtree_points(top);

  std::vector<AdvNodeId> before_nodes(points_.size());
  for (uint32_t i : pts) before_nodes[i] = points_[i].node;

  std::vector<uint32_t> moved;
  std::vector<char> was_moved(points_.size(), 0);
  std::vector<uint32_t> resident;
  for (uint32_t i : pts) {
    PointState& ps = points_[i];
    if (ps.node == top) {
      if (ps.deep) throw std::logic_error("adversary: deep point at a top node");
      resident.push_back(i);
      continue;
    }
    if (ps.node.depth > deep_depth) {
      ps.deep = true;  // beyond the activation level: out of the accounting
      continue;
    }
    // shallow zone: push to the leftmost activation-level descendant
    AdvNodeId target{deep_depth, ps.node.path << (deep_depth - ps.node.depth)};
    if (target == ps.node) continue;  // already at the activation level
    move_point(i, target, true);
    moved.push_back(i);
    was_moved[i] = 1;
  }

  // split the resident points evenly, leftmost descendants take the extras
  const uint64_t fanout = uint64_t{1} << growth;
  const uint64_t base = resident.size() / fanout;
  const uint64_t rem = resident.size() % fanout;
  uint64_t next = 0;
  for (uint64_t k = 0; k < fanout; ++k) {
    uint64_t take = base + (k < rem ? 1 : 0);
    AdvNodeId target{deep_depth, (top.path << growth) + k};
    for (uint64_t t = 0; t < take; ++t) {
      move_point(resident[next], target, true);
      moved.push_back(resident[next]);
      was_moved[resident[next]] = 1;
      ++next;
    }
  }

  // activate every descendant at the new level
  tops_.erase(top);
  for (uint64_t k = 0; k < fanout; ++k) {
    AdvNodeId w{deep_depth, (top.path << growth) + k};
    uint64_t count = 0;
    for (uint32_t i : pts) {
      PointState& ps = points_[i];
      if (!ps.deep && ps.node == w) {
        ps.charge = rec.charge + 1;
        ++count;
      }
    }
    if (count == 0) throw std::logic_error("adversary: activated an empty node");
    tops_[w] = TopRec{false, count, count, rec.charge + 1};
    events_.push_back(AdvEvent{AdvEvent::Kind::kActivate, events_.size(),
                               static_cast<uint32_t>(count), 0, Axis::kX, Outcome::kLess,
                               w});
  }

  const uint64_t h_after = tops_.size();
  if (h_after != h_before - 1 + fanout)
    throw std::logic_error("adversary: top-node accounting broke");
  epochs_.push_back(EpochRecord{h_before, h_after, growth, top});

  // orderings created by the moves are handed over for free
  uint64_t facts = 0;
  for (uint32_t m : moved) {
    for (uint32_t o : pts) {
      if (o == m) continue;
      if (was_moved[o] && o < m) continue;  // counted once per pair
      const AdvNodeId& ma = before_nodes[m];
      const AdvNodeId& oa = before_nodes[o];
      bool was_unordered = ma == oa || is_ancestor(ma, oa) || is_ancestor(oa, ma);
      if (!was_unordered) continue;
      const AdvNodeId& mn = points_[m].node;
      const AdvNodeId& on = points_[o].node;
      bool now_ordered = !(mn == on || is_ancestor(mn, on) || is_ancestor(on, mn));
      if (!now_ordered) continue;
      int cx = x_region_cmp(mn, on);
      free_facts_.push_back(FreeFact{m, o, cx < 0 ? Outcome::kLess : Outcome::kGreater,
                                     cx < 0 ? Outcome::kGreater : Outcome::kLess});
      ++facts;
    }
  }
  events_.push_back(AdvEvent{AdvEvent::Kind::kFreeInfo, events_.size(),
                             static_cast<uint32_t>(facts), 0, Axis::kX, Outcome::kLess,
                             AdvNodeId{}});
}

uint64_t Adversary::terminated_count() const {
  uint64_t c = 0;
  for (const auto& [id, rec] : tops_) c += rec.terminated ? 1 : 0;
  return c;
}

bool Adversary::all_terminated() const {
  for (const auto& [id, rec] : tops_)
    if (!rec.terminated) return false;
  return true;
}

uint64_t Adversary::total_charge() const {
  uint64_t z = 0;
  for (const PointState& ps : points_)
    if (!ps.deep) z += ps.charge;
  return z;
}

uint64_t Adversary::deep_count() const {
  uint64_t c = 0;
  for (const PointState& ps : points_) c += ps.deep ? 1 : 0;
  return c;
}

std::vector<FreeFact> Adversary::take_free_facts() {
  std::vector<FreeFact> out;
  out.swap(free_facts_);
  return out;
}

std::vector<Adversary::TopSummary> Adversary::top_summaries() const {
  std::vector<TopSummary> out;
  for (const auto& [id, rec] : tops_)
    out.push_back(TopSummary{id, rec.terminated, rec.initial_size, rec.charge});
  return out;
}

std::optional<std::pair<Rat, Rat>> Adversary::fixed_coordinate(uint32_t p) const {
  if (p >= points_.size() || !points_[p].fixed) return std::nullopt;
  return std::make_pair(points_[p].x, points_[p].y);
}

void Adversary::check_invariants() const {
  uint64_t assigned = 0;
  for (const auto& [id, rec] : tops_) {
    uint64_t at_node = 0, in_subtree = 0;
    std::optional<uint64_t> charge;
    for (uint32_t i = 0; i < points_.size(); ++i) {
      const PointState& ps = points_[i];
      if (!is_ancestor(id, ps.node)) continue;
      ++in_subtree;
      if (rec.terminated && !ps.fixed)
        throw std::logic_error("invariant: unfixed point in a terminated subtree");
      if (ps.deep) continue;
      if (ps.node == id) ++at_node;
      if (charge && *charge != ps.charge)
        throw std::logic_error("invariant: unequal charges inside a top subtree");
      charge = ps.charge;
    }
    if (at_node != rec.at_node)
      throw std::logic_error("invariant: resident count out of sync");
    if (charge && *charge != rec.charge)
      throw std::logic_error("invariant: node charge out of sync");
    if (in_subtree == 0) throw std::logic_error("invariant: empty top node");
    assigned += in_subtree;
  }
  if (assigned != points_.size())
    throw std::logic_error("invariant: point outside every top subtree");
}

std::vector<std::pair<Rat, Rat>> Adversary::materialize() {
  for (uint32_t i = 0; i < points_.size(); ++i)
    if (!points_[i].fixed) assign_fixed(i);
  // full-transcript replay against the concrete coordinates
  for (const AdvEvent& ev : events_) {
    if (ev.kind != AdvEvent::Kind::kCmp) continue;
    Outcome now = fixed_outcome(ev.axis, ev.a, ev.b);
    if (now != ev.out) throw std::logic_error("materialize: replay mismatch");
  }
  std::vector<std::pair<Rat, Rat>> coords;
  coords.reserve(points_.size());
  for (uint32_t i = 0; i < points_.size(); ++i)
    coords.emplace_back(points_[i].x, points_[i].y);
  return coords;
}

namespace {

/// Opaque-handle view for the generic maxima recursion: every predicate is
/// one adversary comparison, element moves are index swaps.
class AdvView {
 public:
  explicit AdvView(Adversary& adv) : adv_(&adv), ids_(adv.n()) {
    for (uint32_t i = 0; i < adv.n(); ++i) ids_[i] = i;
  }
  using id_type = uint32_t;
  uint64_t size() const { return ids_.size(); }
  bool lex_less(uint64_t i, uint64_t j) {
    return adv_->answer(Axis::kX, ids_[i], ids_[j]) == Outcome::kLess;
  }
  bool y_less(uint64_t i, uint64_t j) {
    return adv_->answer(Axis::kY, ids_[i], ids_[j]) == Outcome::kLess;
  }
  void swap_at(uint64_t i, uint64_t j) { std::swap(ids_[i], ids_[j]); }
  uint32_t id(uint64_t i) const { return ids_[i]; }

 private:
  Adversary* adv_;
  std::vector<uint32_t> ids_;
};

}  // namespace

std::vector<uint32_t> maxima_adapter(Adversary& adv, uint64_t h0) {
  AdvView view(adv);
  MaximaEngine<AdvView> engine(view, nullptr, nullptr);
  return engine.run(0, adv.n(), h0);
}

std::vector<uint32_t> sortscan_adapter(Adversary& adv) {
  std::vector<uint32_t> ids(adv.n());
  for (uint32_t i = 0; i < adv.n(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](uint32_t a, uint32_t b) {
    return adv.answer(Axis::kX, a, b) == Outcome::kGreater;  // descending x
  });
  std::vector<uint32_t> out;
  std::optional<uint32_t> best;
  for (uint32_t id : ids) {
    if (!best || adv.answer(Axis::kY, *best, id) == Outcome::kLess) {
      out.push_back(id);
      best = id;
    }
  }
  return out;
}

AdvRunReport run_against(const AdvConfig& cfg, const AdapterFn& adapter) {
  Adversary adv(cfg);
  AdvRunReport rep;
  try {
    rep.announced = adapter(adv);
  } catch (const AdvBudgetExceeded&) {
    rep.budget_exceeded = true;
  }
  adv.check_invariants();
  auto coords = adv.materialize();

  rep.comparisons = adv.comparisons();
  rep.total_charge = adv.total_charge();
  rep.forced_io_lower_bound = static_cast<double>(rep.total_charge) /
                              (4.0 * static_cast<double>(cfg.block_words));
  rep.epochs = adv.epochs();
  rep.top_nodes = adv.top_node_count();
  rep.terminated = adv.terminated_count();
  rep.all_terminated = adv.all_terminated();

  if (!rep.budget_exceeded) {
    // quadratic dominance filter over the materialized coordinates
    std::vector<uint32_t> maxima;
    for (uint32_t i = 0; i < coords.size(); ++i) {
      bool dominated = false;
      for (uint32_t j = 0; j < coords.size() && !dominated; ++j) {
        if (i == j) continue;
        dominated = cmp(coords[j].first, coords[i].first) >= 0 &&
                    cmp(coords[j].second, coords[i].second) >= 0;
      }
      if (!dominated) maxima.push_back(i);
    }
    std::vector<uint32_t> got = rep.announced;
    std::sort(got.begin(), got.end());
    rep.answer_correct = got == maxima;
  }
  return rep;
}

}  // namespace cogeom
