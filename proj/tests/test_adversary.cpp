#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "cogeom/adversary.hpp"
#include "cogeom/rng.hpp"

using namespace cogeom;

namespace {

AdvConfig small_cfg(uint64_t n) {
  AdvConfig cfg;
  cfg.n = n;
  cfg.zeta = 2;
  cfg.d_fn = GrowthFn::add_const(1);
  return cfg;
}

uint64_t count_moves(const Adversary& adv) {
  uint64_t c = 0;
  for (const AdvEvent& ev : adv.transcript())
    if (ev.kind == AdvEvent::Kind::kMove) ++c;
  return c;
}

// maxima indices of materialized coordinates, by quadratic dominance
std::vector<uint32_t> coord_maxima(const std::vector<std::pair<Rat, Rat>>& coords) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < coords.size(); ++i) {
    bool dominated = false;
    for (uint32_t j = 0; j < coords.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = cmp(coords[j].first, coords[i].first) >= 0 &&
                  cmp(coords[j].second, coords[i].second) >= 0;
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("first comparison splits the root pair") {
  Adversary adv(small_cfg(4));
  CHECK(adv.answer(Axis::kX, 0, 1) == Outcome::kLess);
  // p went to the upper-left child, q to the lower-right: y reverses
  CHECK(adv.answer(Axis::kY, 0, 1) == Outcome::kGreater);
  CHECK(count_moves(adv) == 2);
}

TEST_CASE("repeats cost no movement and agree") {
  Adversary adv(small_cfg(8));
  Outcome first = adv.answer(Axis::kX, 2, 5);
  uint64_t moves = count_moves(adv);
  for (int i = 0; i < 5; ++i) CHECK(adv.answer(Axis::kX, 2, 5) == first);
  CHECK(count_moves(adv) == moves);
  adv.check_invariants();
}

TEST_CASE("ancestor pair moves only the shallower point") {
  Adversary adv(small_cfg(8));
  (void)adv.answer(Axis::kX, 0, 1);  // 0 left, 1 right
  uint64_t moves = count_moves(adv);
  // 2 still at the root, an ancestor of both: one move resolves it
  (void)adv.answer(Axis::kX, 2, 0);
  CHECK(count_moves(adv) == moves + 1);
  // 2 went to the child away from 0, i.e. to the right: bigger x than 0
  CHECK(adv.answer(Axis::kX, 2, 0) == Outcome::kGreater);
  adv.check_invariants();
}

TEST_CASE("x and y answers are opposite for ordered pairs") {
  // high zeta and unit growth keep every subtree live: answers come from
  // the anti-diagonal region geometry (fixed points may legitimately
  // correlate, so they are skipped)
  AdvConfig cfg = small_cfg(128);
  cfg.zeta = 50;
  cfg.d_fn = GrowthFn::constant(1);
  Adversary adv(cfg);
  SplitMix64 rng(5);
  size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    uint32_t p = static_cast<uint32_t>(rng.below(128));
    uint32_t q = static_cast<uint32_t>(rng.below(128));
    if (p == q) continue;
    Outcome x = adv.answer(Axis::kX, p, q);
    Outcome y = adv.answer(Axis::kY, p, q);
    // pairs pinned by a guard termination may correlate; region-answered
    // pairs never do
    if (adv.fixed_coordinate(p) || adv.fixed_coordinate(q)) continue;
    CHECK(x != y);
    ++checked;
  }
  CHECK(checked > 50);
  adv.check_invariants();
}

TEST_CASE("root transition with unit growth") {
  AdvConfig cfg = small_cfg(8);
  cfg.d_fn = GrowthFn::constant(1);
  Adversary adv(cfg);
  // four disjoint comparisons drain the root to its trigger threshold
  (void)adv.answer(Axis::kX, 0, 1);
  CHECK(adv.epochs().empty());
  (void)adv.answer(Axis::kX, 2, 3);
  REQUIRE(adv.epochs().size() == 1);
  const EpochRecord& e = adv.epochs()[0];
  CHECK(e.h_before == 1);
  CHECK(e.h_after == 2);
  CHECK(e.growth == 1);
  auto tops = adv.top_summaries();
  REQUIRE(tops.size() == 2);
  for (const auto& t : tops) {
    CHECK(!t.terminated);
    CHECK(t.initial_size >= 2);
    CHECK(t.charge == 1);
  }
  adv.check_invariants();
  // the split pairs became ordered for free
  auto facts = adv.take_free_facts();
  CHECK(!facts.empty());
}

TEST_CASE("unit charge terminates at the first trigger") {
  AdvConfig cfg = small_cfg(8);
  cfg.zeta = 1;
  Adversary adv(cfg);
  (void)adv.answer(Axis::kX, 0, 1);
  (void)adv.answer(Axis::kX, 2, 3);
  CHECK(adv.epochs().empty());  // termination is not an epoch
  auto tops = adv.top_summaries();
  REQUIRE(tops.size() == 1);
  CHECK(tops[0].terminated);
  CHECK(adv.all_terminated());
  CHECK(adv.total_charge() == 8);  // every ordinary point reached zeta
  // all comparisons now answer from fixed coordinates, consistently
  Outcome o = adv.answer(Axis::kX, 4, 5);
  CHECK(adv.answer(Axis::kX, 4, 5) == o);
  adv.check_invariants();
  auto coords = adv.materialize();
  CHECK(coord_maxima(coords).size() == 1);  // the corner point dominates
}

TEST_CASE("materialize replays an empty and a tiny transcript") {
  Adversary adv(small_cfg(4));
  auto coords = adv.materialize();
  REQUIRE(coords.size() == 4);
  for (auto& [x, y] : coords) {
    CHECK(cmp(x, Rat(0, 1)) > 0);
    CHECK(cmp(x, Rat(1, 1)) <= 0);
    CHECK(cmp(y, Rat(0, 1)) > 0);
    CHECK(cmp(y, Rat(1, 1)) <= 0);
  }
  Adversary adv2(small_cfg(4));
  (void)adv2.answer(Axis::kX, 0, 1);
  (void)adv2.answer(Axis::kY, 2, 3);
  CHECK_NOTHROW(adv2.materialize());
}

TEST_CASE("maxima adapter runs against the full grid") {
  std::vector<GrowthFn> growths = {GrowthFn::add_const(1), GrowthFn::mul_const(2)};
  for (uint64_t n : {64, 256, 1024}) {
    for (const GrowthFn& g : growths) {
      for (uint64_t zeta : {1, 2, 3}) {
        AdvConfig cfg;
        cfg.n = n;
        cfg.zeta = zeta;
        cfg.d_fn = g;
        AdvRunReport rep = run_against(cfg, [](Adversary& a) { return maxima_adapter(a); });
        CAPTURE(n);
        CAPTURE(g.name());
        CAPTURE(zeta);
        CHECK(!rep.budget_exceeded);
        CHECK(rep.answer_correct);
        // the top-node recurrence holds exactly per epoch
        for (const EpochRecord& e : rep.epochs) {
          CHECK(e.h_after == e.h_before + (uint64_t{1} << e.growth) - 1);
          SatInt want = g(SatInt::of(e.h_before));
          CHECK(!want.is_inf());
          CHECK(e.growth == want.value());
        }
        // nonempty top subtrees lower-bound the materialized maxima count
        // (checked through a fresh deterministic rerun)
        Adversary adv(cfg);
        (void)maxima_adapter(adv);
        adv.check_invariants();
        auto coords = adv.materialize();
        CHECK(adv.top_node_count() <= coord_maxima(coords).size());
      }
    }
  }
}

TEST_CASE("doubling growth with two charges drains every node") {
  AdvConfig cfg;
  cfg.n = 256;
  cfg.zeta = 2;
  cfg.d_fn = GrowthFn::mul_const(2);
  AdvRunReport rep = run_against(cfg, [](Adversary& a) { return maxima_adapter(a); });
  CHECK(rep.answer_correct);
  CHECK(rep.all_terminated);
}

TEST_CASE("terminated subtrees contribute exactly one maxima point each") {
  AdvConfig cfg;
  cfg.n = 256;
  cfg.zeta = 2;
  cfg.d_fn = GrowthFn::mul_const(2);
  Adversary adv(cfg);
  (void)maxima_adapter(adv);
  auto coords = adv.materialize();
  for (const auto& t : adv.top_summaries()) {
    if (!t.terminated) continue;
    auto pts = adv.points_under(t.id);
    // subtree-local maxima under domination among its own points
    size_t local = 0;
    for (uint32_t i : pts) {
      bool dominated = false;
      for (uint32_t j : pts) {
        if (i == j) continue;
        if (cmp(coords[j].first, coords[i].first) >= 0 &&
            cmp(coords[j].second, coords[i].second) >= 0) {
          dominated = true;
          break;
        }
      }
      if (!dominated) ++local;
    }
    CHECK(local == 1);
  }
}

TEST_CASE("sortscan adapter is consistent and driven deep") {
  AdvConfig cfg;
  cfg.n = 128;
  cfg.zeta = 3;
  cfg.d_fn = GrowthFn::add_const(1);
  AdvRunReport rep = run_against(cfg, [](Adversary& a) { return sortscan_adapter(a); });
  CHECK(!rep.budget_exceeded);
  CHECK(rep.answer_correct);
}

TEST_CASE("comparison budget aborts the adapter") {
  AdvConfig cfg = small_cfg(128);
  cfg.comparison_budget = 50;
  AdvRunReport rep = run_against(cfg, [](Adversary& a) { return sortscan_adapter(a); });
  CHECK(rep.budget_exceeded);
  CHECK(rep.comparisons <= 50);
  CHECK(!rep.answer_correct);
}

TEST_CASE("an adapter that answers blind is caught") {
  AdvConfig cfg = small_cfg(8);
  AdvRunReport rep = run_against(cfg, [](Adversary& a) {
    std::vector<uint32_t> all(a.n());
    for (uint32_t i = 0; i < a.n(); ++i) all[i] = i;
    return all;  // zero comparisons, claims everything is maximal
  });
  CHECK(!rep.answer_correct);

  AdvConfig one = small_cfg(1);
  AdvRunReport rep1 = run_against(one, [](Adversary&) {
    return std::vector<uint32_t>{0};
  });
  CHECK(rep1.answer_correct);
}

TEST_CASE("paper growth schedule saturates into guard terminations") {
  AdvConfig cfg;
  cfg.n = 256;
  cfg.zeta = 3;
  cfg.d_fn = GrowthFn::ack_level(1);  // 2^h: explodes after the first epochs
  AdvRunReport rep = run_against(cfg, [](Adversary& a) { return maxima_adapter(a); });
  CHECK(rep.answer_correct);
  // growth outruns the fanout cap quickly, so some nodes must have taken
  // the guarded termination path
  Adversary probe(cfg);
  (void)maxima_adapter(probe);
  CHECK(probe.guard_terminations() > 0);
}

TEST_CASE("free facts match the materialized order") {
  AdvConfig cfg = small_cfg(64);
  cfg.d_fn = GrowthFn::add_const(2);
  Adversary adv(cfg);
  (void)maxima_adapter(adv);
  auto facts = adv.take_free_facts();
  auto coords = adv.materialize();
  for (const FreeFact& f : facts) {
    int cx = cmp(coords[f.p].first, coords[f.q].first);
    int cy = cmp(coords[f.p].second, coords[f.q].second);
    CHECK(cx != 0);
    CHECK(cy != 0);
    CHECK((cx < 0 ? Outcome::kLess : Outcome::kGreater) == f.x_outcome);
    CHECK((cy < 0 ? Outcome::kLess : Outcome::kGreater) == f.y_outcome);
  }
}
