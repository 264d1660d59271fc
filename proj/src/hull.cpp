#include "cogeom/hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogeom {

namespace hulldetail {

Pairing pair_and_filter(SimVec<Point> coll, uint64_t size) {
  Pairing out;
  Simulator& sim = coll.sim();
  uint64_t w = 0;
  bool have_pending = false;
  uint64_t pending = 0;
  Point pend{};
  for (uint64_t j = 0; j < size; ++j) {
    Point p = coll.get(j);
    if (!have_pending) {
      if (w != j) coll.set(w, p);
      pending = w;
      pend = p;
      have_pending = true;
      ++w;
      continue;
    }
    sim.count_comparison();  // x three-way
    if (p.x == pend.x) {
      // vertical pair: drop the lower point, keep pairing with the higher
      sim.count_comparison();
      if (p.y > pend.y) {
        coll.set(pending, p);
        pend = p;
      }
      continue;
    }
    if (p.x < pend.x) {  // write the pair x-ordered into (pending, pending+1)
      coll.set(pending, p);
      coll.set(w, pend);
    } else {
      if (w != j) coll.set(w, p);
    }
    out.pair_starts.push_back(static_cast<uint32_t>(pending));
    ++w;
    have_pending = false;
  }
  out.new_size = w;
  return out;
}

Slope median_pair_slope(Simulator& sim, SimVec<Point> coll, const Pairing& pairing) {
  const uint64_t np = pairing.pair_starts.size();
  if (np == 0) throw std::logic_error("median_pair_slope: collection has no pairs");
  SimVec<Slope> slopes = SimVec<Slope>::alloc(sim, np);
  for (uint64_t i = 0; i < np; ++i) {
    Point a = coll.get(pairing.pair_starts[i]);
    Point b = coll.get(pairing.pair_starts[i] + 1);
    slopes.set(i, Slope::of(a, b));
  }
  Slope med = select_rank(slopes, (np - 1) / 2);
  slopes.free();
  return med;
}

}  // namespace hulldetail

KsRoundOutcome ks_prune_round(Simulator& sim, SimVec<Point> coll,
                              const hulldetail::Pairing& pairing, int64_t two_ell,
                              const Slope& median, std::pair<Point, Point> extreme) {
  KsRoundOutcome out;
  out.new_size = pairing.new_size;
  sim.count_comparison();
  const bool min_left = 2 * int64_t(extreme.first.x) < two_ell;
  sim.count_comparison();
  const bool max_left = 2 * int64_t(extreme.second.x) < two_ell;
  if (min_left && !max_left) {
    // the support segment straddles the boundary: it is the bridge
    out.bridge = Bridge{extreme.first, extreme.second, two_ell};
    return out;
  }
  const bool extreme_left = max_left;
  std::vector<bool> drop(pairing.new_size, false);
  uint64_t dropped = 0;
  for (uint32_t s : pairing.pair_starts) {
    Point a = coll.get(s), b = coll.get(s + 1);
    sim.count_comparison();
    int c = slope_cmp(Slope::of(a, b), median);
    // a strictly one-sided extreme makes the bridge slope strictly smaller
    // (resp. larger) than the median, so pairs tied with the median cannot
    // hold a bridge endpoint on the dropped side and prune as well; this
    // keeps at least half of every collection's pairs shedding a point
    if (extreme_left && c >= 0) {
      drop[s] = true;
      ++dropped;
    } else if (!extreme_left && c <= 0) {
      drop[s + 1] = true;
      ++dropped;
    }
  }
  if (dropped != 0) {
    uint64_t w = 0;
    for (uint64_t j = 0; j < pairing.new_size; ++j) {
      if (drop[j]) continue;
      if (w != j) coll.set(w, coll.get(j));
      ++w;
    }
    out.new_size = w;
  }
  out.dropped = dropped;
  return out;
}

namespace {

struct Coll {
  SimVec<Point> arr;
  uint64_t size = 0;
  bool found = false;
  Bridge bridge;
};

// Top chain that keeps collinear vertices: the residue reads one bridge off
// every boundary, and a collinear top edge must subdivide at each boundary
// so that flanking buckets see their own local bridge; the final stitch
// sweep restores strict convexity.
std::vector<Point> top_chain_keep_collinear(SimVec<Point> vec) {
  std::vector<Point> chain;
  for (uint64_t i = 0; i < vec.size(); ++i) {
    Point p = vec.get(i);
    while (chain.size() >= 2) {
      vec.sim().count_comparison();
      if (orient(chain[chain.size() - 2], chain.back(), p) > 0)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }
  return chain;
}

void report_round(const HullTrace* trace, const std::vector<Coll>& colls, uint64_t before,
                  uint64_t after) {
  if (!trace || !trace->on_round) return;
  std::vector<std::vector<Point>> snap(colls.size());
  std::vector<bool> found(colls.size());
  for (size_t i = 0; i < colls.size(); ++i) {
    found[i] = colls[i].found;
    for (uint64_t j = 0; j < colls[i].size; ++j) snap[i].push_back(colls[i].arr.get(j));
  }
  trace->on_round(snap, found, before, after);
}

}  // namespace

std::vector<Bridge> multi_bridge(Simulator& sim, SimVec<Point> pts,
                                 const std::vector<uint64_t>& offsets,
                                 const std::vector<int64_t>& two_ell,
                                 const HullTrace* trace) {
  const uint64_t n = pts.size();
  const size_t nb = two_ell.size();
  if (offsets.size() != nb + 2)
    throw std::invalid_argument("multi_bridge: offsets/boundaries mismatch");
  if (nb == 0) return {};

  std::vector<Coll> colls(nb);
  for (size_t i = 0; i < nb; ++i) {
    uint64_t sz = offsets[i + 2] - offsets[i];
    colls[i].arr = SimVec<Point>::alloc(sim, sz);
    colls[i].size = sz;
    uint64_t w = 0;
    for (uint64_t j = offsets[i]; j < offsets[i + 2]; ++j)
      colls[i].arr.set(w++, pts.get(j));
  }

  uint64_t log2n = 1;
  while ((uint64_t{1} << log2n) < std::max<uint64_t>(n, 2)) ++log2n;
  const uint64_t threshold = (n + log2n - 1) / log2n;

  for (int round = 0; round < 96; ++round) {
    uint64_t total = 0, live = 0;
    size_t unfound = 0;
    for (const Coll& c : colls) {
      total += c.size;
      if (!c.found) {
        live += c.size;
        ++unfound;
      }
    }
    if (unfound == 0 || live <= threshold || live <= 8) break;

    bool progressed = false;
    std::vector<hulldetail::Pairing> pairings(nb);
    std::vector<std::pair<Slope, size_t>> medians;
    for (size_t i = 0; i < nb; ++i) {
      if (colls[i].found) continue;
      pairings[i] = hulldetail::pair_and_filter(colls[i].arr, colls[i].size);
      if (pairings[i].new_size < colls[i].size) progressed = true;  // vertical drops
      colls[i].size = pairings[i].new_size;
      if (!pairings[i].pair_starts.empty())
        medians.emplace_back(hulldetail::median_pair_slope(sim, colls[i].arr, pairings[i]),
                             i);
    }
    if (medians.empty()) break;

    std::sort(medians.begin(), medians.end(),
              [&](const std::pair<Slope, size_t>& a, const std::pair<Slope, size_t>& b) {
                sim.count_comparison();
                return slope_less(b.first, a.first);
              });
    std::vector<Slope> slopes(medians.size());
    for (size_t i = 0; i < medians.size(); ++i) slopes[i] = medians[i].first;

    // extremes are taken over every collection, found ones included: an
    // unfound bridge's endpoint may only survive inside a collection whose
    // own bridge is already settled, and the side inference needs the
    // support to dominate all of them. Sizes are re-read here because the
    // pairing pass above just dropped vertical-pair points.
    uint64_t union_sz = 0;
    for (const Coll& c : colls) union_sz += c.size;
    auto uni = SimVec<Point>::alloc(sim, union_sz);
    {
      uint64_t w = 0;
      for (const Coll& c : colls)
        for (uint64_t j = 0; j < c.size; ++j) uni.set(w++, c.arr.get(j));
      if (w != union_sz) throw std::logic_error("multi_bridge: union size out of sync");
    }
    auto extremes = multi_slope_extremes(sim, uni, slopes);
    uni.free();

    for (size_t e = 0; e < medians.size(); ++e) {
      size_t i = medians[e].second;
      KsRoundOutcome o = ks_prune_round(sim, colls[i].arr, pairings[i], two_ell[i],
                                        medians[e].first, extremes[e]);
      if (o.bridge) {
        colls[i].found = true;
        colls[i].bridge = *o.bridge;
        // the frozen collection stays in custody of other bridges' endpoints;
        // everything strictly under its own bridge segment can go (points on
        // the line, endpoints included, may still serve neighboring seams)
        const Bridge& b = colls[i].bridge;
        uint64_t w = 0;
        for (uint64_t j = 0; j < colls[i].size; ++j) {
          Point q = colls[i].arr.get(j);
          sim.count_comparison();
          bool under = q.x >= b.left.x && q.x <= b.right.x;
          if (under) {
            sim.count_comparison();
            under = orient(b.left, b.right, q) < 0;
          }
          if (!under) {
            if (w != j) colls[i].arr.set(w, q);
            ++w;
          }
        }
        colls[i].size = w;
        progressed = true;
      } else {
        colls[i].size = o.new_size;
        if (o.dropped != 0) progressed = true;
      }
    }

    if (!progressed) break;
    uint64_t after = 0;
    for (const Coll& c : colls)
      if (!c.found) after += c.size;
    report_round(trace, colls, live, after);
  }

  // residue: solve the leftover bridges off an explicit hull chain over the
  // survivors of every collection (found ones keep custody of endpoints)
  uint64_t residue_sz = 0;
  size_t unfound = 0;
  for (const Coll& c : colls) {
    residue_sz += c.size;
    if (!c.found) ++unfound;
  }
  if (unfound > 0) {
    auto residue = SimVec<Point>::alloc(sim, residue_sz);
    uint64_t w = 0;
    for (const Coll& c : colls)
      for (uint64_t j = 0; j < c.size; ++j) residue.set(w++, c.arr.get(j));
    mergesort(residue, PointOrder::kLexAsc);
    uint64_t m = dedup_sorted(residue);  // points shared by two collections
    std::vector<Point> chain = top_chain_keep_collinear(residue.slice(0, m));
    for (size_t i = 0; i < nb; ++i) {
      if (colls[i].found) continue;
      bool ok = false;
      for (size_t e = 0; e + 1 < chain.size(); ++e) {
        sim.count_comparison();
        if (2 * int64_t(chain[e].x) < two_ell[i] &&
            two_ell[i] < 2 * int64_t(chain[e + 1].x)) {
          colls[i].bridge = Bridge{chain[e], chain[e + 1], two_ell[i]};
          colls[i].found = true;
          ok = true;
          break;
        }
      }
      if (!ok)
        throw std::logic_error("multi_bridge: boundary without a crossing hull edge");
    }
    residue.free();
  }

  std::vector<Bridge> out(nb);
  for (size_t i = 0; i < nb; ++i) out[i] = colls[i].bridge;
  for (size_t i = nb; i-- > 0;) colls[i].arr.free();
  return out;
}

uint64_t bridge_prune_bucket(SimVec<Point> bucket, const std::optional<Bridge>& left,
                             const std::optional<Bridge>& right) {
  Simulator& sim = bucket.sim();
  uint64_t w = 0;
  for (uint64_t j = 0; j < bucket.size(); ++j) {
    Point q = bucket.get(j);
    bool pruned = false;
    if (left) {
      sim.count_comparison();
      if (q == left->left || q == left->right) pruned = true;
      if (!pruned) {
        sim.count_comparison();
        if (q.x <= left->right.x) {
          sim.count_comparison();
          if (orient(left->left, left->right, q) < 0) pruned = true;
        }
      }
    }
    if (!pruned && right) {
      sim.count_comparison();
      if (q == right->left || q == right->right) pruned = true;
      if (!pruned) {
        sim.count_comparison();
        if (q.x >= right->left.x) {
          sim.count_comparison();
          if (orient(right->left, right->right, q) < 0) pruned = true;
        }
      }
    }
    if (!pruned) {
      if (w != j) bucket.set(w, q);
      ++w;
    }
  }
  return w;
}

namespace {

struct HullCtx {
  Simulator& sim;
  SimVec<Point> pts;
  SplitMix64* rng;
  const HullTrace* trace;
};

std::vector<Point> fallback_chain(SimVec<Point> slice) {
  mergesort(slice, PointOrder::kLexAsc);
  return graham_upper_hull(slice);
}

// Sort the gathered output candidates, drop duplicates, and keep only the
// strictly convex top chain. Children may emit points that lie on or below
// the final chain (collinear bridge interiors, local vertices hidden by a
// confirmed vertex that was withheld from their recursion); one sweep over
// the output-sized set settles them.
std::vector<Point> compact_chain(Simulator& sim, std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [&sim](const Point& a, const Point& b) {
    sim.count_comparison();
    return lex_less(a, b);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Point> chain;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i + 1 < pts.size()) {
      sim.count_comparison();
      if (pts[i + 1].x == pts[i].x) continue;  // only column tops can appear
    }
    const Point& p = pts[i];
    while (chain.size() >= 2) {
      sim.count_comparison();
      if (orient(chain[chain.size() - 2], chain.back(), p) >= 0)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(p);
  }
  return chain;
}

std::vector<Point> hull_rec_impl(HullCtx& ctx, uint64_t lo, uint64_t len, uint64_t h);

std::vector<Point> hull_rec(HullCtx& ctx, uint64_t lo, uint64_t len, uint64_t h) {
  if (ctx.trace && ctx.trace->on_node_enter) ctx.trace->on_node_enter(lo, len, h);
  std::vector<Point> chain = hull_rec_impl(ctx, lo, len, h);
  if (ctx.trace && ctx.trace->on_node_exit) ctx.trace->on_node_exit(lo, len, h, chain);
  return chain;
}

std::vector<Point> hull_rec_impl(HullCtx& ctx, uint64_t lo, uint64_t len, uint64_t h) {
  Simulator& sim = ctx.sim;
  if (len == 0) return {};
  if (len == 1) return {ctx.pts.get(lo)};
  SimVec<Point> slice = ctx.pts.slice(lo, len);
  if (len == 2) {
    Point a = slice.get(0), b = slice.get(1);
    sim.count_comparison();
    if (a.x == b.x) return {a.y > b.y ? a : b};  // only the column top shows
    if (lex_less(b, a)) std::swap(a, b);
    return {a, b};
  }
  if (h < 1) h = 1;
  if (h * h >= len) {
    if (ctx.trace && ctx.trace->on_fallback) ctx.trace->on_fallback("seed", len, h);
    return fallback_chain(slice);
  }

  const uint64_t k = std::min(2 * h, len);
  BucketLayout layout = distribute(slice, k, PointOrder::kLexAsc);

  // buckets hold exact rank ranges but are internally unordered, so the
  // seam endpoints (bucket max, next bucket min) come from a scan
  std::vector<Point> bkt_min(k), bkt_max(k);
  for (uint64_t b = 0; b < k; ++b) {
    Point mn = slice.get(layout.offsets[b]);
    Point mx = mn;
    for (uint64_t i = layout.offsets[b] + 1; i < layout.offsets[b + 1]; ++i) {
      Point p = slice.get(i);
      sim.count_comparison();
      if (lex_less(p, mn)) mn = p;
      sim.count_comparison();
      if (lex_less(mx, p)) mx = p;
    }
    bkt_min[b] = mn;
    bkt_max[b] = mx;
  }

  // group buckets so every retained seam separates distinct x
  std::vector<uint64_t> group_off = {0};
  std::vector<int64_t> two_ell;
  for (uint64_t b = 1; b < k; ++b) {
    sim.count_comparison();
    if (bkt_max[b - 1].x != bkt_min[b].x) {
      group_off.push_back(layout.offsets[b]);
      two_ell.push_back(int64_t(bkt_max[b - 1].x) + int64_t(bkt_min[b].x));
    }
  }
  group_off.push_back(len);
  const size_t ng = group_off.size() - 1;
  if (ng == 1) {
    // every seam fell inside one x column; nothing separates, so sort-and-scan
    if (ctx.trace && ctx.trace->on_fallback) ctx.trace->on_fallback("degenerate", len, h);
    return fallback_chain(slice);
  }

  std::vector<Bridge> bridges = multi_bridge(sim, slice, group_off, two_ell, ctx.trace);

  std::vector<Point> confirmed;
  confirmed.reserve(2 * bridges.size());
  for (const Bridge& b : bridges) {
    confirmed.push_back(b.left);
    confirmed.push_back(b.right);
  }
  std::sort(confirmed.begin(), confirmed.end(), [&sim](const Point& a, const Point& b) {
    sim.count_comparison();
    return lex_less(a, b);
  });
  confirmed.erase(std::unique(confirmed.begin(), confirmed.end()), confirmed.end());

  uint64_t found = confirmed.size();
  std::vector<std::vector<Point>> children(ng);
  auto process = [&](size_t g) {
    std::optional<Bridge> bl = g > 0 ? std::optional<Bridge>(bridges[g - 1]) : std::nullopt;
    std::optional<Bridge> br =
        g + 1 < ng ? std::optional<Bridge>(bridges[g]) : std::nullopt;
    SimVec<Point> bucket = slice.slice(group_off[g], group_off[g + 1] - group_off[g]);
    uint64_t kept = bridge_prune_bucket(bucket, bl, br);
    children[g] = hull_rec(ctx, lo + group_off[g], kept, h + found);
    found += children[g].size();
  };
  const bool reversed = ctx.rng != nullptr && ctx.rng->coin();
  if (reversed) {
    for (size_t g = ng; g-- > 0;) process(g);
  } else {
    for (size_t g = 0; g < ng; ++g) process(g);
  }

  std::vector<Point> all = std::move(confirmed);
  for (const auto& c : children) all.insert(all.end(), c.begin(), c.end());
  return compact_chain(sim, std::move(all));
}

}  // namespace

std::vector<Point> upper_hull_sensitive(Simulator& sim, SimVec<Point> pts, uint64_t h0,
                                        SplitMix64* rng, const HullTrace* trace) {
  HullCtx ctx{sim, pts, rng, trace};
  return hull_rec(ctx, 0, pts.size(), h0 < 1 ? 1 : h0);
}

HullResult convex_hull(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                       const HullTrace* trace) {
  if (pts.size() == 0) throw std::invalid_argument("convex_hull: empty input");
  mergesort(pts, PointOrder::kLexAsc);
  uint64_t n = dedup_sorted(pts);
  SimVec<Point> live = pts.slice(0, n);

  uint64_t h0 = initial_seed(cfg.policy, cfg.s, pts.size(), sim.params());
  if (h0 < 1) h0 = 1;
  SplitMix64 rng(cfg.rng_seed);
  SplitMix64* rp = cfg.policy == SeedPolicy::kRandomized ? &rng : nullptr;

  std::vector<Point> hull;
  if (n <= 2) {
    for (uint64_t i = 0; i < n; ++i) hull.push_back(live.get(i));  // sorted pair
  } else {
    // the chain recursion prunes its array destructively, so the negated
    // copy for the lower chain must be taken before the upper run
    auto neg = SimVec<Point>::alloc(sim, n);
    for (uint64_t i = 0; i < n; ++i) {
      Point p = live.get(i);
      neg.set(i, Point{static_cast<int32_t>(-p.x), static_cast<int32_t>(-p.y)});
    }
    std::vector<Point> upper = upper_hull_sensitive(sim, live, h0, rp, trace);
    std::vector<Point> lower_rev = upper_hull_sensitive(sim, neg, h0, rp, trace);
    neg.free();

    // the negated result runs lexmax -> lexmin along the bottom; reverse it
    // to start the counterclockwise walk, then add the upper chain right-to-
    // left, skipping junction vertices shared with the lower chain (the two
    // chains meet at a common point only when that x column is a single
    // point; otherwise a vertical edge joins them)
    hull.reserve(lower_rev.size() + upper.size());
    for (size_t i = lower_rev.size(); i-- > 0;)
      hull.push_back(Point{static_cast<int32_t>(-lower_rev[i].x),
                           static_cast<int32_t>(-lower_rev[i].y)});
    size_t start = !upper.empty() && upper.back() == hull.back() ? 1 : 0;
    for (size_t i = start; i < upper.size(); ++i) {
      const Point& p = upper[upper.size() - 1 - i];
      if (i + 1 == upper.size() && p == hull.front()) break;
      hull.push_back(p);
    }
  }

  auto out = SimVec<Point>::alloc(sim, hull.size());
  for (uint64_t i = 0; i < hull.size(); ++i) out.set(i, hull[i]);

  HullResult res;
  res.hull = std::move(hull);
  res.h0 = h0;
  res.report = sim.snapshot();
  return res;
}

HullResult run_hull(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                    const HullTrace* trace) {
  return convex_hull(sim, pts, cfg, trace);
}

}  // namespace cogeom
