#include "cogeom/phi.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cogeom {

bool StatusVector::well_formed() const {
  if (h < 1) return false;
  uint64_t prev = 0;
  for (const PhiTerm& term : seq) {
    if (term.kappa == 0 || term.kappa < prev) return false;
    prev = term.kappa;
  }
  return true;
}

SatInt phi(const StatusVector& v, const GrowthFn& a) {
  if (!v.well_formed()) throw std::invalid_argument("phi: malformed status vector");
  constexpr uint64_t kStepBudget = 100'000'000;
  uint64_t steps = 0;

  SatInt h = SatInt::of(v.h);
  // Work stack of pending terms; the front of the logical sequence is the
  // stack top, so spawned (A(h), kappa-1) runs are consumed first.
  std::vector<PhiTerm> stack(v.seq.rbegin(), v.seq.rend());
  while (!stack.empty()) {
    if (h.is_inf()) return SatInt::inf();
    PhiTerm term = stack.back();
    stack.pop_back();
    if (term.t == 0) continue;
    if (term.kappa == 1) {
      h = a.iterate(h, term.t);
      if (h.is_inf()) return SatInt::inf();
      if (++steps > kStepBudget) throw std::runtime_error("phi: step budget exceeded");
      continue;
    }
    SatInt grown = a(h);
    if (grown.is_inf()) return SatInt::inf();
    stack.push_back(PhiTerm{term.t - 1, term.kappa});
    stack.push_back(PhiTerm{grown.value(), term.kappa - 1});
    h = grown;
    if (++steps > kStepBudget) throw std::runtime_error("phi: step budget exceeded");
  }
  return h;
}

namespace {

// Live nodes compressed as (kappa -> count); counts can be enormous after a
// spawn, so they are never expanded into individual entries.
struct GameState {
  uint64_t h;  // finite; infinite states short-circuit before being stored
  std::vector<std::pair<uint64_t, uint64_t>> runs;  // sorted by kappa

  bool operator<(const GameState& o) const {
    if (h != o.h) return h < o.h;
    return runs < o.runs;
  }
};

class Game {
 public:
  Game(const GrowthFn& a, size_t limit) : a_(a), limit_(limit) {}

  SatInt best(GameState s) {
    DepthScope scope(this);
    if (s.runs.empty()) return SatInt::of(s.h);
    // only unit-potential nodes left: a forced move sequence, every order
    // identical, so fast-forward instead of stepping node by node
    if (s.runs.size() == 1 && s.runs[0].first == 1)
      return a_.iterate(SatInt::of(s.h), s.runs[0].second);
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (memo_.size() >= limit_ || ++visits_ > 4 * limit_ || depth_ > kMaxDepth)
      throw std::runtime_error("game_max_bruteforce: state space exceeds limit");

    SatInt best_val = SatInt::of(0);
    for (size_t i = 0; i < s.runs.size(); ++i) {
      GameState next = s;
      auto& [kappa, count] = next.runs[i];
      const uint64_t k = kappa;
      if (--count == 0) next.runs.erase(next.runs.begin() + static_cast<long>(i));
      SatInt grown = a_(SatInt::of(s.h));
      if (grown.is_inf()) {
        // settled count can only grow from here on; the whole branch saturates
        best_val = SatInt::inf();
        break;
      }
      next.h = grown.value();
      if (k > 1) add_run(next.runs, k - 1, grown.value());
      SatInt sub = best(next);
      if (sub > best_val) best_val = sub;
      if (best_val.is_inf()) break;
    }
    memo_.emplace(std::move(s), best_val);
    return best_val;
  }

 private:
  static constexpr size_t kMaxDepth = 20000;

  struct DepthScope {
    Game* g;
    explicit DepthScope(Game* game) : g(game) { ++g->depth_; }
    ~DepthScope() { --g->depth_; }
  };

  static void add_run(std::vector<std::pair<uint64_t, uint64_t>>& runs, uint64_t kappa,
                      uint64_t count) {
    for (auto& [k, c] : runs) {
      if (k == kappa) {
        SatInt sum = SatInt::of(c) + SatInt::of(count);
        c = sum.is_inf() ? SatInt::kCap : sum.value();
        return;
      }
    }
    runs.emplace_back(kappa, count);
    std::sort(runs.begin(), runs.end());
  }

  const GrowthFn& a_;
  size_t limit_;
  size_t visits_ = 0;
  size_t depth_ = 0;
  std::map<GameState, SatInt> memo_;
};

}  // namespace

SatInt game_max_bruteforce(const StatusVector& v, const GrowthFn& a, size_t state_limit) {
  if (!v.well_formed())
    throw std::invalid_argument("game_max_bruteforce: malformed status vector");
  GameState init;
  init.h = v.h;
  for (const PhiTerm& term : v.seq) {
    if (term.t == 0) continue;
    if (!init.runs.empty() && init.runs.back().first == term.kappa)
      init.runs.back().second += term.t;
    else
      init.runs.emplace_back(term.kappa, term.t);
  }
  Game game(a, state_limit);
  return game.best(std::move(init));
}

}  // namespace cogeom
