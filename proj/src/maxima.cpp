#include "cogeom/maxima.hpp"

#include <stdexcept>

namespace cogeom {

uint64_t initial_seed(SeedPolicy policy, uint64_t s, uint64_t n, const CostParams& params) {
  switch (policy) {
    case SeedPolicy::kConstant:
      return s;
    case SeedPolicy::kLambdaOfN:
      return lambda_inv(static_cast<int>(s), n);
    case SeedPolicy::kLambdaOfM:
      return lambda_inv(static_cast<int>(s), params.m());
    case SeedPolicy::kRandomized:
      return 2;
  }
  throw std::invalid_argument("initial_seed: bad policy");
}

const char* seed_policy_name(SeedPolicy p) {
  switch (p) {
    case SeedPolicy::kConstant:
      return "const";
    case SeedPolicy::kLambdaOfN:
      return "lambda_n";
    case SeedPolicy::kLambdaOfM:
      return "lambda_m";
    case SeedPolicy::kRandomized:
      return "rand";
  }
  return "?";
}

SeedPolicy parse_seed_policy(const std::string& text) {
  if (text == "const") return SeedPolicy::kConstant;
  if (text == "lambda_n") return SeedPolicy::kLambdaOfN;
  if (text == "lambda_m") return SeedPolicy::kLambdaOfM;
  if (text == "rand") return SeedPolicy::kRandomized;
  throw std::invalid_argument("unknown seed policy: " + text);
}

std::vector<uint64_t> prune_buckets(SimVec<Point> pts, const BucketLayout& layout) {
  SimMaximaView view(pts);
  return prune_buckets_view(view, layout.offsets);
}

namespace {

MaximaResult run_common(Simulator& sim, SimVec<Point> pts, uint64_t h0, SplitMix64* rng,
                        const MaximaTrace* trace) {
  if (pts.size() == 0) throw std::invalid_argument("maxima: empty input");
  if (h0 < 1) h0 = 1;

  // exact duplicates need no pre-pass: rank splitting separates equal keys,
  // and of the copies of a maximal point only the rightmost-processed one
  // survives the running-max prune (its twins fail the strict y test)
  SimMaximaView view(pts);
  MaximaEngine<SimMaximaView> engine(view, rng, trace);
  std::vector<Point> maxima = engine.run(0, pts.size(), h0);

  SimVec<Point> out = SimVec<Point>::alloc(sim, maxima.size());
  for (uint64_t i = 0; i < maxima.size(); ++i) out.set(i, maxima[i]);

  MaximaResult res;
  res.maxima = std::move(maxima);
  res.h0 = h0;
  res.report = sim.snapshot();
  return res;
}

}  // namespace

MaximaResult maxima_det(Simulator& sim, SimVec<Point> pts, uint64_t h0,
                        const MaximaTrace* trace) {
  return run_common(sim, pts, h0, nullptr, trace);
}

MaximaResult maxima_rand(Simulator& sim, SimVec<Point> pts, uint64_t rng_seed,
                         const MaximaTrace* trace) {
  SplitMix64 rng(rng_seed);
  return run_common(sim, pts, 2, &rng, trace);
}

MaximaResult run_maxima(Simulator& sim, SimVec<Point> pts, const AlgoConfig& cfg,
                        const MaximaTrace* trace) {
  if (cfg.policy == SeedPolicy::kRandomized)
    return maxima_rand(sim, pts, cfg.rng_seed, trace);
  uint64_t h0 = initial_seed(cfg.policy, cfg.s, pts.size(), sim.params());
  return maxima_det(sim, pts, h0, trace);
}

}  // namespace cogeom
