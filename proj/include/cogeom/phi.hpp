#pragma once

#include <cstdint>
#include <vector>

#include "cogeom/ackermann.hpp"
#include "cogeom/satint.hpp"

namespace cogeom {

/// One run of top nodes in a status vector: t nodes whose points hold
/// potential kappa (kappa = remaining charge headroom).
struct PhiTerm {
  uint64_t t = 0;
  uint64_t kappa = 1;
};

/// (h; (t1,k1),(t2,k2),...) with kappa values positive and nondecreasing.
/// h counts top nodes already settled; the sequence lists live runs.
struct StatusVector {
  uint64_t h = 1;
  std::vector<PhiTerm> seq;

  StatusVector() = default;
  StatusVector(uint64_t h_, std::vector<PhiTerm> s) : h(h_), seq(std::move(s)) {}
  bool well_formed() const;
};

/// Potential of a status vector under the growth map A:
///   phi(h; ())            = h
///   phi(h; (0,k), S)      = phi(h; S)
///   phi(h; (t,1), S)      = phi(A(h); (t-1,1), S)
///   phi(h; (t,k), S)      = phi(A(h); (A(h),k-1), (t-1,k), S)   for k > 1
/// Saturating: once h hits infinity the result is infinity (phi never
/// decreases h). Throws on malformed input or when the evaluation exceeds
/// an internal step budget (possible only for inputs far outside the scale
/// anything in this project evaluates).
SatInt phi(const StatusVector& v, const GrowthFn& a);

/// Exhaustive resolution game over the same state space: a move picks any
/// live node of potential k, replaces the settled count h by A(h), and (for
/// k > 1) spawns A(h) live nodes of potential k-1. Explores every resolution
/// order and returns the maximum settled count reachable. Independent check
/// that phi's least-potential-first order is maximal.
/// Throws if the number of distinct explored states exceeds state_limit.
SatInt game_max_bruteforce(const StatusVector& v, const GrowthFn& a,
                           size_t state_limit = 10000);

}  // namespace cogeom
