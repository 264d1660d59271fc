#pragma once

#include <cstdint>
#include <functional>

#include "cogeom/satint.hpp"

namespace cogeom {

/// The tower hierarchy A_0(N) = N, A_1(N) = 2^N, A_{i+1}(N) = A_i applied
/// (N+1) times starting from N. Values saturate (SatInt), which keeps every
/// inverse query below 2^63 mathematically exact: a saturated result is
/// genuinely larger than any representable threshold.
SatInt ack(int level, SatInt n);

/// A_i(n) with the convention A_i(0) = 1 for i >= 1 (A_0(0) = 0). The
/// hierarchy itself is only defined for n >= 1; the n = 0 convention makes
/// the argument-wise inverse total at x = 1.
SatInt ack_at(int level, uint64_t n);

/// Argument-wise inverse: smallest N >= 0 with ack_at(level, N) >= x.
uint64_t lambda_inv(int level, uint64_t x);

/// Level-wise inverse: smallest i >= 0 with A_i(N) >= x.
int alpha_inv(uint64_t n, uint64_t x);

/// A strictly increasing SatInt -> SatInt map. The potential recursion and
/// the adversary growth schedule take one of these so that the tower levels
/// (which saturate almost immediately) can be swapped for small surrogates
/// in exhaustive checks.
class GrowthFn {
 public:
  static GrowthFn ack_level(int level);        // x -> A_level(x)
  static GrowthFn add_const(uint64_t c);       // x -> x + c, c >= 1
  static GrowthFn mul_const(uint64_t c);       // x -> c * x, c >= 2
  /// x -> c. Nondecreasing but not strictly increasing: valid as an
  /// adversary growth schedule, not for the potential recursion.
  static GrowthFn constant(uint64_t c);
  /// Parses "inc", "inc2", "dbl", "const:<c>", or "ack:<level>".
  static GrowthFn parse(const std::string& text);

  SatInt operator()(SatInt x) const;
  /// t-fold application, fast-forwarded through the closed form where one
  /// exists (x + tc for additive maps, x * c^t for multiplicative ones;
  /// tower maps saturate within a handful of steps anyway).
  SatInt iterate(SatInt x, uint64_t times) const;
  const std::string& name() const { return name_; }

 private:
  GrowthFn() = default;
  enum class Kind { kAckLevel, kAddConst, kMulConst, kConstant };
  Kind kind_ = Kind::kAddConst;
  uint64_t param_ = 1;
  std::string name_;
};

}  // namespace cogeom
