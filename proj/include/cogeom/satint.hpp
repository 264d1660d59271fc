#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace cogeom {

/// Saturating nonnegative integer. Any arithmetic result exceeding 2^63 - 1
/// collapses to a distinguished infinity that absorbs further arithmetic and
/// compares greater than every finite value. Ackermann-scale quantities only
/// need order and threshold behavior, which saturation preserves: a saturated
/// value really is >= any finite threshold we compare against.
class SatInt {
 public:
  static constexpr uint64_t kCap = (uint64_t{1} << 63) - 1;

  constexpr SatInt() : v_(0) {}

  static constexpr SatInt of(uint64_t v) {
    SatInt s;
    s.v_ = v > kCap ? kInfRep : v;
    return s;
  }
  static constexpr SatInt inf() {
    SatInt s;
    s.v_ = kInfRep;
    return s;
  }

  constexpr bool is_inf() const { return v_ == kInfRep; }
  constexpr uint64_t value() const {
    assert(!is_inf());
    return v_;
  }
  /// Finite value, or UINT64_MAX as the infinity sentinel (for ordering keys).
  constexpr uint64_t raw() const { return v_; }

  friend constexpr SatInt operator+(SatInt a, SatInt b) {
    if (a.is_inf() || b.is_inf()) return inf();
    if (a.v_ > kCap - b.v_) return inf();
    return of(a.v_ + b.v_);
  }
  friend constexpr SatInt operator*(SatInt a, SatInt b) {
    if (a.is_inf() || b.is_inf()) return inf();
    if (a.v_ != 0 && b.v_ > kCap / a.v_) return inf();
    return of(a.v_ * b.v_);
  }
  /// 2^x, saturating (2^63 already exceeds the cap).
  friend constexpr SatInt pow2(SatInt x) {
    if (x.is_inf() || x.v_ >= 63) return inf();
    return of(uint64_t{1} << x.v_);
  }

  friend constexpr bool operator==(SatInt a, SatInt b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(SatInt a, SatInt b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(SatInt a, SatInt b) {
    if (a.is_inf()) return false;
    if (b.is_inf()) return true;
    return a.v_ < b.v_;
  }
  friend constexpr bool operator<=(SatInt a, SatInt b) { return a == b || a < b; }
  friend constexpr bool operator>(SatInt a, SatInt b) { return b < a; }
  friend constexpr bool operator>=(SatInt a, SatInt b) { return b <= a; }

  std::string to_string() const { return is_inf() ? "inf" : std::to_string(v_); }

 private:
  static constexpr uint64_t kInfRep = ~uint64_t{0};
  uint64_t v_;
};

}  // namespace cogeom
