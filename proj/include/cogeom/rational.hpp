#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cogeom {

using int128 = __int128;
using uint128 = unsigned __int128;

namespace detail {

/// 256-bit little-endian magnitude, just enough for exact cross-multiplied
/// comparisons of 128-bit rationals and the log2 mantissa squaring.
struct U256 {
  uint64_t w[4];
};

inline U256 umul256(uint128 a, uint128 b) {
  const uint64_t a0 = static_cast<uint64_t>(a), a1 = static_cast<uint64_t>(a >> 64);
  const uint64_t b0 = static_cast<uint64_t>(b), b1 = static_cast<uint64_t>(b >> 64);
  const uint128 p00 = uint128(a0) * b0;
  const uint128 p01 = uint128(a0) * b1;
  const uint128 p10 = uint128(a1) * b0;
  const uint128 p11 = uint128(a1) * b1;
  U256 r{};
  r.w[0] = static_cast<uint64_t>(p00);
  uint128 mid = (p00 >> 64) + static_cast<uint64_t>(p01) + static_cast<uint64_t>(p10);
  r.w[1] = static_cast<uint64_t>(mid);
  uint128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + static_cast<uint64_t>(p11);
  r.w[2] = static_cast<uint64_t>(hi);
  r.w[3] = static_cast<uint64_t>((hi >> 64) + (p11 >> 64));
  return r;
}

inline int ucmp256(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
  }
  return 0;
}

/// Bit b (0-based) of a 256-bit value.
inline int bit256(const U256& a, int b) { return (a.w[b / 64] >> (b % 64)) & 1; }

/// Extract bits [lo, lo+128) as a uint128 (i.e. (a >> lo) truncated).
inline uint128 extract128(const U256& a, int lo) {
  const int word = lo / 64, off = lo % 64;
  auto get = [&](int i) -> uint64_t { return i < 4 ? a.w[i] : 0; };
  uint64_t lo64 = off == 0 ? get(word) : (get(word) >> off) | (get(word + 1) << (64 - off));
  uint64_t hi64 =
      off == 0 ? get(word + 1) : (get(word + 1) >> off) | (get(word + 2) << (64 - off));
  return (uint128(hi64) << 64) | lo64;
}

inline uint128 ugcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

/// Exact rational on 128-bit integers, normalized (den > 0, reduced).
/// Magnitudes here stay far below 2^110; products are overflow-asserted and
/// comparisons cross-multiply through 256 bits so they are always exact.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(int128 num, int128 den) : num_(num), den_(den) { normalize(); }
  static Rat of(int64_t v) { return Rat(v, 1); }

  int128 num() const { return num_; }
  int128 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    // lcm-style addition keeps repeated sums over a shared denominator flat
    int128 g = static_cast<int128>(detail::ugcd128(uabs(a.den_), uabs(b.den_)));
    int128 bs = b.den_ / g, as = a.den_ / g;
    return Rat(checked_mul(a.num_, bs) + checked_mul(b.num_, as),
               checked_mul(a.den_, bs));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    int128 g = static_cast<int128>(detail::ugcd128(uabs(a.den_), uabs(b.den_)));
    int128 bs = b.den_ / g, as = a.den_ / g;
    return Rat(checked_mul(a.num_, bs) - checked_mul(b.num_, as),
               checked_mul(a.den_, bs));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    // cross-reduce before multiplying to keep magnitudes down
    int128 an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
    reduce_pair(an, bd);
    reduce_pair(bn, ad);
    return Rat(checked_mul(an, bn), checked_mul(ad, bd));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return a * Rat(b.den_, b.num_);
  }

  /// Exact three-way comparison via 256-bit cross multiplication.
  friend int cmp(const Rat& a, const Rat& b) {
    const bool an = a.num_ < 0, bn = b.num_ < 0;
    if (an != bn) return an ? -1 : 1;
    detail::U256 l = detail::umul256(uabs(a.num_), static_cast<uint128>(b.den_));
    detail::U256 r = detail::umul256(uabs(b.num_), static_cast<uint128>(a.den_));
    int c = detail::ucmp256(l, r);
    return an ? -c : c;
  }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }
  std::string to_string() const;

 private:
  static uint128 uabs(int128 v) {
    return v < 0 ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
  }
  static int128 checked_mul(int128 a, int128 b) {
    if (a == 0 || b == 0) return 0;
    uint128 m = uabs(a), n = uabs(b);
    constexpr uint128 kMax = ~uint128{0} >> 1;  // 2^127 - 1
    if (m > kMax / n) throw std::overflow_error("Rat: 128-bit overflow");
    int128 r = static_cast<int128>(m * n);
    return ((a < 0) != (b < 0)) ? -r : r;
  }
  static void reduce_pair(int128& a, int128& b) {
    uint128 g = detail::ugcd128(uabs(a), uabs(b));
    if (g > 1) {
      a /= static_cast<int128>(g);
      b /= static_cast<int128>(g);
    }
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    reduce_pair(num_, den_);
  }

  int128 num_;
  int128 den_;
};

std::string int128_to_string(int128 v);

}  // namespace cogeom
