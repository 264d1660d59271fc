#include "cogeom/costmodel.hpp"

#include <algorithm>

namespace cogeom {

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  uint128 u = neg ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

std::string Rat::to_string() const {
  std::string s = int128_to_string(num_);
  if (den_ != 1) s += "/" + int128_to_string(den_);
  return s;
}

namespace {

int bit_length(uint64_t v) {
  int b = 0;
  while (v != 0) {
    ++b;
    v >>= 1;
  }
  return b;
}

constexpr int kFracBits = 120;  // mantissa scale inside the extraction loop
constexpr int kOutBits = 64;    // extracted fraction bits

// floor((p << sh) / q) for a 64-bit p shifted into up to ~250 bits,
// divided limb-by-limb by a 64-bit q. Result is known to fit 128 bits.
uint128 shifted_div(uint64_t p, int sh, uint64_t q) {
  detail::U256 a{};
  const int word = sh / 64, off = sh % 64;
  a.w[word] |= off == 0 ? p : (p << off);
  if (off != 0 && word + 1 < 4) a.w[word + 1] |= p >> (64 - off);
  uint128 rem = 0;
  uint64_t out[4] = {0, 0, 0, 0};
  for (int i = 3; i >= 0; --i) {
    uint128 cur = (rem << 64) | a.w[i];
    out[i] = static_cast<uint64_t>(cur / q);
    rem = cur % q;
  }
  return (uint128(out[1]) << 64) | out[0];
}

}  // namespace

int128 log2_q64(uint64_t p, uint64_t q) {
  if (p == 0 || q == 0) throw std::domain_error("log2_q64: arguments must be positive");
  // Normalize p/q into [1, 2) * 2^e.
  int e = bit_length(p) - bit_length(q);
  // Adjust so that 2^e <= p/q < 2^{e+1}.
  auto ge_pow2 = [&](int k) {
    // p/q >= 2^k ?
    if (k >= 0) return uint128(p) >= (uint128(q) << k);
    return (uint128(p) << -k) >= uint128(q);
  };
  if (!ge_pow2(e)) --e;
  if (ge_pow2(e + 1)) ++e;
  // mantissa m = floor((p/q) / 2^e * 2^kFracBits), in [2^120, 2^121)
  uint128 m = shifted_div(p, kFracBits - e, q);
  uint128 frac = 0;
  for (int j = 0; j < kOutBits; ++j) {
    detail::U256 sq = detail::umul256(m, m);
    int bit = detail::bit256(sq, 2 * kFracBits + 1);  // squared value >= 2 ?
    frac = (frac << 1) | static_cast<unsigned>(bit);
    m = detail::extract128(sq, kFracBits + bit);
  }
  return (int128(e) << kOutBits) + static_cast<int128>(frac);
}

Rat scan_cost(uint64_t n_words, const CostParams& p) {
  if (n_words < 1) throw std::invalid_argument("scan_cost: N must be >= 1");
  return Rat(static_cast<int128>(n_words), static_cast<int128>(p.block_words));
}

Rat sort_cost(uint64_t n_words, const CostParams& p) {
  Rat scan = scan_cost(n_words, p);
  if (n_words <= p.block_words) return scan;  // n <= 1
  // log_m(n) = (log2 N - log2 B) / log2 m, dyadic over a common 2^64 scale.
  int128 l2n = log2_q64(n_words, p.block_words);
  int128 l2m = log2_q64(p.m(), 1);
  Rat factor(l2n, l2m);
  return Rat::max(scan, scan * factor);
}

Rat distr_cost(uint64_t n_words, uint64_t k, const CostParams& p) {
  if (k < 1) throw std::invalid_argument("distr_cost: k must be >= 1");
  Rat scan = scan_cost(n_words, p);
  if (k <= p.m()) return scan;  // max{1, log_m k} = 1, exactly
  int128 l2k = log2_q64(k, 1);
  int128 l2m = log2_q64(p.m(), 1);
  return scan * Rat(l2k, l2m);
}

}  // namespace cogeom
