#pragma once

#include <cstdint>
#include <stdexcept>

#include "cogeom/rational.hpp"

namespace cogeom {

/// Two-level memory parameters: internal memory of M words, blocks of B
/// words, with m = M/B cache blocks and n(N) = N/B blocks for an N-word
/// input. All counts are in words; callers working in multi-word elements
/// pass element_count * element_width.
struct CostParams {
  uint64_t mem_words = 0;    // M
  uint64_t block_words = 0;  // B

  CostParams() = default;
  CostParams(uint64_t mem, uint64_t block) : mem_words(mem), block_words(block) {
    if (block_words < 1) throw std::invalid_argument("CostParams: B must be >= 1");
    if (mem_words < 2 * block_words)
      throw std::invalid_argument("CostParams: M must be >= 2B");
    if (mem_words % block_words != 0)
      throw std::invalid_argument("CostParams: M must be a multiple of B");
  }

  uint64_t m() const { return mem_words / block_words; }
};

/// Deterministic dyadic approximation of log2(p/q), scaled by 2^64.
/// Computed by the classic squaring bit-extraction with a 120-bit mantissa
/// (squared through 256 bits), so the absolute error is below 2^-50 on any
/// platform; exact for p/q a power of two.
int128 log2_q64(uint64_t p, uint64_t q);

/// Scan(N) = n = N/B, as an exact rational.
Rat scan_cost(uint64_t n_words, const CostParams& p);

/// Sort(N) = n * log_m n, floored at Scan(N).
Rat sort_cost(uint64_t n_words, const CostParams& p);

/// Distr(N, k) = n * max{1, log_m k}; equals Scan(N) exactly when k <= m.
Rat distr_cost(uint64_t n_words, uint64_t k, const CostParams& p);

}  // namespace cogeom
