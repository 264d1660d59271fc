#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogeom/costmodel.hpp"

namespace cogeom {

/// Counter snapshot. io_count is block transfers under LRU; comparisons is
/// the number of predicate evaluations on simulated data; reads/writes count
/// element touches; distinct_blocks is the compulsory-miss floor.
struct CostReport {
  uint64_t io_count = 0;
  uint64_t comparisons = 0;
  uint64_t reads = 0;
  uint64_t writes = 0;
  uint64_t distinct_blocks = 0;

  static const char* csv_header() {
    return "io_count,comparisons,reads,writes,distinct_blocks";
  }
  std::string csv_row() const;
};

/// Handle to a simulator-backed array: `length` elements of `width` words
/// starting at word offset `base`. Slices share the id of their root
/// allocation; only root handles may be freed.
struct SimArray {
  uint64_t id = 0;
  uint64_t base = 0;
  uint64_t length = 0;
  uint32_t width = 1;

  SimArray slice(uint64_t offset, uint64_t count) const {
    if (offset + count > length) throw std::out_of_range("SimArray::slice out of range");
    SimArray s = *this;
    s.base = base + offset * width;
    s.length = count;
    return s;
  }
};

/// External-memory simulator: a word-addressed backing store behind a fully
/// associative LRU cache of m = M/B blocks of B words. Every element access
/// through a live SimArray loads absent blocks (one I/O each, evicting the
/// least recently used block when full) and refreshes recency. Algorithm
/// control state (loop counters, O(1) locals) is never charged; only
/// declared arrays are.
///
/// One instance is strictly single-threaded; independent instances may run
/// on different threads.
class Simulator {
 public:
  explicit Simulator(const CostParams& params);

  const CostParams& params() const { return params_; }

  SimArray alloc(uint64_t elements, uint32_t width);
  void free(const SimArray& arr);

  /// Element read/write: touches the element's words, counts one element
  /// touch. Out-of-bounds or dead-array access is a hard fault (throw).
  void read_elem(const SimArray& arr, uint64_t index, int64_t* out);
  void write_elem(const SimArray& arr, uint64_t index, const int64_t* in);

  /// One geometric predicate evaluated on simulated data.
  void count_comparison() { ++counters_.comparisons; }

  CostReport snapshot() const { return counters_; }

  /// Block id trace hook for the reference-LRU replay tests: when enabled,
  /// every touched block id is appended to `trace`.
  void set_trace(std::vector<uint64_t>* trace) { trace_ = trace; }

 private:
  struct Block {
    int64_t prev = -1;
    int64_t next = -1;
    bool resident = false;
    bool touched = false;
  };
  struct ArrayRec {
    uint64_t base = 0;
    uint64_t words = 0;
    bool alive = false;
  };

  void touch_word(uint64_t addr);
  void check_access(const SimArray& arr, uint64_t index) const;

  CostParams params_;
  uint64_t block_shift_;  // valid when block size is a power of two, else 0
  std::vector<int64_t> words_;
  std::vector<Block> blocks_;
  std::vector<ArrayRec> arrays_;
  int64_t lru_head_ = -1;  // most recent
  int64_t lru_tail_ = -1;  // least recent
  uint64_t resident_ = 0;
  uint64_t bump_ = 0;
  CostReport counters_;
  std::vector<uint64_t>* trace_ = nullptr;
};

/// Typed element codecs over the raw word store.
template <class T>
struct SimTraits;

template <>
struct SimTraits<int64_t> {
  static constexpr uint32_t kWidth = 1;
  static int64_t decode(const int64_t* w) { return w[0]; }
  static void encode(int64_t v, int64_t* w) { w[0] = v; }
};

/// Typed view over a SimArray. Copyable; copies alias the same storage.
template <class T>
class SimVec {
 public:
  SimVec() = default;
  SimVec(Simulator& sim, const SimArray& arr) : sim_(&sim), arr_(arr) {}

  static SimVec alloc(Simulator& sim, uint64_t n) {
    return SimVec(sim, sim.alloc(n, SimTraits<T>::kWidth));
  }

  uint64_t size() const { return arr_.length; }
  const SimArray& handle() const { return arr_; }
  Simulator& sim() const { return *sim_; }

  T get(uint64_t i) const {
    int64_t w[4];
    sim_->read_elem(arr_, i, w);
    return SimTraits<T>::decode(w);
  }
  void set(uint64_t i, const T& v) {
    int64_t w[4];
    SimTraits<T>::encode(v, w);
    sim_->write_elem(arr_, i, w);
  }
  void swap_elems(uint64_t i, uint64_t j) {
    if (i == j) return;
    T a = get(i), b = get(j);
    set(i, b);
    set(j, a);
  }

  SimVec slice(uint64_t offset, uint64_t count) const {
    return SimVec(*sim_, arr_.slice(offset, count));
  }
  void free() { sim_->free(arr_); }

 private:
  Simulator* sim_ = nullptr;
  SimArray arr_;
};

}  // namespace cogeom
