#include "cogeom/iosim.hpp"

namespace cogeom {

std::string CostReport::csv_row() const {
  return std::to_string(io_count) + "," + std::to_string(comparisons) + "," +
         std::to_string(reads) + "," + std::to_string(writes) + "," +
         std::to_string(distinct_blocks);
}

namespace {
bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }
uint64_t log2_exact(uint64_t v) {
  uint64_t s = 0;
  while ((uint64_t{1} << s) < v) ++s;
  return s;
}
}  // namespace

Simulator::Simulator(const CostParams& params)
    : params_(params),
      block_shift_(is_pow2(params.block_words) ? log2_exact(params.block_words) : 0) {
  arrays_.emplace_back();  // id 0 unused
}

SimArray Simulator::alloc(uint64_t elements, uint32_t width) {
  if (width < 1 || width > 4) throw std::invalid_argument("alloc: width out of range");
  // Block-aligned so that sequential scans meet the compulsory-miss count.
  uint64_t base = bump_;
  uint64_t b = params_.block_words;
  base = (base + b - 1) / b * b;
  uint64_t words = elements * width;
  bump_ = base + words;
  if (bump_ > words_.size()) {
    words_.resize(bump_, 0);
    blocks_.resize((bump_ + b - 1) / b);
  }
  SimArray arr;
  arr.id = arrays_.size();
  arr.base = base;
  arr.length = elements;
  arr.width = width;
  arrays_.push_back(ArrayRec{base, words, true});
  return arr;
}

void Simulator::free(const SimArray& arr) {
  if (arr.id >= arrays_.size() || !arrays_[arr.id].alive)
    throw std::logic_error("free: dead or unknown array");
  ArrayRec& rec = arrays_[arr.id];
  if (arr.base != rec.base || arr.length * arr.width != rec.words)
    throw std::logic_error("free: only root handles may be freed");
  rec.alive = false;
  // reclaim when this was the most recent allocation
  if (rec.base + rec.words == bump_) bump_ = rec.base;
}

void Simulator::check_access(const SimArray& arr, uint64_t index) const {
  if (arr.id >= arrays_.size() || !arrays_[arr.id].alive)
    throw std::logic_error("sim access through dead array handle");
  if (index >= arr.length) throw std::out_of_range("sim array index out of bounds");
}

void Simulator::touch_word(uint64_t addr) {
  uint64_t bid = block_shift_ ? (addr >> block_shift_) : (addr / params_.block_words);
  if (trace_) trace_->push_back(bid);
  Block& blk = blocks_[bid];
  int64_t id = static_cast<int64_t>(bid);
  if (blk.resident) {
    if (lru_head_ == id) return;
    // unlink
    if (blk.prev >= 0) blocks_[blk.prev].next = blk.next;
    if (blk.next >= 0) blocks_[blk.next].prev = blk.prev;
    if (lru_tail_ == id) lru_tail_ = blk.prev;
  } else {
    ++counters_.io_count;
    if (!blk.touched) {
      blk.touched = true;
      ++counters_.distinct_blocks;
    }
    blk.resident = true;
    ++resident_;
    if (resident_ > params_.m()) {
      Block& victim = blocks_[lru_tail_];
      victim.resident = false;
      int64_t vp = victim.prev;
      victim.prev = victim.next = -1;
      blocks_[vp].next = -1;
      lru_tail_ = vp;
      --resident_;
    }
  }
  // link at head
  blk.prev = -1;
  blk.next = lru_head_;
  if (lru_head_ >= 0) blocks_[lru_head_].prev = id;
  lru_head_ = id;
  if (lru_tail_ < 0) lru_tail_ = id;
}

void Simulator::read_elem(const SimArray& arr, uint64_t index, int64_t* out) {
  check_access(arr, index);
  uint64_t addr = arr.base + index * arr.width;
  uint64_t last_bid = ~uint64_t{0};
  for (uint32_t w = 0; w < arr.width; ++w) {
    uint64_t a = addr + w;
    uint64_t bid = block_shift_ ? (a >> block_shift_) : (a / params_.block_words);
    if (bid != last_bid) {
      touch_word(a);
      last_bid = bid;
    }
    out[w] = words_[a];
  }
  ++counters_.reads;
}

void Simulator::write_elem(const SimArray& arr, uint64_t index, const int64_t* in) {
  check_access(arr, index);
  uint64_t addr = arr.base + index * arr.width;
  uint64_t last_bid = ~uint64_t{0};
  for (uint32_t w = 0; w < arr.width; ++w) {
    uint64_t a = addr + w;
    uint64_t bid = block_shift_ ? (a >> block_shift_) : (a / params_.block_words);
    if (bid != last_bid) {
      touch_word(a);
      last_bid = bid;
    }
    words_[a] = in[w];
  }
  ++counters_.writes;
}

}  // namespace cogeom
