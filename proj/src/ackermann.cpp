#include "cogeom/ackermann.hpp"

#include <stdexcept>

namespace cogeom {

SatInt ack(int level, SatInt n) {
  if (n.is_inf()) return SatInt::inf();
  if (level == 0) return n;
  if (level == 1) return pow2(n);
  // A_level(n) = A_{level-1} applied (n+1) times starting from n. The inner
  // level is >= 1, so each application at least exponentiates; once the value
  // saturates it stays saturated and the loop can stop.
  SatInt r = n;
  uint64_t reps = n.value();  // n is finite here
  for (uint64_t k = 0; k <= reps; ++k) {
    r = ack(level - 1, r);
    if (r.is_inf()) break;
  }
  return r;
}

SatInt ack_at(int level, uint64_t n) {
  if (n == 0) return SatInt::of(level >= 1 ? 1 : 0);
  return ack(level, SatInt::of(n));
}

uint64_t lambda_inv(int level, uint64_t x) {
  if (x == 0) throw std::invalid_argument("lambda_inv: x must be >= 1");
  if (level == 0) return x;  // A_0(N) = N, and A_0(0) = 0 < 1 <= x
  for (uint64_t n = 0;; ++n) {
    if (ack_at(level, n) >= SatInt::of(x)) return n;
  }
}

int alpha_inv(uint64_t n, uint64_t x) {
  if (n == 0 || x == 0) throw std::invalid_argument("alpha_inv: n, x must be >= 1");
  for (int i = 0;; ++i) {
    if (ack(i, SatInt::of(n)) >= SatInt::of(x)) return i;
  }
}

GrowthFn GrowthFn::ack_level(int level) {
  if (level < 1) throw std::invalid_argument("GrowthFn::ack_level: level must be >= 1");
  GrowthFn f;
  f.kind_ = Kind::kAckLevel;
  f.param_ = static_cast<uint64_t>(level);
  f.name_ = "ack:" + std::to_string(level);
  return f;
}

GrowthFn GrowthFn::add_const(uint64_t c) {
  if (c < 1) throw std::invalid_argument("GrowthFn::add_const: c must be >= 1");
  GrowthFn f;
  f.kind_ = Kind::kAddConst;
  f.param_ = c;
  f.name_ = c == 1 ? std::string("inc") : "inc" + std::to_string(c);
  return f;
}

GrowthFn GrowthFn::mul_const(uint64_t c) {
  if (c < 2) throw std::invalid_argument("GrowthFn::mul_const: c must be >= 2");
  GrowthFn f;
  f.kind_ = Kind::kMulConst;
  f.param_ = c;
  f.name_ = c == 2 ? std::string("dbl") : "mul" + std::to_string(c);
  return f;
}

GrowthFn GrowthFn::constant(uint64_t c) {
  if (c < 1) throw std::invalid_argument("GrowthFn::constant: c must be >= 1");
  GrowthFn f;
  f.kind_ = Kind::kConstant;
  f.param_ = c;
  f.name_ = "const" + std::to_string(c);
  return f;
}

GrowthFn GrowthFn::parse(const std::string& text) {
  if (text == "inc") return add_const(1);
  if (text.rfind("const:", 0) == 0) return constant(std::stoull(text.substr(6)));
  if (text == "inc2") return add_const(2);
  if (text == "dbl") return mul_const(2);
  if (text.rfind("ack:", 0) == 0) return ack_level(std::stoi(text.substr(4)));
  throw std::invalid_argument("unknown growth function: " + text);
}

SatInt GrowthFn::operator()(SatInt x) const {
  switch (kind_) {
    case Kind::kAckLevel:
      return ack(static_cast<int>(param_), x);
    case Kind::kAddConst:
      return x + SatInt::of(param_);
    case Kind::kMulConst:
      return x * SatInt::of(param_);
    case Kind::kConstant:
      return SatInt::of(param_);
  }
  return SatInt::inf();
}

SatInt GrowthFn::iterate(SatInt x, uint64_t times) const {
  if (times == 0 || x.is_inf()) return x;
  switch (kind_) {
    case Kind::kAddConst:
      return x + SatInt::of(times) * SatInt::of(param_);
    case Kind::kMulConst: {
      SatInt factor = SatInt::of(1);
      for (uint64_t i = 0; i < times && !factor.is_inf(); ++i)
        factor = factor * SatInt::of(param_);
      return x * factor;
    }
    case Kind::kAckLevel:
      // x >= 1 at least exponentiates per application; saturation is a few
      // steps away regardless of `times`
      for (uint64_t i = 0; i < times && !x.is_inf(); ++i)
        x = ack(static_cast<int>(param_), x);
      return x;
    case Kind::kConstant:
      return SatInt::of(param_);
  }
  return SatInt::inf();
}

}  // namespace cogeom
