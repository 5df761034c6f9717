#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace spdpp::detail {

// Nonnegative real stored as mantissa * 2^exponent with the mantissa kept in
// [0.5, 1). Sums and products of positive terms never overflow or underflow.
class ScaledReal {
 public:
  ScaledReal() = default;
  explicit ScaledReal(double value) { assign(value, 0); }

  static ScaledReal one() { return ScaledReal(1.0); }

  bool is_zero() const { return mant_ == 0.0; }

  double log() const {
    if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(mant_) + static_cast<double>(exp_) * kLn2;
  }

  // Value as a double; may round to 0 or inf.
  double value() const { return std::ldexp(mant_, clamp_exp(exp_)); }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    ScaledReal out;
    out.assign(a.mant_ * b.mant_, a.exp_ + b.exp_);
    return out;
  }

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.mant_ == 0.0) return b;
    if (b.mant_ == 0.0) return a;
    const ScaledReal& hi = a.exp_ >= b.exp_ ? a : b;
    const ScaledReal& lo = a.exp_ >= b.exp_ ? b : a;
    const std::int64_t shift = lo.exp_ - hi.exp_;
    if (shift < -1100) return hi;
    ScaledReal out;
    out.assign(hi.mant_ + std::ldexp(lo.mant_, static_cast<int>(shift)),
               hi.exp_);
    return out;
  }

  ScaledReal& operator+=(const ScaledReal& other) {
    return *this = *this + other;
  }

  // a / b as a plain double (b nonzero).
  friend double ratio(const ScaledReal& a, const ScaledReal& b) {
    if (a.mant_ == 0.0) return 0.0;
    return std::ldexp(a.mant_ / b.mant_, clamp_exp(a.exp_ - b.exp_));
  }

 private:
  static constexpr double kLn2 = 0.69314718055994530942;

  static int clamp_exp(std::int64_t e) {
    if (e > 4096) return 4096;
    if (e < -4096) return -4096;
    return static_cast<int>(e);
  }

  void assign(double mant, std::int64_t exp) {
    if (mant == 0.0) {
      mant_ = 0.0;
      exp_ = 0;
      return;
    }
    int e = 0;
    mant_ = std::frexp(mant, &e);
    exp_ = exp + e;
  }

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

}  // namespace spdpp::detail
