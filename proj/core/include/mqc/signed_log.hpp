#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mqc/big_count.hpp"

namespace mqc {

/// A real number stored as (sign, natural log of magnitude). Multiplication
/// adds logs, addition goes through log-sum-exp with sign resolution, so
/// values like e^{-10^4} survive where a double would flush to zero.
///
/// Exact zero is sign == 0 (log_mag is meaningless then); every operation
/// tolerates zero operands without -inf arithmetic.
class SignedLog {
 public:
  constexpr SignedLog() = default;

  static constexpr SignedLog zero() { return SignedLog(); }
  static constexpr SignedLog one() { return SignedLog(+1, 0.0); }

  static SignedLog from_value(double v) {
    if (v == 0.0) return zero();
    return SignedLog(v > 0.0 ? +1 : -1, std::log(std::abs(v)));
  }

  static SignedLog from_log(double log_mag, int sign = +1) {
    if (sign == 0) return zero();
    return SignedLog(sign, log_mag);
  }

  static SignedLog from_big(const BigCount& x) {
    if (x == 0) return zero();
    return SignedLog(+1, log_big(x));
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  /// log of |value|; -inf for zero.
  double log_mag() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_mag_;
  }

  /// Plain double; under/overflows to 0 or +-inf outside double range.
  double to_double() const {
    if (sign_ == 0) return 0.0;
    return sign_ * std::exp(log_mag_);
  }

  SignedLog operator-() const {
    return sign_ == 0 ? zero() : SignedLog(-sign_, log_mag_);
  }

  friend SignedLog operator*(const SignedLog& a, const SignedLog& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return zero();
    return SignedLog(a.sign_ * b.sign_, a.log_mag_ + b.log_mag_);
  }

  friend SignedLog operator+(const SignedLog& a, const SignedLog& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
      const double hi = std::max(a.log_mag_, b.log_mag_);
      const double lo = std::min(a.log_mag_, b.log_mag_);
      return SignedLog(a.sign_, hi + std::log1p(std::exp(lo - hi)));
    }
    if (a.log_mag_ == b.log_mag_) return zero();
    const SignedLog& big = a.log_mag_ > b.log_mag_ ? a : b;
    const SignedLog& small = a.log_mag_ > b.log_mag_ ? b : a;
    return SignedLog(big.sign_,
                     big.log_mag_ + std::log1p(-std::exp(small.log_mag_ - big.log_mag_)));
  }

  friend SignedLog operator-(const SignedLog& a, const SignedLog& b) { return a + (-b); }

  SignedLog squared() const {
    return sign_ == 0 ? zero() : SignedLog(+1, 2.0 * log_mag_);
  }

  SignedLog sqrt() const {
    if (sign_ == 0) return zero();
    if (sign_ < 0) throw std::domain_error("SignedLog::sqrt of negative value");
    return SignedLog(+1, 0.5 * log_mag_);
  }

  /// this * 2^k, exact in the log domain.
  SignedLog ldexp2(int k) const {
    return sign_ == 0 ? zero() : SignedLog(sign_, log_mag_ + k * std::numbers::ln2);
  }

  /// Signed comparison by actual value.
  friend bool value_less(const SignedLog& a, const SignedLog& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_mag_ < b.log_mag_ : a.log_mag_ > b.log_mag_;
  }

 private:
  constexpr SignedLog(int sign, double log_mag) : sign_(sign), log_mag_(log_mag) {}

  int sign_ = 0;
  double log_mag_ = 0.0;
};

/// b^k for b >= 0 without log(0) traps: b == 0 gives zero for k > 0, one for k == 0.
inline SignedLog pow_nonneg(double base, int k) {
  if (k == 0) return SignedLog::one();
  if (base == 0.0) return SignedLog::zero();
  return SignedLog::from_log(k * std::log(base));
}

}  // namespace mqc
