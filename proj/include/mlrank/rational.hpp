#ifndef MLRANK_RATIONAL_HPP
#define MLRANK_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mlrank/errors.hpp"

namespace mlrank {

// Exact rational with 64-bit numerator/denominator and 128-bit intermediates.
// All quantities in this project are desk-scale; overflow of the reduced
// representation is treated as an internal error rather than silently wrapped.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t n) : num_(n), den_(1) {}
  Rational(int64_t n, int64_t d) {
    check_internal(d != 0, "rational with zero denominator");
    reduce_from(n, d);
  }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    check_internal(b.num_ != 0, "rational division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    check_internal(d != 0, "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    check_internal(n <= INT64_MAX && n >= INT64_MIN && d <= INT64_MAX,
                   "rational overflow");
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void reduce_from(int64_t n, int64_t d) {
    Rational r = from128(n, d);
    num_ = r.num_;
    den_ = r.den_;
  }

  int64_t num_;
  int64_t den_;
};

// Unsigned big integer: just enough (mul / pow / compare) to clear
// denominators in inequalities between powers of small integers.
class BigUInt {
 public:
  BigUInt() : limbs_{0} {}
  explicit BigUInt(uint64_t v) { limbs_ = {uint32_t(v & 0xffffffffu), uint32_t(v >> 32)}; trim(); }

  static BigUInt pow(uint64_t base, uint64_t exp) {
    BigUInt r(1);
    BigUInt b(base);
    while (exp > 0) {
      if (exp & 1) r = r * b;
      b = b * b;
      exp >>= 1;
    }
    return r;
  }

  friend BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    BigUInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = uint64_t(a.limbs_[i]) * b.limbs_[j] + r.limbs_[i + j] + carry;
        r.limbs_[i + j] = uint32_t(cur & 0xffffffffu);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = uint64_t(r.limbs_[k]) + carry;
        r.limbs_[k] = uint32_t(cur & 0xffffffffu);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  // -1, 0, +1
  friend int cmp(const BigUInt& a, const BigUInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
  }
  friend bool operator<=(const BigUInt& a, const BigUInt& b) { return cmp(a, b) <= 0; }
  friend bool operator<(const BigUInt& a, const BigUInt& b) { return cmp(a, b) < 0; }
  friend bool operator==(const BigUInt& a, const BigUInt& b) { return cmp(a, b) == 0; }

 private:
  void trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<uint32_t> limbs_;  // little-endian base 2^32
};

}  // namespace mlrank

#endif
