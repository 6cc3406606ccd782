#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hamdec {

// Exact rational arithmetic on 64-bit integers.  Expansion thresholds and
// tour weights must be compared exactly, so every operation runs through
// 128-bit intermediates and throws instead of silently wrapping.  The
// quantities in this codebase (thresholds like 1/20, weight sums over a few
// thousand edges with small denominators) stay far below the limits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) { assign(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  Rational operator+(const Rational& o) const {
    return from128(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return from128(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return from128(i128(num_) * o.num_, i128(den_) * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(i128(num_) * o.den_, i128(den_) * o.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
  bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // Smallest integer >= *this.  Used for the robust-neighbourhood threshold:
  // "at least nu*n" keeps exact ties when nu*n is integral.
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a", "a/b", optional leading minus.
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      long long n = std::stoll(text.substr(0, slash));
      long long d = std::stoll(text.substr(slash + 1));
      return Rational(n, d);
    } catch (const std::domain_error&) {
      throw;  // "1/0" is well formed; the zero denominator is the problem
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed rational: '" + text + "'");
    }
  }

 private:
  using i128 = __int128;

  void assign(long long num, long long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    num_ = num;
    den_ = den == 0 ? 1 : den;
  }

  static Rational from128(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i128 a = num < 0 ? -num : num, b = den;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { num /= a; den /= a; }
    const i128 lo = INT64_MIN, hi = INT64_MAX;
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("rational arithmetic overflow");
    Rational r;
    r.num_ = (long long)num;
    r.den_ = (long long)den;
    return r;
  }

  long long num_;
  long long den_;
};

}  // namespace hamdec
