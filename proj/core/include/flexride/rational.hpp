#ifndef FLEXRIDE_RATIONAL_HPP
#define FLEXRIDE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace flexride {

/// Exact rational over 64-bit integers, normalized (gcd 1, positive
/// denominator). Values in this project stay small; multiplications go
/// through 128-bit intermediates so comparisons never overflow.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  /// Parses "3", "-2.5", "0.125". Fractional digits are capped at 9.
  static Rational from_decimal(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::invalid_argument("Rational: divide by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ <
           static_cast<__int128>(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  /// "3", "-7/2".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::from_decimal(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("Rational: empty literal");
  bool neg = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; pos = 1; }
  std::int64_t whole = 0, frac = 0, scale = 1;
  bool saw_digit = false, in_frac = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (in_frac) throw std::invalid_argument("Rational: bad literal " + text);
      in_frac = true;
      continue;
    }
    if (c < '0' || c > '9')
      throw std::invalid_argument("Rational: bad literal " + text);
    saw_digit = true;
    if (in_frac) {
      if (scale >= 1000000000) throw std::invalid_argument("Rational: too many fractional digits");
      frac = frac * 10 + (c - '0');
      scale *= 10;
    } else {
      whole = whole * 10 + (c - '0');
    }
  }
  if (!saw_digit) throw std::invalid_argument("Rational: bad literal " + text);
  std::int64_t num = whole * scale + frac;
  return Rational(neg ? -num : num, scale);
}

} // namespace flexride

#endif
