#pragma once

#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clmodel {

// Exact rational arithmetic for cycle accounting. Cycle predictions are
// ratios of small integers (cacheline bytes over bus widths, decimal clock
// rates), so totals stay exact until display rounding.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(long long value) : num_(value) {}
  Rat(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    normalize();
  }

  // Parses a plain decimal literal ("2.83", "1066.67", "6.7e-1") exactly.
  static Rat from_decimal(std::string_view text);
  // Recovers the shortest decimal form of a double, then parses that.
  static Rat from_double(double value);

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  // Nearest integer; halves round away from zero, matching table rendering.
  long long round_nearest() const {
    long long q = num_ / den_;
    long long r = num_ % den_;
    if (r < 0) {
      if (2 * -r >= den_) --q;
    } else if (2 * r >= den_) {
      ++q;
    }
    return q;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rat& operator+=(const Rat& o) { return assign_checked(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_); }
  Rat& operator-=(const Rat& o) { return assign_checked(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_); }
  Rat& operator*=(const Rat& o) { return assign_checked(i128(num_) * o.num_, i128(den_) * o.den_); }
  Rat& operator/=(const Rat& o) {
    if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
    return assign_checked(i128(num_) * o.den_, i128(den_) * o.num_);
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(-a.num_, a.den_); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return i128(a.num_) * b.den_ < i128(b.num_) * a.den_; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  using i128 = __int128;

  long long num_ = 0;
  long long den_ = 1;

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Rat& assign_checked(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = 1;
    {
      i128 a = n < 0 ? -n : n, b = d;
      while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
      }
      g = a == 0 ? 1 : a;
    }
    n /= g;
    d /= g;
    constexpr i128 lo = std::numeric_limits<long long>::min();
    constexpr i128 hi = std::numeric_limits<long long>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("Rat: value out of 64-bit range");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
    return *this;
  }
};

inline Rat Rat::from_decimal(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  i128 mantissa = 0;
  int digits = 0, frac_digits = 0;
  bool seen_digit = false, in_frac = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      if (++digits > 18) fail();
      mantissa = mantissa * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  long long exp = 0;
  if (i < text.size()) {  // exponent part
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i >= text.size()) fail();
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') fail();
      exp = exp * 10 + (text[i] - '0');
      if (exp > 30) fail();
    }
    if (eneg) exp = -exp;
  }
  exp -= frac_digits;
  i128 num = neg ? -mantissa : mantissa;
  i128 den = 1;
  for (; exp > 0; --exp) num *= 10;
  for (; exp < 0; ++exp) den *= 10;
  Rat r;
  r.assign_checked(num, den);
  return r;
}

inline Rat Rat::from_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return from_decimal(buf);
}

}  // namespace clmodel
