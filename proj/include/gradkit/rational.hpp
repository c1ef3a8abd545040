#ifndef GRADKIT_RATIONAL_HPP
#define GRADKIT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gradkit {

/// Exact rational number backed by int64, always reduced, denominator > 0.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Lowest-terms string, "7" or "-3/2".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  static Rational pow(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  }

private:
  void reduce() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  long long num_;
  long long den_;
};

/// Element of (1/2)Z, stored as twice its value.
class HalfInt {
public:
  HalfInt() : twice_(0) {}
  explicit HalfInt(long long whole) : twice_(2 * whole) {}
  static HalfInt from_twice(long long t) { HalfInt h; h.twice_ = t; return h; }
  static HalfInt half() { return from_twice(1); }

  long long twice() const { return twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }
  double to_double() const { return static_cast<double>(twice_) / 2.0; }
  Rational to_rational() const { return Rational(twice_, 2); }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  /// Parses "a" or "a/b" with b in {1,2}; half-odd values must use denominator 2.
  static HalfInt parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("not a half-integer: '" + text + "'"); };
    auto to_ll = [&](const std::string& part) {
      long long v = 0;
      size_t used = 0;
      try {
        v = std::stoll(part, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != part.size()) throw bad();
      return v;
    };
    if (text.empty()) throw bad();
    const size_t slash = text.find('/');
    if (slash == std::string::npos) return HalfInt(to_ll(text));
    const long long a = to_ll(text.substr(0, slash));
    const long long b = to_ll(text.substr(slash + 1));
    if (b == 1) return HalfInt(a);
    if (b == 2) {
      if (a % 2 == 0) throw std::invalid_argument("half-integer not in lowest terms: '" + text + "'");
      return from_twice(a);
    }
    throw bad();
  }

  friend HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  HalfInt operator-() const { return from_twice(-twice_); }
  friend bool operator==(HalfInt a, HalfInt b) { return a.twice_ == b.twice_; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.twice_ != b.twice_; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.twice_ < b.twice_; }
  friend bool operator>(HalfInt a, HalfInt b) { return b < a; }
  friend bool operator<=(HalfInt a, HalfInt b) { return !(b < a); }
  friend bool operator>=(HalfInt a, HalfInt b) { return !(a < b); }

  HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

private:
  long long twice_;
};

} // namespace gradkit

#endif
