#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sl2lab/error.hpp"

namespace sl2lab {

/// Exact rational with int64 components, always normalized (gcd 1, positive
/// denominator). Large enough for every defect ratio at enumeration scale.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
  static Rational from_int(std::int64_t n) { return Rational(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "p/q" or a bare integer "p".
  static Rational parse(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
      if (slash == std::string::npos) return from_int(std::stoll(text));
      std::int64_t p = std::stoll(text.substr(0, slash));
      std::int64_t q = std::stoll(text.substr(slash + 1));
      return Rational(p, q);
    } catch (const std::logic_error&) {
      throw Error(Errc::BadInput, "malformed rational '" + text + "'");
    }
  }

 private:
  void normalize() {
    if (den_ == 0) throw Error(Errc::DivisionByZero, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace sl2lab
