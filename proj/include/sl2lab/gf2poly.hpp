#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sl2lab {

/// Polynomial over GF(2), bit i of word i/64 holding the coefficient of x^i.
/// Always trimmed: no trailing zero words.
class Gf2Poly {
 public:
  Gf2Poly() = default;
  explicit Gf2Poly(std::uint64_t mask) {
    if (mask) words_.push_back(mask);
  }

  static Gf2Poly zero() { return Gf2Poly(); }
  static Gf2Poly one() { return Gf2Poly(1); }
  static Gf2Poly x() { return Gf2Poly(2); }
  static Gf2Poly monomial(std::size_t deg);
  static Gf2Poly from_coeffs(std::initializer_list<std::size_t> exponents);

  bool is_zero() const { return words_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const;
  bool coeff(std::size_t i) const {
    std::size_t w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
  }
  void set_coeff(std::size_t i, bool v);

  /// Low 64 coefficient bits; valid only when degree() < 64.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

  friend Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b);
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  /// Quotient and remainder of schoolbook long division.
  static std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b);
  friend Gf2Poly operator/(const Gf2Poly& a, const Gf2Poly& b) {
    return divmod(a, b).first;
  }
  friend Gf2Poly operator%(const Gf2Poly& a, const Gf2Poly& b) {
    return divmod(a, b).second;
  }
  static Gf2Poly gcd(Gf2Poly a, Gf2Poly b);

  /// x^(2^iterations) reduced modulo this polynomial.
  Gf2Poly frobenius_power_of_x(unsigned iterations) const;

  /// Rabin test: x^(2^n) == x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for the
  /// prime divisors p of n = deg f.
  bool irreducible() const;

  friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) { return a.words_ == b.words_; }
  friend bool operator!=(const Gf2Poly& a, const Gf2Poly& b) { return !(a == b); }
  /// Numeric order on the coefficient masks; total and degree-compatible.
  friend bool operator<(const Gf2Poly& a, const Gf2Poly& b);

  /// Hex coefficient mask, bit i = coefficient of x^i (lowercase, no prefix).
  std::string hex() const;
  static std::optional<Gf2Poly> from_hex(const std::string& text);
  /// Human-readable form like "x^3+x+1".
  std::string pretty() const;

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

}  // namespace sl2lab
