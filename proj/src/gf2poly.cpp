#include "sl2lab/gf2poly.hpp"

#include <algorithm>

#include "sl2lab/error.hpp"

namespace sl2lab {

Gf2Poly Gf2Poly::monomial(std::size_t deg) {
  Gf2Poly p;
  p.set_coeff(deg, true);
  return p;
}

Gf2Poly Gf2Poly::from_coeffs(std::initializer_list<std::size_t> exponents) {
  Gf2Poly p;
  for (std::size_t e : exponents) p.set_coeff(e, !p.coeff(e));
  return p;
}

int Gf2Poly::degree() const {
  if (words_.empty()) return -1;
  std::uint64_t top = words_.back();
  int bit = 63 - __builtin_clzll(top);
  return static_cast<int>((words_.size() - 1) * 64) + bit;
}

void Gf2Poly::set_coeff(std::size_t i, bool v) {
  std::size_t w = i / 64;
  if (w >= words_.size()) {
    if (!v) return;
    words_.resize(w + 1, 0);
  }
  std::uint64_t bit = 1ull << (i % 64);
  if (v)
    words_[w] |= bit;
  else
    words_[w] &= ~bit;
  trim();
}

Gf2Poly operator+(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly r;
  r.words_.resize(std::max(a.words_.size(), b.words_.size()), 0);
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    std::uint64_t w = 0;
    if (i < a.words_.size()) w ^= a.words_[i];
    if (i < b.words_.size()) w ^= b.words_[i];
    r.words_[i] = w;
  }
  r.trim();
  return r;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.is_zero() || b.is_zero()) return Gf2Poly();
  Gf2Poly r;
  r.words_.assign(a.words_.size() + b.words_.size(), 0);
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    std::uint64_t w = a.words_[i];
    while (w) {
      int bit = __builtin_ctzll(w);
      w &= w - 1;
      std::size_t shift = i * 64 + static_cast<std::size_t>(bit);
      std::size_t word_shift = shift / 64, bit_shift = shift % 64;
      for (std::size_t j = 0; j < b.words_.size(); ++j) {
        r.words_[j + word_shift] ^= b.words_[j] << bit_shift;
        if (bit_shift)
          r.words_[j + word_shift + 1] ^= b.words_[j] >> (64 - bit_shift);
      }
    }
  }
  r.trim();
  return r;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& a, const Gf2Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  Gf2Poly q, r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - db);
    q.set_coeff(shift, true);
    r = r + b * Gf2Poly::monomial(shift);
  }
  return {q, r};
}

Gf2Poly Gf2Poly::gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Gf2Poly Gf2Poly::frobenius_power_of_x(unsigned iterations) const {
  Gf2Poly acc = Gf2Poly::x() % *this;
  for (unsigned i = 0; i < iterations; ++i) acc = (acc * acc) % *this;
  return acc;
}

bool Gf2Poly::irreducible() const {
  int n = degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  if (!coeff(0)) return false;  // divisible by x
  // x^(2^n) == x (mod f)
  if (frobenius_power_of_x(static_cast<unsigned>(n)) != Gf2Poly::x() % *this) return false;
  // gcd(x^(2^(n/p)) - x, f) = 1 for prime p | n
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    Gf2Poly h = frobenius_power_of_x(static_cast<unsigned>(n / p)) + Gf2Poly::x() % *this;
    if (gcd(h, *this).degree() > 0) return false;
    while (m % p == 0) m /= p;
  }
  if (m > 1 && m < n) {
    Gf2Poly h = frobenius_power_of_x(static_cast<unsigned>(n / m)) + Gf2Poly::x() % *this;
    if (gcd(h, *this).degree() > 0) return false;
  }
  return true;
}

bool operator<(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.words_.size() != b.words_.size()) return a.words_.size() < b.words_.size();
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  return false;
}

std::string Gf2Poly::hex() const {
  if (words_.empty()) return "0";
  static const char* digits = "0123456789abcdef";
  std::string out;
  bool started = false;
  for (std::size_t i = words_.size(); i-- > 0;) {
    for (int nib = 15; nib >= 0; --nib) {
      unsigned v = (words_[i] >> (nib * 4)) & 0xf;
      if (!started && v == 0) continue;
      started = true;
      out.push_back(digits[v]);
    }
  }
  return out;
}

std::optional<Gf2Poly> Gf2Poly::from_hex(const std::string& text) {
  if (text.empty()) return std::nullopt;
  Gf2Poly p;
  std::size_t nbits = text.size() * 4;
  p.words_.assign((nbits + 63) / 64, 0);
  std::size_t pos = 0;  // nibble index from the least significant end
  for (std::size_t i = text.size(); i-- > 0; ++pos) {
    char c = text[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a') + 10;
    else if (c >= 'A' && c <= 'F')
      v = static_cast<unsigned>(c - 'A') + 10;
    else
      return std::nullopt;
    p.words_[pos / 16] |= static_cast<std::uint64_t>(v) << ((pos % 16) * 4);
  }
  p.trim();
  return p;
}

std::string Gf2Poly::pretty() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(static_cast<std::size_t>(i))) continue;
    if (!out.empty()) out += "+";
    if (i == 0)
      out += "1";
    else if (i == 1)
      out += "x";
    else
      out += "x^" + std::to_string(i);
  }
  return out;
}

}  // namespace sl2lab
