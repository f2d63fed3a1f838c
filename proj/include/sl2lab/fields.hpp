#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/error.hpp"
#include "sl2lab/gf2poly.hpp"

namespace sl2lab {

class Gf2Tower;

/// One field GF(2^degree) inside a tower. Owned by the tower, addresses stable.
struct Gf2Level {
  unsigned degree = 0;
  Gf2Poly modulus;              // irreducible over GF(2), degree `degree`
  std::uint64_t modulus_mask = 0;
  const Gf2Tower* tower = nullptr;
  unsigned index = 0;           // position within the tower

  std::uint64_t order() const { return 1ull << degree; }
};

/// Element of GF(2^k), coefficients of the polynomial basis packed into bits.
/// Immutable value type; all operations are pure.
class Gf2k {
 public:
  Gf2k() = default;  // detached element; arithmetic on it throws
  Gf2k(const Gf2Level& level, std::uint64_t bits);

  std::uint64_t bits() const { return bits_; }
  unsigned degree() const;
  const Gf2Level& level() const;
  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  Gf2k zero_like() const;
  Gf2k one_like() const;

  friend Gf2k operator+(const Gf2k& a, const Gf2k& b);
  friend Gf2k operator-(const Gf2k& a, const Gf2k& b) { return a + b; }
  friend Gf2k operator*(const Gf2k& a, const Gf2k& b);
  friend Gf2k operator/(const Gf2k& a, const Gf2k& b) { return a * b.inv(); }
  Gf2k inv() const;
  Gf2k pow(std::uint64_t e) const;
  /// a -> a^2, the field automorphism generating Gal(GF(2^k)/GF(2)).
  Gf2k frobenius() const;
  /// Unique square root (squaring is a bijection in characteristic 2).
  Gf2k sqrt() const;

  friend bool operator==(const Gf2k& a, const Gf2k& b);
  friend bool operator!=(const Gf2k& a, const Gf2k& b) { return !(a == b); }
  friend bool operator<(const Gf2k& a, const Gf2k& b);

  /// "gf2_<k>:<hex>", hex zero-padded to ceil(k/4) digits so that string
  /// order on serialized entries matches numeric order on coefficient masks.
  std::string str() const;
  static Gf2k parse(const std::string& text, const Gf2Tower& tower);

 private:
  void require_level() const;
  const Gf2Level* level_ = nullptr;
  std::uint64_t bits_ = 0;
};

/// A chain GF(2^k1) < GF(2^k2) < ... with k1 | k2 | ..., the finite stand-in
/// for an algebraically closed field of characteristic 2. Embeddings between
/// consecutive levels are computed by root-finding (least root of the lower
/// modulus in the upper level); embeddings across several levels compose the
/// consecutive ones, which makes the system coherent by construction.
class Gf2Tower {
 public:
  explicit Gf2Tower(const std::vector<unsigned>& degrees = default_degrees());
  Gf2Tower(const Gf2Tower&) = delete;
  Gf2Tower& operator=(const Gf2Tower&) = delete;

  static const std::vector<unsigned>& default_degrees();  // {1, 2, 4, 8, 16}
  static constexpr unsigned kMaxDegree = 16;

  std::size_t level_count() const { return levels_.size(); }
  const Gf2Level& level_at(std::size_t i) const { return *levels_[i]; }
  bool has_degree(unsigned degree) const;
  const Gf2Level& level(unsigned degree) const;  // throws NotInTower

  Gf2k zero(unsigned degree) const { return Gf2k(level(degree), 0); }
  Gf2k one(unsigned degree) const { return Gf2k(level(degree), 1); }
  Gf2k generator(unsigned degree) const;
  Gf2k element(unsigned degree, std::uint64_t bits) const { return Gf2k(level(degree), bits); }

  /// Ring embedding GF(2^j) -> GF(2^k) for tower levels with j | k.
  Gf2k embed(const Gf2k& a, unsigned target_degree) const;

  /// Least root (by coefficient mask) of p in GF(2^target), if any. Exhaustive
  /// scan; absence of a root is a result, not an error.
  std::optional<Gf2k> find_root(const Gf2Poly& p, unsigned target_degree) const;
  /// Same for a polynomial with coefficients at some tower level dividing the
  /// target (coefficients are embedded first). coeffs[i] multiplies z^i.
  std::optional<Gf2k> find_root(const std::vector<Gf2k>& coeffs, unsigned target_degree) const;

  /// Lexicographically least irreducible polynomial of the given degree
  /// (smallest coefficient mask read as an integer).
  static Gf2Poly least_irreducible(unsigned degree);

 private:
  std::vector<std::unique_ptr<Gf2Level>> levels_;
  // image of level i's generator inside level i+1
  std::vector<std::uint64_t> gen_image_up_;
};

/// Element of GF(2)(t): quotient of polynomials over GF(2) in lowest terms,
/// zero normalized to 0/1. Denominators over GF(2) are automatically monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Gf2Poly::one()) {}
  RatFunc(const Gf2Poly& num, const Gf2Poly& den);
  static RatFunc t() { return RatFunc(Gf2Poly::x(), Gf2Poly::one()); }
  static RatFunc from_poly(const Gf2Poly& p) { return RatFunc(p, Gf2Poly::one()); }

  const Gf2Poly& num() const { return num_; }
  const Gf2Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == Gf2Poly::one() && den_ == Gf2Poly::one(); }

  RatFunc zero_like() const { return RatFunc(); }
  RatFunc one_like() const { return from_poly(Gf2Poly::one()); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + b; }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  RatFunc inv() const;

  /// deg num - deg den; nullopt is the minus-infinity marker for 0.
  std::optional<int> degree() const;

  /// Evaluation at a point of GF(2^k); throws DivisionByZero when the
  /// denominator vanishes there.
  Gf2k eval(const Gf2k& point) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
  friend bool operator<(const RatFunc& a, const RatFunc& b);

  /// "rf2:<num hex>/<den hex>", bit i of a mask = coefficient of t^i.
  std::string str() const;
  static RatFunc parse(const std::string& text);

 private:
  Gf2Poly num_, den_;
};

/// Element of GF(p) for a small prime p; the odd-characteristic control.
class Gfp {
 public:
  Gfp() = default;
  Gfp(unsigned p, std::uint64_t value);

  unsigned modulus() const { return p_; }
  unsigned value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Gfp zero_like() const { return Gfp(p_, 0); }
  Gfp one_like() const { return Gfp(p_, 1); }

  friend Gfp operator+(const Gfp& a, const Gfp& b);
  friend Gfp operator-(const Gfp& a, const Gfp& b);
  friend Gfp operator*(const Gfp& a, const Gfp& b);
  friend Gfp operator/(const Gfp& a, const Gfp& b) { return a * b.inv(); }
  Gfp inv() const;

  friend bool operator==(const Gfp& a, const Gfp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend bool operator!=(const Gfp& a, const Gfp& b) { return !(a == b); }
  friend bool operator<(const Gfp& a, const Gfp& b) {
    return a.v_ != b.v_ ? a.v_ < b.v_ : a.p_ < b.p_;
  }

  std::string str() const;  // "gfp_<p>:<value>"
  static Gfp parse(const std::string& text);

 private:
  unsigned p_ = 0;
  unsigned v_ = 0;
};

namespace detail {
/// GF(2^degree) product on raw coefficient masks; the fast path for packed
/// group elements.
std::uint64_t gf2_mul_masks(std::uint64_t a, std::uint64_t b, std::uint64_t mod_mask,
                            unsigned degree);
}  // namespace detail

template <class F>
concept FieldScalar = requires(const F a, const F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a.inv() } -> std::convertible_to<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
  { a.zero_like() } -> std::convertible_to<F>;
  { a.one_like() } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { a < b } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
};

}  // namespace sl2lab
