#include "sl2lab/fields.hpp"

#include <algorithm>

namespace sl2lab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotInTower: return "NotInTower";
    case Errc::NonDividingDegree: return "NonDividingDegree";
    case Errc::ExtensionUnavailable: return "ExtensionUnavailable";
    case Errc::IdentityInput: return "IdentityInput";
    case Errc::DeterminantNotOne: return "DeterminantNotOne";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::NotInJordanForm: return "NotInJordanForm";
    case Errc::EmptyT: return "EmptyT";
    case Errc::ProjectionMismatch: return "ProjectionMismatch";
    case Errc::Syntax: return "SyntaxError";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadInput: return "BadInput";
  }
  return "Error";
}

namespace {

// Carry-less product of masks with degrees < 32; result fits in 64 bits.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (a) {
    int bit = __builtin_ctzll(a);
    a &= a - 1;
    r ^= b << bit;
  }
  return r;
}

// Reduce a carry-less product modulo the level modulus.
std::uint64_t reduce(std::uint64_t v, std::uint64_t mod_mask, unsigned deg) {
  int top = v ? 63 - __builtin_clzll(v) : -1;
  while (top >= static_cast<int>(deg)) {
    v ^= mod_mask << (top - static_cast<int>(deg));
    top = v ? 63 - __builtin_clzll(v) : -1;
  }
  return v;
}

bool compatible(const Gf2Level* a, const Gf2Level* b) {
  if (a == b) return true;
  return a && b && a->degree == b->degree && a->modulus_mask == b->modulus_mask;
}

}  // namespace

namespace detail {
std::uint64_t gf2_mul_masks(std::uint64_t a, std::uint64_t b, std::uint64_t mod_mask,
                            unsigned degree) {
  return reduce(clmul(a, b), mod_mask, degree);
}
}  // namespace detail

Gf2k::Gf2k(const Gf2Level& level, std::uint64_t bits) : level_(&level), bits_(bits) {
  if (level.degree < 64 && bits >= (1ull << level.degree))
    throw Error(Errc::BadInput, "element mask out of range for GF(2^" +
                                    std::to_string(level.degree) + ")");
}

void Gf2k::require_level() const {
  if (!level_) throw Error(Errc::LevelMismatch, "detached field element");
}

unsigned Gf2k::degree() const {
  require_level();
  return level_->degree;
}

const Gf2Level& Gf2k::level() const {
  require_level();
  return *level_;
}

Gf2k Gf2k::zero_like() const {
  require_level();
  return Gf2k(*level_, 0);
}

Gf2k Gf2k::one_like() const {
  require_level();
  return Gf2k(*level_, 1);
}

Gf2k operator+(const Gf2k& a, const Gf2k& b) {
  a.require_level();
  if (!compatible(a.level_, b.level_))
    throw Error(Errc::LevelMismatch, "operands at different field levels");
  Gf2k r = a;
  r.bits_ ^= b.bits_;
  return r;
}

Gf2k operator*(const Gf2k& a, const Gf2k& b) {
  a.require_level();
  if (!compatible(a.level_, b.level_))
    throw Error(Errc::LevelMismatch, "operands at different field levels");
  Gf2k r = a;
  r.bits_ = reduce(clmul(a.bits_, b.bits_), a.level_->modulus_mask, a.level_->degree);
  return r;
}

Gf2k Gf2k::pow(std::uint64_t e) const {
  require_level();
  Gf2k acc = one_like();
  Gf2k base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Gf2k Gf2k::inv() const {
  require_level();
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  // a^(2^k - 2); the multiplicative group has order 2^k - 1
  return pow((level_->order() - 1) - 1);
}

Gf2k Gf2k::frobenius() const {
  require_level();
  return *this * *this;
}

Gf2k Gf2k::sqrt() const {
  require_level();
  Gf2k r = *this;
  for (unsigned i = 1; i < level_->degree; ++i) r = r * r;
  return r;
}

bool operator==(const Gf2k& a, const Gf2k& b) {
  if (!a.level_ || !b.level_) return a.level_ == b.level_ && a.bits_ == b.bits_;
  return compatible(a.level_, b.level_) && a.bits_ == b.bits_;
}

bool operator<(const Gf2k& a, const Gf2k& b) {
  unsigned da = a.level_ ? a.level_->degree : 0;
  unsigned db = b.level_ ? b.level_->degree : 0;
  if (da != db) return da < db;
  return a.bits_ < b.bits_;
}

std::string Gf2k::str() const {
  require_level();
  unsigned digits = (level_->degree + 3) / 4;
  static const char* hexd = "0123456789abcdef";
  std::string mask(digits, '0');
  for (unsigned i = 0; i < digits; ++i)
    mask[digits - 1 - i] = hexd[(bits_ >> (4 * i)) & 0xf];
  return "gf2_" + std::to_string(level_->degree) + ":" + mask;
}

Gf2k Gf2k::parse(const std::string& text, const Gf2Tower& tower) {
  if (text.rfind("gf2_", 0) != 0)
    throw Error(Errc::BadInput, "expected gf2_<k>:<hex>, got '" + text + "'");
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::BadInput, "missing ':' in '" + text + "'");
  unsigned degree = 0;
  try {
    degree = static_cast<unsigned>(std::stoul(text.substr(4, colon - 4)));
  } catch (const std::logic_error&) {
    throw Error(Errc::BadInput, "bad degree in '" + text + "'");
  }
  auto p = Gf2Poly::from_hex(text.substr(colon + 1));
  if (!p) throw Error(Errc::BadInput, "bad hex mask in '" + text + "'");
  if (p->degree() >= static_cast<int>(degree))
    throw Error(Errc::BadInput, "mask exceeds field degree in '" + text + "'");
  return Gf2k(tower.level(degree), p->mask());
}

// ---------------------------------------------------------------------------
// Tower

const std::vector<unsigned>& Gf2Tower::default_degrees() {
  static const std::vector<unsigned> d{1, 2, 4, 8, 16};
  return d;
}

Gf2Poly Gf2Tower::least_irreducible(unsigned degree) {
  if (degree == 0 || degree > kMaxDegree)
    throw Error(Errc::NotInTower,
                "supported field degrees are 1.." + std::to_string(kMaxDegree));
  for (std::uint64_t mask = 1ull << degree; mask < (2ull << degree); ++mask) {
    Gf2Poly p(mask);
    if (p.irreducible()) return p;
  }
  throw Error(Errc::NotInTower, "no irreducible polynomial found");  // unreachable
}

Gf2Tower::Gf2Tower(const std::vector<unsigned>& degrees) {
  if (degrees.empty()) throw Error(Errc::BadInput, "tower needs at least one level");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    unsigned d = degrees[i];
    if (d == 0 || d > kMaxDegree)
      throw Error(Errc::BadInput, "tower degree out of range: " + std::to_string(d));
    if (i > 0) {
      if (d <= degrees[i - 1] || d % degrees[i - 1] != 0)
        throw Error(Errc::BadInput,
                    "tower degrees must ascend and each must divide the next");
    }
    auto lvl = std::make_unique<Gf2Level>();
    lvl->degree = d;
    lvl->modulus = least_irreducible(d);
    lvl->modulus_mask = lvl->modulus.mask();
    lvl->tower = this;
    lvl->index = static_cast<unsigned>(i);
    levels_.push_back(std::move(lvl));
  }
  // Consecutive embeddings: least root of the lower modulus in the upper level.
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    auto root = find_root(levels_[i]->modulus, levels_[i + 1]->degree);
    if (!root)
      throw Error(Errc::NotInTower, "modulus of level " + std::to_string(levels_[i]->degree) +
                                        " has no root one level up");
    gen_image_up_.push_back(root->bits());
  }
}

bool Gf2Tower::has_degree(unsigned degree) const {
  for (const auto& l : levels_)
    if (l->degree == degree) return true;
  return false;
}

const Gf2Level& Gf2Tower::level(unsigned degree) const {
  for (const auto& l : levels_)
    if (l->degree == degree) return *l;
  throw Error(Errc::NotInTower, "GF(2^" + std::to_string(degree) + ") is not a tower level");
}

Gf2k Gf2Tower::generator(unsigned degree) const {
  const Gf2Level& l = level(degree);
  return Gf2k(l, degree == 1 ? 1 : 2);
}

Gf2k Gf2Tower::embed(const Gf2k& a, unsigned target_degree) const {
  const Gf2Level& src = a.level();
  if (src.tower != this) throw Error(Errc::NotInTower, "element from a different tower");
  const Gf2Level& dst = level(target_degree);
  if (dst.index < src.index)
    throw Error(Errc::NonDividingDegree, "cannot embed downward from GF(2^" +
                                             std::to_string(src.degree) + ") to GF(2^" +
                                             std::to_string(dst.degree) + ")");
  Gf2k cur = a;
  for (unsigned i = src.index; i < dst.index; ++i) {
    const Gf2Level& up = *levels_[i + 1];
    Gf2k gen_img(up, gen_image_up_[i]);
    // Horner evaluation of the coordinate polynomial at the generator image.
    Gf2k acc(up, 0);
    std::uint64_t bits = cur.bits();
    for (int b = static_cast<int>(levels_[i]->degree) - 1; b >= 0; --b) {
      acc = acc * gen_img;
      if ((bits >> b) & 1) acc = acc + Gf2k(up, 1);
    }
    cur = acc;
  }
  return cur;
}

std::optional<Gf2k> Gf2Tower::find_root(const Gf2Poly& p, unsigned target_degree) const {
  if (p.is_zero()) throw Error(Errc::BadInput, "root-finding on the zero polynomial");
  const Gf2Level& lvl = level(target_degree);
  int deg = p.degree();
  for (std::uint64_t cand = 0; cand < lvl.order(); ++cand) {
    Gf2k x(lvl, cand);
    Gf2k acc(lvl, 0);
    for (int i = deg; i >= 0; --i) {
      acc = acc * x;
      if (p.coeff(static_cast<std::size_t>(i))) acc = acc + Gf2k(lvl, 1);
    }
    if (acc.is_zero()) return x;
  }
  return std::nullopt;
}

std::optional<Gf2k> Gf2Tower::find_root(const std::vector<Gf2k>& coeffs,
                                        unsigned target_degree) const {
  if (coeffs.empty()) throw Error(Errc::BadInput, "root-finding on the zero polynomial");
  const Gf2Level& lvl = level(target_degree);
  std::vector<Gf2k> c;
  c.reserve(coeffs.size());
  for (const auto& co : coeffs) c.push_back(embed(co, target_degree));
  bool all_zero = true;
  for (const auto& co : c) all_zero = all_zero && co.is_zero();
  if (all_zero) throw Error(Errc::BadInput, "root-finding on the zero polynomial");
  for (std::uint64_t cand = 0; cand < lvl.order(); ++cand) {
    Gf2k x(lvl, cand);
    Gf2k acc(lvl, 0);
    for (std::size_t i = c.size(); i-- > 0;) {
      acc = acc * x + c[i];
    }
    if (acc.is_zero()) return x;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(const Gf2Poly& num, const Gf2Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  if (num_.is_zero()) {
    den_ = Gf2Poly::one();
    return;
  }
  Gf2Poly g = Gf2Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  return RatFunc(den_, num_);
}

std::optional<int> RatFunc::degree() const {
  if (is_zero()) return std::nullopt;
  return num_.degree() - den_.degree();
}

Gf2k RatFunc::eval(const Gf2k& point) const {
  auto eval_poly = [&point](const Gf2Poly& p) {
    Gf2k acc = point.zero_like();
    for (int i = p.degree(); i >= 0; --i) {
      acc = acc * point;
      if (p.coeff(static_cast<std::size_t>(i))) acc = acc + point.one_like();
    }
    return acc;
  };
  Gf2k d = eval_poly(den_);
  if (d.is_zero()) throw Error(Errc::DivisionByZero, "denominator vanishes at the point");
  return eval_poly(num_) * d.inv();
}

bool operator<(const RatFunc& a, const RatFunc& b) {
  if (a.num_ != b.num_) return a.num_ < b.num_;
  return a.den_ < b.den_;
}

std::string RatFunc::str() const { return "rf2:" + num_.hex() + "/" + den_.hex(); }

RatFunc RatFunc::parse(const std::string& text) {
  if (text.rfind("rf2:", 0) != 0)
    throw Error(Errc::BadInput, "expected rf2:<num>/<den>, got '" + text + "'");
  std::size_t slash = text.find('/', 4);
  if (slash == std::string::npos)
    throw Error(Errc::BadInput, "missing '/' in '" + text + "'");
  auto num = Gf2Poly::from_hex(text.substr(4, slash - 4));
  auto den = Gf2Poly::from_hex(text.substr(slash + 1));
  if (!num || !den) throw Error(Errc::BadInput, "bad hex mask in '" + text + "'");
  return RatFunc(*num, *den);
}

// ---------------------------------------------------------------------------
// Gfp

Gfp::Gfp(unsigned p, std::uint64_t value) : p_(p) {
  if (p < 2 || p > 7 || p == 4 || p == 6)
    throw Error(Errc::BadInput, "prime-field modulus must be in {2,3,5,7}");
  v_ = static_cast<unsigned>(value % p);
}

namespace {
void require_same_p(const Gfp& a, const Gfp& b) {
  if (a.modulus() != b.modulus() || a.modulus() == 0)
    throw Error(Errc::LevelMismatch, "prime-field operands with different moduli");
}
}  // namespace

Gfp operator+(const Gfp& a, const Gfp& b) {
  require_same_p(a, b);
  return Gfp(a.modulus(), a.value() + b.value());
}

Gfp operator-(const Gfp& a, const Gfp& b) {
  require_same_p(a, b);
  return Gfp(a.modulus(), a.value() + a.modulus() - b.value());
}

Gfp operator*(const Gfp& a, const Gfp& b) {
  require_same_p(a, b);
  return Gfp(a.modulus(), a.value() * b.value());
}

Gfp Gfp::inv() const {
  if (p_ == 0) throw Error(Errc::LevelMismatch, "detached prime-field element");
  if (v_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  unsigned acc = 1;
  for (unsigned e = p_ - 2; e > 0; --e) acc = (acc * v_) % p_;
  return Gfp(p_, acc);
}

std::string Gfp::str() const {
  return "gfp_" + std::to_string(p_) + ":" + std::to_string(v_);
}

Gfp Gfp::parse(const std::string& text) {
  if (text.rfind("gfp_", 0) != 0)
    throw Error(Errc::BadInput, "expected gfp_<p>:<value>, got '" + text + "'");
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::BadInput, "missing ':' in '" + text + "'");
  try {
    unsigned p = static_cast<unsigned>(std::stoul(text.substr(4, colon - 4)));
    std::uint64_t v = std::stoull(text.substr(colon + 1));
    if (v >= p) throw Error(Errc::BadInput, "value not reduced in '" + text + "'");
    return Gfp(p, v);
  } catch (const std::logic_error&) {
    throw Error(Errc::BadInput, "malformed prime-field element '" + text + "'");
  }
}

}  // namespace sl2lab
