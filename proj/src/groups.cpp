#include "sl2lab/groups.hpp"

#include <algorithm>
#include <unordered_set>

namespace sl2lab {

namespace {

std::uint64_t pow_mask(std::uint64_t base, std::uint64_t e, std::uint64_t mod_mask,
                       unsigned degree) {
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = detail::gf2_mul_masks(acc, base, mod_mask, degree);
    base = detail::gf2_mul_masks(base, base, mod_mask, degree);
    e >>= 1;
  }
  return acc;
}

std::uint64_t inv_mask(std::uint64_t a, std::uint64_t mod_mask, unsigned degree) {
  return pow_mask(a, (1ull << degree) - 2, mod_mask, degree);
}

std::uint64_t pack4(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return (a << 48) | (b << 32) | (c << 16) | d;
}

std::string hex_lane(std::uint64_t v, unsigned degree) {
  unsigned digits = (degree + 3) / 4;
  static const char* hexd = "0123456789abcdef";
  std::string s(digits, '0');
  for (unsigned i = 0; i < digits; ++i) s[digits - 1 - i] = hexd[(v >> (4 * i)) & 0xf];
  return s;
}

}  // namespace

std::optional<std::uint64_t> Group::find(const std::string& element_text) const {
  for (std::uint64_t i = 0; i < order(); ++i)
    if (describe(i) == element_text) return i;
  return std::nullopt;
}

const std::vector<std::uint32_t>& Group::inverse_table() const {
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (inv_cache_.empty()) {
    inv_cache_.resize(order());
    for (std::uint64_t i = 0; i < order(); ++i)
      inv_cache_[i] = static_cast<std::uint32_t>(inverse(i));
  }
  return inv_cache_;
}

const std::uint32_t* Group::op_table() const {
  if (order() > kOpTableLimit) return nullptr;
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (!op_cache_built_) {
    std::uint64_t n = order();
    op_cache_.resize(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j)
        op_cache_[i * n + j] = static_cast<std::uint32_t>(op(i, j));
    op_cache_built_ = true;
  }
  return op_cache_.data();
}

// ---------------------------------------------------------------------------
// SL2 over GF(2^k)

class Sl2Gf2Group final : public Group {
 public:
  Sl2Gf2Group(std::shared_ptr<const Gf2Tower> tower, unsigned degree, std::uint64_t budget)
      : tower_(std::move(tower)), level_(&tower_->level(degree)) {
    std::uint64_t q = level_->order();
    std::uint64_t size = sl2_order(q);
    if (size > budget)
      throw Error(Errc::BudgetExceeded,
                  "|SL2(GF(" + std::to_string(q) + "))| = " + std::to_string(size) +
                      " exceeds enumeration budget " + std::to_string(budget));
    raw_.reserve(size);
    std::uint64_t mod = level_->modulus_mask;
    unsigned k = level_->degree;
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        if (a == 0) {
          if (b == 0) continue;
          std::uint64_t c = inv_mask(b, mod, k);  // bc = 1 = -1
          for (std::uint64_t d = 0; d < q; ++d) raw_.push_back(pack4(a, b, c, d));
        } else {
          std::uint64_t ai = inv_mask(a, mod, k);
          for (std::uint64_t c = 0; c < q; ++c) {
            std::uint64_t d = detail::gf2_mul_masks(1 ^ detail::gf2_mul_masks(b, c, mod, k),
                                                    ai, mod, k);
            raw_.push_back(pack4(a, b, c, d));
          }
        }
      }
    }
    std::sort(raw_.begin(), raw_.end());
  }

  std::string spec() const override { return "sl2:gf2_" + std::to_string(level_->degree); }
  std::uint64_t order() const override { return raw_.size(); }
  std::uint64_t identity() const override { return index_of_raw(pack4(1, 0, 0, 1)); }

  std::uint64_t op(std::uint64_t i, std::uint64_t j) const override {
    return index_of_raw(mul_raw(raw_[i], raw_[j]));
  }

  std::uint64_t inverse(std::uint64_t i) const override {
    std::uint64_t r = raw_[i];
    // [[d, -b], [-c, a]]; negation is the identity in characteristic 2
    return index_of_raw(pack4(r & 0xffff, (r >> 32) & 0xffff, (r >> 16) & 0xffff, r >> 48));
  }

  bool commutes(std::uint64_t i, std::uint64_t j) const override {
    return mul_raw(raw_[i], raw_[j]) == mul_raw(raw_[j], raw_[i]);
  }

  std::string describe(std::uint64_t i) const override {
    std::uint64_t r = raw_[i];
    unsigned k = level_->degree;
    return "[[" + hex_lane(r >> 48, k) + "," + hex_lane((r >> 32) & 0xffff, k) + "],[" +
           hex_lane((r >> 16) & 0xffff, k) + "," + hex_lane(r & 0xffff, k) + "]]@gf2_" +
           std::to_string(k);
  }

  std::vector<std::uint64_t> generators() const override {
    std::vector<std::uint64_t> gens;
    for (unsigned i = 0; i < level_->degree; ++i) {
      gens.push_back(index_of_raw(pack4(1, 1ull << i, 0, 1)));
      gens.push_back(index_of_raw(pack4(1, 0, 1ull << i, 1)));
    }
    return gens;
  }

  std::optional<std::uint64_t> find(const std::string& text) const override {
    try {
      Mat2<Gf2k> m = parse_mat2_gf2(text, *tower_);
      return index_of(m);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  const Gf2Level& level() const { return *level_; }

  Mat2<Gf2k> matrix_at(std::uint64_t i) const {
    std::uint64_t r = raw_[i];
    return Mat2<Gf2k>(Gf2k(*level_, r >> 48), Gf2k(*level_, (r >> 32) & 0xffff),
                      Gf2k(*level_, (r >> 16) & 0xffff), Gf2k(*level_, r & 0xffff));
  }

  std::optional<std::uint64_t> index_of(const Mat2<Gf2k>& m) const {
    if (m.a.degree() != level_->degree ||
        m.a.level().modulus_mask != level_->modulus_mask)
      return std::nullopt;
    std::uint64_t r = pack4(m.a.bits(), m.b.bits(), m.c.bits(), m.d.bits());
    auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
    if (it == raw_.end() || *it != r) return std::nullopt;
    return static_cast<std::uint64_t>(it - raw_.begin());
  }

 private:
  std::uint64_t mul_raw(std::uint64_t g, std::uint64_t h) const {
    std::uint64_t mod = level_->modulus_mask;
    unsigned k = level_->degree;
    std::uint64_t ga = g >> 48, gb = (g >> 32) & 0xffff, gc = (g >> 16) & 0xffff,
                  gd = g & 0xffff;
    std::uint64_t ha = h >> 48, hb = (h >> 32) & 0xffff, hc = (h >> 16) & 0xffff,
                  hd = h & 0xffff;
    auto mul = [&](std::uint64_t x, std::uint64_t y) {
      return detail::gf2_mul_masks(x, y, mod, k);
    };
    return pack4(mul(ga, ha) ^ mul(gb, hc), mul(ga, hb) ^ mul(gb, hd),
                 mul(gc, ha) ^ mul(gd, hc), mul(gc, hb) ^ mul(gd, hd));
  }

  std::uint64_t index_of_raw(std::uint64_t r) const {
    auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
    return static_cast<std::uint64_t>(it - raw_.begin());
  }

  std::shared_ptr<const Gf2Tower> tower_;
  const Gf2Level* level_;
  std::vector<std::uint64_t> raw_;
};

// ---------------------------------------------------------------------------
// SL2 over GF(p)

class Sl2GfpGroup final : public Group {
 public:
  Sl2GfpGroup(unsigned p, std::uint64_t budget) : p_(p) {
    if (p < 2 || p > 7 || p == 4 || p == 6)
      throw Error(Errc::BadInput, "prime-field modulus must be in {2,3,5,7}");
    std::uint64_t size = sl2_order(p);
    if (size > budget)
      throw Error(Errc::BudgetExceeded, "group size exceeds enumeration budget");
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b)
        for (std::uint64_t c = 0; c < p; ++c)
          for (std::uint64_t d = 0; d < p; ++d)
            if ((a * d + p * p - b * c) % p == 1) raw_.push_back(pack4(a, b, c, d));
    std::sort(raw_.begin(), raw_.end());
  }

  std::string spec() const override { return "sl2:gfp_" + std::to_string(p_); }
  std::uint64_t order() const override { return raw_.size(); }
  std::uint64_t identity() const override { return index_of_raw(pack4(1, 0, 0, 1)); }

  std::uint64_t op(std::uint64_t i, std::uint64_t j) const override {
    return index_of_raw(mul_raw(raw_[i], raw_[j]));
  }

  std::uint64_t inverse(std::uint64_t i) const override {
    std::uint64_t r = raw_[i];
    std::uint64_t a = r >> 48, b = (r >> 32) & 0xffff, c = (r >> 16) & 0xffff, d = r & 0xffff;
    return index_of_raw(pack4(d, (p_ - b) % p_, (p_ - c) % p_, a));
  }

  bool commutes(std::uint64_t i, std::uint64_t j) const override {
    return mul_raw(raw_[i], raw_[j]) == mul_raw(raw_[j], raw_[i]);
  }

  std::string describe(std::uint64_t i) const override {
    std::uint64_t r = raw_[i];
    return "[[" + std::to_string(r >> 48) + "," + std::to_string((r >> 32) & 0xffff) +
           "],[" + std::to_string((r >> 16) & 0xffff) + "," + std::to_string(r & 0xffff) +
           "]]@gfp_" + std::to_string(p_);
  }

  std::vector<std::uint64_t> generators() const override {
    return {index_of_raw(pack4(1, 1, 0, 1)), index_of_raw(pack4(1, 0, 1, 1))};
  }

  Mat2<Gfp> matrix_at(std::uint64_t i) const {
    std::uint64_t r = raw_[i];
    return Mat2<Gfp>(Gfp(p_, r >> 48), Gfp(p_, (r >> 32) & 0xffff),
                     Gfp(p_, (r >> 16) & 0xffff), Gfp(p_, r & 0xffff));
  }

  std::optional<std::uint64_t> find(const std::string& text) const override {
    try {
      Mat2<Gfp> m = parse_mat2_gfp(text);
      if (m.a.modulus() != p_) return std::nullopt;
      std::uint64_t r = pack4(m.a.value(), m.b.value(), m.c.value(), m.d.value());
      auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
      if (it == raw_.end() || *it != r) return std::nullopt;
      return static_cast<std::uint64_t>(it - raw_.begin());
    } catch (const Error&) {
      return std::nullopt;
    }
  }

 private:
  std::uint64_t mul_raw(std::uint64_t g, std::uint64_t h) const {
    std::uint64_t ga = g >> 48, gb = (g >> 32) & 0xffff, gc = (g >> 16) & 0xffff,
                  gd = g & 0xffff;
    std::uint64_t ha = h >> 48, hb = (h >> 32) & 0xffff, hc = (h >> 16) & 0xffff,
                  hd = h & 0xffff;
    return pack4((ga * ha + gb * hc) % p_, (ga * hb + gb * hd) % p_,
                 (gc * ha + gd * hc) % p_, (gc * hb + gd * hd) % p_);
  }

  std::uint64_t index_of_raw(std::uint64_t r) const {
    auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
    return static_cast<std::uint64_t>(it - raw_.begin());
  }

  unsigned p_;
  std::vector<std::uint64_t> raw_;
};

// ---------------------------------------------------------------------------
// Sym(n)

class SymGroup final : public Group {
 public:
  SymGroup(unsigned n, std::uint64_t budget) : n_(n) {
    if (n == 0 || n > 16) throw Error(Errc::BadInput, "sym:<n> needs 1 <= n <= 16");
    std::uint64_t size = 1;
    for (unsigned i = 2; i <= n; ++i) {
      size *= i;
      if (size > budget)
        throw Error(Errc::BudgetExceeded,
                    std::to_string(n) + "! exceeds enumeration budget");
    }
    std::vector<std::uint8_t> p(n);
    for (unsigned i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
    raw_.reserve(size);
    do {
      raw_.push_back(pack(p));
    } while (std::next_permutation(p.begin(), p.end()));
    // next_permutation emits ascending lexicographic order and the packing is
    // order-preserving, so raw_ is already sorted
  }

  std::string spec() const override { return "sym:" + std::to_string(n_); }
  std::uint64_t order() const override { return raw_.size(); }
  std::uint64_t identity() const override { return 0; }

  std::uint64_t op(std::uint64_t i, std::uint64_t j) const override {
    std::uint64_t g = raw_[i], h = raw_[j], r = 0;
    for (unsigned k = 0; k < n_; ++k) r = (r << 4) | lane(g, lane(h, k));
    return index_of_raw(r);
  }

  std::uint64_t inverse(std::uint64_t i) const override {
    std::uint64_t g = raw_[i];
    std::uint8_t inv[16] = {0};
    for (unsigned k = 0; k < n_; ++k) inv[lane(g, k)] = static_cast<std::uint8_t>(k);
    std::uint64_t r = 0;
    for (unsigned k = 0; k < n_; ++k) r = (r << 4) | inv[k];
    return index_of_raw(r);
  }

  std::string describe(std::uint64_t i) const override {
    std::string s = "perm:[";
    for (unsigned k = 0; k < n_; ++k) {
      if (k) s += ",";
      s += std::to_string(lane(raw_[i], k) + 1);
    }
    return s + "]";
  }

  std::vector<std::uint64_t> generators() const override {
    std::vector<std::uint64_t> gens;
    if (n_ >= 2) {
      std::vector<std::uint8_t> t(n_);
      for (unsigned i = 0; i < n_; ++i) t[i] = static_cast<std::uint8_t>(i);
      std::swap(t[0], t[1]);
      gens.push_back(index_of_raw(pack(t)));
    }
    if (n_ >= 3) {
      std::vector<std::uint8_t> c(n_);
      for (unsigned i = 0; i < n_; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % n_);
      gens.push_back(index_of_raw(pack(c)));
    }
    return gens;
  }

  std::optional<std::uint64_t> find(const std::string& text) const override {
    if (text.rfind("perm:[", 0) != 0 || text.back() != ']') return std::nullopt;
    std::vector<std::uint8_t> img;
    std::string body = text.substr(6, text.size() - 7);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      try {
        unsigned long v = std::stoul(tok);
        if (v < 1 || v > n_) return std::nullopt;
        img.push_back(static_cast<std::uint8_t>(v - 1));
      } catch (const std::logic_error&) {
        return std::nullopt;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (img.size() != n_) return std::nullopt;
    std::uint64_t r = pack(img);
    auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
    if (it == raw_.end() || *it != r) return std::nullopt;
    return static_cast<std::uint64_t>(it - raw_.begin());
  }

 private:
  static std::uint64_t pack(const std::vector<std::uint8_t>& p) {
    std::uint64_t r = 0;
    for (std::uint8_t v : p) r = (r << 4) | v;
    return r;
  }
  unsigned lane(std::uint64_t raw, unsigned k) const {
    return static_cast<unsigned>((raw >> (4 * (n_ - 1 - k))) & 0xf);
  }
  std::uint64_t index_of_raw(std::uint64_t r) const {
    auto it = std::lower_bound(raw_.begin(), raw_.end(), r);
    return static_cast<std::uint64_t>(it - raw_.begin());
  }

  unsigned n_;
  std::vector<std::uint64_t> raw_;
};

// ---------------------------------------------------------------------------
// Direct product

class ProductGroup final : public Group {
 public:
  ProductGroup(GroupPtr left, GroupPtr right, std::uint64_t budget)
      : left_(std::move(left)), right_(std::move(right)) {
    if (left_->order() > budget / right_->order())
      throw Error(Errc::BudgetExceeded, "product order exceeds enumeration budget");
  }

  std::string spec() const override {
    return "prod(" + left_->spec() + "," + right_->spec() + ")";
  }
  std::uint64_t order() const override { return left_->order() * right_->order(); }
  std::uint64_t identity() const override {
    return left_->identity() * right_->order() + right_->identity();
  }

  std::uint64_t op(std::uint64_t i, std::uint64_t j) const override {
    std::uint64_t m = right_->order();
    return left_->op(i / m, j / m) * m + right_->op(i % m, j % m);
  }

  std::uint64_t inverse(std::uint64_t i) const override {
    std::uint64_t m = right_->order();
    return left_->inverse(i / m) * m + right_->inverse(i % m);
  }

  std::string describe(std::uint64_t i) const override {
    std::uint64_t m = right_->order();
    return "(" + left_->describe(i / m) + "|" + right_->describe(i % m) + ")";
  }

  std::vector<std::uint64_t> generators() const override {
    std::uint64_t m = right_->order();
    std::vector<std::uint64_t> gens;
    for (std::uint64_t g : left_->generators()) gens.push_back(g * m + right_->identity());
    for (std::uint64_t h : right_->generators()) gens.push_back(left_->identity() * m + h);
    return gens;
  }

  std::optional<std::uint64_t> find(const std::string& text) const override {
    if (text.size() < 3 || text.front() != '(' || text.back() != ')') return std::nullopt;
    std::string body = text.substr(1, text.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char ch = body[i];
      if (ch == '(')
        ++depth;
      else if (ch == ')')
        --depth;
      else if (ch == '|' && depth == 0) {
        auto l = left_->find(body.substr(0, i));
        auto r = right_->find(body.substr(i + 1));
        if (!l || !r) return std::nullopt;
        return *l * right_->order() + *r;
      }
    }
    return std::nullopt;
  }

  const Group& left() const { return *left_; }
  const Group& right() const { return *right_; }

 private:
  GroupPtr left_, right_;
};

// ---------------------------------------------------------------------------

GroupPtr make_sl2_group(std::shared_ptr<const Gf2Tower> tower, unsigned degree,
                        std::uint64_t budget) {
  return std::make_shared<Sl2Gf2Group>(std::move(tower), degree, budget);
}

GroupPtr make_sl2_group(unsigned degree, std::uint64_t budget) {
  std::vector<unsigned> degrees;
  if (degree != 1) degrees.push_back(1);
  degrees.push_back(degree);
  if (2 * degree <= Gf2Tower::kMaxDegree) degrees.push_back(2 * degree);
  auto tower = std::make_shared<const Gf2Tower>(degrees);
  return make_sl2_group(tower, degree, budget);
}

GroupPtr make_sl2_gfp_group(unsigned p, std::uint64_t budget) {
  return std::make_shared<Sl2GfpGroup>(p, budget);
}

GroupPtr make_sym_group(unsigned n, std::uint64_t budget) {
  return std::make_shared<SymGroup>(n, budget);
}

GroupPtr direct_product(GroupPtr left, GroupPtr right, std::uint64_t budget) {
  return std::make_shared<ProductGroup>(std::move(left), std::move(right), budget);
}

GroupPtr parse_group_spec(const std::string& text, std::uint64_t budget) {
  if (text.rfind("prod(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(5, text.size() - 6);
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char ch = body[i];
      if (ch == '(')
        ++depth;
      else if (ch == ')')
        --depth;
      else if (ch == ',' && depth == 0) {
        return direct_product(parse_group_spec(body.substr(0, i), budget),
                              parse_group_spec(body.substr(i + 1), budget), budget);
      }
    }
    throw Error(Errc::BadInput, "prod(...) needs two comma-separated specs");
  }
  try {
    if (text.rfind("sl2:gf2_", 0) == 0)
      return make_sl2_group(static_cast<unsigned>(std::stoul(text.substr(8))), budget);
    if (text.rfind("sl2:gfp_", 0) == 0)
      return make_sl2_gfp_group(static_cast<unsigned>(std::stoul(text.substr(8))), budget);
    if (text.rfind("sym:", 0) == 0)
      return make_sym_group(static_cast<unsigned>(std::stoul(text.substr(4))), budget);
  } catch (const std::logic_error&) {
    throw Error(Errc::BadInput, "malformed group spec '" + text + "'");
  }
  throw Error(Errc::BadInput, "unknown group spec '" + text + "'");
}

std::vector<std::uint64_t> generated_subgroup(const Group& g,
                                              const std::vector<std::uint64_t>& s,
                                              std::uint64_t budget) {
  std::vector<std::uint64_t> step;
  for (std::uint64_t x : s) {
    step.push_back(x);
    step.push_back(g.inverse(x));
  }
  std::unordered_set<std::uint64_t> seen{g.identity()};
  std::vector<std::uint64_t> queue{g.identity()};
  while (!queue.empty()) {
    std::uint64_t x = queue.back();
    queue.pop_back();
    for (std::uint64_t y : step) {
      std::uint64_t z = g.op(x, y);
      if (seen.insert(z).second) {
        if (seen.size() > budget)
          throw Error(Errc::BudgetExceeded, "subgroup closure exceeds budget");
        queue.push_back(z);
      }
    }
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

const Gf2Level* sl2_level_of(const Group& g) {
  if (auto* s = dynamic_cast<const Sl2Gf2Group*>(&g)) return &s->level();
  return nullptr;
}

std::optional<Mat2<Gf2k>> sl2_matrix_of(const Group& g, std::uint64_t index) {
  if (auto* s = dynamic_cast<const Sl2Gf2Group*>(&g)) return s->matrix_at(index);
  return std::nullopt;
}

std::optional<std::uint64_t> sl2_index_of(const Group& g, const Mat2<Gf2k>& m) {
  if (auto* s = dynamic_cast<const Sl2Gf2Group*>(&g)) return s->index_of(m);
  return std::nullopt;
}

}  // namespace sl2lab
