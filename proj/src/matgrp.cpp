#include "sl2lab/matgrp.hpp"

namespace sl2lab {

std::uint64_t sl2_order(std::uint64_t q) { return q * (q * q - 1); }

std::vector<Gf2k> all_field_elements(const Gf2Level& level) {
  std::vector<Gf2k> out;
  out.reserve(level.order());
  for (std::uint64_t b = 0; b < level.order(); ++b) out.emplace_back(level, b);
  return out;
}

std::vector<Gfp> all_field_elements_gfp(unsigned p) {
  std::vector<Gfp> out;
  for (unsigned v = 0; v < p; ++v) out.emplace_back(p, v);
  return out;
}

Mat2Text split_mat2_text(const std::string& text) {
  std::size_t at = text.rfind('@');
  if (at == std::string::npos)
    throw Error(Errc::BadInput, "matrix text missing '@<field tag>': '" + text + "'");
  std::string body = text.substr(0, at);
  Mat2Text out;
  out.tag = text.substr(at + 1);
  if (body.size() < 11 || body.substr(0, 2) != "[[" ||
      body.substr(body.size() - 2) != "]]")
    throw Error(Errc::BadInput, "matrix text must look like [[a,b],[c,d]]");
  std::string inner = body.substr(2, body.size() - 4);  // a,b],[c,d
  std::size_t mid = inner.find("],[");
  if (mid == std::string::npos)
    throw Error(Errc::BadInput, "matrix text must look like [[a,b],[c,d]]");
  std::string rows[2] = {inner.substr(0, mid), inner.substr(mid + 3)};
  for (int r = 0; r < 2; ++r) {
    std::size_t comma = rows[r].find(',');
    if (comma == std::string::npos)
      throw Error(Errc::BadInput, "matrix row needs two comma-separated entries");
    out.entries[2 * r] = rows[r].substr(0, comma);
    out.entries[2 * r + 1] = rows[r].substr(comma + 1);
  }
  return out;
}

Mat2<Gf2k> parse_mat2_gf2(const std::string& text, const Gf2Tower& tower) {
  Mat2Text t = split_mat2_text(text);
  if (t.tag.rfind("gf2_", 0) != 0)
    throw Error(Errc::BadInput, "expected a gf2_<k> matrix, got tag '" + t.tag + "'");
  Gf2k e[4] = {Gf2k::parse(t.tag + ":" + t.entries[0], tower),
               Gf2k::parse(t.tag + ":" + t.entries[1], tower),
               Gf2k::parse(t.tag + ":" + t.entries[2], tower),
               Gf2k::parse(t.tag + ":" + t.entries[3], tower)};
  return Mat2<Gf2k>(e[0], e[1], e[2], e[3]);
}

Mat2<Gfp> parse_mat2_gfp(const std::string& text) {
  Mat2Text t = split_mat2_text(text);
  if (t.tag.rfind("gfp_", 0) != 0)
    throw Error(Errc::BadInput, "expected a gfp_<p> matrix, got tag '" + t.tag + "'");
  Gfp e[4] = {Gfp::parse(t.tag + ":" + t.entries[0]), Gfp::parse(t.tag + ":" + t.entries[1]),
              Gfp::parse(t.tag + ":" + t.entries[2]), Gfp::parse(t.tag + ":" + t.entries[3])};
  return Mat2<Gfp>(e[0], e[1], e[2], e[3]);
}

Mat2<RatFunc> parse_mat2_rf2(const std::string& text) {
  Mat2Text t = split_mat2_text(text);
  if (t.tag != "rf2")
    throw Error(Errc::BadInput, "expected an rf2 matrix, got tag '" + t.tag + "'");
  RatFunc e[4] = {RatFunc::parse("rf2:" + t.entries[0]), RatFunc::parse("rf2:" + t.entries[1]),
                  RatFunc::parse("rf2:" + t.entries[2]), RatFunc::parse("rf2:" + t.entries[3])};
  return Mat2<RatFunc>(e[0], e[1], e[2], e[3]);
}

// ---------------------------------------------------------------------------
// Jordan form

namespace {

// Least root of the characteristic polynomial z^2 + t z + 1 inside the
// element's own level, by exhaustive scan.
std::optional<Gf2k> char_root_in_level(const Mat2<Gf2k>& g) {
  const Gf2Level& lvl = g.a.level();
  Gf2k t = g.trace(), one = g.a.one_like();
  for (std::uint64_t bits = 0; bits < lvl.order(); ++bits) {
    Gf2k z(lvl, bits);
    if ((z * z + t * z + one).is_zero()) return z;
  }
  return std::nullopt;
}

// Eigenvector of g for eigenvalue lam; g is not a scalar matrix.
std::pair<Gf2k, Gf2k> eigenvector(const Mat2<Gf2k>& g, const Gf2k& lam) {
  if (!g.b.is_zero()) return {g.b, lam - g.a};
  if (!g.c.is_zero()) return {lam - g.d, g.c};
  // diagonal: eigenvalues are the diagonal entries
  Gf2k z = lam.zero_like(), o = lam.one_like();
  if (g.a == lam) return {o, z};
  return {z, o};
}

// Conjugator C with C * diag(lam, lam^-1) * C^-1 = g, det C = 1.
Mat2<Gf2k> diagonalizing_conjugator(const Mat2<Gf2k>& g, const Gf2k& lam) {
  Gf2k mu = lam.inv();
  if (g.b.is_zero() && g.c.is_zero()) {
    Gf2k z = lam.zero_like(), o = lam.one_like();
    if (g.a == lam) return Mat2<Gf2k>::identity_like(lam);
    return Mat2<Gf2k>(z, o, o, z);  // swap; det = -1 = 1 in characteristic 2
  }
  auto [x1, y1] = eigenvector(g, lam);
  auto [x2, y2] = eigenvector(g, mu);
  Gf2k det = x1 * y2 - y1 * x2;  // nonzero: distinct eigenvalues
  Gf2k s = det.inv();
  return Mat2<Gf2k>(x1, x2 * s, y1, y2 * s);
}

// Conjugator C with C * [[1,1],[0,1]] * C^-1 = g, det C = 1; g unipotent, not
// the identity.
Mat2<Gf2k> unipotent_conjugator(const Mat2<Gf2k>& g) {
  Gf2k o = g.a.one_like();
  // g = I + N; columns w = Nv (fixed) and v with Nv != 0
  Gf2k n11 = g.a + o, n21 = g.c, n12 = g.b, n22 = g.d + o;
  Gf2k wx, wy, vx, vy;
  Gf2k z = g.a.zero_like();
  if (!n11.is_zero() || !n21.is_zero()) {
    wx = n11, wy = n21, vx = o, vy = z;
  } else {
    wx = n12, wy = n22, vx = z, vy = o;
  }
  Gf2k det = wx * vy - wy * vx;
  Gf2k alpha = det.inv().sqrt();  // uniform scaling keeps the form [[1,1],[0,1]]
  return Mat2<Gf2k>(alpha * wx, alpha * vx, alpha * wy, alpha * vy);
}

}  // namespace

Mat2<Gf2k> JordanData::form() const {
  if (kind == Kind::Unipotent) {
    Gf2k o = conjugator.a.one_like(), z = conjugator.a.zero_like();
    return Mat2<Gf2k>(o, o, z, o);
  }
  Gf2k z = eigenvalue->zero_like();
  return Mat2<Gf2k>(*eigenvalue, z, z, eigenvalue->inv());
}

JordanData jordan_form(const Mat2<Gf2k>& g) {
  if (g.is_identity()) throw Error(Errc::IdentityInput, "Jordan form of the identity");
  unsigned k = g.a.degree();
  if (g.trace().is_zero()) {
    // repeated eigenvalue; lambda^2 = det = 1 forces lambda = 1 in char 2
    return JordanData{JordanData::Kind::Unipotent, std::nullopt, unipotent_conjugator(g), k};
  }
  if (auto lam = char_root_in_level(g))
    return JordanData{JordanData::Kind::Diagonal, lam, diagonalizing_conjugator(g, *lam), k};
  const Gf2Tower& tower = *g.a.level().tower;
  unsigned ext = 2 * k;
  if (!tower.has_degree(ext))
    throw Error(Errc::ExtensionUnavailable,
                "eigenvalues live in GF(2^" + std::to_string(ext) +
                    "), which is not a tower level");
  Gf2k one = g.a.one_like();
  auto lam = tower.find_root({one, g.trace(), one}, ext);
  if (!lam)
    throw Error(Errc::ExtensionUnavailable, "characteristic polynomial failed to split");
  Mat2<Gf2k> ge(tower.embed(g.a, ext), tower.embed(g.b, ext), tower.embed(g.c, ext),
                tower.embed(g.d, ext));
  return JordanData{JordanData::Kind::Diagonal, lam, diagonalizing_conjugator(ge, *lam), ext};
}

// ---------------------------------------------------------------------------
// Centralizers

const char* centralizer_kind_name(CentralizerKind k) {
  switch (k) {
    case CentralizerKind::SplitTorus: return "SplitTorus";
    case CentralizerKind::NonsplitTorus: return "NonsplitTorus";
    case CentralizerKind::UnipotentCent: return "UnipotentCent";
  }
  return "?";
}

CentralizerDescription centralizer_structural(const Mat2<Gf2k>& g) {
  if (g.is_identity())
    throw Error(Errc::IdentityInput, "centralizer classification of the identity");
  std::uint64_t q = g.a.level().order();
  if (g.trace().is_zero()) {
    // C(g) is the conjugate of the upper triangular unipotent group, order q
    return CentralizerDescription{CentralizerKind::UnipotentCent,
                                  unipotent_conjugator(g).inverse(), q, "q"};
  }
  if (auto lam = char_root_in_level(g)) {
    // eigenvalues in GF(q): conjugate of the diagonal torus, order q-1
    return CentralizerDescription{CentralizerKind::SplitTorus,
                                  diagonalizing_conjugator(g, *lam).inverse(), q - 1, "q-1"};
  }
  // eigenvalues in GF(q^2) \ GF(q): the norm-one torus, order q+1. Conjugate
  // g to the companion matrix [[0,1],[1,t]] on the basis {v, gv}.
  Gf2k z = g.a.zero_like(), o = g.a.one_like();
  // v = e1 works: c = 0 would put the eigenvalues on the diagonal
  Gf2k s = g.c.inv().sqrt();
  Mat2<Gf2k> basis(s * o, s * g.a, s * z, s * g.c);
  return CentralizerDescription{CentralizerKind::NonsplitTorus, basis.inverse(), q + 1,
                                "q+1"};
}

std::vector<Mat2<Gf2k>> materialize_centralizer(const CentralizerDescription& desc,
                                                const Mat2<Gf2k>& g) {
  const Gf2Level& lvl = g.a.level();
  Gf2k z = g.a.zero_like(), o = g.a.one_like();
  std::vector<Mat2<Gf2k>> out;
  Mat2<Gf2k> n = desc.conjugator, ninv = desc.conjugator.inverse();
  switch (desc.kind) {
    case CentralizerKind::SplitTorus:
      for (std::uint64_t b = 1; b < lvl.order(); ++b) {
        Gf2k u(lvl, b);
        out.push_back(ninv * Mat2<Gf2k>(u, z, z, u.inv()) * n);
      }
      break;
    case CentralizerKind::UnipotentCent:
      for (std::uint64_t b = 0; b < lvl.order(); ++b) {
        Gf2k v(lvl, b);
        out.push_back(ninv * Mat2<Gf2k>(o, v, z, o) * n);
      }
      break;
    case CentralizerKind::NonsplitTorus: {
      // span of I and g inside SL2: u + v*g with det = u^2 + uvt + v^2 = 1
      Gf2k t = g.trace();
      for (std::uint64_t ub = 0; ub < lvl.order(); ++ub) {
        for (std::uint64_t vb = 0; vb < lvl.order(); ++vb) {
          Gf2k u(lvl, ub), v(lvl, vb);
          if ((u * u + u * v * t + v * v).is_one())
            out.push_back(Mat2<Gf2k>(u + v * g.a, v * g.b, v * g.c, u + v * g.d));
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// ICC witness families

std::vector<IccWitness> icc_witness_family(const Mat2<Gf2k>& g, std::uint64_t n) {
  if (g.is_identity()) throw Error(Errc::IdentityInput, "identity has a singleton class");
  bool diagonal = g.b.is_zero() && g.c.is_zero();
  bool standard_unipotent =
      g.a.is_one() && g.d.is_one() && g.b.is_one() && g.c.is_zero();
  if (!diagonal && !standard_unipotent)
    throw Error(Errc::NotInJordanForm,
                "expected diag(a, a^-1) or [[1,1],[0,1]], got " + g.str());

  const Gf2Tower& tower = *g.a.level().tower;
  Mat2<Gf2k> work = g;
  unsigned deg = g.a.degree();
  while (tower.level(deg).order() - 1 < n) {
    std::size_t idx = tower.level(deg).index;
    if (idx + 1 >= tower.level_count())
      throw Error(Errc::FieldTooSmall,
                  "need " + std::to_string(n) + " nonzero scalars; top tower level GF(2^" +
                      std::to_string(deg) + ") has only " +
                      std::to_string(tower.level(deg).order() - 1) +
                      " (add a higher tower level)");
    deg = tower.level_at(idx + 1).degree;
    work = Mat2<Gf2k>(tower.embed(g.a, deg), tower.embed(g.b, deg), tower.embed(g.c, deg),
                      tower.embed(g.d, deg));
  }

  const Gf2Level& lvl = work.a.level();
  Gf2k z = work.a.zero_like(), o = work.a.one_like();
  std::vector<IccWitness> out;
  out.reserve(n);
  for (std::uint64_t bits = 1; bits < lvl.order() && out.size() < n; ++bits) {
    Gf2k s(lvl, bits);
    Mat2<Gf2k> h = diagonal ? Mat2<Gf2k>(s, o, z, s.inv())       // [[b,1],[0,b^-1]]
                            : Mat2<Gf2k>(s, z, z, s.inv());      // diag(c, b), bc = 1
    Mat2<Gf2k> conj = h * work * h.inverse();
    out.push_back(IccWitness{h, conj});
  }
  // sanity: the displayed families are pairwise distinct
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].conjugate == out[j].conjugate)
        throw Error(Errc::BadInput, "conjugate family collision");
  return out;
}

std::vector<std::uint64_t> class_growth_along_tower(const Mat2<Gf2k>& g,
                                                    const std::vector<unsigned>& degrees,
                                                    std::uint64_t budget) {
  const Gf2Tower& tower = *g.a.level().tower;
  std::vector<std::uint64_t> sizes;
  for (unsigned deg : degrees) {
    const Gf2Level& lvl = tower.level(deg);
    std::uint64_t group_order = sl2_order(lvl.order());
    if (group_order > budget)
      throw Error(Errc::BudgetExceeded, "SL2 level GF(2^" + std::to_string(deg) +
                                            ") exceeds enumeration budget");
    Mat2<Gf2k> e(tower.embed(g.a, deg), tower.embed(g.b, deg), tower.embed(g.c, deg),
                 tower.embed(g.d, deg));
    if (e.is_identity()) {
      sizes.push_back(1);
    } else {
      // orbit-stabilizer against the structural centralizer order
      sizes.push_back(group_order / centralizer_structural(e).order);
    }
  }
  return sizes;
}

}  // namespace sl2lab
