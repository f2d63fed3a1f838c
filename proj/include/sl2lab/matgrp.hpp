#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/fields.hpp"

namespace sl2lab {

/// Row-major 2x2 matrix of determinant 1. The determinant is checked at
/// construction, so every value of this type is a group element.
template <FieldScalar F>
struct Mat2 {
  F a, b, c, d;

  Mat2(const F& a_, const F& b_, const F& c_, const F& d_) : a(a_), b(b_), c(c_), d(d_) {
    if (!(det() == a.one_like()))
      throw Error(Errc::DeterminantNotOne, "matrix determinant is not 1");
  }

  static Mat2 identity_like(const F& sample) {
    F z = sample.zero_like(), o = sample.one_like();
    return Mat2(o, z, z, o);
  }

  F det() const { return a * d - b * c; }
  F trace() const { return a + d; }
  bool is_identity() const {
    return a.is_one() && b.is_zero() && c.is_zero() && d.is_one();
  }

  friend Mat2 operator*(const Mat2& g, const Mat2& h) {
    return Mat2(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
  }

  Mat2 inverse() const {
    F z = a.zero_like();
    return Mat2(d, z - b, z - c, a);
  }

  friend bool operator==(const Mat2& g, const Mat2& h) {
    return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
  }
  friend bool operator!=(const Mat2& g, const Mat2& h) { return !(g == h); }
  /// Lexicographic on the serialized entry order (a, b, c, d).
  friend bool operator<(const Mat2& g, const Mat2& h) {
    if (!(g.a == h.a)) return g.a < h.a;
    if (!(g.b == h.b)) return g.b < h.b;
    if (!(g.c == h.c)) return g.c < h.c;
    return g.d < h.d;
  }

  std::string str() const;
};

// Field tag and bare entry text used by the matrix serialization
// "[[a,b],[c,d]]@<field tag>".
inline std::string field_tag(const Gf2k& x) { return "gf2_" + std::to_string(x.degree()); }
inline std::string field_tag(const Gfp& x) { return "gfp_" + std::to_string(x.modulus()); }
inline std::string field_tag(const RatFunc&) { return "rf2"; }

inline std::string entry_text(const Gf2k& x) {
  std::string s = x.str();
  return s.substr(s.find(':') + 1);
}
inline std::string entry_text(const Gfp& x) { return std::to_string(x.value()); }
inline std::string entry_text(const RatFunc& x) {
  std::string s = x.str();
  return s.substr(s.find(':') + 1);
}

template <FieldScalar F>
std::string Mat2<F>::str() const {
  return "[[" + entry_text(a) + "," + entry_text(b) + "],[" + entry_text(c) + "," +
         entry_text(d) + "]]@" + field_tag(a);
}

/// Splits "[[a,b],[c,d]]@tag" into entry texts and the field tag.
struct Mat2Text {
  std::string entries[4];
  std::string tag;
};
Mat2Text split_mat2_text(const std::string& text);

Mat2<Gf2k> parse_mat2_gf2(const std::string& text, const Gf2Tower& tower);
Mat2<Gfp> parse_mat2_gfp(const std::string& text);
Mat2<RatFunc> parse_mat2_rf2(const std::string& text);

/// All of SL2 over the given field elements, sorted by (a,b,c,d). The element
/// list must be the full field; the group has size q(q^2-1).
template <FieldScalar F>
std::vector<Mat2<F>> enumerate_sl2(const std::vector<F>& field_elems, std::uint64_t budget);

std::vector<Gf2k> all_field_elements(const Gf2Level& level);
std::vector<Gfp> all_field_elements_gfp(unsigned p);

std::uint64_t sl2_order(std::uint64_t q);  // q(q^2-1)

// ---------------------------------------------------------------------------
// Jordan canonical form over the tower

struct JordanData {
  enum class Kind { Diagonal, Unipotent };
  Kind kind;
  std::optional<Gf2k> eigenvalue;  // least root of the characteristic polynomial
  Mat2<Gf2k> conjugator;           // conjugator * J * conjugator^-1 = embedded g
  unsigned extension_degree;       // level where the form lives

  Mat2<Gf2k> form() const;
};

/// Jordan form of a non-identity element. Distinct eigenvalues give a diagonal
/// form (extending to the degree-2k level when the characteristic polynomial
/// has no roots at level k); a repeated eigenvalue forces eigenvalue 1 in
/// characteristic 2 and the form [[1,1],[0,1]].
JordanData jordan_form(const Mat2<Gf2k>& g);

// ---------------------------------------------------------------------------
// Centralizers

enum class CentralizerKind { SplitTorus, NonsplitTorus, UnipotentCent };
const char* centralizer_kind_name(CentralizerKind k);

struct CentralizerDescription {
  CentralizerKind kind;
  Mat2<Gf2k> conjugator;      // conjugator * g * conjugator^-1 = standard representative
  std::uint64_t order;        // q-1, q+1 or q
  std::string order_formula;  // "q-1" | "q+1" | "q"
};

/// Structural classification of C(g) for non-identity g over GF(q): split
/// torus (eigenvalues in GF(q)), nonsplit torus (eigenvalues only in GF(q^2))
/// or unipotent centralizer (trace 0).
CentralizerDescription centralizer_structural(const Mat2<Gf2k>& g);

/// The predicted centralizer as an explicit sorted set of matrices,
/// conjugated back from the standard representative's centralizer.
std::vector<Mat2<Gf2k>> materialize_centralizer(const CentralizerDescription& desc,
                                                const Mat2<Gf2k>& g);

/// Exact commutant scan over the whole group.
template <FieldScalar F>
std::vector<Mat2<F>> centralizer_bruteforce(const Mat2<F>& g,
                                            const std::vector<Mat2<F>>& group);

// ---------------------------------------------------------------------------
// ICC witness families

struct IccWitness {
  Mat2<Gf2k> conjugator;  // h with h * g * h^-1 = conjugate
  Mat2<Gf2k> conjugate;
};

/// Distinct conjugates of a Jordan-form element: for diag(a, a^-1) the family
/// [[a, (a+a^-1)b],[0, a^-1]] over nonzero b, for [[1,1],[0,1]] the family
/// [[1, c^2],[0,1]] over nonzero c. Escalates along the tower when the level
/// has fewer than n nonzero elements.
std::vector<IccWitness> icc_witness_family(const Mat2<Gf2k>& g, std::uint64_t n);

/// Conjugacy class sizes of g embedded at each listed tower degree, computed
/// by orbit-stabilizer from the structural centralizer order.
std::vector<std::uint64_t> class_growth_along_tower(const Mat2<Gf2k>& g,
                                                    const std::vector<unsigned>& degrees,
                                                    std::uint64_t budget);

// ---------------------------------------------------------------------------
// Whole-group scans (implemented on top of the group runtime)

struct CtReport {
  bool holds = true;
  // witness: g plus two elements of C(g) that do not commute
  std::vector<std::string> witness;
  std::uint64_t group_order = 0;
};

struct ClassInfo {
  std::string representative;
  std::uint64_t size = 0;
  std::uint64_t centralizer_order = 0;
};

CtReport ct_check_gf2(const Gf2Level& level, std::uint64_t budget);
CtReport ct_check_gfp(unsigned p, std::uint64_t budget);
std::vector<ClassInfo> conjugacy_classes_gf2(const Gf2Level& level, std::uint64_t budget);

// template definitions -------------------------------------------------------

template <FieldScalar F>
std::vector<Mat2<F>> enumerate_sl2(const std::vector<F>& field_elems, std::uint64_t budget) {
  std::uint64_t q = field_elems.size();
  std::uint64_t size = sl2_order(q);
  if (size > budget)
    throw Error(Errc::BudgetExceeded, "|SL2(GF(" + std::to_string(q) + "))| = " +
                                          std::to_string(size) + " exceeds budget " +
                                          std::to_string(budget));
  const F& sample = field_elems.front();
  F one = sample.one_like(), zero = sample.zero_like();
  F minus_one = zero - one;
  std::vector<Mat2<F>> out;
  out.reserve(size);
  for (const F& a : field_elems) {
    for (const F& b : field_elems) {
      if (a.is_zero()) {
        if (b.is_zero()) continue;
        F c = minus_one * b.inv();  // bc = -1
        for (const F& d : field_elems) out.push_back(Mat2<F>(a, b, c, d));
      } else {
        F ainv = a.inv();
        for (const F& c : field_elems) out.push_back(Mat2<F>(a, b, c, (one + b * c) * ainv));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <FieldScalar F>
std::vector<Mat2<F>> centralizer_bruteforce(const Mat2<F>& g,
                                            const std::vector<Mat2<F>>& group) {
  std::vector<Mat2<F>> out;
  for (const auto& h : group)
    if (h * g == g * h) out.push_back(h);
  return out;
}

}  // namespace sl2lab
