#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/groups.hpp"
#include "sl2lab/matgrp.hpp"
#include "sl2lab/rational.hpp"

namespace sl2lab {

enum class FolnerMode { Translation, Conjugation };
const char* folner_mode_name(FolnerMode m);

/// A certified almost-invariant set: max over g in S of |gT sym T|/|T|
/// (Translation) or |gTg^-1 sym T|/|T| (Conjugation) is strictly below epsilon.
struct FolnerCertificate {
  FolnerMode mode = FolnerMode::Translation;
  std::string group;                  // group spec string
  std::vector<std::uint64_t> s, t;    // sorted element indices
  Rational epsilon;
  Rational defect;
  bool exclude_identity = false;      // Conjugation-mode convention flag

  std::string to_json(const Group& g) const;
};

/// Rebuilds the group from the spec string inside the JSON record and checks
/// the stored defect against a fresh computation.
bool verify_certificate_json(const std::string& json_text, std::uint64_t budget);

/// Exact worst symmetric-difference ratio of T against S.
Rational folner_defect(const Group& g, const std::vector<std::uint64_t>& s,
                       const std::vector<std::uint64_t>& t, FolnerMode mode);

struct CertifyResult {
  std::optional<FolnerCertificate> certificate;  // present iff defect < epsilon
  Rational defect;
};

CertifyResult certify(const Group& g, const std::vector<std::uint64_t>& s,
                      const std::vector<std::uint64_t>& t, const Rational& epsilon,
                      FolnerMode mode, bool exclude_identity = false);

enum class SearchStatus { Exact, Heuristic, Exhausted };
const char* search_status_name(SearchStatus s);

struct SearchOptions {
  std::uint64_t subset_budget = 100'000'000;  // candidate evaluations, exact phase
  bool exclude_identity = true;               // applies to Conjugation mode only
  bool allow_heuristic = true;
  bool parallel = true;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<FolnerCertificate> witness;
  std::uint64_t lower_bound = 0;  // no witness of size < lower_bound exists
  std::uint64_t examined = 0;
};

/// Minimal witness search. The exact phase enumerates candidate sizes upward
/// (complete per size) while the per-size candidate counts fit the budget;
/// sizes that only admit defect 0 are resolved through invariant sets alone
/// (conjugacy-class unions / coset unions of the generated subgroup). Beyond
/// the exact phase, invariant seeds with a greedy shrink pass give a certified
/// upper bound flagged heuristic.
SearchResult min_folner_search(const Group& g, const std::vector<std::uint64_t>& s,
                               const Rational& epsilon, FolnerMode mode,
                               std::uint64_t min_size, const SearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Uniformity profiles

struct ProfileRow {
  std::string level;      // group spec of the family member
  std::uint32_t n = 0;
  std::uint32_t sample = 0;
  std::string sampler;    // "generators" | "random" | "largest-classes"
  std::vector<std::uint64_t> s;
  SearchStatus status = SearchStatus::Exhausted;
  std::uint64_t min_t = 0;          // witness size, 0 when none
  Rational defect;                  // witness defect when present
  std::vector<std::uint64_t> t;     // witness elements
};

struct UniformityProfile {
  FolnerMode mode = FolnerMode::Conjugation;
  std::string family;
  std::uint64_t seed = 0;
  std::uint32_t n_lo = 1, n_hi = 1;
  bool exclude_identity = true;
  std::vector<ProfileRow> rows;

  /// Frozen CSV schema: one row per sample.
  std::string to_csv(const std::vector<GroupPtr>& levels) const;
  std::string to_json(const std::vector<GroupPtr>& levels) const;
};

struct ProfileOptions {
  std::uint64_t seed = 1;
  std::uint32_t samples_per_cell = 3;
  std::uint64_t subset_budget = 2'000'000;
  bool exclude_identity = true;
  bool parallel = true;
};

/// For each family level and each n in [n_lo, n_hi]: sample S with |S| <= n,
/// search the minimal certified T with defect < 1/n (and |T| >= n in
/// Conjugation mode), and record the outcome. Budget exhaustion marks the cell
/// and the run continues.
UniformityProfile profile_uniform(const std::vector<GroupPtr>& family, FolnerMode mode,
                                  std::uint32_t n_lo, std::uint32_t n_hi,
                                  const ProfileOptions& opts);

// ---------------------------------------------------------------------------
// Product lift

/// Lifts a Conjugation certificate (S, T) over G to (S', T x {e_H}) over
/// G x H, for S' whose first coordinates lie inside S. Componentwise
/// conjugation fixes the second coordinate, so the per-element ratios carry
/// over exactly; the stored defect is recomputed over S'.
FolnerCertificate product_lift(const FolnerCertificate& cert, const Group& product,
                               const Group& left, const Group& right,
                               const std::vector<std::uint64_t>& s_prime);

// ---------------------------------------------------------------------------
// Free-word scan over SL2(GF(2)(t))

struct FreeWordReport {
  std::string gen_a, gen_b;  // serialized generators
  unsigned max_len = 0;
  struct PerLength {
    std::uint64_t count = 0;          // reduced words of this length
    int max_entry_degree = 0;         // largest entry degree seen
  };
  std::vector<PerLength> per_length;  // index 0 = length 1
  std::vector<std::string> identity_words;
  bool no_relation = true;            // no reduced word evaluates to I

  std::string to_json() const;
};

/// Evaluates every reduced word of length <= max_len in a, a^-1, b, b^-1
/// exactly and reports any word equal to the identity.
FreeWordReport free_words_check(const Mat2<RatFunc>& a, const Mat2<RatFunc>& b,
                                unsigned max_len);

/// The natural transcendental unipotents [[1,t],[0,1]] and [[1,0],[t,1]].
Mat2<RatFunc> default_free_gen_a();
Mat2<RatFunc> default_free_gen_b();

}  // namespace sl2lab
