#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sl2lab/fields.hpp"
#include "sl2lab/matgrp.hpp"

namespace sl2lab {

/// Finite group with a dense element index [0, order). Elements are addressed
/// by index; the canonical enumeration order is lexicographic on serialized
/// entries. Handles are immutable after construction and safe to share across
/// threads (internal caches are mutex-guarded).
class Group {
 public:
  virtual ~Group() = default;

  virtual std::string spec() const = 0;
  virtual std::uint64_t order() const = 0;
  virtual std::uint64_t identity() const = 0;
  virtual std::uint64_t op(std::uint64_t i, std::uint64_t j) const = 0;
  virtual std::uint64_t inverse(std::uint64_t i) const = 0;
  virtual std::string describe(std::uint64_t i) const = 0;
  virtual std::vector<std::uint64_t> generators() const = 0;

  /// Commutation test; concrete handles may override with a faster raw check.
  virtual bool commutes(std::uint64_t i, std::uint64_t j) const {
    return op(i, j) == op(j, i);
  }

  /// Index of the element with the given serialized form, if present.
  virtual std::optional<std::uint64_t> find(const std::string& element_text) const;

  std::uint64_t conjugate(std::uint64_t g, std::uint64_t x) const {
    return op(op(g, x), inverse(g));
  }

  /// Cached inverse table (built on first use).
  const std::vector<std::uint32_t>& inverse_table() const;
  /// Cached full multiplication table for small groups, nullptr otherwise.
  const std::uint32_t* op_table() const;
  static constexpr std::uint64_t kOpTableLimit = 2048;

 private:
  mutable std::mutex cache_mu_;
  mutable std::vector<std::uint32_t> inv_cache_;
  mutable std::vector<std::uint32_t> op_cache_;
  mutable bool op_cache_built_ = false;
};

using GroupPtr = std::shared_ptr<const Group>;

/// SL2 over a tower level GF(2^k). Owns its tower unless one is supplied.
GroupPtr make_sl2_group(unsigned degree, std::uint64_t budget);
GroupPtr make_sl2_group(std::shared_ptr<const Gf2Tower> tower, unsigned degree,
                        std::uint64_t budget);
/// SL2 over a prime field GF(p), p in {2,3,5,7}; the odd-characteristic control.
GroupPtr make_sl2_gfp_group(unsigned p, std::uint64_t budget);
/// Symmetric group Sym(n) in one-line notation, lexicographic element order.
GroupPtr make_sym_group(unsigned n, std::uint64_t budget);
/// Direct product with componentwise operation; elements stay lazy
/// (index arithmetic on the factors, no materialized tables).
GroupPtr direct_product(GroupPtr left, GroupPtr right, std::uint64_t budget);

/// Parses "sl2:gf2_<k>", "sl2:gfp_<p>", "sym:<n>" or "prod(spec,spec)".
GroupPtr parse_group_spec(const std::string& text, std::uint64_t budget);

/// Smallest subgroup containing S: breadth-first closure under multiplication
/// by the generators and their inverses. Always contains the identity.
std::vector<std::uint64_t> generated_subgroup(const Group& g,
                                              const std::vector<std::uint64_t>& s,
                                              std::uint64_t budget);

/// Accessors used by matrix-level code when the handle is an SL2 level.
const Gf2Level* sl2_level_of(const Group& g);
std::optional<Mat2<Gf2k>> sl2_matrix_of(const Group& g, std::uint64_t index);
std::optional<std::uint64_t> sl2_index_of(const Group& g, const Mat2<Gf2k>& m);

}  // namespace sl2lab
