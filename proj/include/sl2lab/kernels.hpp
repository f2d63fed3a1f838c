#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sl2lab/groups.hpp"
#include "sl2lab/rational.hpp"

namespace sl2lab::kernels {

/// True when the parallel lane actually runs OpenMP threads. The serial lane
/// is the reference implementation; both lanes produce identical results and
/// the test suite holds them to that.
bool parallel_available();
bool default_parallel();

/// position -> index of g * element
std::vector<std::uint32_t> left_action(const Group& g, std::uint64_t elem, bool parallel);
/// position -> index of g * element * g^-1
std::vector<std::uint32_t> conj_action(const Group& g, std::uint64_t elem, bool parallel);

/// Indices of all elements commuting with the given element, ascending.
std::vector<std::uint32_t> centralizer_indices(const Group& g, std::uint64_t elem,
                                               bool parallel);

struct CtScanResult {
  bool ct = true;
  // the least g (by index) with a nonabelian centralizer plus the lex-least
  // witnesses h1, h2 in C(g) with h1 h2 != h2 h1
  std::uint64_t g = 0, h1 = 0, h2 = 0;
};

/// Commutative-transitivity scan: every centralizer of a non-identity element
/// must be abelian.
CtScanResult ct_scan(const Group& g, bool parallel);

struct ClassPartition {
  std::vector<std::uint32_t> class_of;  // element index -> class id
  std::vector<std::uint64_t> reps;      // class id -> least member index
  std::vector<std::uint64_t> sizes;     // class id -> cardinality
};

/// Exhaustive conjugation scan; class ids are assigned by ascending least
/// representative, so the partition is identical in both lanes.
ClassPartition conjugacy_partition(const Group& g, bool parallel);

/// max over the given actions of |pi(T) symdiff T|; T is a sorted index list.
std::uint64_t max_symdiff(const std::vector<std::vector<std::uint32_t>>& actions,
                          const std::vector<std::uint64_t>& t, std::uint64_t group_order);

/// Minimal-subset sweep over a universe of at most 64 positions. Candidates of
/// one fixed size are visited in lexicographic order of their sorted position
/// tuples; the first set whose worst symmetric-difference ratio beats epsilon
/// strictly wins. The parallel lane splits on the first position and merges
/// by chunk order, which keeps the winner identical to the serial lane's.
struct SweepInput {
  std::vector<std::vector<std::uint8_t>> actions;  // per constraint: position map
  unsigned universe = 0;
  Rational epsilon;
};

std::optional<std::uint64_t> subset_sweep(const SweepInput& in, unsigned size,
                                          bool parallel, std::uint64_t* examined);

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial_saturating(unsigned n, unsigned k);

}  // namespace sl2lab::kernels
