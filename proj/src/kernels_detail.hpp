#pragma once

// Internal split between the serial reference lane and the OpenMP lane of the
// scan kernels. Both lanes must return identical results; tests compare them.

#include "sl2lab/kernels.hpp"

namespace sl2lab::kernels::detail {

std::vector<std::uint32_t> left_action_serial(const Group& g, std::uint64_t elem);
std::vector<std::uint32_t> conj_action_serial(const Group& g, std::uint64_t elem);
std::vector<std::uint32_t> centralizer_serial(const Group& g, std::uint64_t elem);
CtScanResult ct_scan_serial(const Group& g);
ClassPartition conjugacy_partition_serial(const Group& g);
std::optional<std::uint64_t> subset_sweep_serial(const SweepInput& in, unsigned size,
                                                 std::uint64_t* examined);

std::vector<std::uint32_t> left_action_parallel(const Group& g, std::uint64_t elem);
std::vector<std::uint32_t> conj_action_parallel(const Group& g, std::uint64_t elem);
std::vector<std::uint32_t> centralizer_parallel(const Group& g, std::uint64_t elem);
CtScanResult ct_scan_parallel(const Group& g);
ClassPartition conjugacy_partition_parallel(const Group& g);
std::optional<std::uint64_t> subset_sweep_parallel(const SweepInput& in, unsigned size,
                                                   std::uint64_t* examined);

// Shared helpers.
struct CommuteFn {
  const Group& g;
  const std::uint32_t* table;
  std::uint64_t n;
  explicit CommuteFn(const Group& g_)
      : g(g_), table(g_.op_table()), n(g_.order()) {}
  bool operator()(std::uint64_t i, std::uint64_t j) const {
    if (table) return table[i * n + j] == table[j * n + i];
    return g.commutes(i, j);
  }
};

// Lex-least non-commuting pair inside an ascending index list, if any.
std::optional<std::pair<std::uint64_t, std::uint64_t>> first_noncommuting_pair(
    const CommuteFn& commute, const std::vector<std::uint32_t>& members);

}  // namespace sl2lab::kernels::detail
