#include <atomic>
#include <cstdint>

#include "kernels_detail.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sl2lab::kernels {

bool parallel_available() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1;
#else
  return false;
#endif
}

namespace detail {

#ifndef _OPENMP

// Without OpenMP the parallel lane is the reference lane.
std::vector<std::uint32_t> left_action_parallel(const Group& g, std::uint64_t e) {
  return left_action_serial(g, e);
}
std::vector<std::uint32_t> conj_action_parallel(const Group& g, std::uint64_t e) {
  return conj_action_serial(g, e);
}
std::vector<std::uint32_t> centralizer_parallel(const Group& g, std::uint64_t e) {
  return centralizer_serial(g, e);
}
CtScanResult ct_scan_parallel(const Group& g) { return ct_scan_serial(g); }
ClassPartition conjugacy_partition_parallel(const Group& g) {
  return conjugacy_partition_serial(g);
}
std::optional<std::uint64_t> subset_sweep_parallel(const SweepInput& in, unsigned size,
                                                   std::uint64_t* examined) {
  return subset_sweep_serial(in, size, examined);
}

#else

std::vector<std::uint32_t> left_action_parallel(const Group& g, std::uint64_t elem) {
  std::int64_t n = static_cast<std::int64_t>(g.order());
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint32_t>(g.op(elem, static_cast<std::uint64_t>(i)));
  return out;
}

std::vector<std::uint32_t> conj_action_parallel(const Group& g, std::uint64_t elem) {
  std::int64_t n = static_cast<std::int64_t>(g.order());
  std::uint64_t ginv = g.inverse(elem);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint32_t>(g.op(g.op(elem, static_cast<std::uint64_t>(i)), ginv));
  return out;
}

std::vector<std::uint32_t> centralizer_parallel(const Group& g, std::uint64_t elem) {
  std::int64_t n = static_cast<std::int64_t>(g.order());
  CommuteFn commute(g);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    hit[i] = commute(elem, static_cast<std::uint64_t>(i)) ? 1 : 0;
  std::vector<std::uint32_t> out;
  for (std::int64_t i = 0; i < n; ++i)
    if (hit[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

CtScanResult ct_scan_parallel(const Group& g) {
  std::int64_t n = static_cast<std::int64_t>(g.order());
  std::uint64_t e = g.identity();
  CommuteFn commute(g);
  std::atomic<std::uint64_t> least_violator{static_cast<std::uint64_t>(n)};
#pragma omp parallel
  {
    std::vector<std::uint32_t> cent;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t gi = 0; gi < n; ++gi) {
      auto gu = static_cast<std::uint64_t>(gi);
      if (gu == e || gu >= least_violator.load(std::memory_order_relaxed)) continue;
      cent.clear();
      for (std::uint64_t h = 0; h < static_cast<std::uint64_t>(n); ++h)
        if (commute(gu, h)) cent.push_back(static_cast<std::uint32_t>(h));
      if (first_noncommuting_pair(commute, cent)) {
        std::uint64_t seen = least_violator.load(std::memory_order_relaxed);
        while (gu < seen &&
               !least_violator.compare_exchange_weak(seen, gu, std::memory_order_relaxed)) {
        }
      }
    }
  }
  std::uint64_t v = least_violator.load();
  if (v == static_cast<std::uint64_t>(n)) return CtScanResult{};
  // deterministic witness pair for the least violator
  std::vector<std::uint32_t> cent;
  for (std::uint64_t h = 0; h < static_cast<std::uint64_t>(n); ++h)
    if (commute(v, h)) cent.push_back(static_cast<std::uint32_t>(h));
  auto pair = first_noncommuting_pair(commute, cent);
  return CtScanResult{false, v, pair->first, pair->second};
}

ClassPartition conjugacy_partition_parallel(const Group& g) {
  std::int64_t n = static_cast<std::int64_t>(g.order());
  constexpr std::uint32_t kUnassigned = 0xffffffffu;
  ClassPartition part;
  part.class_of.assign(static_cast<std::size_t>(n), kUnassigned);
  const auto& inv = g.inverse_table();
  for (std::int64_t r = 0; r < n; ++r) {
    if (part.class_of[r] != kUnassigned) continue;
    auto id = static_cast<std::uint32_t>(part.reps.size());
    part.reps.push_back(static_cast<std::uint64_t>(r));
    std::uint32_t* cls = part.class_of.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t h = 0; h < n; ++h) {
      std::uint64_t target =
          g.op(g.op(static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(r)), inv[h]);
      // concurrent stores all write the same id
      std::atomic_ref<std::uint32_t>(cls[target]).store(id, std::memory_order_relaxed);
    }
  }
  part.sizes.assign(part.reps.size(), 0);
  for (std::uint32_t c : part.class_of) ++part.sizes[c];
  return part;
}

std::optional<std::uint64_t> subset_sweep_parallel(const SweepInput& in, unsigned size,
                                                   std::uint64_t* examined) {
  // Split on the first chosen position; chunks enumerate lexicographically, so
  // the hit from the smallest chunk equals the serial winner.
  unsigned last_first = in.universe - size;
  std::vector<std::int64_t> hits(last_first + 1, -1);
  std::atomic<unsigned> best_chunk{last_first + 1};
  std::atomic<std::uint64_t> total{0};
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t p0 = 0; p0 <= static_cast<std::int64_t>(last_first); ++p0) {
    auto chunk = static_cast<unsigned>(p0);
    if (chunk > best_chunk.load(std::memory_order_relaxed)) continue;
    struct Local {
      const SweepInput& in;
      unsigned size;
      std::uint64_t examined = 0;
      std::vector<std::uint64_t> imgs;
      Local(const SweepInput& i, unsigned m) : in(i), size(m), imgs(i.actions.size() * (m + 1), 0) {}
      std::uint64_t* level(unsigned d) { return imgs.data() + d * in.actions.size(); }
      bool leaf_ok(std::uint64_t t_mask) {
        ++examined;
        const std::uint64_t* im = level(size);
        auto num = static_cast<std::uint64_t>(in.epsilon.num());
        auto den = static_cast<std::uint64_t>(in.epsilon.den());
        for (std::size_t a = 0; a < in.actions.size(); ++a) {
          std::uint64_t d = static_cast<std::uint64_t>(__builtin_popcountll(im[a] ^ t_mask));
          if (d * den >= num * size) return false;
        }
        return true;
      }
      std::optional<std::uint64_t> rec(unsigned next, unsigned depth, std::uint64_t t_mask) {
        if (depth == size)
          return leaf_ok(t_mask) ? std::optional<std::uint64_t>(t_mask) : std::nullopt;
        unsigned remaining = size - depth;
        for (unsigned p = next; p + remaining <= in.universe; ++p) {
          const std::uint64_t* cur = level(depth);
          std::uint64_t* nxt = level(depth + 1);
          for (std::size_t a = 0; a < in.actions.size(); ++a)
            nxt[a] = cur[a] | (1ull << in.actions[a][p]);
          if (auto hit = rec(p + 1, depth + 1, t_mask | (1ull << p))) return hit;
        }
        return std::nullopt;
      }
    } local(in, size);
    // force the first position to p0
    std::uint64_t* lvl1 = local.level(1);
    for (std::size_t a = 0; a < in.actions.size(); ++a)
      lvl1[a] = 1ull << in.actions[a][chunk];
    std::optional<std::uint64_t> hit;
    if (size == 1) {
      if (local.leaf_ok(1ull << chunk)) hit = 1ull << chunk;
    } else {
      hit = local.rec(chunk + 1, 1, 1ull << chunk);
    }
    total.fetch_add(local.examined, std::memory_order_relaxed);
    if (hit) {
      hits[chunk] = static_cast<std::int64_t>(*hit);
      unsigned seen = best_chunk.load(std::memory_order_relaxed);
      while (chunk < seen &&
             !best_chunk.compare_exchange_weak(seen, chunk, std::memory_order_relaxed)) {
      }
    }
  }
  if (examined) *examined += total.load();
  for (std::size_t c = 0; c < hits.size(); ++c)
    if (hits[c] >= 0) return static_cast<std::uint64_t>(hits[c]);
  return std::nullopt;
}

#endif  // _OPENMP

}  // namespace detail
}  // namespace sl2lab::kernels
