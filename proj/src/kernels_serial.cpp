#include "kernels_detail.hpp"

namespace sl2lab::kernels {

namespace detail {

std::optional<std::pair<std::uint64_t, std::uint64_t>> first_noncommuting_pair(
    const CommuteFn& commute, const std::vector<std::uint32_t>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!commute(members[i], members[j])) return std::make_pair<std::uint64_t>(
          members[i], members[j]);
  return std::nullopt;
}

std::vector<std::uint32_t> left_action_serial(const Group& g, std::uint64_t elem) {
  std::uint64_t n = g.order();
  std::vector<std::uint32_t> out(n);
  for (std::uint64_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(g.op(elem, i));
  return out;
}

std::vector<std::uint32_t> conj_action_serial(const Group& g, std::uint64_t elem) {
  std::uint64_t n = g.order(), ginv = g.inverse(elem);
  std::vector<std::uint32_t> out(n);
  for (std::uint64_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint32_t>(g.op(g.op(elem, i), ginv));
  return out;
}

std::vector<std::uint32_t> centralizer_serial(const Group& g, std::uint64_t elem) {
  CommuteFn commute(g);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 0; i < g.order(); ++i)
    if (commute(elem, i)) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

CtScanResult ct_scan_serial(const Group& g) {
  std::uint64_t n = g.order(), e = g.identity();
  CommuteFn commute(g);
  for (std::uint64_t gi = 0; gi < n; ++gi) {
    if (gi == e) continue;
    std::vector<std::uint32_t> cent;
    for (std::uint64_t h = 0; h < n; ++h)
      if (commute(gi, h)) cent.push_back(static_cast<std::uint32_t>(h));
    if (auto pair = first_noncommuting_pair(commute, cent))
      return CtScanResult{false, gi, pair->first, pair->second};
  }
  return CtScanResult{};
}

ClassPartition conjugacy_partition_serial(const Group& g) {
  std::uint64_t n = g.order();
  constexpr std::uint32_t kUnassigned = 0xffffffffu;
  ClassPartition part;
  part.class_of.assign(n, kUnassigned);
  const auto& inv = g.inverse_table();
  for (std::uint64_t r = 0; r < n; ++r) {
    if (part.class_of[r] != kUnassigned) continue;
    auto id = static_cast<std::uint32_t>(part.reps.size());
    part.reps.push_back(r);
    for (std::uint64_t h = 0; h < n; ++h)
      part.class_of[g.op(g.op(h, r), inv[h])] = id;
  }
  part.sizes.assign(part.reps.size(), 0);
  for (std::uint32_t c : part.class_of) ++part.sizes[c];
  return part;
}

namespace {

struct SweepState {
  const SweepInput& in;
  unsigned size;
  std::uint64_t examined = 0;
  // image masks per action, stacked by recursion depth
  std::vector<std::uint64_t> imgs;

  explicit SweepState(const SweepInput& input, unsigned m)
      : in(input), size(m), imgs(input.actions.size() * (m + 1), 0) {}

  std::uint64_t* level(unsigned depth) { return imgs.data() + depth * in.actions.size(); }

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

  // positions chosen ascending from `next`; returns the first winning mask
  std::optional<std::uint64_t> rec(unsigned next, unsigned depth, std::uint64_t t_mask) {
    if (depth == size) return leaf_ok(t_mask) ? std::optional<std::uint64_t>(t_mask)
                                              : std::nullopt;
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
};

}  // namespace

std::optional<std::uint64_t> subset_sweep_serial(const SweepInput& in, unsigned size,
                                                 std::uint64_t* examined) {
  SweepState st(in, size);
  auto hit = st.rec(0, 0, 0);
  if (examined) *examined += st.examined;
  return hit;
}

}  // namespace detail

bool default_parallel() { return parallel_available(); }

std::vector<std::uint32_t> left_action(const Group& g, std::uint64_t elem, bool parallel) {
  return parallel ? detail::left_action_parallel(g, elem)
                  : detail::left_action_serial(g, elem);
}

std::vector<std::uint32_t> conj_action(const Group& g, std::uint64_t elem, bool parallel) {
  return parallel ? detail::conj_action_parallel(g, elem)
                  : detail::conj_action_serial(g, elem);
}

std::vector<std::uint32_t> centralizer_indices(const Group& g, std::uint64_t elem,
                                               bool parallel) {
  return parallel ? detail::centralizer_parallel(g, elem)
                  : detail::centralizer_serial(g, elem);
}

CtScanResult ct_scan(const Group& g, bool parallel) {
  return parallel ? detail::ct_scan_parallel(g) : detail::ct_scan_serial(g);
}

ClassPartition conjugacy_partition(const Group& g, bool parallel) {
  return parallel ? detail::conjugacy_partition_parallel(g)
                  : detail::conjugacy_partition_serial(g);
}

std::uint64_t max_symdiff(const std::vector<std::vector<std::uint32_t>>& actions,
                          const std::vector<std::uint64_t>& t, std::uint64_t group_order) {
  std::uint64_t words = (group_order + 63) / 64;
  std::vector<std::uint64_t> t_bits(words, 0), img(words, 0);
  for (std::uint64_t x : t) t_bits[x / 64] |= 1ull << (x % 64);
  std::uint64_t worst = 0;
  for (const auto& a : actions) {
    std::fill(img.begin(), img.end(), 0);
    for (std::uint64_t x : t) {
      std::uint64_t y = a[x];
      img[y / 64] |= 1ull << (y % 64);
    }
    std::uint64_t d = 0;
    for (std::uint64_t w = 0; w < words; ++w)
      d += static_cast<std::uint64_t>(__builtin_popcountll(img[w] ^ t_bits[w]));
    worst = std::max(worst, d);
  }
  return worst;
}

std::optional<std::uint64_t> subset_sweep(const SweepInput& in, unsigned size, bool parallel,
                                          std::uint64_t* examined) {
  if (size == 0 || size > in.universe) return std::nullopt;
  return parallel ? detail::subset_sweep_parallel(in, size, examined)
                  : detail::subset_sweep_serial(in, size, examined);
}

std::uint64_t binomial_saturating(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (unsigned i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace sl2lab::kernels
