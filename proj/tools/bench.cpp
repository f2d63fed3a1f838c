// Timing comparison of the serial reference kernels against the OpenMP lanes.

#include <chrono>
#include <cstdio>
#include <functional>

#include "sl2lab/amen.hpp"
#include "sl2lab/groups.hpp"
#include "sl2lab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sl2lab;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-42s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both lanes run serially\n");
#endif
  std::printf("%-42s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  const std::uint64_t budget = 20'000'000;

  {
    auto g = make_sl2_group(4, budget);  // |SL2(GF(16))| = 4080
    kernels::CtScanResult rs, rp;
    double ts = time_ms([&] { rs = kernels::ct_scan(*g, false); });
    double tp = time_ms([&] { rp = kernels::ct_scan(*g, true); });
    row("ct scan, sl2:gf2_4 (4080 elements)", ts, tp);
    if (rs.ct != rp.ct) std::printf("  MISMATCH!\n");
  }

  {
    auto g = make_sl2_group(3, budget);  // 504 elements
    kernels::ClassPartition ps, pp;
    double ts = time_ms([&] { ps = kernels::conjugacy_partition(*g, false); });
    double tp = time_ms([&] { pp = kernels::conjugacy_partition(*g, true); });
    row("conjugacy partition, sl2:gf2_3", ts, tp);
    if (ps.class_of != pp.class_of) std::printf("  MISMATCH!\n");
  }

  {
    auto g = make_sl2_group(4, budget);
    std::uint64_t x = g->generators().front();
    std::vector<std::uint32_t> as, ap;
    double ts = time_ms([&] {
      for (int i = 0; i < 8; ++i) as = kernels::conj_action(*g, x, false);
    });
    double tp = time_ms([&] {
      for (int i = 0; i < 8; ++i) ap = kernels::conj_action(*g, x, true);
    });
    row("conjugation action table x8, sl2:gf2_4", ts, tp);
    if (as != ap) std::printf("  MISMATCH!\n");
  }

  {
    auto g = make_sym_group(4, budget);
    auto gens = g->generators();
    kernels::SweepInput in;
    in.universe = static_cast<unsigned>(g->order());
    in.epsilon = Rational(1, 3);
    for (std::uint64_t s : gens) {
      auto table = kernels::left_action(*g, s, false);
      std::vector<std::uint8_t> a8(table.begin(), table.end());
      in.actions.push_back(std::move(a8));
    }
    std::optional<std::uint64_t> hs, hp;
    std::uint64_t es = 0, ep = 0;
    double ts = time_ms([&] {
      for (unsigned m = 1; m <= 12 && !hs; ++m)
        hs = kernels::subset_sweep(in, m, false, &es);
    });
    double tp = time_ms([&] {
      for (unsigned m = 1; m <= 12 && !hp; ++m)
        hp = kernels::subset_sweep(in, m, true, &ep);
    });
    row("subset sweep, sym:4 generators eps=1/3", ts, tp);
    if (hs != hp) std::printf("  MISMATCH!\n");
    std::printf("  (examined %llu candidates)\n", static_cast<unsigned long long>(es));
  }

  {
    auto g = make_sym_group(6, budget);  // 720 elements
    std::vector<std::uint64_t> s = g->generators();
    SearchOptions opts;
    opts.subset_budget = 3'000'000;
    SearchResult rs1, rp1;
    double ts = time_ms([&] {
      opts.parallel = false;
      rs1 = min_folner_search(*g, s, Rational(1, 3), FolnerMode::Conjugation, 3, opts);
    });
    double tp = time_ms([&] {
      opts.parallel = true;
      rp1 = min_folner_search(*g, s, Rational(1, 3), FolnerMode::Conjugation, 3, opts);
    });
    row("min c-Folner search, sym:6", ts, tp);
    bool same = rs1.status == rp1.status &&
                (!rs1.witness == !rp1.witness) &&
                (!rs1.witness || rs1.witness->t == rp1.witness->t);
    if (!same) std::printf("  MISMATCH!\n");
  }

  return 0;
}
