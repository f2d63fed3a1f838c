#include "sl2lab/groups.hpp"
#include "sl2lab/kernels.hpp"
#include "sl2lab/matgrp.hpp"

namespace sl2lab {

namespace {

CtReport ct_report_for(const Group& g) {
  auto scan = kernels::ct_scan(g, kernels::default_parallel());
  CtReport report;
  report.group_order = g.order();
  report.holds = scan.ct;
  if (!scan.ct)
    report.witness = {g.describe(scan.g), g.describe(scan.h1), g.describe(scan.h2)};
  return report;
}

}  // namespace

CtReport ct_check_gf2(const Gf2Level& level, std::uint64_t budget) {
  auto tower = std::make_shared<const Gf2Tower>(std::vector<unsigned>{level.degree});
  auto g = make_sl2_group(tower, level.degree, budget);
  return ct_report_for(*g);
}

CtReport ct_check_gfp(unsigned p, std::uint64_t budget) {
  auto g = make_sl2_gfp_group(p, budget);
  return ct_report_for(*g);
}

std::vector<ClassInfo> conjugacy_classes_gf2(const Gf2Level& level, std::uint64_t budget) {
  auto tower = std::make_shared<const Gf2Tower>(std::vector<unsigned>{level.degree});
  auto g = make_sl2_group(tower, level.degree, budget);
  auto part = kernels::conjugacy_partition(*g, kernels::default_parallel());
  std::vector<ClassInfo> out;
  for (std::size_t c = 0; c < part.reps.size(); ++c)
    out.push_back(ClassInfo{g->describe(part.reps[c]), part.sizes[c],
                            g->order() / part.sizes[c]});
  return out;
}

}  // namespace sl2lab
