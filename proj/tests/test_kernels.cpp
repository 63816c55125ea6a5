#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "formatheory/catalog.hpp"
#include "formatheory/kernels.hpp"
#include "formatheory/lattice.hpp"
#include "formatheory/parallel.hpp"

using namespace formatheory;

namespace {

GroupPtr corrupted_z6() {
  // One flipped entry breaks associativity somewhere.
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a][b] = (a + b) % 6;
  t[4][5] = 4;
  t[4][4] = 3;  // keep the row a permutation
  std::vector<ElemId> flat(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) flat[a * 6 + b] = ElemId(t[a][b]);
  return Group::make(6, flat, "bad6");
}

}  // namespace

TEST_CASE("associativity kernels agree and find the least violation") {
  auto bad = corrupted_z6();
  auto s = kernels::associativity_violation_serial(*bad);
  auto p = kernels::associativity_violation_parallel(*bad);
  REQUIRE(s.has_value());
  REQUIRE(p.has_value());
  CHECK(*s == *p);
  auto [a, b, c] = *s;
  CHECK(bad->mul(bad->mul(ElemId(a), ElemId(b)), ElemId(c)) !=
        bad->mul(ElemId(a), bad->mul(ElemId(b), ElemId(c))));

  auto good = symmetric_group(4);
  CHECK_FALSE(kernels::associativity_violation_serial(*good).has_value());
  CHECK_FALSE(kernels::associativity_violation_parallel(*good).has_value());
}

TEST_CASE("centralizer kernels agree across thread budgets") {
  for (auto g : {symmetric_group(4), catalog_group("SL(2,3)"),
                 dihedral_group(20)}) {
    for (const auto& sec : chief_series(g)) {
      ElemSet upper = g->to_set(sec.upper);
      ElemSet lower = g->to_set(sec.lower);
      auto gens = generating_set(*g, upper);
      ElemSet s = kernels::centralizer_scan_serial(*g, gens, lower);
      ElemSet p = kernels::centralizer_scan_parallel(*g, gens, lower);
      CHECK(s == p);
    }
  }
}

TEST_CASE("join rounds produce identical lattices serial vs parallel") {
  int saved = par::threads();
  auto subgroup_orders = [](const GroupPtr& g) {
    std::vector<int> v;
    for (const auto& s : subgroups(g)) v.push_back(s.order());
    return v;
  };
  par::set_threads(1);
  auto serial = subgroup_orders(symmetric_group(4));
  par::set_threads(4);
  auto parallel = subgroup_orders(symmetric_group(4));
  par::set_threads(saved);
  CHECK(serial == parallel);
  CHECK(serial.size() == 30);
}

TEST_CASE("full pipeline verdicts are thread-budget independent") {
  int saved = par::threads();
  auto run = [] {
    auto g = symmetric_group(4);
    auto i = int_f(g, f_supersoluble());
    auto z = z_f(g, f_supersoluble());
    return std::make_pair(i.members, z.members);
  };
  par::set_threads(1);
  auto a = run();
  par::set_threads(3);
  auto b = run();
  par::set_threads(saved);
  CHECK(a == b);
}
