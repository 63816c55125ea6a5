#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "formatheory/group.hpp"
#include "formatheory/group_io.hpp"
#include "formatheory/lattice.hpp"
#include "formatheory/parallel.hpp"

using namespace formatheory;

namespace {

// Independent subgroup oracle: enumerate all subsets (order <= 12) and keep
// the multiplicatively closed ones containing the identity.
std::set<std::vector<ElemId>> brute_force_subgroups(const Group& g) {
  int n = g.order();
  REQUIRE(n <= 12);
  std::set<std::vector<ElemId>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1)) continue;  // identity required
    std::vector<ElemId> mem;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) mem.push_back(ElemId(i));
    bool closed = true;
    for (ElemId a : mem)
      for (ElemId b : mem) {
        ElemId c = g.mul(a, b);
        if (!std::binary_search(mem.begin(), mem.end(), c)) {
          closed = false;
          break;
        }
      }
    if (closed) out.insert(mem);
  }
  return out;
}

}  // namespace

TEST_CASE("named constructors have the expected orders") {
  CHECK(symmetric_group(3)->order() == 6);
  CHECK(alternating_group(5)->order() == 60);
  CHECK(cyclic_group(12)->order() == 12);
  CHECK(dihedral_group(16)->order() == 16);
  CHECK(quaternion_group(16)->order() == 16);
  CHECK(elementary_abelian_group(3, 3)->order() == 27);
}

TEST_CASE("constructed groups satisfy the group laws") {
  for (auto g : {symmetric_group(4), quaternion_group(8), dihedral_group(12),
                 elementary_abelian_group(2, 3),
                 direct_product(symmetric_group(3), cyclic_group(4))})
    CHECK_NOTHROW(g->validate());
}

TEST_CASE("cayley table input accepts Z4 and reports inverses") {
  std::istringstream in(
      "4\n"
      "0 1 2 3\n"
      "1 2 3 0\n"
      "2 3 0 1\n"
      "3 0 1 2\n");
  auto g = read_cayley_table(in, "z4");
  CHECK(g->order() == 4);
  CHECK(g->inv(1) == 3);
}

TEST_CASE("cayley table rejection names the offending data") {
  std::istringstream in(
      "3\n"
      "0 1 2\n"
      "1 2 0\n"
      "2 1 0\n");
  CHECK_THROWS_AS(read_cayley_table(in, "bad"), PreconditionError);
}

TEST_CASE("cayley table diagnostics carry line and column") {
  std::istringstream in(
      "3\n"
      "0 1 2\n"
      "1 7 0\n"
      "2 0 1\n");
  try {
    read_cayley_table(in, "bad");
    FAIL("expected rejection");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("permutation input builds S3 and validates generators") {
  std::istringstream in(
      "3\n"
      "1 0 2\n"
      "1 2 0\n");
  auto g = read_permutation_group(in, "s3");
  CHECK(g->order() == 6);
  std::istringstream bad(
      "3\n"
      "1 1 2\n");
  CHECK_THROWS_AS(read_permutation_group(bad, "bad"), PreconditionError);
}

TEST_CASE("direct products") {
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(v4->order() == 4);
  int involutions = 0;
  for (int x = 1; x < 4; ++x)
    if (v4->element_order(ElemId(x)) == 2) ++involutions;
  CHECK(involutions == 3);

  auto z6 = direct_product(cyclic_group(2), cyclic_group(3));
  CHECK(is_isomorphic(z6, cyclic_group(6)) == IsoResult::Yes);

  auto a = dihedral_group(8);
  CHECK(is_isomorphic(direct_product(a, cyclic_group(1)), a) == IsoResult::Yes);
}

TEST_CASE("subgroup enumeration matches the brute-force oracle") {
  for (auto g : {symmetric_group(3), quaternion_group(8), cyclic_group(9),
                 alternating_group(4), dihedral_group(12)}) {
    auto oracle = brute_force_subgroups(*g);
    auto subs = subgroups(g);
    std::set<std::vector<ElemId>> got;
    for (const auto& s : subs) got.insert(s.members);
    CHECK(got == oracle);
  }
}

TEST_CASE("subgroup counts on the standard examples") {
  CHECK(subgroups(symmetric_group(3)).size() == 6);
  CHECK(subgroups(quaternion_group(8)).size() == 6);
  CHECK(subgroups(cyclic_group(7)).size() == 2);
  CHECK(subgroups(cyclic_group(25)).size() == 3);  // 1, Z5, Z25
}

TEST_CASE("lattice is closed under intersection and conjugation") {
  for (auto g : {symmetric_group(4), quaternion_group(8), dihedral_group(20)}) {
    const auto& lat = lattice_of(g);
    for (int i = 0; i < lat.size(); ++i) {
      for (int j = i; j < lat.size(); ++j) {
        ElemSet cap = lat.subs[i] & lat.subs[j];
        CHECK(lat.index_of(cap) >= 0);
      }
      for (std::size_t k = 0; k < g->generators().size(); ++k)
        CHECK(lat.conjugate_index(i, int(k)) >= 0);
    }
  }
}

TEST_CASE("maximal subgroups of S4") {
  auto s4 = symmetric_group(4);
  auto maxes = maximal_subgroups_of(s4, s4->full_subgroup());
  std::multiset<int> orders;
  for (const auto& m : maxes) orders.insert(m.order());
  CHECK(orders == std::multiset<int>{6, 6, 6, 6, 8, 8, 8, 12});
}

TEST_CASE("maximal subgroups of Z_p and Q8") {
  auto z5 = cyclic_group(5);
  auto m5 = maximal_subgroups_of(z5, z5->full_subgroup());
  REQUIRE(m5.size() == 1);
  CHECK(m5[0].order() == 1);
  auto q8 = quaternion_group(8);
  auto mq = maximal_subgroups_of(q8, q8->full_subgroup());
  CHECK(mq.size() == 3);
  for (const auto& m : mq) CHECK(m.order() == 4);
}

TEST_CASE("normal structure") {
  auto s3 = symmetric_group(3);
  auto ns = normal_structure(s3, NormalKind::Normal, s3->full_subgroup());
  std::multiset<int> orders;
  for (const auto& n : ns) orders.insert(n.order());
  CHECK(orders == std::multiset<int>{1, 3, 6});

  auto s4 = symmetric_group(4);
  auto mins = normal_structure(s4, NormalKind::MinimalNormal, s4->full_subgroup());
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].order() == 4);

  auto z12 = cyclic_group(12);
  CHECK(normal_structure(z12, NormalKind::Normal, z12->full_subgroup()).size() ==
        subgroups(z12).size());
}

TEST_CASE("normal subgroup sets agree with the lattice route") {
  for (auto g : {symmetric_group(4), quaternion_group(8),
                 direct_product(symmetric_group(3), cyclic_group(4))}) {
    const auto& lat = lattice_of(g);
    std::set<std::vector<ElemId>> via_lattice;
    for (int i : lat.normal_indices()) via_lattice.insert(lat.subs[i].to_list());
    std::set<std::vector<ElemId>> via_classes;
    for (const auto& n : normal_subgroup_sets(g)) via_classes.insert(n.to_list());
    CHECK(via_lattice == via_classes);
  }
}

TEST_CASE("core_in") {
  auto s3 = symmetric_group(3);
  const auto& lat = lattice_of(s3);
  for (int i = 0; i < lat.size(); ++i) {
    if (lat.sub_order[i] == 2) {
      auto core = core_in(s3, s3->full_subgroup(), s3->make_ref(lat.subs[i]));
      CHECK(core.order() == 1);
    }
    if (lat.sub_order[i] == 3) {
      auto core = core_in(s3, s3->full_subgroup(), s3->make_ref(lat.subs[i]));
      CHECK(core.order() == 3);
    }
  }
  auto full_core = core_in(s3, s3->full_subgroup(), s3->full_subgroup());
  CHECK(full_core.order() == 6);
}

TEST_CASE("core_in is the largest H-invariant subgroup (brute force, small)") {
  auto a4 = alternating_group(4);
  const auto& lat = lattice_of(a4);
  for (int u = 0; u < lat.size(); ++u) {
    auto core =
        a4->to_set(core_in(a4, a4->full_subgroup(), a4->make_ref(lat.subs[u])));
    for (int x = 0; x < a4->order(); ++x)
      CHECK(a4->conjugate_set(core, ElemId(x)) == core);
    for (int j = 0; j < lat.size(); ++j) {
      if (!(core.proper_subset_of(lat.subs[j]) &&
            lat.subs[j].subset_of(lat.subs[u])))
        continue;
      bool invariant = true;
      for (int x = 0; x < a4->order() && invariant; ++x)
        if (!(a4->conjugate_set(lat.subs[j], ElemId(x)) == lat.subs[j]))
          invariant = false;
      CHECK_FALSE(invariant);
    }
  }
}

TEST_CASE("quotients") {
  auto s3 = symmetric_group(3);
  auto norm = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup());
  REQUIRE(norm.size() == 1);
  auto [q, hom] = quotient(s3, norm[0]);
  CHECK(q->order() == 2);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(hom.images[s3->mul(ElemId(a), ElemId(b))] ==
            q->mul(hom.images[a], hom.images[b]));

  auto g = dihedral_group(12);
  auto [q1, h1] = quotient(g, g->trivial_subgroup());
  CHECK(is_isomorphic(q1, g) == IsoResult::Yes);

  auto q8 = quaternion_group(8);
  auto center = distinguished_subgroup(q8, Distinguished::Center);
  auto [qq, qh] = quotient(q8, center);
  CHECK(qq->order() == 4);
  CHECK(is_isomorphic(qq, elementary_abelian_group(2, 2)) == IsoResult::Yes);
  CHECK(is_isomorphic(qq, cyclic_group(4)) == IsoResult::No);
}

TEST_CASE("|G| = |N| * |G/N| for every normal subgroup") {
  for (auto g : {symmetric_group(4), quaternion_group(16), dihedral_group(20)}) {
    for (const auto& n : normal_subgroup_sets(g)) {
      auto [q, hom] = quotient_set(g, n);
      CHECK(g->order() == n.count() * q->order());
    }
  }
}

TEST_CASE("centralizer of sections") {
  auto s4 = symmetric_group(4);
  auto v4 = distinguished_subgroup(s4, Distinguished::Fitting);
  auto c = centralizer_of_section(s4, v4, s4->trivial_subgroup());
  CHECK(c.members == v4.members);

  auto s3 = symmetric_group(3);
  auto z3 = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup())[0];
  auto cz = centralizer_of_section(s3, z3, s3->trivial_subgroup());
  CHECK(cz.members == z3.members);

  // Central section: C_G(H/K) is everything.
  auto q8 = quaternion_group(8);
  auto zc = distinguished_subgroup(q8, Distinguished::Center);
  auto cc = centralizer_of_section(q8, zc, q8->trivial_subgroup());
  CHECK(cc.order() == 8);
}

TEST_CASE("distinguished subgroups") {
  auto q8 = quaternion_group(8);
  auto frat = distinguished_subgroup(q8, Distinguished::Frattini);
  auto cent = distinguished_subgroup(q8, Distinguished::Center);
  CHECK(frat.members == cent.members);
  CHECK(frat.order() == 2);

  auto s4 = symmetric_group(4);
  CHECK(distinguished_subgroup(s4, Distinguished::Fitting).order() == 4);
  CHECK(distinguished_subgroup(s4, Distinguished::OP, 2).order() == 4);
  CHECK(distinguished_subgroup(s4, Distinguished::Frattini).order() == 1);
  CHECK(distinguished_subgroup(s4, Distinguished::Hypercenter).order() == 1);
  CHECK(distinguished_subgroup(s4, Distinguished::SolubleRadical).order() == 24);

  auto d16 = dihedral_group(16);
  CHECK(distinguished_subgroup(d16, Distinguished::Hypercenter).order() == 16);
}

TEST_CASE("chief series of S4, Z6 and simple groups") {
  auto s4 = symmetric_group(4);
  std::vector<int> orders;
  for (const auto& sec : chief_series(s4)) orders.push_back(sec.factor_order());
  CHECK(orders == std::vector<int>{4, 3, 2});

  auto z6 = cyclic_group(6);
  std::vector<int> z6_orders;
  for (const auto& sec : chief_series(z6)) z6_orders.push_back(sec.factor_order());
  REQUIRE(z6_orders.size() == 2);
  // deterministic tie-break: {0,2,4} is lexicographically before {0,3}
  CHECK(z6_orders == std::vector<int>{3, 2});

  auto a5 = alternating_group(5);
  auto series = chief_series(a5);
  REQUIRE(series.size() == 1);
  CHECK(series[0].factor_order() == 60);
}

TEST_CASE("chief factors admit no intermediate normal subgroup") {
  for (auto g : {symmetric_group(4), dihedral_group(12), quaternion_group(16)}) {
    const auto& normals = normal_subgroup_sets(g);
    for (const auto& sec : chief_series(g)) {
      ElemSet lo = g->to_set(sec.lower), hi = g->to_set(sec.upper);
      for (const auto& n : normals)
        CHECK_FALSE((lo.proper_subset_of(n) && n.proper_subset_of(hi)));
    }
  }
}

TEST_CASE("chief rank") {
  auto s4 = symmetric_group(4);
  auto series = chief_series(s4);
  CHECK(series[0].factor_order() == 4);
  CHECK(series[0].rank == 2);  // V4 = 2^2
  CHECK(series[1].rank == 1);
  CHECK(series[2].rank == 1);
  CHECK(chief_rank(s4, series[0]) == 2);
}

TEST_CASE("chief rank of a non-abelian rank-2 factor") {
  // (A5 x A5) x| Z2 with the swap action: the bottom factor is A5 x A5.
  // The base exceeds the import cap, so raise it for this construction.
  int saved = config().build_max_order;
  config().build_max_order = 3600;
  auto a5 = alternating_group(5);
  auto base = direct_product(a5, a5);
  config().build_max_order = saved;
  int m = a5->order();
  std::vector<std::vector<ElemId>> act(2);
  act[0].resize(base->order());
  act[1].resize(base->order());
  for (int x = 0; x < base->order(); ++x) {
    act[0][x] = ElemId(x);
    int a = x / m, b = x % m;
    act[1][x] = ElemId(b * m + a);
  }
  auto z2 = cyclic_group(2);
  auto w = semidirect_pairs(base, z2, act, "A5wrZ2");
  REQUIRE(w->order() == 7200);
  auto mins = minimal_normal_sets(w);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].count() == 3600);
  NormalSection sec;
  sec.ambient_uid = w->uid();
  sec.upper = w->make_ref(mins[0]);
  sec.lower = w->trivial_subgroup();
  sec.chief = true;
  CHECK(chief_rank(w, sec) == 2);
}

TEST_CASE("semidirect products by conjugation") {
  auto s3 = symmetric_group(3);
  auto z3 = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup())[0];
  NormalSection sec;
  sec.ambient_uid = s3->uid();
  sec.upper = z3;
  sec.lower = s3->trivial_subgroup();
  sec.chief = true;
  auto w = semidirect_by_conjugation(s3, sec, z3);
  CHECK(w->order() == 6);
  CHECK(is_isomorphic(w, s3) == IsoResult::Yes);

  auto s4 = symmetric_group(4);
  auto v4 = distinguished_subgroup(s4, Distinguished::Fitting);
  NormalSection sec4;
  sec4.ambient_uid = s4->uid();
  sec4.upper = v4;
  sec4.lower = s4->trivial_subgroup();
  sec4.chief = true;
  auto w4 = semidirect_by_conjugation(s4, sec4, v4);
  CHECK(w4->order() == 24);
  CHECK(is_isomorphic(w4, s4) == IsoResult::Yes);
}

TEST_CASE("semidirect G x| G by full conjugation has order |G|^2") {
  auto s3 = symmetric_group(3);
  NormalSection sec;
  sec.ambient_uid = s3->uid();
  sec.upper = s3->full_subgroup();
  sec.lower = s3->trivial_subgroup();
  auto w = semidirect_by_conjugation(s3, sec, s3->trivial_subgroup());
  CHECK(w->order() == 36);
  CHECK_NOTHROW(w->validate());
}

TEST_CASE("semidirect with central section and K = G collapses the action") {
  auto q8 = quaternion_group(8);
  auto z = distinguished_subgroup(q8, Distinguished::Center);
  NormalSection sec;
  sec.ambient_uid = q8->uid();
  sec.upper = z;
  sec.lower = q8->trivial_subgroup();
  auto w = semidirect_by_conjugation(q8, sec, q8->full_subgroup());
  CHECK(w->order() == 2);
}

TEST_CASE("semidirect preconditions are enforced") {
  auto s3 = symmetric_group(3);
  auto z3 = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup())[0];
  NormalSection sec;
  sec.ambient_uid = s3->uid();
  sec.upper = z3;
  sec.lower = s3->trivial_subgroup();
  // K = G does not centralize Z3 in S3.
  CHECK_THROWS_AS(semidirect_by_conjugation(s3, sec, s3->full_subgroup()),
                  PreconditionError);
}

TEST_CASE("isomorphism oracle") {
  CHECK(is_isomorphic(cyclic_group(4), elementary_abelian_group(2, 2)) ==
        IsoResult::No);
  auto g = dihedral_group(12);
  CHECK(is_isomorphic(g, g) == IsoResult::Yes);
  CHECK(is_isomorphic(dihedral_group(12),
                      direct_product(symmetric_group(3), cyclic_group(2))) ==
        IsoResult::Yes);
  CHECK(is_isomorphic(quaternion_group(8), dihedral_group(8)) == IsoResult::No);
  auto s5 = symmetric_group(5);
  CHECK(is_isomorphic(s5, s5) == IsoResult::Yes);  // identity map, any order
  // beyond the exhaustive-search cap: undecided, never a silent verdict
  auto big1 = direct_product(symmetric_group(5), cyclic_group(2));
  auto big2 = direct_product(alternating_group(5), elementary_abelian_group(2, 2));
  CHECK(is_isomorphic(big1, big2) == IsoResult::Undecided);
}

TEST_CASE("automorphism groups") {
  CHECK(automorphism_group(elementary_abelian_group(2, 2)).size() == 6);
  CHECK(automorphism_group(cyclic_group(1)).size() == 1);
  CHECK(automorphism_group(cyclic_group(6)).size() == 2);
  CHECK(automorphism_group(symmetric_group(3)).size() == 6);
  CHECK(automorphism_group(quaternion_group(8)).size() == 24);
  CHECK_THROWS_AS(automorphism_group(dihedral_group(32)), LimitError);
  auto a4 = alternating_group(4);
  for (const auto& h : automorphism_group(a4)) {
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b)
        CHECK(h.images[a4->mul(ElemId(a), ElemId(b))] ==
              a4->mul(h.images[a], h.images[b]));
  }
}

TEST_CASE("all chief series enumeration and the limit") {
  auto s4 = symmetric_group(4);
  auto all = all_chief_series(s4);
  CHECK(all.size() == 1);  // V4 < A4 < S4 is the only one
  auto e16 = elementary_abelian_group(2, 4);
  CHECK(all_chief_series(e16).size() == 15 * 7 * 3);
  CHECK_THROWS_AS(
      all_chief_series(direct_product(symmetric_group(5), cyclic_group(2))),
      LimitError);
}

TEST_CASE("lattice limit produces a loud error") {
  auto big = direct_product(symmetric_group(5), cyclic_group(4));  // order 480
  try {
    subgroups(big);
    FAIL("expected limit error");
  } catch (const LimitError& e) {
    CHECK(std::string(e.what()).find("480") != std::string::npos);
  }
}
