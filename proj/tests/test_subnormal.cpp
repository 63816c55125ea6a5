#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "formatheory/catalog.hpp"
#include "formatheory/hypercenter.hpp"
#include "formatheory/subnormal.hpp"

using namespace formatheory;

namespace {

// Independent oracle: search every maximal chain from h up to t, evaluating
// each step quotient directly (no memoization, no shared search state).
bool oracle_subnormal(const GroupPtr& g, int h, int t) {
  const auto& lat = lattice_of(g);
  if (h == t) return true;
  for (int m : lat.maximals_of[t]) {
    if (!lat.subsets_of[m].test(h)) continue;
    // quotient T / Core_T(M) via explicit materialization
    ElemSet core = lat.subs[m];
    lat.subs[t].for_each(
        [&](int x) { core &= g->conjugate_set(lat.subs[m], ElemId(x)); });
    GroupPtr tg = subgroup_group_set(g, lat.subs[t]);
    ElemSet core_child(tg->order());
    int pos = 0;
    for (int x = lat.subs[t].next(-1); x >= 0; x = lat.subs[t].next(x), ++pos)
      if (core.test(x)) core_child.set(pos);
    auto [q, hom] = quotient_set(tg, core_child);
    if (!belongs(q, f_nilpotent())) continue;
    if (oracle_subnormal(g, h, m)) return true;
  }
  return false;
}

std::set<std::vector<ElemId>> member_sets(const std::vector<SubgroupRef>& v) {
  std::set<std::vector<ElemId>> out;
  for (const auto& s : v) out.insert(s.members);
  return out;
}

}  // namespace

TEST_CASE("subnormality basics in S3") {
  auto s3 = symmetric_group(3);
  CHECK(is_f_subnormal(s3, s3->full_subgroup(), f_nilpotent()));
  auto chain = f_subnormal_witness(s3, s3->full_subgroup(), f_nilpotent());
  REQUIRE(chain.has_value());
  CHECK(chain->links.size() == 1);  // H = G, chain of length 0

  const auto& lat = lattice_of(s3);
  for (int i = 0; i < lat.size(); ++i) {
    auto ref = s3->make_ref(lat.subs[i]);
    bool expect = lat.sub_order[i] != 2;  // the three Z2 are the non-subnormal ones
    CHECK(is_f_subnormal(s3, ref, f_nilpotent()) == expect);
  }

  // Z3 < S3 has the witness chain Z3 < S3 with step quotient of order 2.
  auto z3 = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup())[0];
  auto w = f_subnormal_witness(s3, z3, f_nilpotent());
  REQUIRE(w.has_value());
  REQUIRE(w->links.size() == 2);
  CHECK(w->step_quotient_orders == std::vector<int>{2});
}

TEST_CASE("memoized search agrees with the exhaustive chain oracle") {
  for (auto g : {symmetric_group(4), quaternion_group(16), alternating_group(4),
                 catalog_group("SL(2,3)")}) {
    const auto& lat = lattice_of(g);
    for (int h = 0; h < lat.size(); ++h) {
      CHECK(is_f_subnormal(g, g->make_ref(lat.subs[h]), f_nilpotent()) ==
            oracle_subnormal(g, h, lat.full_index));
    }
  }
}

TEST_CASE("pair-level search matches the materialized-subgroup route") {
  auto s4 = symmetric_group(4);
  const auto& lat = lattice_of(s4);
  for (int t = 0; t < lat.size(); ++t) {
    GroupPtr tg = subgroup_group_set(s4, lat.subs[t]);
    for (int h = 0; h < lat.size(); ++h) {
      if (!lat.subsets_of[t].test(h)) continue;
      // map h into tg's coordinates
      ElemSet hs(tg->order());
      int pos = 0;
      for (int x = lat.subs[t].next(-1); x >= 0; x = lat.subs[t].next(x), ++pos)
        if (lat.subs[h].test(x)) hs.set(pos);
      bool via_child = is_f_subnormal(tg, tg->make_ref(hs), f_supersoluble());
      bool via_pairs = is_f_subnormal_in(s4, s4->make_ref(lat.subs[h]),
                                         s4->make_ref(lat.subs[t]),
                                         f_supersoluble());
      CHECK(via_child == via_pairs);
    }
  }
}

TEST_CASE("weak subnormalizers in S3") {
  auto s3 = symmetric_group(3);
  const auto& lat = lattice_of(s3);
  for (int i = 0; i < lat.size(); ++i) {
    auto ref = s3->make_ref(lat.subs[i]);
    auto ws = weak_f_subnormalizers(s3, ref, f_nilpotent());
    REQUIRE(!ws.members.empty());
    if (lat.sub_order[i] == 2) {
      REQUIRE(ws.members.size() == 1);
      CHECK(ws.members[0].members == ref.members);  // {Z2} itself
    } else {
      REQUIRE(ws.members.size() == 1);
      CHECK(ws.members[0].order() == 6);  // the whole group
    }
  }
}

TEST_CASE("subnormal subgroups have the whole group as weak subnormalizer") {
  auto q8 = quaternion_group(8);
  const auto& lat = lattice_of(q8);
  for (int i = 0; i < lat.size(); ++i) {
    auto ref = q8->make_ref(lat.subs[i]);
    if (!is_f_subnormal(q8, ref, f_abelian())) continue;
    auto ws = weak_f_subnormalizers(q8, ref, f_abelian());
    REQUIRE(ws.members.size() == 1);
    CHECK(ws.members[0].order() == 8);
  }
}

TEST_CASE("i_hf examples") {
  auto s3 = symmetric_group(3);
  CHECK(i_hf(s3, HomomorphSpec::wrap(f_nilpotent()), f_nilpotent()).order() == 1);

  // members of F with H-subgroups inside F: everything is subnormal
  auto z12 = cyclic_group(12);
  CHECK(i_hf(z12, HomomorphSpec::wrap(f_nilpotent()), f_nilpotent()).order() == 12);

  // the divergence witness: all abelian subgroups of Q8 are abelian-subnormal
  auto q8 = quaternion_group(8);
  CHECK(i_hf(q8, HomomorphSpec::wrap(f_abelian()), f_abelian()).order() == 8);
  CHECK(int_f(q8, f_abelian()).order() == 2);
}

TEST_CASE("i_hf with an empty family of H-subgroups is the whole group") {
  // No subgroup of Z9 is a nontrivial 2-group, but the trivial subgroup is
  //, so use a homomorph excluding it is impossible via the grammar; instead
  // exercise the convention directly with a 5-group family on a {2,3}-group.
  auto z6 = cyclic_group(6);
  auto h = parse_homomorph("primary:5");
  // The trivial subgroup is a 5-group of order 5^0, so the family is {1}.
  auto r = i_hf(z6, h, f_nilpotent());
  CHECK(r.order() == 6);
}

TEST_CASE("minimal supplements") {
  auto s4 = symmetric_group(4);
  auto v4 = distinguished_subgroup(s4, Distinguished::Fitting);
  auto supp = minimal_supplements(s4, s4->full_subgroup(), v4);
  CHECK(supp.size() == 4);
  for (const auto& b : supp) CHECK(b.order() == 6);

  auto any = minimal_supplements(s4, s4->full_subgroup(), s4->trivial_subgroup());
  REQUIRE(any.size() == 1);
  CHECK(any[0].order() == 24);

  auto s3 = symmetric_group(3);
  auto z3 = normal_structure(s3, NormalKind::MinimalNormal, s3->full_subgroup())[0];
  auto bs = minimal_supplements(s3, s3->full_subgroup(), z3);
  CHECK(bs.size() == 3);
  for (const auto& b : bs) CHECK(b.order() == 2);
}

TEST_CASE("in_f_h_f matches spec examples and the fhf evaluator") {
  auto q8 = quaternion_group(8);
  auto s3 = symmetric_group(3);
  auto ab = HomomorphSpec::wrap(f_abelian());
  auto nil = HomomorphSpec::wrap(f_nilpotent());
  CHECK(in_f_h_f(q8, ab, f_abelian()));
  SubgroupRef witness;
  CHECK_FALSE(in_f_h_f(s3, nil, f_nilpotent(), &witness));
  CHECK(witness.order() == 2);

  // two entry points, one verdict
  for (auto g : {q8, s3, symmetric_group(4), cyclic_group(12)}) {
    CHECK(in_f_h_f(g, ab, f_abelian()) ==
          belongs(g, parse_formation("fhf(abelian,abelian)")));
    CHECK(in_f_h_f(g, nil, f_nilpotent()) ==
          belongs(g, parse_formation("fhf(nilpotent,nilpotent)")));
  }
}

TEST_CASE("in_f_h_f agrees with i_hf covering the whole group") {
  auto specs = std::vector<std::pair<HomomorphPtr, FormationPtr>>{
      {HomomorphSpec::wrap(f_nilpotent()), f_nilpotent()},
      {HomomorphSpec::wrap(f_abelian()), f_abelian()},
      {parse_homomorph("cyclicprimary:all"), f_supersoluble()},
  };
  for (const auto& g : catalog_filtered(24, {})) {
    for (const auto& [h, f] : specs) {
      CHECK(in_f_h_f(g, h, f) == (i_hf(g, h, f).order() == g->order()));
    }
  }
}

TEST_CASE("subnormal chain invariants: certificates replay") {
  auto sl = catalog_group("SL(2,3)");
  const auto& lat = lattice_of(sl);
  for (int i = 0; i < lat.size(); ++i) {
    auto ref = sl->make_ref(lat.subs[i]);
    auto w = f_subnormal_witness(sl, ref, f_supersoluble());
    if (!w) continue;
    // each consecutive link is maximal in the next and the step quotient
    // reproduces the recorded order
    for (std::size_t k = 0; k + 1 < w->links.size(); ++k) {
      ElemSet lo = sl->to_set(w->links[k]);
      ElemSet hi = sl->to_set(w->links[k + 1]);
      CHECK(lo.proper_subset_of(hi));
      int lo_i = lat.index_of(lo), hi_i = lat.index_of(hi);
      bool is_max = false;
      for (int m : lat.maximals_of[hi_i])
        if (m == lo_i) is_max = true;
      CHECK(is_max);
      ElemSet core = lo;
      hi.for_each([&](int x) { core &= sl->conjugate_set(lo, ElemId(x)); });
      CHECK(w->step_quotient_orders[k] == hi.count() / core.count());
    }
  }
}
