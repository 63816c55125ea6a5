#include "formatheory/catalog.hpp"

#include <algorithm>
#include <mutex>

#include "formatheory/formation.hpp"
#include "formatheory/lattice.hpp"

namespace formatheory {

namespace {

// Z4 acting on Z3 by inversion (dicyclic of order 12).
GroupPtr build_z3_z4() {
  auto n = cyclic_group(3);
  auto h = cyclic_group(4);
  std::vector<std::vector<ElemId>> act(4);
  for (int j = 0; j < 4; ++j)
    act[j] = (j % 2 == 0) ? std::vector<ElemId>{0, 1, 2}
                          : std::vector<ElemId>{0, 2, 1};
  return semidirect_pairs(n, h, act, "Z3:Z4");
}

// Z3 cycling the involutions of V4; isomorphic to A4.
GroupPtr build_v4_z3() {
  auto n = elementary_abelian_group(2, 2);
  auto h = cyclic_group(3);
  std::vector<std::vector<ElemId>> act = {
      {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return semidirect_pairs(n, h, act, "V4:Z3");
}

// Z7 acting on E8 as multiplication by a generator of F8*.
GroupPtr build_e8_z7() {
  auto n = elementary_abelian_group(2, 3);
  auto h = cyclic_group(7);
  // id = c0 + 2 c1 + 4 c2 encodes c0 + c1 x + c2 x^2 in F2[x]/(x^3 + x + 1);
  // multiplication by x sends it to c2 + (c0 ^ c2) x + c1 x^2.
  auto mul_x = [](int v) {
    int c0 = v & 1, c1 = (v >> 1) & 1, c2 = (v >> 2) & 1;
    return (c2) | ((c0 ^ c2) << 1) | (c1 << 2);
  };
  std::vector<std::vector<ElemId>> act(7, std::vector<ElemId>(8));
  for (int v = 0; v < 8; ++v) act[0][v] = ElemId(v);
  for (int j = 1; j < 7; ++j)
    for (int v = 0; v < 8; ++v) act[j][v] = ElemId(mul_x(act[j - 1][v]));
  return semidirect_pairs(n, h, act, "E8:Z7");
}

// SL(2,3) as permutations of the eight nonzero vectors of F3^2.
GroupPtr build_sl23() {
  auto idx = [](int a, int b) { return 3 * a + b - 1; };
  std::vector<int> g1(8), g2(8);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      g1[idx(a, b)] = idx((a + b) % 3, b);        // [[1,1],[0,1]]
      g2[idx(a, b)] = idx((3 - b) % 3, a);        // [[0,-1],[1,0]]
    }
  return build_group_from_permutations(3 * 3 - 1, {g1, g2}, "SL(2,3)");
}

std::vector<std::string> compute_tags(const GroupPtr& g) {
  std::vector<std::string> tags;
  const Group& G = *g;
  int n = G.order();
  bool abelian = G.is_abelian();
  bool soluble = set_is_soluble(G, G.full_set());
  bool nilpotent = soluble && set_is_nilpotent(G, G.full_set());
  if (abelian) tags.push_back("abelian");
  for (int x = 0; x < n; ++x)
    if (G.element_order(ElemId(x)) == n) {
      tags.push_back("cyclic");
      break;
    }
  if (nilpotent) tags.push_back("nilpotent");
  if (n > 1) {
    auto mins = minimal_normal_sets(g);
    if (mins.size() == 1 && mins[0].count() == n) tags.push_back("simple");
  }
  if (soluble) {
    tags.push_back("soluble");
    bool super = true;
    for (const auto& sec : chief_series(g))
      if (!is_prime(sec.factor_order())) super = false;
    if (super) tags.push_back("supersoluble");
  }
  std::sort(tags.begin(), tags.end());
  return tags;
}

struct CatalogData {
  std::vector<CatalogEntry> entries;
  std::vector<GroupPtr> instances;
};

CatalogData build_catalog() {
  CatalogData data;
  auto add = [&](std::string recipe, std::function<GroupPtr()> build) {
    GroupPtr g = build();
    CatalogEntry e;
    e.label = g->label();
    e.recipe = std::move(recipe);
    e.order = g->order();
    e.tags = compute_tags(g);
    e.build = std::move(build);
    data.entries.push_back(std::move(e));
    data.instances.push_back(std::move(g));
  };

  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 24, 30, 32})
    add("cyclic(" + std::to_string(n) + ")", [n] { return cyclic_group(n); });
  add("elementary_abelian(2,2)", [] { return elementary_abelian_group(2, 2); });
  add("elementary_abelian(2,3)", [] { return elementary_abelian_group(2, 3); });
  add("elementary_abelian(2,4)", [] { return elementary_abelian_group(2, 4); });
  add("elementary_abelian(2,5)", [] { return elementary_abelian_group(2, 5); });
  add("elementary_abelian(3,2)", [] { return elementary_abelian_group(3, 2); });
  add("elementary_abelian(3,3)", [] { return elementary_abelian_group(3, 3); });
  add("elementary_abelian(5,2)", [] { return elementary_abelian_group(5, 2); });
  for (int n : {8, 10, 12, 16, 20, 32})
    add("dihedral(" + std::to_string(n) + ")", [n] { return dihedral_group(n); });
  add("quaternion(8)", [] { return quaternion_group(8); });
  add("quaternion(16)", [] { return quaternion_group(16); });
  add("symmetric(3)", [] { return symmetric_group(3); });
  add("symmetric(4)", [] { return symmetric_group(4); });
  add("symmetric(5)", [] { return symmetric_group(5); });
  add("alternating(4)", [] { return alternating_group(4); });
  add("alternating(5)", [] { return alternating_group(5); });
  add("permutations(8 points, 2 generators)", [] { return build_sl23(); });
  add("semidirect(Z3, Z4, inversion)", [] { return build_z3_z4(); });
  add("semidirect(V4, Z3, 3-cycle)", [] { return build_v4_z3(); });
  add("semidirect(E8, Z7, field multiplication)", [] { return build_e8_z7(); });
  add("product(A4, Z2)",
      [] { return direct_product(alternating_group(4), cyclic_group(2)); });
  add("product(Q8, Z3)",
      [] { return direct_product(quaternion_group(8), cyclic_group(3)); });
  add("product(S3, S3)",
      [] { return direct_product(symmetric_group(3), symmetric_group(3)); });
  add("product(S4, Z2)",
      [] { return direct_product(symmetric_group(4), cyclic_group(2)); });
  add("product(A4, S3)",
      [] { return direct_product(alternating_group(4), symmetric_group(3)); });
  add("product(A5, Z2)",
      [] { return direct_product(alternating_group(5), cyclic_group(2)); });
  add("product(S4, S3)",
      [] { return direct_product(symmetric_group(4), symmetric_group(3)); });
  add("product(A5, S3)",
      [] { return direct_product(alternating_group(5), symmetric_group(3)); });
  return data;
}

const CatalogData& data() {
  static CatalogData d = build_catalog();
  return d;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() { return data().entries; }

const std::vector<GroupPtr>& catalog_instances() { return data().instances; }

GroupPtr catalog_group(const std::string& label) {
  const auto& d = data();
  for (std::size_t i = 0; i < d.entries.size(); ++i)
    if (d.entries[i].label == label) return d.instances[i];
  throw PreconditionError("unknown catalog group '" + label + "'");
}

std::vector<GroupPtr> catalog_filtered(int max_order,
                                       const std::vector<std::string>& tags) {
  const auto& d = data();
  std::vector<GroupPtr> out;
  for (std::size_t i = 0; i < d.entries.size(); ++i) {
    const auto& e = d.entries[i];
    if (e.order > max_order) continue;
    bool ok = true;
    for (const auto& t : tags)
      if (std::find(e.tags.begin(), e.tags.end(), t) == e.tags.end()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(d.instances[i]);
  }
  return out;
}

}  // namespace formatheory
