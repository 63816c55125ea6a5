#include "formatheory/lattice.hpp"

#include <algorithm>
#include <map>

#include "formatheory/kernels.hpp"
#include "formatheory/parallel.hpp"

namespace formatheory {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<ElemId> generating_set(const Group& g, const ElemSet& s) {
  std::vector<ElemId> gens;
  ElemSet have(g.order());
  have.set(0);
  int want = s.count();
  if (have.count() == want) return gens;
  for (int x = s.next(-1); x >= 0; x = s.next(x)) {
    if (have.test(x)) continue;
    gens.push_back(ElemId(x));
    have = g.closure(gens);
    if (have.count() == want) break;
  }
  return gens;
}

bool set_is_soluble(const Group& g, const ElemSet& s) {
  ElemSet cur = s;
  while (cur.count() > 1) {
    ElemSet next = g.commutator_subgroup(cur, cur);
    next &= cur;  // derived subgroup is inside
    if (next.count() == cur.count()) return false;
    cur = next;
  }
  return true;
}

bool set_is_nilpotent(const Group& g, const ElemSet& s) {
  ElemSet cur = s;
  while (cur.count() > 1) {
    ElemSet next = g.commutator_subgroup(cur, s);
    next &= cur;
    if (next.count() == cur.count()) return false;
    cur = next;
  }
  return true;
}

// --- lattice -----------------------------------------------------------------

int SubgroupLattice::index_of(const ElemSet& s) const {
  auto it = index.find(s);
  return it == index.end() ? -1 : it->second;
}

std::vector<int> SubgroupLattice::normal_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (normal_in_group[i]) out.push_back(i);
  return out;
}

int SubgroupLattice::conjugate_index(int i, int gen_no) const {
  std::lock_guard<std::mutex> lock(conj_mutex);
  const auto& gens = group->generators();
  if (conj_by_gen.empty())
    conj_by_gen.assign(gens.size(), std::vector<int>(subs.size(), -1));
  int& slot = conj_by_gen[gen_no][i];
  if (slot < 0) {
    ElemSet c = group->conjugate_set(subs[i], gens[gen_no]);
    slot = index_of(c);
  }
  return slot;
}

std::pair<int, int> SubgroupLattice::canonical_pair(int h, int t) const {
  std::uint64_t key = (std::uint64_t(h) << 32) | std::uint64_t(t);
  {
    std::lock_guard<std::mutex> lock(conj_mutex);
    auto it = pair_canon.find(key);
    if (it != pair_canon.end())
      return {int(it->second >> 32), int(it->second & 0xffffffffull)};
  }
  // Orbit of the pair under conjugation by group generators.
  int ngens = int(group->generators().size());
  std::vector<std::uint64_t> orbit{key};
  std::map<std::uint64_t, char> seen{{key, 1}};
  for (std::size_t q = 0; q < orbit.size(); ++q) {
    int hh = int(orbit[q] >> 32), tt = int(orbit[q] & 0xffffffffull);
    for (int k = 0; k < ngens; ++k) {
      std::uint64_t img = (std::uint64_t(conjugate_index(hh, k)) << 32) |
                          std::uint64_t(conjugate_index(tt, k));
      if (!seen.count(img)) {
        seen[img] = 1;
        orbit.push_back(img);
      }
    }
  }
  std::uint64_t canon = *std::min_element(orbit.begin(), orbit.end());
  std::lock_guard<std::mutex> lock(conj_mutex);
  for (auto k : orbit) pair_canon[k] = canon;
  return {int(canon >> 32), int(canon & 0xffffffffull)};
}

namespace {

std::shared_ptr<SubgroupLattice> build_lattice(const GroupPtr& g) {
  const Group& G = *g;
  int n = G.order();
  if (n > config().lattice_max_order)
    throw LimitError("subgroup lattice too large: |G| = " + std::to_string(n) +
                     " exceeds limit " + std::to_string(config().lattice_max_order));

  auto lat = std::make_shared<SubgroupLattice>();
  lat->group = g;

  // Seed: the trivial subgroup and every cyclic subgroup.
  std::vector<ElemSet> cyclic;
  std::vector<ElemId> cyclic_gen;
  {
    std::unordered_map<ElemSet, int, ElemSetHash> seen;
    for (int x = 1; x < n; ++x) {
      ElemSet c = G.closure({ElemId(x)});
      if (seen.emplace(c, x).second) {
        cyclic.push_back(c);
        cyclic_gen.push_back(ElemId(x));
      }
    }
  }
  ElemSet triv(n);
  triv.set(0);
  lat->subs.push_back(triv);
  lat->sub_gens.push_back({});
  lat->index.emplace(triv, 0);
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    if (lat->index.count(cyclic[i])) continue;
    lat->index.emplace(cyclic[i], int(lat->subs.size()));
    lat->subs.push_back(cyclic[i]);
    lat->sub_gens.push_back({cyclic_gen[i]});
  }

  // Join closure to a fixed point.
  std::vector<ElemSet> frontier = lat->subs;
  std::vector<std::vector<ElemId>> frontier_gens = lat->sub_gens;
  while (!frontier.empty()) {
    kernels::JoinInput in{&frontier, &frontier_gens, &cyclic, &cyclic_gen};
    kernels::JoinResult res = kernels::join_round(G, in, lat->index);
    frontier.clear();
    frontier_gens.clear();
    for (std::size_t k = 0; k < res.sets.size(); ++k) {
      if (lat->index.count(res.sets[k])) continue;
      lat->index.emplace(res.sets[k], int(lat->subs.size()));
      lat->subs.push_back(res.sets[k]);
      lat->sub_gens.push_back(res.gens[k]);
      frontier.push_back(std::move(res.sets[k]));
      frontier_gens.push_back(std::move(res.gens[k]));
    }
  }

  // Canonical order: lexicographic on the sorted id lists.
  {
    int k = lat->size();
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      return lat->subs[a].lex_compare(lat->subs[b]) < 0;
    });
    std::vector<ElemSet> subs(k);
    std::vector<std::vector<ElemId>> gens(k);
    for (int i = 0; i < k; ++i) {
      subs[i] = std::move(lat->subs[perm[i]]);
      gens[i] = std::move(lat->sub_gens[perm[i]]);
    }
    lat->subs = std::move(subs);
    lat->sub_gens = std::move(gens);
    lat->index.clear();
    for (int i = 0; i < k; ++i) lat->index.emplace(lat->subs[i], i);
  }

  int k = lat->size();
  lat->sub_order.resize(k);
  for (int i = 0; i < k; ++i) lat->sub_order[i] = lat->subs[i].count();
  lat->trivial_index = lat->index.at(triv);
  lat->full_index = lat->index.at(G.full_set());

  // Subset relation and covers.
  lat->subsets_of.assign(k, ElemSet(k));
  lat->supersets_of.assign(k, ElemSet(k));
  par::parallel_for(std::size_t(k), [&](std::size_t i) {
    for (int j = 0; j < k; ++j)
      if (lat->subs[j].subset_of(lat->subs[int(i)])) lat->subsets_of[i].set(j);
  });
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (lat->subsets_of[j].test(i)) lat->supersets_of[i].set(j);

  lat->maximals_of.assign(k, {});
  par::parallel_for(std::size_t(k), [&](std::size_t j) {
    for (int i = 0; i < k; ++i) {
      if (i == int(j) || !lat->subsets_of[j].test(i)) continue;
      ElemSet between = lat->supersets_of[i] & lat->subsets_of[j];
      if (between.count() == 2) lat->maximals_of[j].push_back(i);
    }
  });

  lat->normal_in_group.assign(k, 0);
  par::parallel_for(std::size_t(k), [&](std::size_t i) {
    lat->normal_in_group[i] = G.is_normal_set(lat->subs[i]) ? 1 : 0;
  });

  return lat;
}

}  // namespace

const SubgroupLattice& lattice_of(const GroupPtr& g) {
  auto& caches = g->caches();
  {
    std::lock_guard<std::mutex> lock(caches.mutex);
    if (caches.lattice) return *caches.lattice;
  }
  auto lat = build_lattice(g);
  std::lock_guard<std::mutex> lock(caches.mutex);
  if (!caches.lattice) caches.lattice = std::move(lat);
  return *caches.lattice;
}

bool lattice_available(const Group& g) {
  return g.order() <= config().lattice_max_order;
}

std::vector<SubgroupRef> subgroups(const GroupPtr& g) {
  const auto& lat = lattice_of(g);
  std::vector<SubgroupRef> out;
  out.reserve(lat.size());
  for (const auto& s : lat.subs) out.push_back(g->make_ref(s));
  return out;
}

std::vector<SubgroupRef> maximal_subgroups_of(const GroupPtr& g,
                                              const SubgroupRef& h) {
  const auto& lat = lattice_of(g);
  int idx = lat.index_of(g->to_set(h));
  if (idx < 0)
    throw PreconditionError("not a subgroup of '" + g->label() + "': " +
                            h.to_string());
  std::vector<int> ms = lat.maximals_of[idx];
  std::sort(ms.begin(), ms.end());
  std::vector<SubgroupRef> out;
  for (int i : ms) out.push_back(g->make_ref(lat.subs[i]));
  return out;
}

std::vector<SubgroupRef> normal_structure(const GroupPtr& g, NormalKind kind,
                                          const SubgroupRef& within) {
  const auto& lat = lattice_of(g);
  ElemSet wset = g->to_set(within);
  int widx = lat.index_of(wset);
  if (widx < 0)
    throw PreconditionError("not a subgroup of '" + g->label() + "': " +
                            within.to_string());
  std::vector<ElemId> wgens = lat.sub_gens[widx];
  std::vector<int> normals;
  for (int i = 0; i < lat.size(); ++i) {
    if (!lat.subsets_of[widx].test(i)) continue;
    bool normal = true;
    for (ElemId wg : wgens) {
      ElemSet c = g->conjugate_set(lat.subs[i], wg);
      if (!(c == lat.subs[i])) {
        normal = false;
        break;
      }
    }
    if (normal) normals.push_back(i);
  }
  if (kind == NormalKind::MinimalNormal) {
    std::vector<int> minimal;
    for (int i : normals) {
      if (lat.sub_order[i] == 1) continue;
      bool is_min = true;
      for (int j : normals) {
        if (j == i || lat.sub_order[j] == 1) continue;
        if (lat.subsets_of[i].test(j)) {
          is_min = false;
          break;
        }
      }
      if (is_min) minimal.push_back(i);
    }
    normals = std::move(minimal);
  }
  std::vector<SubgroupRef> out;
  for (int i : normals) out.push_back(g->make_ref(lat.subs[i]));
  return out;
}

SubgroupRef core_in(const GroupPtr& g, const SubgroupRef& h, const SubgroupRef& u) {
  ElemSet hs = g->to_set(h), us = g->to_set(u);
  if (!us.subset_of(hs))
    throw PreconditionError("core_in: U must be contained in H");
  ElemSet core = us;
  hs.for_each([&](int x) { core &= g->conjugate_set(us, ElemId(x)); });
  return g->make_ref(core);
}

SubgroupRef centralizer_of_section(const GroupPtr& g, const SubgroupRef& h,
                                   const SubgroupRef& k) {
  ElemSet hs = g->to_set(h), ks = g->to_set(k);
  if (!ks.subset_of(hs))
    throw PreconditionError("section: K must be contained in H");
  if (!g->is_normal_set(hs) || !g->is_normal_set(ks))
    throw PreconditionError("section terms must be normal in '" + g->label() + "'");
  std::vector<ElemId> hgens = generating_set(*g, hs);
  return g->make_ref(kernels::centralizer_scan(*g, hgens, ks));
}

const SubgroupRef& section_centralizer(const GroupPtr& g, NormalSection& section) {
  if (!section.centralizer)
    section.centralizer = centralizer_of_section(g, section.upper, section.lower);
  return *section.centralizer;
}

// --- distinguished subgroups ---------------------------------------------------

namespace {

ElemSet hypercenter_set(const GroupPtr& g) {
  GroupPtr cur = g;
  // Chain of projections G -> G/Z1 -> (G/Z1)/Z2 -> ...
  std::vector<GroupHom> homs;
  while (true) {
    const ElemSet& z = cur->center_set();
    if (z.count() == 1) break;
    auto [q, hom] = quotient_set(cur, z);
    if (q->order() == cur->order()) break;  // z trivial, unreachable
    homs.push_back(hom);
    cur = q;
    if (cur->order() == 1) break;
  }
  // Pull the trivial subgroup of the last quotient back to G.
  ElemSet top(cur->order());
  top.set(0);
  for (auto it = homs.rbegin(); it != homs.rend(); ++it) top = it->pull(top);
  if (homs.empty()) {
    ElemSet t(g->order());
    t.set(0);
    return t;
  }
  return top;
}

}  // namespace

SubgroupRef distinguished_subgroup(const GroupPtr& g, Distinguished kind, int p) {
  std::string key;
  switch (kind) {
    case Distinguished::Frattini: key = "frattini"; break;
    case Distinguished::Fitting: key = "fitting"; break;
    case Distinguished::SolubleRadical: key = "soluble_radical"; break;
    case Distinguished::Center: key = "center"; break;
    case Distinguished::Hypercenter: key = "hypercenter"; break;
    case Distinguished::OP:
      if (!is_prime(p)) throw PreconditionError("o_p needs a prime p");
      key = "op:" + std::to_string(p);
      break;
  }
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().subgroup_results.find(key);
    if (it != g->caches().subgroup_results.end()) return g->make_ref(it->second);
  }
  ElemSet result(g->order());
  switch (kind) {
    case Distinguished::Center:
      result = g->center_set();
      break;
    case Distinguished::Hypercenter:
      result = hypercenter_set(g);
      break;
    case Distinguished::Frattini: {
      const auto& lat = lattice_of(g);
      result = g->full_set();
      for (int m : lat.maximals_of[lat.full_index]) result &= lat.subs[m];
      break;
    }
    case Distinguished::Fitting:
    case Distinguished::SolubleRadical:
    case Distinguished::OP: {
      const auto& normals = normal_subgroup_sets(g);
      result.set(0);
      for (const auto& n : normals) {
        if (n.count() <= result.count()) continue;
        bool ok = false;
        if (kind == Distinguished::Fitting)
          ok = set_is_nilpotent(*g, n);
        else if (kind == Distinguished::SolubleRadical)
          ok = set_is_soluble(*g, n);
        else {
          int m = n.count();
          while (m % p == 0) m /= p;
          ok = (m == 1);
        }
        if (ok) result = n;
      }
      break;
    }
  }
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().subgroup_results.emplace(key, std::move(result));
  return g->make_ref(it->second);
}

// --- chief series ---------------------------------------------------------------

std::vector<ElemSet> minimal_normal_sets(const GroupPtr& g) {
  const Group& G = *g;
  if (G.order() == 1) return {};
  std::vector<ElemSet> closures;
  for (const auto& cls : G.conjugacy_classes()) {
    if (cls.size() == 1 && cls[0] == 0) continue;
    // A class is a conjugation-closed generating set, so its subgroup
    // closure is already normal.
    ElemSet c = G.closure(cls);
    bool dup = false;
    for (const auto& e : closures)
      if (e == c) {
        dup = true;
        break;
      }
    if (!dup) closures.push_back(std::move(c));
  }
  std::vector<ElemSet> minimal;
  for (const auto& c : closures) {
    bool is_min = true;
    for (const auto& o : closures)
      if (!(o == c) && o.proper_subset_of(c)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const ElemSet& a, const ElemSet& b) { return a.lex_compare(b) < 0; });
  return minimal;
}

const std::vector<ElemSet>& normal_subgroup_sets(const GroupPtr& g) {
  auto& caches = g->caches();
  {
    std::lock_guard<std::mutex> lock(caches.mutex);
    if (caches.normal_sets) return *caches.normal_sets;
  }
  const Group& G = *g;
  // Seeds: subgroup closures of single conjugacy classes.  Joins of normal
  // subgroups are plain set products, so the closure loop is cheap.
  std::vector<ElemSet> all;
  ElemSet triv(G.order());
  triv.set(0);
  all.push_back(triv);
  std::unordered_map<ElemSet, char, ElemSetHash> seen;
  seen.emplace(triv, 1);
  std::vector<ElemSet> seeds;
  for (const auto& cls : G.conjugacy_classes()) {
    if (cls.size() == 1 && cls[0] == 0) continue;
    ElemSet c = G.closure(cls);
    if (seen.emplace(c, 1).second) {
      all.push_back(c);
      seeds.push_back(c);
    }
  }
  std::vector<ElemSet> frontier(all.begin() + 1, all.end());
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const auto& a : frontier)
      for (const auto& s : seeds) {
        if (s.subset_of(a)) continue;
        ElemSet join = G.product_set(a, s);
        if (seen.emplace(join, 1).second) {
          all.push_back(join);
          next.push_back(join);
        }
      }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(),
            [](const ElemSet& a, const ElemSet& b) { return a.lex_compare(b) < 0; });
  auto out = std::make_shared<std::vector<ElemSet>>(std::move(all));
  std::lock_guard<std::mutex> lock(caches.mutex);
  if (!caches.normal_sets) caches.normal_sets = std::move(out);
  return *caches.normal_sets;
}

namespace {

// Minimal normal subgroups of G/cur, as preimages in G; optionally only those
// contained in `cap`.
std::vector<ElemSet> minimal_normal_over(const GroupPtr& g, const ElemSet& cur,
                                         const ElemSet* cap) {
  auto [q, hom] = quotient_set(g, cur);
  std::vector<ElemSet> out;
  for (const auto& m : minimal_normal_sets(q)) {
    ElemSet pre = hom.pull(m);
    if (cap && !pre.subset_of(*cap)) continue;
    out.push_back(std::move(pre));
  }
  std::sort(out.begin(), out.end(),
            [](const ElemSet& a, const ElemSet& b) { return a.lex_compare(b) < 0; });
  return out;
}

int section_rank(const GroupPtr& g, const ElemSet& upper, const ElemSet& lower);

NormalSection make_chief_section(const GroupPtr& g, const ElemSet& lower,
                                 const ElemSet& upper) {
  NormalSection s;
  s.ambient_uid = g->uid();
  s.upper = g->make_ref(upper);
  s.lower = g->make_ref(lower);
  s.chief = true;
  std::vector<ElemId> ugens = generating_set(*g, upper);
  s.centralizer = g->make_ref(kernels::centralizer_scan(*g, ugens, lower));
  s.rank = section_rank(g, upper, lower);
  return s;
}

int section_rank(const GroupPtr& g, const ElemSet& upper, const ElemSet& lower) {
  int m = upper.count() / lower.count();
  if (m == 1) return 0;
  // Abelian factor: elementary abelian of order p^k has rank k.
  std::vector<ElemId> ugens = generating_set(*g, upper);
  bool abelian = true;
  for (ElemId a : ugens)
    for (ElemId b : ugens) {
      ElemId c = g->mul(g->mul(g->inv(a), g->inv(b)), g->mul(a, b));
      if (!lower.test(c)) abelian = false;
    }
  if (abelian) {
    auto ps = prime_divisors(m);
    if (ps.size() != 1) throw PreconditionError("section is not chief (abelian factor of composite order)");
    int p = ps[0], k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    return k;
  }
  // Non-abelian: the number of minimal normal subgroups of the abstract
  // factor group (the simple direct factors).
  GroupPtr up = subgroup_group_set(g, upper);
  ElemSet lower_in_up(up->order());
  {
    std::vector<ElemId> mem = upper.to_list();
    std::vector<int> pos(g->order(), -1);
    for (std::size_t i = 0; i < mem.size(); ++i) pos[mem[i]] = int(i);
    lower.for_each([&](int x) { lower_in_up.set(pos[x]); });
  }
  auto [fac, hom] = quotient_set(up, lower_in_up);
  return int(minimal_normal_sets(fac).size());
}

}  // namespace

std::vector<NormalSection> chief_series_through(const GroupPtr& g,
                                                const ElemSet& n) {
  std::vector<NormalSection> out;
  ElemSet cur(g->order());
  cur.set(0);
  while (cur.count() < g->order()) {
    const ElemSet* cap = cur.proper_subset_of(n) ? &n : nullptr;
    auto mins = minimal_normal_over(g, cur, cap);
    if (mins.empty())
      throw PreconditionError("no chief series through the given subgroup");
    ElemSet nxt = mins.front();
    out.push_back(make_chief_section(g, cur, nxt));
    cur = std::move(nxt);
  }
  return out;
}

const std::vector<NormalSection>& chief_series(const GroupPtr& g) {
  auto& caches = g->caches();
  {
    std::lock_guard<std::mutex> lock(caches.mutex);
    if (caches.chief) return *caches.chief;
  }
  auto series = std::make_shared<std::vector<NormalSection>>(
      chief_series_through(g, g->full_set()));
  std::lock_guard<std::mutex> lock(caches.mutex);
  if (!caches.chief) caches.chief = std::move(series);
  return *caches.chief;
}

std::vector<std::vector<NormalSection>> all_chief_series(const GroupPtr& g) {
  if (g->order() > config().all_series_max_order)
    throw LimitError("all-chief-series enumeration limited to order " +
                     std::to_string(config().all_series_max_order) + ", group has " +
                     std::to_string(g->order()));
  std::vector<std::vector<NormalSection>> out;
  std::vector<NormalSection> prefix;
  ElemSet bottom(g->order());
  bottom.set(0);
  auto rec = [&](auto&& self, const ElemSet& cur) -> void {
    if (cur.count() == g->order()) {
      out.push_back(prefix);
      return;
    }
    for (const auto& nxt : minimal_normal_over(g, cur, nullptr)) {
      prefix.push_back(make_chief_section(g, cur, nxt));
      self(self, nxt);
      prefix.pop_back();
    }
  };
  rec(rec, bottom);
  return out;
}

bool is_chief_section(const GroupPtr& g, const ElemSet& upper, const ElemSet& lower) {
  if (!lower.proper_subset_of(upper)) return false;
  if (!g->is_subgroup_set(upper) || !g->is_subgroup_set(lower)) return false;
  if (!g->is_normal_set(upper) || !g->is_normal_set(lower)) return false;
  for (const auto& m : minimal_normal_over(g, lower, nullptr))
    if (m == upper) return true;
  return false;
}

int chief_rank(const GroupPtr& g, const NormalSection& section) {
  ElemSet upper = g->to_set(section.upper);
  ElemSet lower = g->to_set(section.lower);
  if (!section.chief && !is_chief_section(g, upper, lower))
    throw PreconditionError("chief_rank: section is not chief");
  return section_rank(g, upper, lower);
}

// --- isomorphism -----------------------------------------------------------------

namespace {

struct IsoSearch {
  const Group& a;
  const Group& b;
  bool collect_all = false;
  std::vector<GroupHom>* out = nullptr;
  std::vector<ElemId> gens_a;
  std::vector<ElemId> gens_b;

  bool found = false;

  bool extend_check(std::vector<ElemId>& images_out) const {
    int n = a.order();
    std::vector<int> img(n, -1);
    std::vector<char> used(b.order(), 0);
    img[0] = 0;
    used[0] = 1;
    std::vector<ElemId> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      ElemId x = queue[q];
      for (std::size_t k = 0; k < gens_a.size(); ++k) {
        ElemId xa = a.mul(x, gens_a[k]);
        ElemId yb = b.mul(ElemId(img[x]), gens_b[k]);
        if (img[xa] < 0) {
          if (used[yb]) return false;  // would not be injective
          img[xa] = yb;
          used[yb] = 1;
          queue.push_back(xa);
        } else if (img[xa] != yb) {
          return false;  // not a homomorphism
        }
      }
    }
    images_out.assign(n, 0);
    for (int x = 0; x < n; ++x) images_out[x] = img[x] < 0 ? ElemId(0) : ElemId(img[x]);
    // Caller checks whether the whole group was covered (full generator set).
    for (int x = 0; x < n; ++x)
      if (img[x] < 0) return gens_a.size() < gens_full;  // partial map is fine mid-search
    return true;
  }

  std::size_t gens_full = 0;

  void search(std::vector<ElemId>& chosen, const std::vector<ElemId>& all_gens) {
    if (found && !collect_all) return;
    std::size_t k = chosen.size();
    if (k == all_gens.size()) {
      gens_a = all_gens;
      gens_b = chosen;
      std::vector<ElemId> images;
      if (extend_check(images)) {
        found = true;
        if (out) {
          GroupHom h;
          h.source_uid = a.uid();
          h.target_uid = b.uid();
          h.images = std::move(images);
          out->push_back(std::move(h));
        }
      }
      return;
    }
    int want_order = a.element_order(all_gens[k]);
    for (int y = 0; y < b.order(); ++y) {
      if (b.element_order(ElemId(y)) != want_order) continue;
      chosen.push_back(ElemId(y));
      gens_a.assign(all_gens.begin(), all_gens.begin() + k + 1);
      gens_b = chosen;
      std::vector<ElemId> scratch;
      if (extend_check(scratch)) search(chosen, all_gens);
      chosen.pop_back();
      if (found && !collect_all) return;
    }
  }
};

std::vector<int> sorted_orders(const Group& g) {
  std::vector<int> o = g.element_orders();
  std::sort(o.begin(), o.end());
  return o;
}

}  // namespace

IsoResult is_isomorphic(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return IsoResult::No;
  if (a->uid() == b->uid()) return IsoResult::Yes;
  if (a->order() > config().iso_max_order) return IsoResult::Undecided;
  if (sorted_orders(*a) != sorted_orders(*b)) return IsoResult::No;
  if (a->is_abelian() != b->is_abelian()) return IsoResult::No;
  if (a->center_set().count() != b->center_set().count()) return IsoResult::No;
  IsoSearch s{*a, *b};
  std::vector<ElemId> gens = a->generators();
  s.gens_full = gens.size();
  std::vector<ElemId> chosen;
  s.search(chosen, gens);
  return s.found ? IsoResult::Yes : IsoResult::No;
}

std::vector<GroupHom> automorphism_group(const GroupPtr& g) {
  if (g->order() > config().aut_max_order)
    throw LimitError("automorphism enumeration limited to order " +
                     std::to_string(config().aut_max_order) + ", group has " +
                     std::to_string(g->order()));
  std::vector<GroupHom> out;
  IsoSearch s{*g, *g};
  s.collect_all = true;
  s.out = &out;
  std::vector<ElemId> gens = g->generators();
  s.gens_full = gens.size();
  std::vector<ElemId> chosen;
  s.search(chosen, gens);
  std::sort(out.begin(), out.end(),
            [](const GroupHom& x, const GroupHom& y) { return x.images < y.images; });
  return out;
}

}  // namespace formatheory
