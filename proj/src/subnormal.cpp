#include "formatheory/subnormal.hpp"

#include <algorithm>
#include <unordered_map>

namespace formatheory {

// Per-(group, formation) memo over lattice indices.
struct SubnormalTable {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, char> pair_memo;  // (h<<32)|t -> verdict
  std::unordered_map<std::uint64_t, char> step_memo;  // (t<<32)|m -> quotient in F
};

namespace {

std::uint64_t pack(int a, int b) { return (std::uint64_t(a) << 32) | std::uint64_t(b); }

std::shared_ptr<SubnormalTable> table_for(const GroupPtr& g, const FormationPtr& f) {
  auto& caches = g->caches();
  std::lock_guard<std::mutex> lock(caches.mutex);
  auto& slot = caches.subnormal[f->text];
  if (!slot) slot = std::make_shared<SubnormalTable>();
  return slot;
}

// Core of subs[m] in subs[t]: intersection of the subs[t]-conjugates.
// Conjugates repeat on left cosets of subs[m], so only a transversal is hit.
ElemSet core_of_maximal(const Group& g, const ElemSet& t, const ElemSet& m) {
  ElemSet core = m;
  ElemSet covered(g.order());
  t.for_each([&](int y) {
    if (covered.test(y)) return;
    m.for_each([&](int mm) { covered.set(g.mul(ElemId(mm), ElemId(y))); });
    core &= g.conjugate_set(m, ElemId(y));
  });
  return core;
}

struct Search {
  const GroupPtr& g;
  const SubgroupLattice& lat;
  const FormationPtr& f;
  SubnormalTable& tab;
  bool canon;

  bool step_in_f(int t, int m) {
    auto key = pack(t, m);
    if (canon) {
      auto [cm, ct] = lat.canonical_pair(m, t);
      key = pack(ct, cm);
    }
    auto it = tab.step_memo.find(key);
    if (it != tab.step_memo.end()) return it->second;
    ElemSet core = core_of_maximal(*g, lat.subs[t], lat.subs[m]);
    GroupPtr tg = subgroup_group_set(g, lat.subs[t]);
    // Map the core into the child group's coordinates.
    ElemSet core_in_t(tg->order());
    {
      const auto& mem = lat.subs[t];
      int pos = 0;
      for (int x = mem.next(-1); x >= 0; x = mem.next(x), ++pos)
        if (core.test(x)) core_in_t.set(pos);
    }
    auto [q, hom] = quotient_set(tg, core_in_t);
    bool v = belongs(q, f);
    tab.step_memo.emplace(key, v ? 1 : 0);
    return v;
  }

  bool subnormal(int h, int t) {
    if (h == t) return true;
    auto key = pack(h, t);
    if (canon) {
      auto [ch, ct] = lat.canonical_pair(h, t);
      key = pack(ch, ct);
    }
    auto it = tab.pair_memo.find(key);
    if (it != tab.pair_memo.end()) return it->second;
    bool v = false;
    for (int m : lat.maximals_of[t]) {
      if (!lat.subsets_of[m].test(h)) continue;
      if (step_in_f(t, m) && subnormal(h, m)) {
        v = true;
        break;
      }
    }
    tab.pair_memo[key] = v ? 1 : 0;
    return v;
  }
};

int lattice_index_checked(const GroupPtr& g, const SubgroupLattice& lat,
                          const SubgroupRef& h) {
  int idx = lat.index_of(g->to_set(h));
  if (idx < 0)
    throw PreconditionError("not a subgroup of '" + g->label() + "': " +
                            h.to_string());
  return idx;
}

}  // namespace

bool is_f_subnormal(const GroupPtr& g, const SubgroupRef& h, const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  int hi = lattice_index_checked(g, lat, h);
  auto tab = table_for(g, f);
  std::lock_guard<std::mutex> lock(tab->mutex);
  Search s{g, lat, f, *tab, f->hereditary};
  return s.subnormal(hi, lat.full_index);
}

bool is_f_subnormal_in(const GroupPtr& g, const SubgroupRef& h, const SubgroupRef& t,
                       const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  int hi = lattice_index_checked(g, lat, h);
  int ti = lattice_index_checked(g, lat, t);
  if (!lat.subsets_of[ti].test(hi))
    throw PreconditionError("is_f_subnormal_in: H is not contained in T");
  auto tab = table_for(g, f);
  std::lock_guard<std::mutex> lock(tab->mutex);
  Search s{g, lat, f, *tab, f->hereditary};
  return s.subnormal(hi, ti);
}

std::optional<SubnormalChain> f_subnormal_witness(const GroupPtr& g,
                                                  const SubgroupRef& h,
                                                  const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  int hi = lattice_index_checked(g, lat, h);
  auto tab = table_for(g, f);
  std::lock_guard<std::mutex> lock(tab->mutex);
  Search s{g, lat, f, *tab, f->hereditary};
  if (!s.subnormal(hi, lat.full_index)) return std::nullopt;
  SubnormalChain chain;
  chain.ambient_uid = g->uid();
  std::vector<int> down{lat.full_index};
  int t = lat.full_index;
  while (t != hi) {
    for (int m : lat.maximals_of[t]) {
      if (!lat.subsets_of[m].test(hi)) continue;
      if (s.step_in_f(t, m) && s.subnormal(hi, m)) {
        ElemSet core = core_of_maximal(*g, lat.subs[t], lat.subs[m]);
        chain.step_quotient_orders.push_back(lat.sub_order[t] / core.count());
        down.push_back(m);
        t = m;
        break;
      }
    }
  }
  std::reverse(down.begin(), down.end());
  std::reverse(chain.step_quotient_orders.begin(), chain.step_quotient_orders.end());
  for (int i : down) chain.links.push_back(g->make_ref(lat.subs[i]));
  return chain;
}

SubnormalizerSet weak_f_subnormalizers(const GroupPtr& g, const SubgroupRef& h,
                                       const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  int hi = lattice_index_checked(g, lat, h);
  auto tab = table_for(g, f);
  std::vector<int> hits;
  {
    std::lock_guard<std::mutex> lock(tab->mutex);
    Search s{g, lat, f, *tab, f->hereditary};
    for (int t = 0; t < lat.size(); ++t) {
      if (!lat.subsets_of[t].test(hi)) continue;
      if (s.subnormal(hi, t)) hits.push_back(t);
    }
  }
  SubnormalizerSet out;
  out.ambient_uid = g->uid();
  out.subject = h;
  for (int t : hits) {
    bool maximal = true;
    for (int o : hits)
      if (o != t && lat.subsets_of[o].test(t)) {
        maximal = false;
        break;
      }
    if (maximal) out.members.push_back(g->make_ref(lat.subs[t]));
  }
  return out;
}

SubgroupRef i_hf(const GroupPtr& g, const HomomorphPtr& h, const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  auto hom_flags = subgroup_hom_flags(g, h);
  auto tab = table_for(g, f);
  ElemSet inter = g->full_set();
  bool any = false;
  {
    std::lock_guard<std::mutex> lock(tab->mutex);
    Search s{g, lat, f, *tab, f->hereditary};
    for (int hi = 0; hi < lat.size(); ++hi) {
      if (!(*hom_flags)[hi]) continue;
      any = true;
      std::vector<int> hits;
      for (int t = 0; t < lat.size(); ++t) {
        if (!lat.subsets_of[t].test(hi)) continue;
        if (s.subnormal(hi, t)) hits.push_back(t);
      }
      for (int t : hits) {
        bool maximal = true;
        for (int o : hits)
          if (o != t && lat.subsets_of[o].test(t)) {
            maximal = false;
            break;
          }
        if (maximal) inter &= lat.subs[t];
      }
    }
  }
  (void)any;  // empty intersection is the whole group by convention
  if (f->hereditary) {
    // Independent route from the largest-normal-subgroup characterization:
    // the maximal N with H F-sn HN for every H-subgroup H.
    std::lock_guard<std::mutex> lock(tab->mutex);
    Search s{g, lat, f, *tab, f->hereditary};
    int best = lat.trivial_index;
    for (int ni : lat.normal_indices()) {
      bool ok = true;
      for (int hi = 0; hi < lat.size() && ok; ++hi) {
        if (!(*hom_flags)[hi]) continue;
        ElemSet hn = g->product_set(lat.subs[hi], lat.subs[ni]);
        int hni = lat.index_of(hn);
        if (hni < 0 || !s.subnormal(hi, hni)) ok = false;
      }
      if (ok && lat.sub_order[ni] > lat.sub_order[best]) best = ni;
    }
    if (!(lat.subs[best] == inter))
      throw Error("i_hf cross-check failed on '" + g->label() + "' for (" + h->text +
                  ", " + f->text + ")");
  }
  return g->make_ref(inter);
}

std::vector<SubgroupRef> minimal_supplements(const GroupPtr& g, const SubgroupRef& a,
                                             const SubgroupRef& n) {
  const auto& lat = lattice_of(g);
  ElemSet aset = g->to_set(a), nset = g->to_set(n);
  if (!g->is_normal_set(nset))
    throw PreconditionError("minimal_supplements: N must be normal in '" +
                            g->label() + "'");
  if (!nset.subset_of(aset))
    throw PreconditionError("minimal_supplements: N must be contained in A");
  int ai = lat.index_of(aset);
  if (ai < 0)
    throw PreconditionError("minimal_supplements: A is not a subgroup");
  int asz = lat.sub_order[ai], nsz = nset.count();
  std::vector<int> supplements;
  for (int b = 0; b < lat.size(); ++b) {
    if (!lat.subsets_of[ai].test(b)) continue;
    int cap = (lat.subs[b] & nset).count();
    if (lat.sub_order[b] * nsz == asz * cap) supplements.push_back(b);
  }
  std::vector<SubgroupRef> out;
  for (int b : supplements) {
    bool minimal = true;
    for (int c : supplements)
      if (c != b && lat.subsets_of[b].test(c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(g->make_ref(lat.subs[b]));
  }
  return out;
}

bool in_f_h_f(const GroupPtr& g, const HomomorphPtr& h, const FormationPtr& f,
              SubgroupRef* witness) {
  const auto& lat = lattice_of(g);
  auto hom_flags = subgroup_hom_flags(g, h);
  for (int hi = 0; hi < lat.size(); ++hi) {
    if (!(*hom_flags)[hi]) continue;
    if (!is_f_subnormal(g, g->make_ref(lat.subs[hi]), f)) {
      if (witness) *witness = g->make_ref(lat.subs[hi]);
      return false;
    }
  }
  return true;
}

}  // namespace formatheory
