#include "formatheory/hypercenter.hpp"

#include <algorithm>
#include <sstream>

#include "formatheory/kernels.hpp"
#include "formatheory/lattice.hpp"

namespace formatheory {

namespace {

std::string set_key(const ElemSet& s) {
  std::ostringstream os;
  os << std::hex;
  for (auto w : s.words()) os << w << '.';
  return os.str();
}

GroupPtr build_centrality_witness(const GroupPtr& g, const ElemSet& upper,
                                  const ElemSet& lower, const ElemSet& actors,
                                  const ElemSet& kernel) {
  std::string label = g->label() + "|cf" +
                      std::to_string(upper.count() / lower.count()) + "x|" +
                      std::to_string(actors.count() / kernel.count());
  return semidirect_section_action(g, upper, lower, actors, kernel, label);
}

// Cached verdict: does (upper/lower) x| (actors/kernel) lie in f?
bool witness_in_f(const GroupPtr& g, const ElemSet& upper, const ElemSet& lower,
                  const ElemSet& actors, const ElemSet& kernel,
                  const FormationPtr& f) {
  std::string key = "w:" + set_key(upper) + set_key(lower) + set_key(actors) +
                    set_key(kernel) + f->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().witness_verdicts.find(key);
    if (it != g->caches().witness_verdicts.end()) return it->second;
  }
  GroupPtr w = build_centrality_witness(g, upper, lower, actors, kernel);
  bool v = belongs(w, f);
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  g->caches().witness_verdicts.emplace(key, v);
  return v;
}

ElemSet centralizer_set(const GroupPtr& g, const ElemSet& upper,
                        const ElemSet& lower) {
  return kernels::centralizer_scan(*g, generating_set(*g, upper), lower);
}

}  // namespace

std::vector<SubgroupRef> f_maximal_subgroups(const GroupPtr& g,
                                             const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  auto flags = subgroup_membership_flags(g, f);
  if (!(*flags)[lat.trivial_index])
    throw PreconditionError("formation " + f->text +
                            " does not contain the trivial group");
  std::vector<SubgroupRef> out;
  for (int i = 0; i < lat.size(); ++i) {
    if (!(*flags)[i]) continue;
    bool maximal = true;
    for (int j = 0; j < lat.size(); ++j)
      if (j != i && (*flags)[j] && lat.subsets_of[j].test(i)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(g->make_ref(lat.subs[i]));
  }
  return out;
}

SubgroupRef int_f(const GroupPtr& g, const FormationPtr& f) {
  std::string key = "intf:" + f->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().subgroup_results.find(key);
    if (it != g->caches().subgroup_results.end()) return g->make_ref(it->second);
  }
  ElemSet inter = g->full_set();
  for (const auto& m : f_maximal_subgroups(g, f)) inter &= g->to_set(m);
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().subgroup_results.emplace(key, std::move(inter));
  return g->make_ref(it->second);
}

CentralityVerdict is_f_central(const GroupPtr& g, const NormalSection& section,
                               const FormationPtr& f) {
  ElemSet upper = g->to_set(section.upper);
  ElemSet lower = g->to_set(section.lower);
  if (!section.chief && !is_chief_section(g, upper, lower))
    throw PreconditionError("is_f_central: section is not chief in '" + g->label() +
                            "'");
  CentralityVerdict v;
  v.section = section;
  v.formation = f->text;
  ElemSet c = section.centralizer ? g->to_set(*section.centralizer)
                                  : centralizer_set(g, upper, lower);
  v.section.centralizer = g->make_ref(c);
  v.witness = build_centrality_witness(g, upper, lower, g->full_set(), c);
  v.central = belongs(v.witness, f);
  return v;
}

namespace {

// All chief factors of G below n are F-central (series refined through n).
bool hypercentral_below(const GroupPtr& g, const ElemSet& n, const FormationPtr& f) {
  if (n.count() == 1) return true;
  auto series = chief_series_through(g, n);
  for (const auto& sec : series) {
    ElemSet upper = g->to_set(sec.upper);
    if (!upper.subset_of(n)) break;
    ElemSet lower = g->to_set(sec.lower);
    ElemSet c = g->to_set(*sec.centralizer);
    if (!witness_in_f(g, upper, lower, g->full_set(), c, f)) return false;
  }
  return true;
}

}  // namespace

SubgroupRef z_f(const GroupPtr& g, const FormationPtr& f) {
  std::string key = "zf:" + f->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().subgroup_results.find(key);
    if (it != g->caches().subgroup_results.end()) return g->make_ref(it->second);
  }
  std::vector<ElemSet> normals = normal_subgroup_sets(g);
  // Largest satisfying candidate; ties broken by the canonical (lex) order.
  std::sort(normals.begin(), normals.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.count() != b.count()) return a.count() > b.count();
    return a.lex_compare(b) < 0;
  });
  ElemSet best(g->order());
  best.set(0);
  for (const auto& n : normals) {
    if (hypercentral_below(g, n, f)) {
      best = n;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().subgroup_results.emplace(key, std::move(best));
  return g->make_ref(it->second);
}

bool theorem5_rhs(const GroupPtr& g, const NormalSection& section,
                  const FormationPtr& f, const HomomorphPtr& h) {
  ElemSet upper = g->to_set(section.upper);
  ElemSet lower = g->to_set(section.lower);
  if (!section.chief && !is_chief_section(g, upper, lower))
    throw PreconditionError("theorem5_rhs: section is not chief");
  ElemSet c = section.centralizer ? g->to_set(*section.centralizer)
                                  : centralizer_set(g, upper, lower);
  auto [q, hom] = quotient_set(g, c);
  const auto& qlat = lattice_of(q);
  auto hflags = subgroup_hom_flags(q, h);
  ElemSet h_image = hom.push(upper, q->order());
  for (int t = 0; t < qlat.size(); ++t) {
    if (!(*hflags)[t]) continue;
    ElemSet th = q->product_set(qlat.subs[t], h_image);
    ElemSet actors = hom.pull(th);
    if (!witness_in_f(g, upper, lower, actors, c, f)) return false;
  }
  return true;
}

SubgroupRef corollary8_int(const GroupPtr& g, const FormationPtr& f,
                           const FormationFunctionPtr& local_def) {
  auto factor_ok = [&](const NormalSection& sec) {
    ElemSet upper = g->to_set(sec.upper);
    ElemSet c = g->to_set(*sec.centralizer);
    auto [q, hom] = quotient_set(g, c);
    const auto& qlat = lattice_of(q);
    auto fflags = subgroup_membership_flags(q, f);
    ElemSet h_image = hom.push(upper, q->order());
    std::vector<int> ps = prime_divisors(sec.factor_order());
    // Distinct HT products only.
    std::vector<ElemSet> products;
    for (int t = 0; t < qlat.size(); ++t) {
      if (!(*fflags)[t]) continue;
      ElemSet th = q->product_set(qlat.subs[t], h_image);
      bool dup = false;
      for (const auto& e : products)
        if (e == th) {
          dup = true;
          break;
        }
      if (!dup) products.push_back(std::move(th));
    }
    for (const auto& th : products) {
      GroupPtr tg = subgroup_group_set(q, th);
      for (int p : ps)
        if (!product_membership(tg, f_pgroup(p), local_def->at(p))) return false;
    }
    return true;
  };

  auto candidate_ok = [&](const ElemSet& m) {
    if (m.count() == 1) return true;
    for (const auto& sec : chief_series_through(g, m)) {
      if (!g->to_set(sec.upper).subset_of(m)) break;
      if (!factor_ok(sec)) return false;
    }
    return true;
  };

  std::vector<ElemSet> normals = normal_subgroup_sets(g);
  std::sort(normals.begin(), normals.end(), [](const ElemSet& a, const ElemSet& b) {
    if (a.count() != b.count()) return a.count() > b.count();
    return a.lex_compare(b) < 0;
  });
  for (const auto& n : normals)
    if (candidate_ok(n)) return g->make_ref(n);
  return g->trivial_subgroup();
}

}  // namespace formatheory
