#pragma once

#include <unordered_map>
#include <vector>

#include "formatheory/group.hpp"

namespace formatheory {

// Complete subgroup poset of a group, memoized per group.  Enumeration seeds
// with all cyclic subgroups and closes under pairwise join to a fixed point;
// the result is canonical (sets sorted lexicographically as id lists).
struct SubgroupLattice {
  GroupPtr group;
  std::vector<ElemSet> subs;
  std::vector<int> sub_order;
  std::vector<std::vector<ElemId>> sub_gens;
  std::unordered_map<ElemSet, int, ElemSetHash> index;
  std::vector<ElemSet> subsets_of;    // over lattice indices: j in subsets_of[i] iff subs[j] <= subs[i]
  std::vector<ElemSet> supersets_of;
  std::vector<std::vector<int>> maximals_of;  // covers below each subgroup
  std::vector<char> normal_in_group;
  int trivial_index = 0;
  int full_index = 0;

  int size() const { return int(subs.size()); }
  int index_of(const ElemSet& s) const;  // -1 if absent
  std::vector<int> normal_indices() const;

  // Index image of subs[i] under conjugation by group generator #k (lazy).
  int conjugate_index(int i, int gen_no) const;
  // Canonical representative of the pair (h, t) under simultaneous
  // conjugation; h <= t assumed.  Used for hereditary-formation memoization.
  std::pair<int, int> canonical_pair(int h, int t) const;

 private:
  mutable std::mutex conj_mutex;
  mutable std::vector<std::vector<int>> conj_by_gen;
  mutable std::unordered_map<std::uint64_t, std::uint64_t> pair_canon;
  friend const SubgroupLattice& lattice_of(const GroupPtr& g);
};

const SubgroupLattice& lattice_of(const GroupPtr& g);
bool lattice_available(const Group& g);

std::vector<SubgroupRef> subgroups(const GroupPtr& g);
std::vector<SubgroupRef> maximal_subgroups_of(const GroupPtr& g, const SubgroupRef& h);

enum class NormalKind { Normal, MinimalNormal };
std::vector<SubgroupRef> normal_structure(const GroupPtr& g, NormalKind kind,
                                          const SubgroupRef& within);

// Largest subgroup of U normal in H (intersection of the H-conjugates of U).
SubgroupRef core_in(const GroupPtr& g, const SubgroupRef& h, const SubgroupRef& u);

// C_G(H/K) for K <= H, both normal in G.
SubgroupRef centralizer_of_section(const GroupPtr& g, const SubgroupRef& h,
                                   const SubgroupRef& k);
const SubgroupRef& section_centralizer(const GroupPtr& g, NormalSection& section);

enum class Distinguished { Frattini, Fitting, SolubleRadical, Center, Hypercenter, OP };
SubgroupRef distinguished_subgroup(const GroupPtr& g, Distinguished kind, int p = 0);

// Deterministic chief series, built bottom-up; ties between minimal normal
// subgroups are broken by the least canonical preimage element set.
const std::vector<NormalSection>& chief_series(const GroupPtr& g);
// Chief series of G passing through the normal subgroup N.
std::vector<NormalSection> chief_series_through(const GroupPtr& g, const ElemSet& n);
// Every chief series (order <= config().all_series_max_order).
std::vector<std::vector<NormalSection>> all_chief_series(const GroupPtr& g);

int chief_rank(const GroupPtr& g, const NormalSection& section);
bool is_chief_section(const GroupPtr& g, const ElemSet& upper, const ElemSet& lower);

// Minimal normal subgroups via conjugacy-class closures; works above the
// lattice limit (used for chief series of large witness groups).
std::vector<ElemSet> minimal_normal_sets(const GroupPtr& g);

// Every normal subgroup, as the join closure of the conjugacy-class
// closures.  Does not require the subgroup lattice; cached per group and
// sorted lexicographically.
const std::vector<ElemSet>& normal_subgroup_sets(const GroupPtr& g);

enum class IsoResult { Yes, No, Undecided };
IsoResult is_isomorphic(const GroupPtr& a, const GroupPtr& b);

std::vector<GroupHom> automorphism_group(const GroupPtr& g);

std::vector<ElemId> generating_set(const Group& g, const ElemSet& s);

// Solubility / nilpotency of a member set, computed inside the parent via
// derived and lower central series (no materialization).
bool set_is_soluble(const Group& g, const ElemSet& s);
bool set_is_nilpotent(const Group& g, const ElemSet& s);

bool is_prime(int p);
std::vector<int> prime_divisors(int n);

}  // namespace formatheory
