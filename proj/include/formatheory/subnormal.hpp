#pragma once

#include <optional>
#include <vector>

#include "formatheory/formation.hpp"
#include "formatheory/group.hpp"

namespace formatheory {

// Maximal chain H = H_0 < H_1 < ... < H_n = G with every step quotient
// H_i / Core_{H_i}(H_{i-1}) in the formation.
struct SubnormalChain {
  std::uint64_t ambient_uid = 0;
  std::vector<SubgroupRef> links;
  std::vector<int> step_quotient_orders;  // one per step, |links|-1 entries
};

struct SubnormalizerSet {
  std::uint64_t ambient_uid = 0;
  SubgroupRef subject;
  std::vector<SubgroupRef> members;
};

// Top-down chain search with (subject, ambient) memoization; conjugate pairs
// share verdicts when the formation is hereditary-flagged.
bool is_f_subnormal(const GroupPtr& g, const SubgroupRef& h, const FormationPtr& f);

// H F-sn T for subgroups H <= T of G, evaluated on G's shared lattice and
// memo (the subgroup poset of T is an ideal of G's, so this agrees with
// running the search inside T itself).
bool is_f_subnormal_in(const GroupPtr& g, const SubgroupRef& h, const SubgroupRef& t,
                       const FormationPtr& f);

// Witness chain when subnormal; nullopt otherwise.
std::optional<SubnormalChain> f_subnormal_witness(const GroupPtr& g,
                                                  const SubgroupRef& h,
                                                  const FormationPtr& f);

// All maximal T <= G with H F-sn T.  Never empty.
SubnormalizerSet weak_f_subnormalizers(const GroupPtr& g, const SubgroupRef& h,
                                       const FormationPtr& f);

// Intersection of all weak F-subnormalizers of all H-subgroups of G (the
// empty intersection is G).  For hereditary F the result is cross-checked
// against the largest-normal-subgroup characterization.
SubgroupRef i_hf(const GroupPtr& g, const HomomorphPtr& h, const FormationPtr& f);

// Minimal B <= A with BN = A, for N normal in G and contained in A.
std::vector<SubgroupRef> minimal_supplements(const GroupPtr& g, const SubgroupRef& a,
                                             const SubgroupRef& n);

// Every H-subgroup of G is F-subnormal in G.  On failure, *witness names a
// non-subnormal H-subgroup.
bool in_f_h_f(const GroupPtr& g, const HomomorphPtr& h, const FormationPtr& f,
              SubgroupRef* witness = nullptr);

}  // namespace formatheory
