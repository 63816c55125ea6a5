#pragma once

#include <vector>

#include "formatheory/formation.hpp"
#include "formatheory/group.hpp"

namespace formatheory {

struct CentralityVerdict {
  NormalSection section;
  std::string formation;
  bool central = false;
  GroupPtr witness;  // (H/K) x| (G / C_G(H/K)) built by conjugation
};

// Maximal elements of the poset of F-subgroups.  Requires 1 in F.
std::vector<SubgroupRef> f_maximal_subgroups(const GroupPtr& g, const FormationPtr& f);

// Intersection of all F-maximal subgroups.
SubgroupRef int_f(const GroupPtr& g, const FormationPtr& f);

// A chief factor H/K is F-central iff the conjugation semidirect product
// (H/K) x| (G/C_G(H/K)) lies in F.
CentralityVerdict is_f_central(const GroupPtr& g, const NormalSection& section,
                               const FormationPtr& f);

// Largest normal subgroup all of whose chief factors below it are F-central.
SubgroupRef z_f(const GroupPtr& g, const FormationPtr& f);

// Right-hand side of the chief-factor characterization: for every H-subgroup
// T/C of G/C (C = C_G(H/K)), the product (H/K) x| (TH/C) lies in F.
bool theorem5_rhs(const GroupPtr& g, const NormalSection& section,
                  const FormationPtr& f, const HomomorphPtr& h);

// Largest normal M of G such that HT/C_G(H/K) lies in N_p f(p) for every
// chief factor H/K below M, every p dividing |H/K| and every F-subgroup
// T/C_G(H/K) of G/C_G(H/K).
SubgroupRef corollary8_int(const GroupPtr& g, const FormationPtr& f,
                           const FormationFunctionPtr& local_def);

}  // namespace formatheory
