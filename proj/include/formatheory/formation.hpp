#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "formatheory/group.hpp"
#include "formatheory/lattice.hpp"

namespace formatheory {

class FormationSpec;
class HomomorphSpec;
class FormationFunction;
using FormationPtr = std::shared_ptr<const FormationSpec>;
using HomomorphPtr = std::shared_ptr<const HomomorphSpec>;
using FormationFunctionPtr = std::shared_ptr<const FormationFunction>;

struct PrimeSet {
  bool all = false;
  std::vector<int> primes;  // sorted, deduplicated
  bool contains(int p) const;
  std::string to_string() const;
};

enum class BaseClass {
  Trivial,
  All,
  Abelian,
  Nilpotent,
  Soluble,
  Supersoluble,
  PGroup,
  PiGroup,
  AbExp,
  SolRank,
};

enum class SpecKind { Base, Intersect, Product, Local, ZClass, Fhf };

// Evaluatable group-class expression.  Immutable; the canonical text doubles
// as the cache key, so structurally equal specs share verdict caches.
class FormationSpec : public std::enable_shared_from_this<FormationSpec> {
 public:
  SpecKind kind = SpecKind::Base;
  BaseClass base = BaseClass::Trivial;
  PrimeSet primes;  // PGroup / PiGroup
  int arg = 0;      // AbExp bound / SolRank bound
  FormationPtr left, right;
  HomomorphPtr hom;              // Fhf
  FormationFunctionPtr local_fn;  // Local

  std::string text;      // canonical serialization
  bool formation = false;   // closed under quotients and subdirect products
  bool hereditary = false;  // closed under subgroups
  bool saturated = false;   // closed under Frattini extensions

  static FormationPtr make_base(BaseClass b, PrimeSet ps = {}, int arg = 0);
  static FormationPtr make_intersect(FormationPtr a, FormationPtr b);
  static FormationPtr make_product(FormationPtr a, FormationPtr b);
  static FormationPtr make_local(FormationFunctionPtr f);
  static FormationPtr make_zclass(FormationPtr f);
  static FormationPtr make_fhf(HomomorphPtr h, FormationPtr f);
};

enum class HomKind { Formation, CyclicPrimary, Primary };

class HomomorphSpec {
 public:
  HomKind kind = HomKind::Formation;
  FormationPtr formation_spec;
  PrimeSet primes;
  std::string text;
  bool saturated = false;

  static HomomorphPtr wrap(FormationPtr f);
  static HomomorphPtr cyclic_primary(PrimeSet ps);
  static HomomorphPtr primary(PrimeSet ps);
};

enum class FuncKind { ExplicitMap, TrivialAll, AbExpPMinus1 };

// Formation function p -> formation; total via the default entry.
class FormationFunction {
 public:
  FuncKind kind = FuncKind::ExplicitMap;
  std::map<int, FormationPtr> at_prime;
  FormationPtr fallback;
  std::string text;

  FormationPtr at(int p) const;
  bool hereditary_values() const;

  static FormationFunctionPtr trivial_all();
  static FormationFunctionPtr abexp_p_minus_1();
  static FormationFunctionPtr explicit_map(std::map<int, FormationPtr> m,
                                           FormationPtr fallback);
};

// Shorthand builders for the built-in classes.
FormationPtr f_trivial();
FormationPtr f_all();
FormationPtr f_abelian();
FormationPtr f_nilpotent();
FormationPtr f_soluble();
FormationPtr f_supersoluble();
FormationPtr f_pgroup(int p);
FormationPtr f_abexp(int m);
FormationPtr f_solrank(int n);

// expr := NAME | NAME ':' ARG | 'intersect(' e ',' e ')' | 'product(' e ',' e ')'
//       | 'zclass(' e ')' | 'fhf(' hom ',' e ')'
//       | 'local{' (PRIME '->' e ',')* 'default' '->' e '}'
// hom  := expr | 'cyclicprimary:' PRIMES | 'primary:' PRIMES
// PRIMES := 'all' | p ('+' p)*
// Whitespace-insensitive; names case-sensitive.
FormationPtr parse_formation(const std::string& text);
HomomorphPtr parse_homomorph(const std::string& text);
// Accepts the named rules "trivial" and "abexp-pminus1" or a local{...} map.
FormationFunctionPtr parse_formation_function(const std::string& text);

bool belongs(const GroupPtr& g, const FormationPtr& f);
bool hom_belongs(const GroupPtr& g, const HomomorphPtr& h);

// G^F: intersection of the normal subgroups with quotient in F.
SubgroupRef residual(const GroupPtr& g, const FormationPtr& f);

// Membership in the formation product F1 F2 = (G | G^{F2} in F1).
bool product_membership(const GroupPtr& g, const FormationPtr& f1,
                        const FormationPtr& f2);

bool local_membership(const GroupPtr& g, const FormationFunctionPtr& f);

// Membership verdicts for every lattice subgroup, cached per (group, spec).
std::shared_ptr<const std::vector<char>> subgroup_membership_flags(
    const GroupPtr& g, const FormationPtr& f);
std::shared_ptr<const std::vector<char>> subgroup_hom_flags(const GroupPtr& g,
                                                            const HomomorphPtr& h);

enum class ClosureProperty { Homomorph, Formation, Hereditary, Saturated };

struct ProbeOutcome {
  std::string property;
  bool pass = true;
  bool witness_found = false;  // for probes that search rather than check
  std::string detail;          // witness description when failed
};

ProbeOutcome closure_probe_fn(const std::function<bool(const GroupPtr&)>& member,
                              const std::vector<GroupPtr>& catalog,
                              ClosureProperty property, const std::string& name);
ProbeOutcome closure_probe(const FormationPtr& f, const std::vector<GroupPtr>& catalog,
                           ClosureProperty property);
ProbeOutcome closure_probe(const HomomorphPtr& h, const std::vector<GroupPtr>& catalog,
                           ClosureProperty property);

// (is a minimal non-F group, is a Schmidt group).
std::pair<bool, bool> minimal_non_f_and_schmidt(const GroupPtr& g,
                                                const FormationPtr& f);

}  // namespace formatheory
