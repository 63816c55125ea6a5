#pragma once

#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "formatheory/bitset.hpp"
#include "formatheory/group.hpp"

// Hot scans over multiplication tables.  Each kernel has a serial reference
// implementation and an OpenMP variant; the unsuffixed entry point dispatches
// on the configured thread budget.  Parallel variants return the same result
// as the serial ones (lexicographically least witness, order-independent
// reductions), so the two are interchangeable and tested against each other.
namespace formatheory::kernels {

using Triple = std::tuple<int, int, int>;

// Least non-associative triple (a,b,c), if any.  Full O(n^3) scan for
// n <= 512; 10*n^2 seeded triples above.
std::optional<Triple> associativity_violation_serial(const Group& g);
std::optional<Triple> associativity_violation_parallel(const Group& g);
std::optional<Triple> associativity_violation(const Group& g);

// { g in G : g^-1 h g * K = h K for all h in H }; upper_gens generate H.
ElemSet centralizer_scan_serial(const Group& g, const std::vector<ElemId>& upper_gens,
                                const ElemSet& lower);
ElemSet centralizer_scan_parallel(const Group& g,
                                  const std::vector<ElemId>& upper_gens,
                                  const ElemSet& lower);
ElemSet centralizer_scan(const Group& g, const std::vector<ElemId>& upper_gens,
                         const ElemSet& lower);

// One join-closure round of the subgroup enumeration: joins every frontier
// subgroup with every cyclic subgroup and returns the joins not already known.
// `known` is queried read-only; results are deduplicated and sorted.
struct JoinInput {
  const std::vector<ElemSet>* frontier;
  const std::vector<std::vector<ElemId>>* frontier_gens;
  const std::vector<ElemSet>* cyclic;
  const std::vector<ElemId>* cyclic_gen;
};
struct JoinResult {
  std::vector<ElemSet> sets;
  std::vector<std::vector<ElemId>> gens;
};
JoinResult join_round_serial(const Group& g, const JoinInput& in,
                             const std::unordered_map<ElemSet, int, ElemSetHash>& known);
JoinResult join_round_parallel(const Group& g, const JoinInput& in,
                               const std::unordered_map<ElemSet, int, ElemSetHash>& known);
JoinResult join_round(const Group& g, const JoinInput& in,
                      const std::unordered_map<ElemSet, int, ElemSetHash>& known);

}  // namespace formatheory::kernels
