#pragma once

#include <functional>
#include <string>
#include <vector>

#include "formatheory/group.hpp"

namespace formatheory {

struct CatalogEntry {
  std::string label;
  std::string recipe;  // construction description
  int order = 0;
  std::vector<std::string> tags;  // abelian / cyclic / nilpotent / soluble / ...
  std::function<GroupPtr()> build;  // rebuilds an identical table
};

// Built-in small-groups collection: cyclic and elementary abelian groups,
// dihedral and generalized quaternion 2-series, the small symmetric and
// alternating groups, a few semidirect products, and direct products up to
// order 360.  Deterministic order.
const std::vector<CatalogEntry>& catalog();

// Shared instances (same indexing as catalog()); caches accumulate on these.
const std::vector<GroupPtr>& catalog_instances();

// Lookup by label; throws if unknown.
GroupPtr catalog_group(const std::string& label);

// Instances filtered by maximum order and required tags.
std::vector<GroupPtr> catalog_filtered(int max_order,
                                       const std::vector<std::string>& tags);

}  // namespace formatheory
