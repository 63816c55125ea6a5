#pragma once

#include <iosfwd>
#include <string>

#include "formatheory/group.hpp"

namespace formatheory {

// Cayley-table file: line 1 holds n, lines 2..n+1 hold n space-separated
// element ids (row g lists g*h for h = 0..n-1).  Element 0 must be the
// identity.  Rejections carry line/column positions.
GroupPtr read_cayley_table(std::istream& in, const std::string& name);
GroupPtr read_cayley_table_file(const std::string& path);

// Permutation-group file: line 1 holds the degree d, each following line one
// generator as d space-separated 0-based images.
GroupPtr read_permutation_group(std::istream& in, const std::string& name);
GroupPtr read_permutation_group_file(const std::string& path);

}  // namespace formatheory
