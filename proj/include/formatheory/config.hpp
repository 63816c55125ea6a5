#pragma once

#include <stdexcept>
#include <string>

namespace formatheory {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stated precondition of an operation does not hold for the given inputs.
struct PreconditionError : Error {
  using Error::Error;
};

// A size cap was exceeded; the message names the offending size.
struct LimitError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg), line(line_), column(column_) {}
};

// Size policy.  The caps below are tool policy, not mathematics: exact
// enumeration is kept to desk scale and anything beyond fails loudly.
struct Config {
  int build_max_order = 2048;      // imported tables / permutation closures
  int internal_max_order = 8192;   // internally constructed witness groups
  int lattice_max_order = 360;     // full subgroup enumeration
  int iso_max_order = 64;          // exhaustive isomorphism search
  int aut_max_order = 24;          // full automorphism enumeration
  int all_series_max_order = 64;   // "every chief series" enumeration
  int exhaustive_tuple_max_order = 24;  // suites enumerate all tuples up to this
  int sample_tuples = 200;              // seeded tuple samples above it
};

Config& config();

}  // namespace formatheory
