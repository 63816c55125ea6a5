#include "formatheory/group_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace formatheory {

namespace {

struct LineReader {
  std::istream& in;
  std::string name;
  int line_no = 0;

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      // Skip blank lines and comments.
      std::size_t i = out.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;
      if (out[i] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg, int column) {
    throw ParseError(name + ":" + std::to_string(line_no) + ":" +
                         std::to_string(column) + ": " + msg,
                     line_no, column);
  }
};

std::vector<int> parse_int_row(LineReader& r, const std::string& line, int expect,
                               const char* what) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    if (line[i] == '-') ++i;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
    if (i == start || (line[start] == '-' && i == start + 1))
      r.fail(std::string("expected ") + what + ", found '" + line[start] + "'",
             int(start) + 1);
    out.push_back(std::stoi(line.substr(start, i - start)));
  }
  if (expect >= 0 && int(out.size()) != expect)
    r.fail("expected " + std::to_string(expect) + " entries, found " +
               std::to_string(out.size()),
           int(line.size()) + 1);
  return out;
}

}  // namespace

GroupPtr read_cayley_table(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) r.fail("missing order line", 1);
  auto head = parse_int_row(r, line, -1, "group order");
  if (head.size() != 1 || head[0] <= 0)
    r.fail("first line must hold the group order", 1);
  int n = head[0];
  std::vector<std::vector<int>> table;
  for (int row = 0; row < n; ++row) {
    if (!r.next(line))
      r.fail("table ends early: expected " + std::to_string(n) + " rows", 1);
    auto vals = parse_int_row(r, line, n, "element id");
    for (std::size_t c = 0; c < vals.size(); ++c)
      if (vals[c] < 0 || vals[c] >= n)
        r.fail("element id " + std::to_string(vals[c]) + " out of range 0.." +
                   std::to_string(n - 1),
               int(c) + 1);
    table.push_back(std::move(vals));
  }
  if (n > 0 && table[0][0] != 0)
    throw ParseError(name + ": element 0 must be the identity", 2, 1);
  return build_group_from_table(table, name);
}

GroupPtr read_cayley_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_cayley_table(in, path);
}

GroupPtr read_permutation_group(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) r.fail("missing degree line", 1);
  auto head = parse_int_row(r, line, -1, "degree");
  if (head.size() != 1 || head[0] <= 0)
    r.fail("first line must hold the permutation degree", 1);
  int degree = head[0];
  std::vector<std::vector<int>> gens;
  while (r.next(line)) {
    auto vals = parse_int_row(r, line, degree, "point image");
    for (std::size_t c = 0; c < vals.size(); ++c)
      if (vals[c] < 0 || vals[c] >= degree)
        r.fail("image " + std::to_string(vals[c]) + " out of range 0.." +
                   std::to_string(degree - 1),
               int(c) + 1);
    gens.push_back(std::move(vals));
  }
  return build_group_from_permutations(degree, gens, name);
}

GroupPtr read_permutation_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_permutation_group(in, path);
}

}  // namespace formatheory
