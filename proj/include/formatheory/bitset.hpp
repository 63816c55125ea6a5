#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace formatheory {

// Dense element-id set over 0..n-1.  Subgroups, cosets and conjugates are
// manipulated as these; the canonical external form is the sorted id list.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  int universe() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  ElemSet& operator&=(const ElemSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }

  bool operator==(const ElemSet& o) const { return w_ == o.w_; }
  bool operator!=(const ElemSet& o) const { return w_ != o.w_; }

  bool subset_of(const ElemSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool proper_subset_of(const ElemSet& o) const {
    return subset_of(o) && w_ != o.w_;
  }

  // Lexicographic order of the sorted id lists (not of the raw words).
  int lex_compare(const ElemSet& o) const {
    int a = next(-1), b = o.next(-1);
    while (a >= 0 && b >= 0) {
      if (a != b) return a < b ? -1 : 1;
      a = next(a);
      b = o.next(b);
    }
    if (a < 0 && b < 0) return 0;
    return a < 0 ? -1 : 1;
  }

  // Smallest set element strictly greater than `after` (-1 to start); -1 if none.
  int next(int after) const {
    int i = after + 1;
    if (i >= n_) return -1;
    std::size_t word = i >> 6;
    std::uint64_t cur = w_[word] & (~std::uint64_t(0) << (i & 63));
    while (true) {
      if (cur) return int(word * 64 + __builtin_ctzll(cur));
      if (++word >= w_.size()) return -1;
      cur = w_[word];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int i = next(-1); i >= 0; i = next(i)) f(i);
  }

  std::vector<std::uint16_t> to_list() const {
    std::vector<std::uint16_t> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(std::uint16_t(i)); });
    return out;
  }

  static ElemSet from_list(int universe, const std::vector<std::uint16_t>& ids) {
    ElemSet s(universe);
    for (auto i : ids) s.set(i);
    return s;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return std::size_t(h ^ std::uint64_t(n_));
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace formatheory
