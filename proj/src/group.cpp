#include "formatheory/group.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include "formatheory/kernels.hpp"
#include "formatheory/parallel.hpp"

namespace formatheory {

Config& config() {
  static Config cfg;
  return cfg;
}

namespace {

std::atomic<std::uint64_t> next_uid{1};

std::string join_ids(const std::vector<ElemId>& ids) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ',';
    os << ids[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

bool SubgroupRef::contains(ElemId x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

std::string SubgroupRef::to_string() const { return join_ids(members); }

ElemSet GroupHom::push(const ElemSet& s, int target_order) const {
  ElemSet out(target_order);
  s.for_each([&](int x) { out.set(images[x]); });
  return out;
}

ElemSet GroupHom::pull(const ElemSet& s) const {
  ElemSet out(int(images.size()));
  for (std::size_t x = 0; x < images.size(); ++x)
    if (s.test(images[x])) out.set(int(x));
  return out;
}

// --- Group basics ------------------------------------------------------------

GroupPtr Group::make(int n, std::vector<ElemId> table, std::string label,
                     std::vector<ElemId> generators, int perm_degree,
                     std::vector<std::vector<ElemId>> perm_images) {
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = n;
  g->table_ = std::move(table);
  g->label_ = std::move(label);
  g->uid_ = next_uid.fetch_add(1);
  g->declared_generators_ = std::move(generators);
  g->perm_degree_ = perm_degree;
  g->perm_images_ = std::move(perm_images);
  g->inverse_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n; ++b) {
      if (g->mul(ElemId(a), ElemId(b)) == 0) {
        g->inverse_[a] = ElemId(b);
        found = true;
        break;
      }
    }
    if (!found)
      throw PreconditionError("element " + std::to_string(a) + " of '" +
                              g->label_ + "' has no inverse");
  }
  return g;
}

void Group::validate() const {
  if (n_ <= 0) throw PreconditionError("empty element set");
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= n_)
      throw PreconditionError("table entry out of range at flat index " +
                              std::to_string(i));
  for (int x = 0; x < n_; ++x) {
    if (mul(0, ElemId(x)) != x || mul(ElemId(x), 0) != x)
      throw PreconditionError("identity law fails at element " + std::to_string(x));
    if (mul(ElemId(x), inv(ElemId(x))) != 0)
      throw PreconditionError("inverse law fails at element " + std::to_string(x));
  }
  // Latin-square check: every row and column is a permutation.
  std::vector<char> seen(n_);
  for (int a = 0; a < n_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n_; ++b) seen[mul(ElemId(a), ElemId(b))] = 1;
    for (int x = 0; x < n_; ++x)
      if (!seen[x])
        throw PreconditionError("row " + std::to_string(a) +
                                " is not a permutation (not closed)");
  }
  if (auto bad = kernels::associativity_violation(*this)) {
    auto [a, b, c] = *bad;
    throw PreconditionError("non-associative triple (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
  }
}

const std::vector<ElemId>& Group::generators() const {
  std::lock_guard<std::mutex> lock(caches_.mutex);
  if (!caches_.generators.empty() || n_ == 1) return caches_.generators;
  if (!declared_generators_.empty()) {
    // Trust declared generators only if they actually generate.
    ElemSet c = closure(declared_generators_);
    if (c.count() == n_) {
      caches_.generators = declared_generators_;
      return caches_.generators;
    }
  }
  std::vector<ElemId> gens;
  ElemSet have(n_);
  have.set(0);
  for (int x = 1; x < n_; ++x) {
    if (have.test(x)) continue;
    gens.push_back(ElemId(x));
    have = closure(gens);
    if (have.count() == n_) break;
  }
  caches_.generators = std::move(gens);
  return caches_.generators;
}

const std::vector<int>& Group::element_orders() const {
  std::lock_guard<std::mutex> lock(caches_.mutex);
  if (!caches_.element_orders.empty()) return caches_.element_orders;
  caches_.element_orders.assign(n_, 1);
  for (int x = 1; x < n_; ++x) {
    int k = 1;
    ElemId p = ElemId(x);
    while (p != 0) {
      p = mul(p, ElemId(x));
      ++k;
    }
    caches_.element_orders[x] = k;
  }
  return caches_.element_orders;
}

const ElemSet& Group::center_set() const {
  {
    std::lock_guard<std::mutex> lock(caches_.mutex);
    if (caches_.center) return *caches_.center;
  }
  const auto& gens = generators();
  ElemSet z(n_);
  for (int x = 0; x < n_; ++x) {
    bool central = true;
    for (ElemId g : gens)
      if (mul(ElemId(x), g) != mul(g, ElemId(x))) {
        central = false;
        break;
      }
    if (central) z.set(x);
  }
  std::lock_guard<std::mutex> lock(caches_.mutex);
  if (!caches_.center) caches_.center = std::move(z);
  return *caches_.center;
}

const std::vector<std::vector<ElemId>>& Group::conjugacy_classes() const {
  {
    std::lock_guard<std::mutex> lock(caches_.mutex);
    if (!caches_.conj_classes.empty()) return caches_.conj_classes;
  }
  const auto& gens = generators();
  std::vector<int> cls(n_, -1);
  std::vector<std::vector<ElemId>> classes;
  for (int x = 0; x < n_; ++x) {
    if (cls[x] >= 0) continue;
    int id = int(classes.size());
    std::vector<ElemId> orbit{ElemId(x)};
    cls[x] = id;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      for (ElemId g : gens) {
        ElemId y = conj(orbit[q], g);
        if (cls[y] < 0) {
          cls[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  std::lock_guard<std::mutex> lock(caches_.mutex);
  if (caches_.conj_classes.empty()) {
    caches_.conj_class_of = std::move(cls);
    caches_.conj_classes = std::move(classes);
  }
  return caches_.conj_classes;
}

bool Group::is_abelian() const {
  const auto& gens = generators();
  for (ElemId a : gens)
    for (ElemId b : gens)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

SubgroupRef Group::full_subgroup() const {
  SubgroupRef r;
  r.parent_uid = uid_;
  r.members.resize(n_);
  std::iota(r.members.begin(), r.members.end(), ElemId(0));
  return r;
}

SubgroupRef Group::trivial_subgroup() const {
  SubgroupRef r;
  r.parent_uid = uid_;
  r.members = {0};
  return r;
}

SubgroupRef Group::make_ref(const ElemSet& s) const {
  SubgroupRef r;
  r.parent_uid = uid_;
  r.members = s.to_list();
  return r;
}

ElemSet Group::to_set(const SubgroupRef& h) const {
  if (h.parent_uid != uid_)
    throw PreconditionError("subgroup belongs to a different group than '" +
                            label_ + "'");
  ElemSet s(n_);
  for (ElemId x : h.members) {
    if (x >= n_) throw PreconditionError("subgroup member out of range");
    s.set(x);
  }
  return s;
}

ElemSet Group::full_set() const {
  ElemSet s(n_);
  for (int i = 0; i < n_; ++i) s.set(i);
  return s;
}

ElemSet Group::closure(const std::vector<ElemId>& gens) const {
  ElemSet b(n_);
  b.set(0);
  std::vector<ElemId> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (ElemId g : gens) {
      ElemId y = mul(queue[q], g);
      if (!b.test(y)) {
        b.set(y);
        queue.push_back(y);
      }
    }
  }
  return b;
}

ElemSet Group::closure_of_set(const ElemSet& seed) const {
  std::vector<ElemId> gens;
  seed.for_each([&](int x) {
    if (x != 0) gens.push_back(ElemId(x));
  });
  return closure(gens);
}

ElemSet Group::normal_closure(const ElemSet& seed) const {
  const auto& gens = generators();
  ElemSet b = closure_of_set(seed);
  bool grew = true;
  while (grew) {
    grew = false;
    ElemSet add(n_);
    b.for_each([&](int x) {
      for (ElemId g : gens) {
        ElemId y = conj(ElemId(x), g);
        if (!b.test(y)) add.set(y);
      }
    });
    if (!add.empty()) {
      add |= b;
      b = closure_of_set(add);
      grew = true;
    }
  }
  return b;
}

ElemSet Group::conjugate_set(const ElemSet& s, ElemId g) const {
  ElemSet out(n_);
  ElemId gi = inv(g);
  s.for_each([&](int x) { out.set(mul(mul(gi, ElemId(x)), g)); });
  return out;
}

bool Group::is_subgroup_set(const ElemSet& s) const {
  if (!s.test(0)) return false;
  std::vector<ElemId> mem = s.to_list();
  for (ElemId a : mem)
    for (ElemId b : mem)
      if (!s.test(mul(a, b))) return false;
  return true;
}

bool Group::is_normal_set(const ElemSet& s) const {
  for (ElemId g : generators()) {
    bool ok = true;
    s.for_each([&](int x) {
      if (!s.test(conj(ElemId(x), g))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

ElemSet Group::product_set(const ElemSet& a, const ElemSet& b) const {
  ElemSet out(n_);
  a.for_each([&](int x) {
    b.for_each([&](int y) { out.set(mul(ElemId(x), ElemId(y))); });
  });
  return out;
}

ElemSet Group::commutator_subgroup(const ElemSet& a, const ElemSet& b) const {
  ElemSet seed(n_);
  a.for_each([&](int x) {
    b.for_each([&](int y) {
      ElemId c = mul(mul(inv(ElemId(x)), inv(ElemId(y))),
                     mul(ElemId(x), ElemId(y)));
      seed.set(c);
    });
  });
  return normal_closure(seed);
}

ElemSet set_from_members(const Group& g, const std::vector<ElemId>& members) {
  ElemSet s(g.order());
  for (ElemId x : members) s.set(x);
  return s;
}

// --- constructors ------------------------------------------------------------

GroupPtr build_group_from_table(const std::vector<std::vector<int>>& table,
                                std::string label) {
  int n = int(table.size());
  if (n == 0) throw PreconditionError("empty multiplication table");
  if (n > config().build_max_order)
    throw LimitError("group order " + std::to_string(n) + " exceeds build limit " +
                     std::to_string(config().build_max_order));
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    if (int(table[a].size()) != n)
      throw PreconditionError("row " + std::to_string(a) + " has " +
                              std::to_string(table[a].size()) + " entries, want " +
                              std::to_string(n));
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n)
        throw PreconditionError("entry (" + std::to_string(a) + "," +
                                std::to_string(b) + ") = " + std::to_string(v) +
                                " is not an element id");
      flat[std::size_t(a) * n + b] = ElemId(v);
    }
  }
  auto g = Group::make(n, std::move(flat), std::move(label));
  g->validate();
  return g;
}

namespace {

using Perm = std::vector<int>;

Perm perm_compose(const Perm& f, const Perm& g) {  // (f*g)(x) = f(g(x))
  Perm out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
  return out;
}

GroupPtr group_from_perm_list(std::vector<Perm> elems, const std::string& label,
                              int degree) {
  std::sort(elems.begin(), elems.end());
  // The identity is lexicographically least among permutations, so id 0 is
  // the identity after sorting.
  int n = int(elems.size());
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[std::size_t(a) * n + b] = ElemId(index.at(perm_compose(elems[a], elems[b])));
  std::vector<std::vector<ElemId>> images(n);
  for (int i = 0; i < n; ++i)
    images[i] = std::vector<ElemId>(elems[i].begin(), elems[i].end());
  auto g = Group::make(n, std::move(flat), label, {}, degree, std::move(images));
  return g;
}

GroupPtr closure_of_perms(const std::vector<Perm>& gens, const std::string& label,
                          int degree, int max_order) {
  std::map<Perm, int> seen;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  seen[id] = 0;
  for (std::size_t q = 0; q < elems.size(); ++q) {
    for (const Perm& g : gens) {
      Perm y = perm_compose(elems[q], g);
      if (!seen.count(y)) {
        if (int(elems.size()) >= max_order)
          throw LimitError("permutation closure of '" + label + "' exceeds order " +
                           std::to_string(max_order));
        seen[y] = 1;
        elems.push_back(std::move(y));
      }
    }
  }
  return group_from_perm_list(std::move(elems), label, degree);
}

}  // namespace

GroupPtr build_group_from_permutations(int degree,
                                       const std::vector<std::vector<int>>& gens,
                                       std::string label) {
  if (degree <= 0 || degree > config().build_max_order)
    throw PreconditionError("permutation degree " + std::to_string(degree) +
                            " out of range");
  std::vector<Perm> ps;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& im = gens[k];
    if (int(im.size()) != degree)
      throw PreconditionError("generator " + std::to_string(k) + " has " +
                              std::to_string(im.size()) + " images, want " +
                              std::to_string(degree));
    std::vector<char> hit(degree, 0);
    for (int v : im) {
      if (v < 0 || v >= degree)
        throw PreconditionError("generator " + std::to_string(k) +
                                " image out of range: " + std::to_string(v));
      hit[v] = 1;
    }
    for (int i = 0; i < degree; ++i)
      if (!hit[i])
        throw PreconditionError("generator " + std::to_string(k) +
                                " is not a bijection (misses " + std::to_string(i) +
                                ")");
    ps.emplace_back(im.begin(), im.end());
  }
  auto g = closure_of_perms(ps, label, degree, config().build_max_order);
  g->validate();
  return g;
}

GroupPtr cyclic_group(int n) {
  if (n <= 0 || n > config().build_max_order)
    throw PreconditionError("cyclic order out of range: " + std::to_string(n));
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) flat[std::size_t(a) * n + b] = ElemId((a + b) % n);
  std::vector<ElemId> gens;
  if (n > 1) gens.push_back(1);
  return Group::make(n, std::move(flat), "Z" + std::to_string(n), std::move(gens));
}

GroupPtr dihedral_group(int order) {
  if (order < 2 || order % 2 != 0)
    throw PreconditionError("dihedral order must be even, got " +
                            std::to_string(order));
  int m = order / 2;  // rotations
  if (m == 1) return cyclic_group(2);
  // Elements r^i (ids 0..m-1) and r^i s (ids m..2m-1); s r s = r^-1.
  int n = order;
  auto id_of = [&](int i, int j) { return j == 0 ? i : m + i; };
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i = j1 == 0 ? (i1 + i2) % m : (i1 - i2 % m + m) % m;
          int j = (j1 + j2) % 2;
          flat[std::size_t(id_of(i1, j1)) * n + id_of(i2, j2)] = ElemId(id_of(i, j));
        }
  std::vector<ElemId> gens{1, ElemId(m)};
  return Group::make(n, std::move(flat), "D" + std::to_string(order),
                     std::move(gens));
}

GroupPtr quaternion_group(int order) {
  if (order < 8 || (order & (order - 1)) != 0)
    throw PreconditionError("generalized quaternion order must be 2^k >= 8, got " +
                            std::to_string(order));
  int m = order / 2;  // x has order m; y^2 = x^(m/2); y^-1 x y = x^-1
  int n = order;
  auto id_of = [&](int i, int j) { return j == 0 ? i : m + i; };
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (x^i1 y^j1)(x^i2 y^j2); y x^b = x^-b y.
          int i, j;
          if (j1 == 0) {
            i = (i1 + i2) % m;
            j = j2;
          } else {
            i = (i1 - i2 % m + m) % m;
            j = 1 + j2;
          }
          if (j == 2) {  // y^2 = x^(m/2)
            i = (i + m / 2) % m;
            j = 0;
          }
          flat[std::size_t(id_of(i1, j1)) * n + id_of(i2, j2)] = ElemId(id_of(i, j));
        }
  std::vector<ElemId> gens{1, ElemId(m)};
  return Group::make(n, std::move(flat), "Q" + std::to_string(order),
                     std::move(gens));
}

namespace {

void all_perms(int n, Perm& cur, std::vector<char>& used, std::vector<Perm>& out,
               bool even_only) {
  if (int(cur.size()) == n) {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (cur[i] > cur[j]) ++inversions;
      if (inversions % 2 != 0) return;
    }
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[v]) continue;
    used[v] = 1;
    cur.push_back(v);
    all_perms(n, cur, used, out, even_only);
    cur.pop_back();
    used[v] = 0;
  }
}

GroupPtr perm_group_full(int n, bool even_only, const std::string& label) {
  if (n < 1 || n > 5)
    throw PreconditionError(label + ": degree must be 1..5, got " +
                            std::to_string(n));
  std::vector<Perm> elems;
  Perm cur;
  std::vector<char> used(n, 0);
  all_perms(n, cur, used, elems, even_only);
  return group_from_perm_list(std::move(elems), label, n);
}

}  // namespace

GroupPtr symmetric_group(int n) {
  return perm_group_full(n, false, "S" + std::to_string(n));
}

GroupPtr alternating_group(int n) {
  return perm_group_full(n, true, "A" + std::to_string(n));
}

GroupPtr elementary_abelian_group(int p, int k) {
  if (p < 2) throw PreconditionError("p must be prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw PreconditionError(std::to_string(p) + " is not prime");
  long long order = 1;
  for (int i = 0; i < k; ++i) {
    order *= p;
    if (order > config().build_max_order)
      throw LimitError("elementary abelian order exceeds build limit");
  }
  int n = int(order);
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int x = a, y = b, s = 0, mult = 1;
      for (int i = 0; i < k; ++i) {
        s += ((x % p + y % p) % p) * mult;
        x /= p;
        y /= p;
        mult *= p;
      }
      flat[std::size_t(a) * n + b] = ElemId(s);
    }
  return Group::make(n, std::move(flat), "E" + std::to_string(n));
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  long long n = (long long)a->order() * b->order();
  if (n > config().build_max_order)
    throw LimitError("direct product order " + std::to_string(n) +
                     " exceeds build limit " +
                     std::to_string(config().build_max_order));
  int nb = b->order(), nn = int(n);
  std::vector<ElemId> flat(std::size_t(nn) * nn);
  for (int x = 0; x < nn; ++x)
    for (int y = 0; y < nn; ++y) {
      int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      flat[std::size_t(x) * nn + y] =
          ElemId(int(a->mul(ElemId(xa), ElemId(ya))) * nb +
                 b->mul(ElemId(xb), ElemId(yb)));
    }
  std::vector<ElemId> gens;
  for (ElemId g : a->generators()) gens.push_back(ElemId(int(g) * nb));
  for (ElemId g : b->generators()) gens.push_back(g);
  return Group::make(nn, std::move(flat), a->label() + "x" + b->label(),
                     std::move(gens));
}

GroupPtr semidirect_pairs(const GroupPtr& nrm, const GroupPtr& act_grp,
                          const std::vector<std::vector<ElemId>>& act,
                          std::string label) {
  int nn = nrm->order(), nh = act_grp->order();
  long long total = (long long)nn * nh;
  if (total > config().internal_max_order)
    throw LimitError("semidirect order " + std::to_string(total) +
                     " exceeds internal limit");
  if (int(act.size()) != nh)
    throw PreconditionError("action table must have one row per acting element");
  int n = int(total);
  auto id_of = [&](int x, int h) { return x * nh + h; };
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int x1 = 0; x1 < nn; ++x1)
    for (int h1 = 0; h1 < nh; ++h1)
      for (int x2 = 0; x2 < nn; ++x2)
        for (int h2 = 0; h2 < nh; ++h2) {
          int x = nrm->mul(ElemId(x1), act[h1][x2]);
          int h = act_grp->mul(ElemId(h1), ElemId(h2));
          flat[std::size_t(id_of(x1, h1)) * n + id_of(x2, h2)] =
              ElemId(id_of(x, h));
        }
  std::vector<ElemId> gens;
  for (ElemId g : nrm->generators()) gens.push_back(ElemId(id_of(g, 0)));
  for (ElemId g : act_grp->generators()) gens.push_back(ElemId(id_of(0, g)));
  return Group::make(n, std::move(flat), std::move(label), std::move(gens));
}

GroupPtr semidirect_section_action(const GroupPtr& g, const ElemSet& upper,
                                   const ElemSet& lower, const ElemSet& actors,
                                   const ElemSet& kernel, const std::string& label) {
  // Cosets of `lower` in `upper`, labelled by least representative.
  const Group& G = *g;
  auto cosets_of = [&](const ElemSet& sub, const ElemSet& within,
                       std::vector<ElemId>& rep_of, std::vector<ElemId>& reps) {
    rep_of.assign(G.order(), ElemId(0));
    std::vector<char> done(G.order(), 0);
    within.for_each([&](int x) {
      if (done[x]) return;
      // coset x * sub; least element is the representative
      int least = -1;
      std::vector<int> mem;
      sub.for_each([&](int s) {
        int y = G.mul(ElemId(x), ElemId(s));
        mem.push_back(y);
        if (least < 0 || y < least) least = y;
      });
      for (int y : mem) {
        done[y] = 1;
        rep_of[y] = ElemId(least);
      }
    });
    ElemSet seen(G.order());
    within.for_each([&](int x) { seen.set(rep_of[x]); });
    reps = seen.to_list();
  };

  std::vector<ElemId> sec_rep_of, sec_reps, act_rep_of, act_reps;
  cosets_of(lower, upper, sec_rep_of, sec_reps);
  cosets_of(kernel, actors, act_rep_of, act_reps);
  int ns = int(sec_reps.size()), na = int(act_reps.size());
  long long total = (long long)ns * na;
  if (total > config().internal_max_order)
    throw LimitError("semidirect order " + std::to_string(total) +
                     " exceeds internal limit " +
                     std::to_string(config().internal_max_order));
  std::vector<int> sec_index(G.order(), -1), act_index(G.order(), -1);
  for (int i = 0; i < ns; ++i) sec_index[sec_reps[i]] = i;
  for (int i = 0; i < na; ++i) act_index[act_reps[i]] = i;

  int n = int(total);
  auto id_of = [&](int s, int a) { return s * na + a; };
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int s1 = 0; s1 < ns; ++s1)
    for (int a1 = 0; a1 < na; ++a1) {
      ElemId x1 = sec_reps[s1], u1 = act_reps[a1];
      ElemId u1i = G.inv(u1);
      for (int s2 = 0; s2 < ns; ++s2)
        for (int a2 = 0; a2 < na; ++a2) {
          ElemId x2 = sec_reps[s2], u2 = act_reps[a2];
          // left action: x2 -> u1 x2 u1^-1, then multiply in the section
          ElemId acted = G.mul(G.mul(u1, x2), u1i);
          int s = sec_index[sec_rep_of[G.mul(x1, acted)]];
          int a = act_index[act_rep_of[G.mul(u1, u2)]];
          flat[std::size_t(id_of(s1, a1)) * n + id_of(s2, a2)] =
              ElemId(id_of(s, a));
        }
    }
  return Group::make(n, std::move(flat), label);
}

GroupPtr semidirect_by_conjugation(const GroupPtr& g, const NormalSection& section,
                                   const SubgroupRef& k) {
  const Group& G = *g;
  if (section.ambient_uid != G.uid())
    throw PreconditionError("section does not live in '" + G.label() + "'");
  ElemSet upper = G.to_set(section.upper);
  ElemSet lower = G.to_set(section.lower);
  ElemSet kernel = G.to_set(k);
  if (!lower.subset_of(upper))
    throw PreconditionError("section lower term is not contained in the upper");
  if (!G.is_subgroup_set(upper) || !G.is_subgroup_set(lower) ||
      !G.is_subgroup_set(kernel))
    throw PreconditionError("section terms must be subgroups");
  if (!G.is_normal_set(upper) || !G.is_normal_set(lower))
    throw PreconditionError("section terms must be normal in the ambient group");
  if (!G.is_normal_set(kernel))
    throw PreconditionError("acting kernel must be normal in the ambient group");
  // kernel must centralize upper/lower
  bool centralizes = true;
  kernel.for_each([&](int c) {
    if (!centralizes) return;
    upper.for_each([&](int h) {
      if (!centralizes) return;
      // c^-1 h c must be in h*lower
      ElemId y = G.conj(ElemId(h), ElemId(c));
      if (!lower.test(G.mul(G.inv(ElemId(h)), y))) centralizes = false;
    });
  });
  if (!centralizes)
    throw PreconditionError(
        "acting kernel does not centralize the section (K <= C_G(R/S) required)");
  return semidirect_section_action(
      g, upper, lower, G.full_set(), kernel,
      G.label() + ":sec" + std::to_string(section.upper.order()) + "/" +
          std::to_string(section.lower.order()) + " x| quot");
}

GroupPtr subgroup_group_set(const GroupPtr& g, const ElemSet& s) {
  const Group& G = *g;
  {
    std::lock_guard<std::mutex> lock(G.caches().mutex);
    auto it = G.caches().subgroup_groups.find(s);
    if (it != G.caches().subgroup_groups.end()) return it->second;
  }
  if (s.count() == G.order()) {
    std::lock_guard<std::mutex> lock(G.caches().mutex);
    G.caches().subgroup_groups.emplace(s, g);
    return g;
  }
  std::vector<ElemId> mem = s.to_list();
  int n = int(mem.size());
  std::vector<int> pos(G.order(), -1);
  for (int i = 0; i < n; ++i) pos[mem[i]] = i;
  std::vector<ElemId> flat(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = pos[G.mul(mem[i], mem[j])];
      if (p < 0)
        throw PreconditionError("member set of '" + G.label() +
                                "' is not closed under multiplication");
      flat[std::size_t(i) * n + j] = ElemId(p);
    }
  auto child = Group::make(n, std::move(flat),
                           G.label() + "|sub" + std::to_string(n));
  std::lock_guard<std::mutex> lock(G.caches().mutex);
  auto [it, inserted] = G.caches().subgroup_groups.emplace(s, child);
  return it->second;
}

GroupPtr subgroup_group(const GroupPtr& g, const SubgroupRef& h) {
  return subgroup_group_set(g, g->to_set(h));
}

std::pair<GroupPtr, GroupHom> quotient_set(const GroupPtr& g, const ElemSet& nset) {
  const Group& G = *g;
  {
    std::lock_guard<std::mutex> lock(G.caches().mutex);
    auto it = G.caches().quotients.find(nset);
    if (it != G.caches().quotients.end()) return it->second;
  }
  if (!G.is_subgroup_set(nset) || !G.is_normal_set(nset))
    throw PreconditionError("quotient by a non-normal subgroup of '" + G.label() +
                            "'");
  if (nset.count() == 1) {
    GroupHom id;
    id.source_uid = id.target_uid = G.uid();
    id.images.resize(G.order());
    std::iota(id.images.begin(), id.images.end(), ElemId(0));
    auto val = std::make_pair(g, id);
    std::lock_guard<std::mutex> lock(G.caches().mutex);
    auto [it, ins] = G.caches().quotients.emplace(nset, val);
    return it->second;
  }
  int n = G.order();
  std::vector<ElemId> rep(n);
  std::vector<char> done(n, 0);
  for (int x = 0; x < n; ++x) {
    if (done[x]) continue;
    int least = x;
    std::vector<int> coset;
    nset.for_each([&](int s) {
      int y = G.mul(ElemId(x), ElemId(s));
      coset.push_back(y);
      if (y < least) least = y;
    });
    for (int y : coset) {
      done[y] = 1;
      rep[y] = ElemId(least);
    }
  }
  std::vector<ElemId> reps;
  {
    ElemSet seen(n);
    for (int x = 0; x < n; ++x) seen.set(rep[x]);
    reps = seen.to_list();
  }
  int m = int(reps.size());
  std::vector<int> index(n, -1);
  for (int i = 0; i < m; ++i) index[reps[i]] = i;
  std::vector<ElemId> flat(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      flat[std::size_t(i) * m + j] = ElemId(index[rep[G.mul(reps[i], reps[j])]]);
  auto q = Group::make(m, std::move(flat),
                       G.label() + "/N" + std::to_string(nset.count()));
  GroupHom hom;
  hom.source_uid = G.uid();
  hom.target_uid = q->uid();
  hom.images.resize(n);
  for (int x = 0; x < n; ++x) hom.images[x] = ElemId(index[rep[x]]);
  auto val = std::make_pair(q, hom);
  std::lock_guard<std::mutex> lock(G.caches().mutex);
  auto [it, ins] = G.caches().quotients.emplace(nset, val);
  return it->second;
}

std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const SubgroupRef& n) {
  return quotient_set(g, g->to_set(n));
}

}  // namespace formatheory
