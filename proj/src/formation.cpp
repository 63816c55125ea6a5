#include "formatheory/formation.hpp"

#include <algorithm>
#include <sstream>

#include "formatheory/hypercenter.hpp"
#include "formatheory/parallel.hpp"
#include "formatheory/subnormal.hpp"

namespace formatheory {

bool PrimeSet::contains(int p) const {
  if (all) return true;
  return std::binary_search(primes.begin(), primes.end(), p);
}

std::string PrimeSet::to_string() const {
  if (all) return "all";
  std::ostringstream os;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i) os << '+';
    os << primes[i];
  }
  return os.str();
}

// --- construction and canonical text -----------------------------------------

namespace {

std::string base_text(BaseClass b, const PrimeSet& ps, int arg) {
  switch (b) {
    case BaseClass::Trivial: return "trivial";
    case BaseClass::All: return "all";
    case BaseClass::Abelian: return "abelian";
    case BaseClass::Nilpotent: return "nilpotent";
    case BaseClass::Soluble: return "soluble";
    case BaseClass::Supersoluble: return "supersoluble";
    case BaseClass::PGroup: return "pgroup:" + ps.to_string();
    case BaseClass::PiGroup: return "pigroup:" + ps.to_string();
    case BaseClass::AbExp: return "abexp:" + std::to_string(arg);
    case BaseClass::SolRank: return "solrank:" + std::to_string(arg);
  }
  return "?";
}

bool base_saturated(BaseClass b) {
  switch (b) {
    case BaseClass::Abelian:
    case BaseClass::AbExp:
    case BaseClass::SolRank:
      return false;
    default:
      return true;
  }
}

}  // namespace

FormationPtr FormationSpec::make_base(BaseClass b, PrimeSet ps, int arg) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::Base;
  s->base = b;
  s->primes = std::move(ps);
  s->arg = arg;
  s->text = base_text(b, s->primes, arg);
  s->formation = true;
  s->hereditary = true;
  s->saturated = base_saturated(b);
  return s;
}

FormationPtr FormationSpec::make_intersect(FormationPtr a, FormationPtr b) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::Intersect;
  s->left = std::move(a);
  s->right = std::move(b);
  s->text = "intersect(" + s->left->text + "," + s->right->text + ")";
  s->formation = s->left->formation && s->right->formation;
  s->hereditary = s->left->hereditary && s->right->hereditary;
  s->saturated = s->left->saturated && s->right->saturated;
  return s;
}

FormationPtr FormationSpec::make_product(FormationPtr a, FormationPtr b) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::Product;
  s->left = std::move(a);
  s->right = std::move(b);
  s->text = "product(" + s->left->text + "," + s->right->text + ")";
  s->formation = s->left->formation && s->right->formation;
  s->hereditary = s->left->hereditary && s->right->hereditary;
  s->saturated = false;
  return s;
}

FormationPtr FormationSpec::make_local(FormationFunctionPtr f) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::Local;
  s->local_fn = std::move(f);
  s->text = "local" + s->local_fn->text;
  s->formation = true;
  s->hereditary = s->local_fn->hereditary_values();
  s->saturated = true;  // local definitions define saturated formations
  return s;
}

FormationPtr FormationSpec::make_zclass(FormationPtr f) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::ZClass;
  s->left = std::move(f);
  s->text = "zclass(" + s->left->text + ")";
  s->formation = true;
  s->hereditary = s->left->hereditary;
  s->saturated = false;
  return s;
}

FormationPtr FormationSpec::make_fhf(HomomorphPtr h, FormationPtr f) {
  auto s = std::make_shared<FormationSpec>();
  s->kind = SpecKind::Fhf;
  s->hom = std::move(h);
  s->left = std::move(f);
  s->text = "fhf(" + s->hom->text + "," + s->left->text + ")";
  s->formation = false;  // probed, never assumed
  s->hereditary = s->left->hereditary;
  s->saturated = false;
  return s;
}

HomomorphPtr HomomorphSpec::wrap(FormationPtr f) {
  auto h = std::make_shared<HomomorphSpec>();
  h->kind = HomKind::Formation;
  h->text = f->text;
  h->saturated = f->saturated;
  h->formation_spec = std::move(f);
  return h;
}

HomomorphPtr HomomorphSpec::cyclic_primary(PrimeSet ps) {
  auto h = std::make_shared<HomomorphSpec>();
  h->kind = HomKind::CyclicPrimary;
  h->primes = std::move(ps);
  h->text = "cyclicprimary:" + h->primes.to_string();
  h->saturated = true;
  return h;
}

HomomorphPtr HomomorphSpec::primary(PrimeSet ps) {
  auto h = std::make_shared<HomomorphSpec>();
  h->kind = HomKind::Primary;
  h->primes = std::move(ps);
  h->text = "primary:" + h->primes.to_string();
  h->saturated = true;
  return h;
}

FormationPtr FormationFunction::at(int p) const {
  switch (kind) {
    case FuncKind::TrivialAll:
      return f_trivial();
    case FuncKind::AbExpPMinus1:
      return f_abexp(p - 1);
    case FuncKind::ExplicitMap: {
      auto it = at_prime.find(p);
      return it == at_prime.end() ? fallback : it->second;
    }
  }
  return f_trivial();
}

bool FormationFunction::hereditary_values() const {
  if (kind != FuncKind::ExplicitMap) return true;
  for (const auto& [p, f] : at_prime)
    if (!f->hereditary) return false;
  return fallback->hereditary;
}

FormationFunctionPtr FormationFunction::trivial_all() {
  auto f = std::make_shared<FormationFunction>();
  f->kind = FuncKind::TrivialAll;
  f->text = "{trivial}";
  return f;
}

FormationFunctionPtr FormationFunction::abexp_p_minus_1() {
  auto f = std::make_shared<FormationFunction>();
  f->kind = FuncKind::AbExpPMinus1;
  f->text = "{abexp-pminus1}";
  return f;
}

FormationFunctionPtr FormationFunction::explicit_map(std::map<int, FormationPtr> m,
                                                     FormationPtr fb) {
  auto f = std::make_shared<FormationFunction>();
  f->kind = FuncKind::ExplicitMap;
  f->at_prime = std::move(m);
  f->fallback = std::move(fb);
  std::ostringstream os;
  os << '{';
  for (const auto& [p, spec] : f->at_prime) os << p << "->" << spec->text << ',';
  os << "default->" << f->fallback->text << '}';
  f->text = os.str();
  return f;
}

FormationPtr f_trivial() { return FormationSpec::make_base(BaseClass::Trivial); }
FormationPtr f_all() { return FormationSpec::make_base(BaseClass::All); }
FormationPtr f_abelian() { return FormationSpec::make_base(BaseClass::Abelian); }
FormationPtr f_nilpotent() { return FormationSpec::make_base(BaseClass::Nilpotent); }
FormationPtr f_soluble() { return FormationSpec::make_base(BaseClass::Soluble); }
FormationPtr f_supersoluble() {
  return FormationSpec::make_base(BaseClass::Supersoluble);
}
FormationPtr f_pgroup(int p) {
  PrimeSet ps;
  ps.primes = {p};
  return FormationSpec::make_base(BaseClass::PGroup, ps);
}
FormationPtr f_abexp(int m) {
  return FormationSpec::make_base(BaseClass::AbExp, {}, m);
}
FormationPtr f_solrank(int n) {
  return FormationSpec::make_base(BaseClass::SolRank, {}, n);
}

// --- parser -------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool lookahead(const std::string& word) {
    skip_ws();
    return s.compare(i, word.size(), word) == 0;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("formation expression: " + msg + " at position " +
                         std::to_string(i + 1),
                     1, int(i + 1));
  }
  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && ((s[i] >= 'a' && s[i] <= 'z') || s[i] == '-')) ++i;
    if (i == start) fail("expected a name");
    return s.substr(start, i - start);
  }
  int number() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) fail("expected a number");
    return std::stoi(s.substr(start, i - start));
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

PrimeSet parse_primes(Cursor& c) {
  PrimeSet ps;
  c.skip_ws();
  if (c.lookahead("all")) {
    c.i += 3;
    ps.all = true;
    return ps;
  }
  while (true) {
    int p = c.number();
    if (!is_prime(p)) c.fail(std::to_string(p) + " is not prime");
    ps.primes.push_back(p);
    if (!c.eat('+')) break;
  }
  std::sort(ps.primes.begin(), ps.primes.end());
  ps.primes.erase(std::unique(ps.primes.begin(), ps.primes.end()), ps.primes.end());
  return ps;
}

FormationPtr parse_expr(Cursor& c);

HomomorphPtr parse_hom(Cursor& c) {
  c.skip_ws();
  if (c.lookahead("cyclicprimary")) {
    c.i += 13;
    c.expect(':');
    return HomomorphSpec::cyclic_primary(parse_primes(c));
  }
  if (c.lookahead("primary")) {
    c.i += 7;
    c.expect(':');
    return HomomorphSpec::primary(parse_primes(c));
  }
  return HomomorphSpec::wrap(parse_expr(c));
}

FormationFunctionPtr parse_local_body(Cursor& c) {
  c.expect('{');
  std::map<int, FormationPtr> entries;
  FormationPtr fallback;
  while (true) {
    c.skip_ws();
    if (c.lookahead("default")) {
      c.i += 7;
      c.skip_ws();
      if (!(c.eat('-') && c.eat('>'))) c.fail("expected '->'");
      fallback = parse_expr(c);
      break;
    }
    int p = c.number();
    if (!is_prime(p)) c.fail(std::to_string(p) + " is not prime");
    c.skip_ws();
    if (!(c.eat('-') && c.eat('>'))) c.fail("expected '->'");
    FormationPtr f = parse_expr(c);
    entries[p] = std::move(f);
    c.expect(',');
  }
  c.expect('}');
  return FormationFunction::explicit_map(std::move(entries), std::move(fallback));
}

FormationPtr parse_expr(Cursor& c) {
  std::string name = c.ident();
  if (name == "intersect" || name == "product") {
    c.expect('(');
    FormationPtr a = parse_expr(c);
    c.expect(',');
    FormationPtr b = parse_expr(c);
    c.expect(')');
    return name == "intersect" ? FormationSpec::make_intersect(a, b)
                               : FormationSpec::make_product(a, b);
  }
  if (name == "zclass") {
    c.expect('(');
    FormationPtr a = parse_expr(c);
    c.expect(')');
    return FormationSpec::make_zclass(a);
  }
  if (name == "fhf") {
    c.expect('(');
    HomomorphPtr h = parse_hom(c);
    c.expect(',');
    FormationPtr a = parse_expr(c);
    c.expect(')');
    return FormationSpec::make_fhf(h, a);
  }
  if (name == "local") return FormationSpec::make_local(parse_local_body(c));
  if (name == "trivial") return f_trivial();
  if (name == "all") return f_all();
  if (name == "abelian") return f_abelian();
  if (name == "nilpotent") return f_nilpotent();
  if (name == "soluble") return f_soluble();
  if (name == "supersoluble") return f_supersoluble();
  if (name == "pgroup") {
    c.expect(':');
    int p = c.number();
    if (!is_prime(p)) c.fail(std::to_string(p) + " is not prime");
    return f_pgroup(p);
  }
  if (name == "pigroup") {
    c.expect(':');
    return FormationSpec::make_base(BaseClass::PiGroup, parse_primes(c));
  }
  if (name == "abexp") {
    c.expect(':');
    return f_abexp(c.number());
  }
  if (name == "solrank") {
    c.expect(':');
    return f_solrank(c.number());
  }
  c.fail("unknown class name '" + name + "'");
}

}  // namespace

FormationPtr parse_formation(const std::string& text) {
  Cursor c{text};
  FormationPtr f = parse_expr(c);
  if (!c.done()) c.fail("trailing input");
  return f;
}

HomomorphPtr parse_homomorph(const std::string& text) {
  Cursor c{text};
  HomomorphPtr h = parse_hom(c);
  if (!c.done()) c.fail("trailing input");
  return h;
}

FormationFunctionPtr parse_formation_function(const std::string& text) {
  if (text == "trivial") return FormationFunction::trivial_all();
  if (text == "abexp-pminus1") return FormationFunction::abexp_p_minus_1();
  Cursor c{text};
  if (c.lookahead("local")) c.i += 5;
  FormationFunctionPtr f = parse_local_body(c);
  if (!c.done()) c.fail("trailing input");
  return f;
}

// --- membership ---------------------------------------------------------------

namespace {

bool eval_base(const GroupPtr& g, const FormationSpec& f) {
  const Group& G = *g;
  int n = G.order();
  switch (f.base) {
    case BaseClass::Trivial:
      return n == 1;
    case BaseClass::All:
      return true;
    case BaseClass::Abelian:
      return G.is_abelian();
    case BaseClass::Nilpotent:
      return distinguished_subgroup(g, Distinguished::Hypercenter).order() == n;
    case BaseClass::Soluble:
      return set_is_soluble(G, G.full_set());
    case BaseClass::Supersoluble: {
      for (const auto& sec : chief_series(g))
        if (!is_prime(sec.factor_order())) return false;
      return true;
    }
    case BaseClass::PGroup:
    case BaseClass::PiGroup: {
      for (int p : prime_divisors(n))
        if (!f.primes.contains(p)) return false;
      return true;
    }
    case BaseClass::AbExp: {
      if (!G.is_abelian()) return false;
      if (f.arg <= 0) return n == 1;
      for (int x = 0; x < n; ++x)
        if (f.arg % G.element_order(ElemId(x)) != 0) return false;
      return true;
    }
    case BaseClass::SolRank: {
      if (!set_is_soluble(G, G.full_set())) return false;
      for (const auto& sec : chief_series(g))
        if (sec.rank > f.arg) return false;
      return true;
    }
  }
  return false;
}

bool eval_spec(const GroupPtr& g, const FormationSpec& f) {
  switch (f.kind) {
    case SpecKind::Base:
      return eval_base(g, f);
    case SpecKind::Intersect:
      return belongs(g, f.left) && belongs(g, f.right);
    case SpecKind::Product:
      return product_membership(g, f.left, f.right);
    case SpecKind::Local:
      return local_membership(g, f.local_fn);
    case SpecKind::ZClass:
      return z_f(g, f.left).order() == g->order();
    case SpecKind::Fhf: {
      auto flags = subgroup_hom_flags(g, f.hom);
      const auto& lat = lattice_of(g);
      for (int i = 0; i < lat.size(); ++i) {
        if (!(*flags)[i]) continue;
        if (!is_f_subnormal(g, g->make_ref(lat.subs[i]), f.left)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool belongs(const GroupPtr& g, const FormationPtr& f) {
  auto& caches = g->caches();
  {
    std::lock_guard<std::mutex> lock(caches.mutex);
    auto it = caches.verdicts.find(f->text);
    if (it != caches.verdicts.end()) return it->second;
  }
  bool v = eval_spec(g, *f);
  std::lock_guard<std::mutex> lock(caches.mutex);
  caches.verdicts.emplace(f->text, v);
  return v;
}

bool hom_belongs(const GroupPtr& g, const HomomorphPtr& h) {
  if (h->kind == HomKind::Formation) return belongs(g, h->formation_spec);
  int n = g->order();
  if (n == 1) return true;
  auto ps = prime_divisors(n);
  if (ps.size() != 1 || !h->primes.contains(ps[0])) return false;
  if (h->kind == HomKind::Primary) return true;
  // cyclic primary: some element realizes the full order
  for (int x = 0; x < n; ++x)
    if (g->element_order(ElemId(x)) == n) return true;
  return false;
}

SubgroupRef residual(const GroupPtr& g, const FormationPtr& f) {
  std::string key = "residual:" + f->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().subgroup_results.find(key);
    if (it != g->caches().subgroup_results.end()) return g->make_ref(it->second);
  }
  ElemSet res = g->full_set();
  bool any = false;
  for (const auto& n : normal_subgroup_sets(g)) {
    auto [q, hom] = quotient_set(g, n);
    if (belongs(q, f)) {
      any = true;
      res &= n;
    }
  }
  if (!any)
    throw Error("F-residual undefined: no quotient of '" + g->label() +
                "' lies in " + f->text);
  if (f->formation) {
    auto [q, hom] = quotient_set(g, res);
    if (!belongs(q, f))
      throw Error("residual postcondition failed for formation " + f->text +
                  " on '" + g->label() + "'");
  }
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().subgroup_results.emplace(key, std::move(res));
  return g->make_ref(it->second);
}

bool product_membership(const GroupPtr& g, const FormationPtr& f1,
                        const FormationPtr& f2) {
  SubgroupRef r = residual(g, f2);
  return belongs(subgroup_group(g, r), f1);
}

bool local_membership(const GroupPtr& g, const FormationFunctionPtr& f) {
  for (const auto& sec : chief_series(g)) {
    ElemSet c = g->to_set(*sec.centralizer);
    auto [q, hom] = quotient_set(g, c);
    for (int p : prime_divisors(sec.factor_order()))
      if (!belongs(q, f->at(p))) return false;
  }
  return true;
}

std::shared_ptr<const std::vector<char>> subgroup_membership_flags(
    const GroupPtr& g, const FormationPtr& f) {
  std::string key = "F:" + f->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().member_sweeps.find(key);
    if (it != g->caches().member_sweeps.end()) return it->second;
  }
  const auto& lat = lattice_of(g);
  auto flags = std::make_shared<std::vector<char>>(lat.size(), 0);
  par::parallel_for(std::size_t(lat.size()), [&](std::size_t i) {
    (*flags)[i] = belongs(subgroup_group_set(g, lat.subs[i]), f) ? 1 : 0;
  });
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().member_sweeps.emplace(key, std::move(flags));
  return it->second;
}

std::shared_ptr<const std::vector<char>> subgroup_hom_flags(const GroupPtr& g,
                                                            const HomomorphPtr& h) {
  std::string key = "H:" + h->text;
  {
    std::lock_guard<std::mutex> lock(g->caches().mutex);
    auto it = g->caches().member_sweeps.find(key);
    if (it != g->caches().member_sweeps.end()) return it->second;
  }
  const auto& lat = lattice_of(g);
  auto flags = std::make_shared<std::vector<char>>(lat.size(), 0);
  par::parallel_for(std::size_t(lat.size()), [&](std::size_t i) {
    (*flags)[i] = hom_belongs(subgroup_group_set(g, lat.subs[i]), h) ? 1 : 0;
  });
  std::lock_guard<std::mutex> lock(g->caches().mutex);
  auto [it, ins] = g->caches().member_sweeps.emplace(key, std::move(flags));
  return it->second;
}

// --- closure probes -------------------------------------------------------------

ProbeOutcome closure_probe_fn(const std::function<bool(const GroupPtr&)>& member,
                              const std::vector<GroupPtr>& catalog,
                              ClosureProperty property, const std::string& name) {
  ProbeOutcome out;
  switch (property) {
    case ClosureProperty::Homomorph: out.property = name + " is a homomorph"; break;
    case ClosureProperty::Formation: out.property = name + " is a formation"; break;
    case ClosureProperty::Hereditary: out.property = name + " is hereditary"; break;
    case ClosureProperty::Saturated: out.property = name + " is saturated"; break;
  }
  for (const auto& g : catalog) {
    switch (property) {
      case ClosureProperty::Homomorph:
      case ClosureProperty::Formation: {
        bool g_in = member(g);
        const auto& normals = normal_subgroup_sets(g);
        if (g_in) {
          for (const auto& n : normals) {
            auto [q, hom] = quotient_set(g, n);
            if (!member(q)) {
              out.pass = false;
              out.detail = "quotient of " + g->label() + " by " +
                           g->make_ref(n).to_string() + " leaves the class";
              return out;
            }
          }
        }
        if (property == ClosureProperty::Formation && !g_in) {
          // subdirect closure: A cap B = 1 with both quotients inside forces G inside
          for (std::size_t i = 0; i < normals.size(); ++i)
            for (std::size_t j = i + 1; j < normals.size(); ++j) {
              if ((normals[i] & normals[j]).count() != 1) continue;
              auto [qa, ha] = quotient_set(g, normals[i]);
              auto [qb, hb] = quotient_set(g, normals[j]);
              if (member(qa) && member(qb)) {
                out.pass = false;
                out.detail = g->label() + " is subdirect in two class quotients (" +
                             g->make_ref(normals[i]).to_string() + ", " +
                             g->make_ref(normals[j]).to_string() +
                             ") but lies outside";
                return out;
              }
            }
        }
        break;
      }
      case ClosureProperty::Hereditary: {
        if (!member(g)) break;
        const auto& lat = lattice_of(g);
        for (int i = 0; i < lat.size(); ++i)
          if (!member(subgroup_group_set(g, lat.subs[i]))) {
            out.pass = false;
            out.detail = "subgroup " + g->make_ref(lat.subs[i]).to_string() + " of " +
                         g->label() + " leaves the class";
            return out;
          }
        break;
      }
      case ClosureProperty::Saturated: {
        if (member(g)) break;
        ElemSet phi = g->to_set(distinguished_subgroup(g, Distinguished::Frattini));
        for (const auto& n : normal_subgroup_sets(g)) {
          if (n.count() == 1 || !n.subset_of(phi)) continue;
          auto [q, hom] = quotient_set(g, n);
          if (member(q)) {
            out.pass = false;
            out.detail = g->label() + " has Frattini-contained normal subgroup " +
                         g->make_ref(n).to_string() +
                         " with class quotient but lies outside";
            return out;
          }
        }
        break;
      }
    }
  }
  return out;
}

ProbeOutcome closure_probe(const FormationPtr& f, const std::vector<GroupPtr>& catalog,
                           ClosureProperty property) {
  return closure_probe_fn([&f](const GroupPtr& g) { return belongs(g, f); }, catalog,
                          property, f->text);
}

ProbeOutcome closure_probe(const HomomorphPtr& h, const std::vector<GroupPtr>& catalog,
                           ClosureProperty property) {
  return closure_probe_fn([&h](const GroupPtr& g) { return hom_belongs(g, h); },
                          catalog, property, h->text);
}

std::pair<bool, bool> minimal_non_f_and_schmidt(const GroupPtr& g,
                                                const FormationPtr& f) {
  const auto& lat = lattice_of(g);
  auto minimal_non = [&](const FormationPtr& spec) {
    if (belongs(g, spec)) return false;
    auto flags = subgroup_membership_flags(g, spec);
    for (int i = 0; i < lat.size(); ++i)
      if (i != lat.full_index && !(*flags)[i]) return false;
    return true;
  };
  return {minimal_non(f), minimal_non(f_nilpotent())};
}

}  // namespace formatheory
