#include "formatheory/kernels.hpp"

#include <algorithm>
#include <unordered_map>

#include "formatheory/group.hpp"
#include "formatheory/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace formatheory::kernels {

namespace {

constexpr int kFullAssociativityLimit = 512;

std::optional<Triple> check_row_block(const Group& g, int a) {
  int n = g.order();
  for (int b = 0; b < n; ++b) {
    ElemId ab = g.mul(ElemId(a), ElemId(b));
    for (int c = 0; c < n; ++c) {
      if (g.mul(ab, ElemId(c)) != g.mul(ElemId(a), g.mul(ElemId(b), ElemId(c))))
        return Triple{a, b, c};
    }
  }
  return std::nullopt;
}

std::optional<Triple> sampled_violation(const Group& g) {
  int n = g.order();
  par::Rng rng(0x5eedull ^ (std::uint64_t(n) << 32));
  long long samples = 10ll * n * n;
  std::optional<Triple> best;
  for (long long i = 0; i < samples; ++i) {
    int a = int(rng.bounded(n)), b = int(rng.bounded(n)), c = int(rng.bounded(n));
    if (g.mul(g.mul(ElemId(a), ElemId(b)), ElemId(c)) !=
        g.mul(ElemId(a), g.mul(ElemId(b), ElemId(c)))) {
      Triple t{a, b, c};
      if (!best || t < *best) best = t;
    }
  }
  return best;
}

}  // namespace

std::optional<Triple> associativity_violation_serial(const Group& g) {
  int n = g.order();
  if (n > kFullAssociativityLimit) return sampled_violation(g);
  for (int a = 0; a < n; ++a)
    if (auto t = check_row_block(g, a)) return t;
  return std::nullopt;
}

std::optional<Triple> associativity_violation_parallel(const Group& g) {
  int n = g.order();
  if (n > kFullAssociativityLimit) return sampled_violation(g);
#ifdef _OPENMP
  std::optional<Triple> best;
#pragma omp parallel num_threads(par::threads())
  {
    std::optional<Triple> local;
#pragma omp for schedule(static)
    for (int a = 0; a < n; ++a) {
      if (local) continue;  // already found in this thread's slice
      if (auto t = check_row_block(g, a)) local = t;
    }
#pragma omp critical
    if (local && (!best || *local < *best)) best = local;
  }
  return best;
#else
  return associativity_violation_serial(g);
#endif
}

std::optional<Triple> associativity_violation(const Group& g) {
  return par::enabled() ? associativity_violation_parallel(g)
                        : associativity_violation_serial(g);
}

namespace {

bool centralizes(const Group& g, int x, const std::vector<ElemId>& upper_gens,
                 const ElemSet& lower) {
  for (ElemId h : upper_gens) {
    ElemId y = g.conj(h, ElemId(x));
    if (!lower.test(g.mul(g.inv(h), y))) return false;
  }
  return true;
}

}  // namespace

ElemSet centralizer_scan_serial(const Group& g, const std::vector<ElemId>& upper_gens,
                                const ElemSet& lower) {
  ElemSet out(g.order());
  for (int x = 0; x < g.order(); ++x)
    if (centralizes(g, x, upper_gens, lower)) out.set(x);
  return out;
}

ElemSet centralizer_scan_parallel(const Group& g,
                                  const std::vector<ElemId>& upper_gens,
                                  const ElemSet& lower) {
  int n = g.order();
  std::vector<char> flag(n, 0);
  par::parallel_for(std::size_t(n), [&](std::size_t x) {
    flag[x] = centralizes(g, int(x), upper_gens, lower) ? 1 : 0;
  });
  ElemSet out(n);
  for (int x = 0; x < n; ++x)
    if (flag[x]) out.set(x);
  return out;
}

ElemSet centralizer_scan(const Group& g, const std::vector<ElemId>& upper_gens,
                         const ElemSet& lower) {
  return par::enabled() ? centralizer_scan_parallel(g, upper_gens, lower)
                        : centralizer_scan_serial(g, upper_gens, lower);
}

namespace {

void append_join(const Group& g, const ElemSet& sub,
                 const std::vector<ElemId>& sub_gens, const ElemSet& cyc,
                 ElemId cyc_gen,
                 const std::unordered_map<ElemSet, int, ElemSetHash>& known,
                 std::vector<ElemSet>& sets, std::vector<std::vector<ElemId>>& gens) {
  if (cyc.subset_of(sub)) return;
  std::vector<ElemId> jg = sub_gens;
  jg.push_back(cyc_gen);
  ElemSet join = g.closure(jg);
  if (known.count(join)) return;
  // Re-derive a short generating set when joins have accumulated too many.
  if (int(jg.size()) > 12) {
    std::vector<ElemId> slim;
    ElemSet have(g.order());
    have.set(0);
    join.for_each([&](int x) {
      if (have.test(x) || have.count() == join.count()) return;
      slim.push_back(ElemId(x));
      have = g.closure(slim);
    });
    jg = std::move(slim);
  }
  sets.push_back(std::move(join));
  gens.push_back(std::move(jg));
}

void dedupe(JoinResult& r) {
  std::vector<std::size_t> idx(r.sets.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return r.sets[a].lex_compare(r.sets[b]) < 0;
  });
  JoinResult out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && r.sets[idx[k]] == r.sets[idx[k - 1]]) continue;
    out.sets.push_back(std::move(r.sets[idx[k]]));
    out.gens.push_back(std::move(r.gens[idx[k]]));
  }
  r = std::move(out);
}

}  // namespace

JoinResult join_round_serial(const Group& g, const JoinInput& in,
                             const std::unordered_map<ElemSet, int, ElemSetHash>& known) {
  JoinResult r;
  for (std::size_t i = 0; i < in.frontier->size(); ++i)
    for (std::size_t c = 0; c < in.cyclic->size(); ++c)
      append_join(g, (*in.frontier)[i], (*in.frontier_gens)[i], (*in.cyclic)[c],
                  (*in.cyclic_gen)[c], known, r.sets, r.gens);
  dedupe(r);
  return r;
}

JoinResult join_round_parallel(const Group& g, const JoinInput& in,
                               const std::unordered_map<ElemSet, int, ElemSetHash>& known) {
#ifdef _OPENMP
  int nt = par::threads();
  std::vector<JoinResult> parts(nt);
#pragma omp parallel num_threads(nt)
  {
    int tid = omp_get_thread_num();
    JoinResult& mine = parts[tid];
#pragma omp for schedule(dynamic)
    for (long long i = 0; i < (long long)in.frontier->size(); ++i)
      for (std::size_t c = 0; c < in.cyclic->size(); ++c)
        append_join(g, (*in.frontier)[i], (*in.frontier_gens)[i], (*in.cyclic)[c],
                    (*in.cyclic_gen)[c], known, mine.sets, mine.gens);
  }
  JoinResult r;
  for (auto& p : parts) {
    for (std::size_t k = 0; k < p.sets.size(); ++k) {
      r.sets.push_back(std::move(p.sets[k]));
      r.gens.push_back(std::move(p.gens[k]));
    }
  }
  dedupe(r);
  return r;
#else
  return join_round_serial(g, in, known);
#endif
}

JoinResult join_round(const Group& g, const JoinInput& in,
                      const std::unordered_map<ElemSet, int, ElemSetHash>& known) {
  return par::enabled() ? join_round_parallel(g, in, known)
                        : join_round_serial(g, in, known);
}

}  // namespace formatheory::kernels
