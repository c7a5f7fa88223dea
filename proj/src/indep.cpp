#include "dualemb/indep.hpp"

#include <bit>
#include <stdexcept>

#include "dualemb/kernels.hpp"
#include "dualemb/linal.hpp"

namespace dualemb {

namespace {

std::size_t lowest(Subset s) { return static_cast<std::size_t>(std::countr_zero(s)); }
bool has(Subset s, std::size_t e) { return (s >> e) & 1U; }
Subset bit(std::size_t e) { return Subset{1} << e; }

std::uint64_t power_or_cap(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- free acts

FreeActAlgebra::FreeActAlgebra(FiniteMonoid m, std::size_t omega) : m_(std::move(m)), omega_(omega) {
  if (omega_ == 0) throw std::invalid_argument("FreeActAlgebra: need at least one point");
  if (m_.size() * omega_ > kMaxCarrier) throw std::invalid_argument("FreeActAlgebra: carrier exceeds 64 elements");
}

std::size_t FreeActAlgebra::act(Elem s, std::size_t e) const {
  return act_point(omega_, m_.mul(s, static_cast<Elem>(e / omega_)), static_cast<Point>(e % omega_));
}

Subset FreeActAlgebra::closure(Subset x) const {
  Subset out = 0;
  for (Subset r = x; r; r &= r - 1) {
    const std::size_t e = lowest(r);
    for (std::size_t s = 0; s < m_.size(); ++s) out |= bit(act(static_cast<Elem>(s), e));
  }
  return out;
}

bool FreeActAlgebra::extends(const PartialAssignment& f) const {
  for (const auto& [y1, fy1] : f) {
    if (y1 >= size() || fy1 >= size()) throw std::out_of_range("FreeActAlgebra: element out of range");
    for (const auto& [y2, fy2] : f)
      for (std::size_t s1 = 0; s1 < m_.size(); ++s1)
        for (std::size_t s2 = 0; s2 < m_.size(); ++s2) {
          const Elem a = static_cast<Elem>(s1), b = static_cast<Elem>(s2);
          if (act(a, y1) == act(b, y2) && act(a, fy1) != act(b, fy2)) return false;
        }
  }
  return true;
}

std::string FreeActAlgebra::describe() const {
  return "free act over " + m_.name() + " on " + std::to_string(omega_) + " points";
}

std::string FreeActAlgebra::element_label(std::size_t e) const {
  return "(" + m_.semigroup().label(static_cast<Elem>(e / omega_)) + "," + std::to_string(e % omega_) + ")";
}

// ---------------------------------------------------------------- vector spaces

VectorSpaceAlgebra::VectorSpaceAlgebra(std::uint32_t p, std::size_t n) : p_(p), n_(n), size_(1) {
  (void)PrimeField(p);
  for (std::size_t i = 0; i < n; ++i) {
    size_ *= p;
    if (size_ > kMaxCarrier) throw std::invalid_argument("VectorSpaceAlgebra: more than 64 vectors");
  }
}

std::vector<std::uint32_t> VectorSpaceAlgebra::vector(std::size_t e) const { return vector_from_index(p_, n_, e); }

std::size_t VectorSpaceAlgebra::index(const std::vector<std::uint32_t>& v) const {
  return static_cast<std::size_t>(vector_index(p_, v));
}

std::size_t VectorSpaceAlgebra::add(std::size_t a, std::size_t b) const {
  auto va = vector(a);
  const auto vb = vector(b);
  for (std::size_t i = 0; i < n_; ++i) va[i] = (va[i] + vb[i]) % p_;
  return index(va);
}

std::size_t VectorSpaceAlgebra::scale(std::uint32_t c, std::size_t a) const {
  auto va = vector(a);
  for (auto& x : va) x = (x * c) % p_;
  return index(va);
}

Subset VectorSpaceAlgebra::closure(Subset x) const {
  Subset span = bit(0);  // the zero vector has index 0
  for (Subset r = x; r; r &= r - 1) {
    const std::size_t g = lowest(r);
    if (has(span, g)) continue;
    Subset next = span;
    for (Subset s = span; s; s &= s - 1)
      for (std::uint32_t c = 1; c < p_; ++c) next |= bit(add(lowest(s), scale(c, g)));
    span = next;
  }
  return span;
}

bool VectorSpaceAlgebra::extends(const PartialAssignment& f) const {
  if (f.empty()) return true;
  std::vector<Vector> dom, both;
  for (const auto& [y, fy] : f) {
    if (y >= size_ || fy >= size_) throw std::out_of_range("VectorSpaceAlgebra: element out of range");
    Vector d = vector(y), img = vector(fy);
    dom.push_back(d);
    d.insert(d.end(), img.begin(), img.end());
    both.push_back(std::move(d));
  }
  return Matrix(p_, n_, dom).rank() == Matrix(p_, 2 * n_, both).rank();
}

std::string VectorSpaceAlgebra::describe() const {
  return "F_" + std::to_string(p_) + "^" + std::to_string(n_);
}

std::string VectorSpaceAlgebra::element_label(std::size_t e) const {
  std::string s = "(";
  const auto v = vector(e);
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// ---------------------------------------------------------------- independence

bool is_c_independent(const AlgebraHandle& a, Subset i) {
  for (Subset r = i; r; r &= r - 1) {
    const std::size_t x = lowest(r);
    if (has(a.closure(i & ~bit(x)), x)) return false;
  }
  return true;
}

namespace {

// Enumerates every map from `dom` into `codomain` in lexicographic order of
// images; returns the first one that does not extend.
std::optional<bool> all_extend(const AlgebraHandle& a, const std::vector<std::size_t>& dom,
                               const std::vector<std::size_t>& codomain, std::uint64_t budget,
                               PartialAssignment& failure) {
  const std::size_t k = dom.size();
  if (power_or_cap(codomain.size(), k, budget) > budget) return std::nullopt;
  if (k > 0 && codomain.empty()) return true;
  PartialAssignment f(k);
  if (k == 0) return a.extends(f);
  std::vector<std::size_t> digit(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) f[i] = {dom[i], codomain[digit[i]]};
    if (!a.extends(f)) {
      failure = f;
      return false;
    }
    std::size_t pos = k - 1;
    while (++digit[pos] == codomain.size()) {
      digit[pos] = 0;
      if (pos == 0) return true;
      --pos;
    }
  }
}

}  // namespace

IndependenceReport independence_report(const AlgebraHandle& a, Subset i, std::uint64_t map_budget) {
  if ((i & ~a.everything()) != 0) throw std::out_of_range("independence_report: subset outside the carrier");
  IndependenceReport r;
  r.subset = i;

  const Subset bottom = a.closure(0);
  if (i & bottom) {
    r.non_degenerate = false;
    r.degenerate_element = lowest(i & bottom);
  }

  r.c.value = true;
  for (Subset s = i; s; s &= s - 1) {
    const std::size_t x = lowest(s);
    if (has(a.closure(i & ~bit(x)), x)) {
      r.c.value = false;
      r.c.element = x;
      break;
    }
  }

  const auto dom = subset_elements(i);
  std::vector<std::size_t> carrier(a.size());
  for (std::size_t e = 0; e < a.size(); ++e) carrier[e] = e;
  r.s.value = all_extend(a, dom, dom, map_budget, r.s.map);
  r.m.value = all_extend(a, dom, carrier, map_budget, r.m.map);
  return r;
}

// ---------------------------------------------------------------- matroid conditions

bool MatroidReport::consistent() const {
  std::optional<bool> seen;
  for (const ConditionResult* c : {&exchange, &independent_growth, &maximal_generates, &extension_to_basis}) {
    if (!c->holds) continue;
    if (seen && *seen != *c->holds) return false;
    seen = c->holds;
  }
  return true;
}

namespace {

struct ClosureTable {
  std::vector<Subset> cl;
  std::vector<bool> cind;
};

ClosureTable tabulate_closures(const AlgebraHandle& a, bool parallel) {
  const std::size_t total = std::size_t{1} << a.size();
  ClosureTable t;
  t.cl.resize(total);
  t.cind.resize(total);
  const std::int64_t n = static_cast<std::int64_t>(total);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t x = 0; x < n; ++x) t.cl[static_cast<std::size_t>(x)] = a.closure(static_cast<Subset>(x));
  } else {
    for (std::int64_t x = 0; x < n; ++x) t.cl[static_cast<std::size_t>(x)] = a.closure(static_cast<Subset>(x));
  }
  for (std::size_t x = 0; x < total; ++x) {
    bool ok = true;
    for (Subset r = x; r && ok; r &= r - 1) ok = !has(t.cl[x & ~bit(lowest(r))], lowest(r));
    t.cind[x] = ok;
  }
  return t;
}

struct Parallel {
  template <class Pred>
  static std::vector<std::size_t> run(std::size_t count, Pred pred, std::uint64_t* failures) {
    return kernels::failing_indices(count, pred, 1, failures);
  }
};
struct Serial {
  template <class Pred>
  static std::vector<std::size_t> run(std::size_t count, Pred pred, std::uint64_t* failures) {
    return kernels::failing_indices_serial(count, pred, 1, failures);
  }
};

template <class Sweep>
MatroidReport matroid_impl(const AlgebraHandle& a, bool small_conditions) {
  const std::size_t n = a.size();
  if (n > 16) throw BudgetExceeded("matroid_check: carrier larger than 16 elements");
  const ClosureTable t = tabulate_closures(a, std::is_same_v<Sweep, Parallel>);
  const auto& cl = t.cl;
  const auto& cind = t.cind;
  const std::size_t total = std::size_t{1} << n;
  MatroidReport rep;

  // (1) u in <X + v>, u not in <X>  =>  v in <X + u>
  const auto exchange_at = [&](Subset x, MatroidViolation* w) {
    for (std::size_t u = 0; u < n; ++u) {
      if (has(cl[x], u)) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (has(cl[x | bit(v)], u) && !has(cl[x | bit(u)], v)) {
          if (w) *w = {x, u, v, 0};
          return false;
        }
    }
    return true;
  };
  {
    std::uint64_t fails = 0;
    const auto bad = Sweep::run(total, [&](std::size_t x) { return exchange_at(x, nullptr); }, &fails);
    rep.exchange.holds = fails == 0;
    rep.exchange.violations = fails;
    if (!bad.empty()) {
      MatroidViolation w;
      exchange_at(bad.front(), &w);
      rep.exchange.witness = w;
    }
  }

  // (2) X C-independent, u not in <X>  =>  X + u C-independent
  const auto growth_at = [&](Subset x, MatroidViolation* w) {
    if (!cind[x]) return true;
    for (std::size_t u = 0; u < n; ++u)
      if (!has(cl[x], u) && !cind[x | bit(u)]) {
        if (w) *w = {x, u, 0, 0};
        return false;
      }
    return true;
  };
  {
    std::uint64_t fails = 0;
    const auto bad = Sweep::run(total, [&](std::size_t x) { return growth_at(x, nullptr); }, &fails);
    rep.independent_growth.holds = fails == 0;
    rep.independent_growth.violations = fails;
    if (!bad.empty()) {
      MatroidViolation w;
      growth_at(bad.front(), &w);
      rep.independent_growth.witness = w;
    }
  }

  if (!small_conditions || n > 10) return rep;

  // (3) Y maximal C-independent inside X  =>  <X> = <Y>
  const auto maximal_at = [&](Subset x, MatroidViolation* w) {
    for (Subset y = x;; y = (y - 1) & x) {
      if (cind[y]) {
        bool maximal = true;
        for (Subset r = x & ~y; r && maximal; r &= r - 1) maximal = !cind[y | bit(lowest(r))];
        if (maximal && cl[x] != cl[y]) {
          if (w) *w = {x, 0, 0, y};
          return false;
        }
      }
      if (y == 0) break;
    }
    return true;
  };
  {
    std::uint64_t fails = 0;
    const auto bad = Sweep::run(total, [&](std::size_t x) { return maximal_at(x, nullptr); }, &fails);
    rep.maximal_generates.holds = fails == 0;
    rep.maximal_generates.violations = fails;
    if (!bad.empty()) {
      MatroidViolation w;
      maximal_at(bad.front(), &w);
      rep.maximal_generates.witness = w;
    }
  }

  // (4) Y within X C-independent  =>  some C-independent Z, Y <= Z <= X, <Z> = <X>
  const auto extension_at = [&](Subset x, MatroidViolation* w) {
    for (Subset y = x;; y = (y - 1) & x) {
      if (cind[y]) {
        const Subset rest = x & ~y;
        bool found = false;
        for (Subset d = rest;; d = (d - 1) & rest) {
          if (cind[y | d] && cl[y | d] == cl[x]) {
            found = true;
            break;
          }
          if (d == 0) break;
        }
        if (!found) {
          if (w) *w = {x, 0, 0, y};
          return false;
        }
      }
      if (y == 0) break;
    }
    return true;
  };
  {
    std::uint64_t fails = 0;
    const auto bad = Sweep::run(total, [&](std::size_t x) { return extension_at(x, nullptr); }, &fails);
    rep.extension_to_basis.holds = fails == 0;
    rep.extension_to_basis.violations = fails;
    if (!bad.empty()) {
      MatroidViolation w;
      extension_at(bad.front(), &w);
      rep.extension_to_basis.witness = w;
    }
  }
  return rep;
}

}  // namespace

MatroidReport matroid_check(const AlgebraHandle& a, bool small_conditions) {
  return matroid_impl<Parallel>(a, small_conditions);
}

MatroidReport matroid_check_serial(const AlgebraHandle& a, bool small_conditions) {
  return matroid_impl<Serial>(a, small_conditions);
}

// ---------------------------------------------------------------- subset lattices

LatticeEmbedding fin_lattice_embedding(const AlgebraHandle& a, Subset i) {
  const IndependenceReport rep = independence_report(a, i);
  if (!rep.non_degenerate)
    throw std::invalid_argument("fin_lattice_embedding: element " + a.element_label(*rep.degenerate_element) +
                                " lies in the subuniverse generated by nothing");
  if (rep.s.skipped()) throw BudgetExceeded("fin_lattice_embedding: S-independence check over budget");
  if (!rep.s.holds()) {
    std::string m;
    for (const auto& [x, y] : rep.s.map) m += " " + a.element_label(x) + "->" + a.element_label(y);
    throw std::invalid_argument("fin_lattice_embedding: not S-independent, map" + m + " does not extend");
  }

  LatticeEmbedding e;
  e.index = subset_elements(i);
  const std::size_t k = e.index.size();
  if (k > 10) throw BudgetExceeded("fin_lattice_embedding: more than 10 elements");
  const Subset total = Subset{1} << k;
  const auto lift = [&](Subset x) {
    Subset s = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (has(x, j)) s |= bit(e.index[j]);
    return s;
  };
  e.phi.resize(total);
  for (Subset x = 1; x < total; ++x) e.phi[x] = a.closure(lift(x));
  if (k >= 2) {
    e.phi[0] = a.everything();
    for (std::size_t j = 0; j < k; ++j) e.phi[0] &= e.phi[bit(j)];
  } else {
    e.phi[0] = a.closure(0);
  }

  for (Subset x = 0; x < total; ++x)
    for (Subset y = 0; y < total; ++y) {
      bool bad = false;
      if (e.phi[x | y] != a.closure(e.phi[x] | e.phi[y])) e.join_ok = false, bad = true;
      if (e.phi[x & y] != (e.phi[x] & e.phi[y])) e.meet_ok = false, bad = true;
      if (x != y && e.phi[x] == e.phi[y]) e.injective = false, bad = true;
      if (bad && !e.failure) e.failure = std::make_pair(x, y);
    }
  return e;
}

std::vector<std::size_t> extract_c_independent(const AlgebraHandle& a, const std::vector<Subset>& phi) {
  if (phi.empty() || !std::has_single_bit(phi.size()))
    throw std::invalid_argument("extract_c_independent: phi needs 2^k entries");
  const std::size_t k = static_cast<std::size_t>(std::countr_zero(phi.size()));
  const Subset total = phi.size();
  for (Subset x = 0; x < total; ++x)
    for (Subset y = 0; y < total; ++y) {
      if (phi[x & y] != (phi[x] & phi[y]))
        throw std::invalid_argument("extract_c_independent: meet law fails at index sets " + std::to_string(x) +
                                    ", " + std::to_string(y));
      if (x < y && phi[x] == phi[y])
        throw std::invalid_argument("extract_c_independent: not injective at index sets " + std::to_string(x) +
                                    ", " + std::to_string(y));
    }
  std::vector<std::size_t> out;
  Subset chosen = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const Subset diff = phi[bit(j)] & ~phi[0];
    if (diff == 0) throw std::invalid_argument("extract_c_independent: phi({" + std::to_string(j) + "}) adds nothing");
    out.push_back(lowest(diff));
    chosen |= bit(out.back());
  }
  if (static_cast<std::size_t>(std::popcount(chosen)) != k || !is_c_independent(a, chosen))
    throw std::logic_error("extract_c_independent: extracted family is not C-independent");
  return out;
}

// ---------------------------------------------------------------- SC-rank

namespace {

struct BranchAndBound {
  const AlgebraHandle& a;
  std::size_t n;
  MaxIndependent best;

  bool can_add(Subset x, std::size_t u) const {
    if (has(a.closure(x), u)) return false;
    for (Subset r = x; r; r &= r - 1) {
      const std::size_t y = lowest(r);
      if (has(a.closure((x & ~bit(y)) | bit(u)), y)) return false;
    }
    return true;
  }

  void dfs(std::size_t start, Subset x, std::size_t size) {
    if (size > best.size) best = {size, x};
    for (std::size_t u = start; u < n; ++u) {
      if (size + (n - u) <= best.size) return;
      if (can_add(x, u)) dfs(u + 1, x | bit(u), size + 1);
    }
  }
};

}  // namespace

MaxIndependent max_c_independent(const AlgebraHandle& a) {
  if (a.size() > 20) throw BudgetExceeded("max_c_independent: carrier larger than 20 elements");
  BranchAndBound bb{a, a.size(), {}};
  bb.dfs(0, 0, 0);
  return bb.best;
}

ScRankReport sc_rank_report(const AlgebraHandle& a, Subset basis_candidate) {
  ScRankReport r;
  r.generating = a.closure(basis_candidate) == a.everything();
  const IndependenceReport rep = independence_report(a, basis_candidate);
  if (rep.s.skipped()) throw BudgetExceeded("sc_rank_report: S-independence check over budget");
  r.s_independent = rep.s.holds();
  r.is_s_basis = r.generating && r.s_independent;
  r.max_c = max_c_independent(a);
  r.sc_ranked = r.is_s_basis && r.max_c.size <= static_cast<std::size_t>(std::popcount(basis_candidate));
  return r;
}

}  // namespace dualemb
