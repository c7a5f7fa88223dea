// Acceptance checks AC1..AC10. Prints one PASS/FAIL line per criterion;
// a criterion passes only when its check holds and it finishes within its
// time limit. Optional arguments select criteria by name ("AC3 AC7").

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dualemb/embed.hpp"
#include "dualemb/free_act.hpp"
#include "dualemb/indep.hpp"
#include "dualemb/kernels.hpp"
#include "dualemb/linal.hpp"
#include "dualemb/semigroup.hpp"

using namespace dualemb;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<Verdict()> check;
};

SearchOptions search_opts(bool dual, EmbedMode mode = EmbedMode::semigroup) {
  SearchOptions o;
  o.dual_target = dual;
  o.mode = mode;
  o.jobs = kernels::max_threads();
  return o;
}

// AC1
Verdict sharp_bound() {
  Verdict v;
  const auto src = named_monoid(MonoidKind::full, 2);
  for (std::size_t m : {2u, 3u}) {
    const auto r = search_embedding(src, named_monoid(MonoidKind::full, m), search_opts(true));
    v.require(r.outcome == SearchOutcome::none && r.stats.complete,
              "m=" + std::to_string(m) + ": expected a complete exhaustion, got " + to_string(r.outcome));
  }
  const auto t4 = named_monoid(MonoidKind::full, 4);
  const auto r = search_embedding(src, t4, search_opts(true));
  v.require(r.outcome == SearchOutcome::found && r.witness, "m=4: no witness");
  if (r.witness) v.require(verify_embedding(src, TableOracle(t4), *r.witness).passed(), "m=4: witness fails");
  return v;
}

// AC2
Verdict canonical_construction() {
  Verdict v;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto w = canonical_powerset_witness(n);
    v.require(w.mode == EmbedMode::monoid, "witness not in monoid mode");
    const auto rep = verify_embedding(named_monoid(MonoidKind::full, n), TransformationOracle(std::size_t{1} << n), w);
    v.require(rep.passed(), "n=" + std::to_string(n) + ": verification failed");
  }
  return v;
}

// AC3
Verdict mu_certificates() {
  Verdict v;
  for (std::size_t n : {2u, 3u}) {
    const std::size_t m = std::size_t{1} << n;
    const auto c = mu_certificate(n, m, canonical_powerset_witness(n));
    for (auto l : kAllMuLemmas) v.require(c.lemmas.at(l).passed, "n=" + std::to_string(n) + ": a lemma check failed");
    v.require(c.witness_verified && c.well_defined && c.partition_disjoint, "n=" + std::to_string(n) + ": certificate");
    v.require(c.bound == m, "n=" + std::to_string(n) + ": bound " + std::to_string(c.bound) + " != " + std::to_string(m));
    v.require(c.all_passed(), "n=" + std::to_string(n) + ": all_passed false");
  }
  return v;
}

// AC4
Verdict rel_self_duality() {
  Verdict v;
  {
    const auto s = named_monoid(MonoidKind::rel, 2);
    std::vector<Elem> t(s.size());
    for (Elem a = 0; a < s.size(); ++a) t[a] = static_cast<Elem>(binrel_rank(transpose(binrel_unrank(2, a))));
    std::set<Elem> image(t.begin(), t.end());
    v.require(image.size() == s.size(), "Rel(2): transpose not bijective");
    for (Elem a = 0; a < s.size(); ++a) v.require(t[t[a]] == a, "Rel(2): transpose not involutive");
    const auto scan = kernels::scan_pairs(
        s.size(), s.size(),
        [&](std::size_t a, std::size_t b) {
          return t[s.mul(static_cast<Elem>(a), static_cast<Elem>(b))] == s.mul(t[b], t[a]);
        },
        4);
    v.require(scan.failures == 0, "Rel(2): anti-homomorphism fails on some of the 256 pairs");
  }
  {
    const std::uint64_t samples = 1'000'000;
    std::uint64_t failures = 0;
    kernels::failing_indices(
        samples,
        [&](std::size_t i) {
          const std::uint64_t r = kernels::splitmix64(kSeed ^ (i * 2 + 1));
          const BinRel a = binrel_unrank(3, r & 511), b = binrel_unrank(3, (r >> 9) & 511);
          return transpose(compose_rel(a, b)) == compose_rel(transpose(b), transpose(a)) &&
                 transpose(transpose(a)) == a;
        },
        4, &failures);
    v.require(failures == 0, "Rel(3): " + std::to_string(failures) + " sampled failures");
  }
  return v;
}

// AC5
Verdict endomorphism_monoid() {
  Verdict v;
  const FiniteMonoid m(named_monoid(MonoidKind::rel, 2));
  const std::size_t omega = 2;
  const FiniteSemigroup e = e_monoid(m, omega);
  const std::size_t n = e.size();
  v.require(n == 1024, "|E(M)| != 1024");

  // (a)
  v.require(kernels::sampled_associativity_violations(e.table(), n, 1'000'000, kSeed) == 0, "E(M) not associative");
  v.require(e.is_monoid(), "E(M) has no identity");
  const Elem one = static_cast<Elem>(e_index(m, e_identity(m, omega)));
  for (Elem a = 0; a < n; ++a) v.require(e.mul(one, a) == a && e.mul(a, one) == a, "identity law fails");

  // (b)
  std::vector<ActEndoPair> pairs(n);
  std::vector<Endomap> endos(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i] = e_unindex(m, omega, i);
    endos[i] = pair_to_endo(m, pairs[i]);
    v.require(is_equivariant(m, omega, endos[i]), "pair_to_endo image not equivariant");
    v.require(endo_to_pair(m, omega, endos[i]) == pairs[i], "endo_to_pair does not invert pair_to_endo");
  }
  v.require(std::set<Endomap>(endos.begin(), endos.end()).size() == n, "pair_to_endo not injective");
  // an equivariant map is fixed by the images of the generators (1, p)
  const std::size_t points = m.size() * omega;
  std::uint64_t equivariant = 0;
  std::set<Endomap> targets(endos.begin(), endos.end());
  for (std::size_t g0 = 0; g0 < points; ++g0)
    for (std::size_t g1 = 0; g1 < points; ++g1) {
      const std::size_t gen[2] = {g0, g1};
      std::vector<Point> img(points);
      for (std::size_t t = 0; t < m.size(); ++t)
        for (Point p = 0; p < omega; ++p) {
          const std::size_t q = gen[p];
          img[act_point(omega, static_cast<Elem>(t), p)] = static_cast<Point>(
              act_point(omega, m.mul(static_cast<Elem>(t), static_cast<Elem>(q / omega)), static_cast<Point>(q % omega)));
        }
      const Endomap f(points, img);
      if (!is_equivariant(m, omega, f)) continue;
      ++equivariant;
      v.require(targets.count(f) == 1, "an equivariant endomap is missed by pair_to_endo");
    }
  v.require(equivariant == n, "equivariant endomap count != |E(M)|");
  const auto hom = kernels::scan_pairs(
      n, n,
      [&](std::size_t a, std::size_t b) {
        return endos[e.mul(static_cast<Elem>(a), static_cast<Elem>(b))] == compose_maps(endos[b], endos[a]);
      },
      4);
  v.require(hom.failures == 0, "pair_to_endo not multiplicative");

  // (c)
  v.require(verify_embedding(m.semigroup(), TableOracle(e), mop_embedding_witness(m, omega)).passed(),
            "M^op witness fails");

  // (d)
  const EtaEmbedding eta(m, omega);
  std::vector<BinRel> rel(n);
  for (std::size_t i = 0; i < n; ++i) rel[i] = eta(pairs[i]);
  v.require(std::set<BinRel>(rel.begin(), rel.end()).size() == n, "eta not injective");
  const auto mult = kernels::scan_pairs(
      n, n,
      [&](std::size_t a, std::size_t b) {
        return rel[e.mul(static_cast<Elem>(a), static_cast<Elem>(b))] == compose_rel(rel[a], rel[b]);
      },
      4);
  v.require(mult.failures == 0, "eta not multiplicative on " + std::to_string(mult.failures) + " pairs");
  return v;
}

// AC6
Verdict classification_sweep() {
  Verdict v;
  std::size_t rows = 0;
  for (std::size_t order = 1; order <= 3; ++order)
    for (const auto& m : enumerate_monoids(order)) {
      ++rows;
      const auto c = classify_free_act(m, 2);
      v.require(c.sc_agree(), m.name() + ": SC-ranked routes disagree");
      v.require(c.matroid_agree(), m.name() + ": matroid routes disagree");
      v.require(c.c_indep_characterization_ok, m.name() + ": C-independence characterization fails");
    }
  v.require(rows == 10, "expected 10 monoids of order <= 3, got " + std::to_string(rows));
  return v;
}

std::vector<Vector> random_independent(Scalar p, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> d(0, p - 1);
  std::vector<Vector> out;
  while (out.size() < n) {
    Vector x(n);
    for (auto& c : x) c = d(rng);
    out.push_back(x);
    if (!is_linearly_independent(p, n, out)) out.pop_back();
  }
  return out;
}

// AC7
Verdict field_constructions() {
  Verdict v;
  std::mt19937_64 rng(kSeed);
  for (auto [p, n] : {std::pair<Scalar, std::size_t>{2, 3}, {2, 4}, {3, 4}}) {
    const std::string tag = "(" + std::to_string(p) + "," + std::to_string(n) + ")";
    for (const auto& basis : {Matrix::identity(p, n).row_list(), random_independent(p, n, rng)}) {
      const SpanEmbedding span(p, n, basis);
      const auto s = lattice_laws(std::cref(span), n);
      v.require(s.pairs == (std::uint64_t{1} << (2 * n)), tag + ": not every pair was checked");
      v.require(s.join_failures == 0 && s.meet_failures == 0, tag + ": span lattice laws fail");
      v.require(s.injective_failures == 0 && s.dim_failures == 0, tag + ": span injectivity/dimension fails");
      const PhiFromFunctionals phi(p, n, basis);
      const auto k = lattice_laws(std::cref(phi), n);
      v.require(k.union_meet_failures == 0, tag + ": phi(X u Y) != phi(X) n phi(Y)");
      v.require(k.sum_law_failures == 0, tag + ": phi(X) + phi(Y) != phi(X n Y)");
      v.require(k.codim_failures == 0, tag + ": codim phi(X) != |X|");
      v.require(k.injective_failures == 0, tag + ": phi not injective");
    }
  }
  return v;
}

// AC8
Verdict projection_machinery() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 8);
  for (auto [p, n] : {std::pair<Scalar, std::size_t>{2, 4}, {3, 3}}) {
    std::uniform_int_distribution<std::size_t> rows(0, n);
    std::uint64_t failures = 0;
    for (int t = 0; t < 10'000; ++t) {
      const Subspace x = random_subspace(p, n, rows(rng), rng), y = random_subspace(p, n, rows(rng), rng);
      const auto pp = projection_pair(x, y);
      const bool ok = pp.gf.kernel() == subspace_sum(x, y) && pp.f.kernel() == x && pp.g.kernel() == y &&
                      pp.f.is_idempotent() && pp.g.is_idempotent() && pp.gf.is_idempotent();
      if (!ok) ++failures;
    }
    v.require(failures == 0, "F_" + std::to_string(p) + "^" + std::to_string(n) + ": " + std::to_string(failures) +
                                 " failing trials");
  }
  return v;
}

// AC9
Verdict independence_hierarchy() {
  Verdict v;
  std::vector<std::unique_ptr<AlgebraHandle>> zoo;
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t n = 1; n <= 3; ++n) zoo.push_back(std::make_unique<VectorSpaceAlgebra>(p, n));
  for (std::size_t order = 1; order <= 4; ++order)
    for (auto& m : enumerate_monoids(order))
      for (std::size_t omega = 1; omega <= 2; ++omega) zoo.push_back(std::make_unique<FreeActAlgebra>(m, omega));
  std::mt19937_64 rng(kSeed + 9);
  std::uint64_t m_violations = 0, s_violations = 0, skipped = 0;
  for (int t = 0; t < 1000; ++t) {
    const AlgebraHandle& a = *zoo[std::uniform_int_distribution<std::size_t>(0, zoo.size() - 1)(rng)];
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min<std::size_t>(4, a.size()))(rng);
    Subset s = 0;
    while (static_cast<std::size_t>(std::popcount(s)) < k)
      s |= Subset{1} << std::uniform_int_distribution<std::size_t>(0, a.size() - 1)(rng);
    const auto r = independence_report(a, s);
    if (r.s.skipped() || r.m.skipped()) {
      ++skipped;
      continue;
    }
    if (r.m.holds() && !r.s.holds()) ++m_violations;
    if (r.s.holds() && r.non_degenerate && !r.c.holds()) ++s_violations;
  }
  v.require(skipped == 0, std::to_string(skipped) + " subsets exceeded the map budget");
  v.require(m_violations == 0, std::to_string(m_violations) + " violations of M => S");
  v.require(s_violations == 0, std::to_string(s_violations) + " violations of S and non-degenerate => C");
  return v;
}

// AC10
Verdict pruning_soundness() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 10);
  // rejection sampling against a uniformly drawn lower size bound, so the
  // corpus spreads over 1..max_size instead of clustering at tiny closures
  auto random_semigroup = [&](std::size_t max_size) -> FiniteSemigroup {
    const std::size_t lo = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    while (true) {
      const std::size_t points = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
      const std::size_t gens = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      std::vector<Endomap> g;
      std::uniform_int_distribution<Point> d(0, static_cast<Point>(points - 1));
      for (std::size_t i = 0; i < gens; ++i) {
        std::vector<Point> img(points);
        for (auto& x : img) x = d(rng);
        g.emplace_back(points, img);
      }
      try {
        auto r = close_under_product(
            g, [](const Endomap& a, const Endomap& b) { return compose_maps(b, a); }, ClosureBudget{max_size, 1u << 20});
        if (r.semigroup.size() >= lo) return r.semigroup;
      } catch (const BudgetExceeded&) {
      }
    }
  };
  int mismatches = 0, inconclusive = 0, found = 0, bad_witness = 0;
  std::size_t source_total = 0, target_total = 0;
  for (int t = 0; t < 200; ++t) {
    const auto s = random_semigroup(6);
    const auto target = random_semigroup(12);
    source_total += s.size();
    target_total += target.size();
    for (bool dual : {false, true}) {
      SearchOptions with = search_opts(dual), without = search_opts(dual);
      without.prune = false;
      const auto a = search_embedding(s, target, with);
      const auto b = search_embedding(s, target, without);
      if (a.outcome == SearchOutcome::inconclusive || b.outcome == SearchOutcome::inconclusive) ++inconclusive;
      if (a.outcome != b.outcome) ++mismatches;
      if (a.outcome == SearchOutcome::found) ++found;
      for (const auto* r : {&a, &b})
        if (r->witness && !verify_embedding(s, TableOracle(target), *r->witness).passed()) ++bad_witness;
    }
  }
  v.require(inconclusive == 0, std::to_string(inconclusive) + " searches hit the budget");
  v.require(mismatches == 0, std::to_string(mismatches) + " verdict mismatches");
  v.require(bad_witness == 0, std::to_string(bad_witness) + " witnesses fail verification");
  if (v.ok)
    v.detail = std::to_string(found) + "/400 found; mean sizes " + std::to_string(source_total / 200.0).substr(0, 4) +
               " into " + std::to_string(target_total / 200.0).substr(0, 4);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"AC1", "no dual embedding Self(2) -> Self(m) for m=2,3; witness at m=4", 10, sharp_bound},
      {"AC2", "canonical inverse-image witnesses, n=1..3", 5, canonical_construction},
      {"AC3", "mu certificates at n=2,3 with bound 2^n", 10, mu_certificates},
      {"AC4", "transposition is an involutive anti-automorphism of Rel(2), Rel(3)", 10, rel_self_duality},
      {"AC5", "E(Rel(2)) on two points: monoid, endomorphisms, M^op, eta", 300, endomorphism_monoid},
      {"AC6", "free-act classification sweep, order <= 3", 120, classification_sweep},
      {"AC7", "span and kernel lattice laws over F_p", 30, field_constructions},
      {"AC8", "projection pairs on 10^4 random pairs", 60, projection_machinery},
      {"AC9", "independence hierarchy on 10^3 random subsets", 120, independence_hierarchy},
      {"AC10", "pruned and unpruned searches agree on 200 pairs", 300, pruning_soundness},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = v.ok && in_time;
    if (!pass) ++failed;
    std::string detail = v.detail;
    if (v.ok && !in_time) detail = "over time limit";
    std::printf("%s %s %s (%.2fs / limit %.0fs)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, secs,
                c.limit_seconds, detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
