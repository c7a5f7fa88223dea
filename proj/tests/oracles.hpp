#pragma once

// Brute-force reference implementations and random generators for the tests.
// Nothing here calls the search, closure or elimination code under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dualemb/free_act.hpp"
#include "dualemb/linal.hpp"
#include "dualemb/maps.hpp"
#include "dualemb/semigroup.hpp"

namespace oracle {

using namespace dualemb;

inline Endomap random_endomap(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<Point> d(0, static_cast<Point>(n - 1));
  std::vector<Point> img(n);
  for (auto& v : img) v = d(rng);
  return Endomap(n, img);
}

inline PartialMap random_partial(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<Point> d(0, static_cast<Point>(n));
  std::vector<Point> img(n);
  for (auto& v : img) v = d(rng);
  return PartialMap(n, img);
}

inline BinRel random_binrel(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.4);
  BinRel r(n);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y)
      if (coin(rng)) r.set(x, y);
  return r;
}

/// Composition straight from the definition: x (b then a) y.
inline BinRel compose_rel(const BinRel& a, const BinRel& b) {
  const std::size_t n = a.size();
  BinRel out(n);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y)
      for (Point z = 0; z < n; ++z)
        if (b.test(x, z) && a.test(z, y)) out.set(x, y);
  return out;
}

inline bool associative(const FiniteSemigroup& s) {
  const auto n = static_cast<Elem>(s.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c))) return false;
  return true;
}

inline Elem dual_mul(const FiniteSemigroup& t, bool dual, Elem a, Elem b) { return dual ? t.mul(b, a) : t.mul(a, b); }

/// Exhaustive search over all injective maps S -> T.
inline bool embedding_exists(const FiniteSemigroup& s, const FiniteSemigroup& t, bool dual, bool monoid) {
  const std::size_t n = s.size(), m = t.size();
  if (n > m) return false;
  if (monoid && (!s.is_monoid() || !t.is_monoid())) return false;
  std::vector<Elem> img(n);
  std::vector<bool> used(m, false);
  auto check = [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (img[s.mul(a, b)] != dual_mul(t, dual, img[a], img[b])) return false;
    return !monoid || img[*s.identity()] == *t.identity();
  };
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return check();
    for (Elem v = 0; v < m; ++v) {
      if (used[v]) continue;
      used[v] = true;
      img[i] = v;
      if (self(self, i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Semigroup generated by random transformations, or nothing when it exceeds `max_size`.
inline std::optional<FiniteSemigroup> random_transformation_semigroup(std::mt19937_64& rng, std::size_t points,
                                                                      std::size_t gens, std::size_t max_size) {
  std::vector<Endomap> g;
  for (std::size_t i = 0; i < gens; ++i) g.push_back(random_endomap(rng, points));
  try {
    auto r = close_under_product(
        g, [](const Endomap& a, const Endomap& b) { return compose_maps(b, a); }, ClosureBudget{max_size, 1u << 20});
    return r.semigroup;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

inline bool isomorphic(const FiniteSemigroup& a, const FiniteSemigroup& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  do {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y) ok = perm[a.mul(x, y)] == b.mul(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::size_t monogenic_index_period_sum(const FiniteSemigroup& s, Elem a) {
  std::vector<Elem> powers{a};
  while (true) {
    const Elem next = s.mul(powers.back(), a);
    auto it = std::find(powers.begin(), powers.end(), next);
    if (it != powers.end()) return powers.size();
    powers.push_back(next);
  }
}

/// Every F_p-linear combination of `vs`, as a set.
inline std::set<Vector> span(Scalar p, std::size_t n, const std::vector<Vector>& vs) {
  std::set<Vector> out{Vector(n, 0)};
  for (const Vector& v : vs) {
    std::set<Vector> next;
    for (const Vector& w : out)
      for (Scalar c = 0; c < p; ++c) {
        Vector u = w;
        for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] + c * v[i]) % p;
        next.insert(u);
      }
    out = std::move(next);
  }
  return out;
}

inline std::set<Vector> as_set(const Subspace& s) {
  const auto e = s.elements();
  return std::set<Vector>(e.begin(), e.end());
}

inline Vector random_vector(std::mt19937_64& rng, Scalar p, std::size_t n) {
  std::uniform_int_distribution<Scalar> d(0, p - 1);
  Vector v(n);
  for (auto& c : v) c = d(rng);
  return v;
}

/// v = t u for some t.
inline bool left_divides(const FiniteMonoid& m, Elem u, Elem v) {
  for (Elem t = 0; t < m.size(); ++t)
    if (m.mul(t, u) == v) return true;
  return false;
}

}  // namespace oracle
