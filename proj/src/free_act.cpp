#include "dualemb/free_act.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dualemb/indep.hpp"
#include "dualemb/kernels.hpp"

namespace dualemb {

FiniteMonoid::FiniteMonoid(FiniteSemigroup s) : s_(std::move(s)) {
  if (!s_.is_monoid()) throw std::invalid_argument("FiniteMonoid: semigroup '" + s_.name() + "' has no identity");
}

std::string ActEndoPair::to_string() const {
  std::string s = "(" + alpha.to_string() + ",[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + "])";
}

namespace {

void check_pair(const FiniteMonoid& m, const ActEndoPair& a, std::size_t omega) {
  if (a.alpha.size() != omega || a.x.size() != omega)
    throw std::invalid_argument("ActEndoPair: expected " + std::to_string(omega) + " points");
  for (Elem t : a.x)
    if (t >= m.size()) throw std::invalid_argument("ActEndoPair: monoid element out of range");
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("size does not fit in 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

ActEndoPair e_identity(const FiniteMonoid& m, std::size_t omega) {
  return {Endomap::identity(omega), std::vector<Elem>(omega, m.one())};
}

ActEndoPair e_product(const FiniteMonoid& m, const ActEndoPair& a, const ActEndoPair& b) {
  const std::size_t omega = a.alpha.size();
  check_pair(m, a, omega);
  check_pair(m, b, omega);
  ActEndoPair r{compose_maps(b.alpha, a.alpha), std::vector<Elem>(omega)};
  for (Point p = 0; p < omega; ++p) r.x[p] = m.mul(b.x[p], a.x[b.alpha(p)]);
  return r;
}

std::uint64_t e_size(const FiniteMonoid& m, std::size_t omega) {
  const std::uint64_t maps = endomap_count(omega);
  const std::uint64_t xs = checked_pow(m.size(), omega);
  if (xs != 0 && maps > std::numeric_limits<std::uint64_t>::max() / xs)
    throw std::overflow_error("e_size: does not fit in 64 bits");
  return maps * xs;
}

std::uint64_t e_index(const FiniteMonoid& m, const ActEndoPair& a) {
  check_pair(m, a, a.alpha.size());
  std::uint64_t digits = 0;
  for (Elem t : a.x) digits = digits * m.size() + t;
  return endomap_rank(a.alpha) * checked_pow(m.size(), a.x.size()) + digits;
}

ActEndoPair e_unindex(const FiniteMonoid& m, std::size_t omega, std::uint64_t index) {
  if (index >= e_size(m, omega)) throw std::out_of_range("e_unindex: index out of range");
  const std::uint64_t xs = checked_pow(m.size(), omega);
  ActEndoPair a{endomap_unrank(omega, index / xs), std::vector<Elem>(omega)};
  std::uint64_t digits = index % xs;
  for (std::size_t p = omega; p-- > 0;) {
    a.x[p] = static_cast<Elem>(digits % m.size());
    digits /= m.size();
  }
  return a;
}

FiniteSemigroup e_monoid(const FiniteMonoid& m, std::size_t omega) {
  const std::uint64_t size = e_size(m, omega);
  if (size > kMaxSemigroupSize) throw BudgetExceeded("e_monoid: more than 65535 elements");
  const std::size_t n = static_cast<std::size_t>(size);
  std::vector<ActEndoPair> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back(e_unindex(m, omega, i));
  std::vector<Elem> table(n * n);
  const std::int64_t rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a) * n + b] =
          static_cast<Elem>(e_index(m, e_product(m, elems[static_cast<std::size_t>(a)], elems[b])));
  return FiniteSemigroup(n, std::move(table), static_cast<Elem>(e_index(m, e_identity(m, omega))), {}, {},
                         "E(" + m.name() + "," + std::to_string(omega) + ")");
}

Endomap pair_to_endo(const FiniteMonoid& m, const ActEndoPair& a) {
  const std::size_t omega = a.alpha.size();
  check_pair(m, a, omega);
  std::vector<Point> im(m.size() * omega);
  for (std::size_t t = 0; t < m.size(); ++t)
    for (Point p = 0; p < omega; ++p)
      im[act_point(omega, static_cast<Elem>(t), p)] =
          static_cast<Point>(act_point(omega, m.mul(static_cast<Elem>(t), a.x[p]), a.alpha(p)));
  const std::size_t points = im.size();
  return Endomap(points, std::move(im));
}

bool is_equivariant(const FiniteMonoid& m, std::size_t omega, const Endomap& f) {
  if (f.size() != m.size() * omega) return false;
  for (std::size_t s = 0; s < m.size(); ++s)
    for (std::size_t e = 0; e < f.size(); ++e) {
      const Elem t = static_cast<Elem>(e / omega);
      const Point p = static_cast<Point>(e % omega);
      const std::size_t moved = act_point(omega, m.mul(static_cast<Elem>(s), t), p);
      const Point fe = f(static_cast<Point>(e));
      const std::size_t acted = act_point(omega, m.mul(static_cast<Elem>(s), static_cast<Elem>(fe / omega)), fe % omega);
      if (f(static_cast<Point>(moved)) != acted) return false;
    }
  return true;
}

ActEndoPair endo_to_pair(const FiniteMonoid& m, std::size_t omega, const Endomap& f) {
  if (!is_equivariant(m, omega, f)) throw std::invalid_argument("endo_to_pair: map is not an act endomorphism");
  ActEndoPair a{Endomap::identity(omega), std::vector<Elem>(omega)};
  std::vector<Point> alpha(omega);
  for (Point p = 0; p < omega; ++p) {
    const Point img = f(static_cast<Point>(act_point(omega, m.one(), p)));
    a.x[p] = static_cast<Elem>(img / omega);
    alpha[p] = static_cast<Point>(img % omega);
  }
  a.alpha = Endomap(omega, std::move(alpha));
  return a;
}

EmbeddingWitness mop_embedding_witness(const FiniteMonoid& m, std::size_t omega) {
  if (omega == 0) throw std::invalid_argument("mop_embedding_witness: need at least one point");
  EmbeddingWitness w;
  w.source_ref = m.name();
  w.target_ref = "E(" + m.name() + "," + std::to_string(omega) + ")";
  w.mode = EmbedMode::monoid;
  w.dual_target = true;
  for (std::size_t t = 0; t < m.size(); ++t)
    w.map.push_back(e_index(m, {Endomap::identity(omega), std::vector<Elem>(omega, static_cast<Elem>(t))}));
  return w;
}

// ---------------------------------------------------------------- eta

EtaEmbedding::EtaEmbedding(const FiniteMonoid& m, std::size_t n) : m_(&m), n_(n) {
  if (n == 0 || n > 3) throw std::invalid_argument("EtaEmbedding: n must be 1, 2 or 3");
  const FiniteSemigroup rel = named_monoid(MonoidKind::rel, n);
  if (!(m.semigroup() == rel)) throw std::invalid_argument("EtaEmbedding: monoid is not Rel(" + std::to_string(n) + ")");
}

BinRel EtaEmbedding::barred(Elem relation) const {
  const BinRel r = binrel_unrank(n_, relation);
  BinRel out(n_ + 1);
  for (Point a = 0; a < n_; ++a)
    for (Point b = 0; b < n_; ++b)
      if (r.test(a, b)) out.set(a, b);
  out.set(static_cast<Point>(n_), static_cast<Point>(n_));
  return out;
}

BinRel EtaEmbedding::operator()(const ActEndoPair& a) const {
  check_pair(*m_, a, n_);
  const std::size_t w = n_ + 1;
  BinRel out(points());
  for (Point p0 = 0; p0 < n_; ++p0) {
    const BinRel xb = barred(a.x[p0]);
    const Point p1 = a.alpha(p0);
    for (Point q0 = 0; q0 < w; ++q0)
      for (Point q1 = 0; q1 < w; ++q1)
        if (xb.test(q1, q0)) out.set(static_cast<Point>(p0 * w + q0), static_cast<Point>(p1 * w + q1));
  }
  return out;
}

BinRel EtaEmbedding::via_endomorphism(const ActEndoPair& a) const {
  const Endomap f = pair_to_endo(*m_, a);
  const std::size_t w = n_ + 1;
  BinRel out(points());
  for (Point p0 = 0; p0 < n_; ++p0) {
    const Point img = f(static_cast<Point>(act_point(n_, m_->one(), p0)));
    const BinRel xb = barred(static_cast<Elem>(img / n_));
    const Point p1 = static_cast<Point>(img % n_);
    for (Point q0 = 0; q0 < w; ++q0)
      for (Point q1 = 0; q1 < w; ++q1)
        if (xb.test(q1, q0)) out.set(static_cast<Point>(p0 * w + q0), static_cast<Point>(p1 * w + q1));
  }
  return out;
}

// ---------------------------------------------------------------- divisibility

std::vector<bool> left_divisibility(const FiniteMonoid& m) {
  const std::size_t n = m.size();
  std::vector<bool> div(n * n, false);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t t = 0; t < n; ++t) div[u * n + m.mul(static_cast<Elem>(t), static_cast<Elem>(u))] = true;
  return div;
}

bool is_left_uniserial(const FiniteMonoid& m) {
  const std::size_t n = m.size();
  const auto div = left_divisibility(m);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!div[u * n + v] && !div[v * n + u]) return false;
  return true;
}

bool is_group(const FiniteMonoid& m) {
  // Finite monoid: a group iff every element has a left inverse.
  for (std::size_t u = 0; u < m.size(); ++u) {
    bool inv = false;
    for (std::size_t t = 0; t < m.size() && !inv; ++t) inv = m.mul(static_cast<Elem>(t), static_cast<Elem>(u)) == m.one();
    if (!inv) return false;
  }
  return true;
}

Antichain max_antichain(const FiniteMonoid& m) {
  const std::size_t n = m.size();
  if (n > 16) throw std::invalid_argument("max_antichain: at most 16 elements");
  const auto div = left_divisibility(m);
  std::vector<std::uint32_t> comparable(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && (div[u * n + v] || div[v * n + u])) comparable[u] |= 1U << v;
  Antichain best;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const std::size_t k = static_cast<std::size_t>(std::popcount(mask));
    if (k <= best.size) continue;
    bool ok = true;
    for (std::uint32_t r = mask; r && ok; r &= r - 1) ok = (comparable[std::countr_zero(r)] & mask) == 0;
    if (ok) {
      best.size = k;
      best_mask = mask;
    }
  }
  for (std::uint32_t r = best_mask; r; r &= r - 1) best.witness.push_back(static_cast<Elem>(std::countr_zero(r)));
  return best;
}

// ---------------------------------------------------------------- small monoids

std::vector<FiniteMonoid> enumerate_monoids(std::size_t order) {
  if (order == 0 || order > 4) throw std::invalid_argument("enumerate_monoids: order must be 1..4");
  const std::size_t k = order;
  const std::size_t free_cells = (k - 1) * (k - 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free_cells; ++i) total *= k;

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin() + 1, perm.end()));

  std::set<std::vector<Elem>> classes;
  std::vector<Elem> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    table[i] = static_cast<Elem>(i);
    table[i * k] = static_cast<Elem>(i);
  }
  std::vector<Elem> image(k * k);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t a = 1; a < k; ++a)
      for (std::size_t b = 1; b < k; ++b) {
        table[a * k + b] = static_cast<Elem>(c % k);
        c /= k;
      }
    if (kernels::associativity_violations_serial(table, k) != 0) continue;
    std::vector<Elem> least;
    for (const auto& pi : perms) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) image[pi[a] * k + pi[b]] = static_cast<Elem>(pi[table[a * k + b]]);
      if (least.empty() || image < least) least = image;
    }
    classes.insert(least);
  }

  std::vector<FiniteMonoid> out;
  std::size_t idx = 0;
  for (const auto& t : classes)
    out.emplace_back(FiniteSemigroup(k, t, Elem{0}, {}, {}, "M" + std::to_string(k) + "_" + std::to_string(idx++)));
  return out;
}

FiniteMonoid two_null_monoid() {
  // 0 = 1, 1 = a, 2 = b, 3 = zero
  std::vector<Elem> t(16, 3);
  for (Elem i = 0; i < 4; ++i) {
    t[i] = i;
    t[i * 4] = i;
  }
  return FiniteMonoid(FiniteSemigroup(4, t, Elem{0}, {"1", "a", "b", "0"}, {}, "two_null"));
}

FiniteMonoid two_element_semilattice() {
  return FiniteMonoid(FiniteSemigroup(2, {0, 1, 1, 1}, Elem{0}, {"1", "a"}, {}, "semilattice2"));
}

FiniteMonoid cyclic_group(std::size_t k) {
  if (k == 0) throw std::invalid_argument("cyclic_group: order must be positive");
  std::vector<Elem> t(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t[a * k + b] = static_cast<Elem>((a + b) % k);
  return FiniteMonoid(FiniteSemigroup(k, std::move(t), Elem{0}, {}, {}, "Z" + std::to_string(k)));
}

// ---------------------------------------------------------------- classification

FreeActClassification classify_free_act(const FiniteMonoid& m, std::size_t omega) {
  if (omega == 0) throw std::invalid_argument("classify_free_act: need at least one point");
  if (m.size() * omega > 16) throw BudgetExceeded("classify_free_act: carrier larger than 16 points");

  const FreeActAlgebra act(m, omega);
  FreeActClassification r;
  r.monoid = m.name();
  r.order = m.size();
  r.omega = omega;

  Subset basis = 0;
  for (Point p = 0; p < omega; ++p) basis |= Subset{1} << act_point(omega, m.one(), p);
  const IndependenceReport rep = independence_report(act, basis);
  if (rep.s.skipped()) throw BudgetExceeded("classify_free_act: S-check over budget");
  r.omega_is_s_basis = rep.s.holds() && act.closure(basis) == act.everything();

  const MaxIndependent mc = max_c_independent(act);
  r.max_c_independent = mc.size;

  // An S-basis is non-degenerate here, so it is C-independent and has at
  // most mc.size elements; SC-ranked means one of exactly that size exists.
  const Subset all = act.everything();
  for (Subset b = 0; b <= all && !r.sc_ranked_direct; ++b) {
    if (static_cast<std::size_t>(std::popcount(b)) != mc.size) continue;
    if (act.closure(b) != all || !is_c_independent(act, b)) continue;
    const IndependenceReport rb = independence_report(act, b);
    if (rb.s.skipped()) throw BudgetExceeded("classify_free_act: S-check over budget");
    r.sc_ranked_direct = rb.s.holds();
    if (b == all) break;
  }

  r.matroid_direct = matroid_check(act).matroid();

  r.left_uniserial = is_left_uniserial(m);
  r.group = is_group(m);
  r.max_antichain = max_antichain(m).size;
  r.sc_ranked_criterion = r.left_uniserial;
  r.matroid_criterion = r.group;

  // C-independent iff every fibre Y p^-1 is a left antichain.
  const auto div = left_divisibility(m);
  const std::size_t n = m.size();
  const auto antichain_fibres = [&](Subset y) {
    for (Point p = 0; p < omega; ++p)
      for (std::size_t u = 0; u < n; ++u) {
        if (!((y >> act_point(omega, static_cast<Elem>(u), p)) & 1U)) continue;
        for (std::size_t v = 0; v < n; ++v)
          if (v != u && ((y >> act_point(omega, static_cast<Elem>(v), p)) & 1U) && div[u * n + v]) return false;
      }
    return true;
  };
  std::uint64_t failures = 0;
  kernels::failing_indices(
      static_cast<std::size_t>(all) + 1,
      [&](std::size_t y) { return is_c_independent(act, y) == antichain_fibres(y); }, 1, &failures);
  r.c_indep_characterization_ok = failures == 0;
  return r;
}

}  // namespace dualemb
