#include "dualemb/semigroup.hpp"

#include <numeric>

#include "dualemb/kernels.hpp"

namespace dualemb {

namespace {

constexpr std::size_t kExhaustiveAssociativityLimit = 512;
constexpr std::uint64_t kSampledTriples = 1'000'000;
constexpr std::uint64_t kSampleSeed = 0x5e1f5e1fULL;

void validate_table(std::size_t size, std::span<const Elem> table) {
  if (size == 0) throw std::invalid_argument("FiniteSemigroup: a semigroup needs at least one element");
  if (size > kMaxSemigroupSize) throw std::invalid_argument("FiniteSemigroup: more than 65535 elements");
  if (table.size() != size * size) throw std::invalid_argument("FiniteSemigroup: table is not size x size");
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= size)
      throw std::invalid_argument("FiniteSemigroup: table entry (" + std::to_string(i / size) + "," +
                                  std::to_string(i % size) + ") out of range");
  if (size <= kExhaustiveAssociativityLimit) {
    if (kernels::associativity_violations(table, size) != 0) {
      const auto t = *kernels::first_associativity_violation(table, size);
      throw std::invalid_argument("FiniteSemigroup: not associative at (" + std::to_string(t.a) + "," +
                                  std::to_string(t.b) + "," + std::to_string(t.c) + ")");
    }
  } else if (kernels::sampled_associativity_violations(table, size, kSampledTriples, kSampleSeed) != 0) {
    throw std::invalid_argument("FiniteSemigroup: not associative (sampled triple)");
  }
}

bool is_identity(std::size_t size, std::span<const Elem> table, std::size_t e) {
  for (std::size_t x = 0; x < size; ++x)
    if (table[e * size + x] != x || table[x * size + e] != x) return false;
  return true;
}

}  // namespace

FiniteSemigroup::FiniteSemigroup(std::size_t size, std::vector<Elem> table, std::optional<Elem> identity,
                                 std::vector<std::string> labels, std::vector<Elem> generators, std::string name)
    : size_(size),
      table_(std::move(table)),
      identity_(identity),
      labels_(std::move(labels)),
      generators_(std::move(generators)),
      name_(std::move(name)) {
  validate_table(size_, table_);
  if (identity_ && (*identity_ >= size_ || !is_identity(size_, table_, *identity_)))
    throw std::invalid_argument("FiniteSemigroup: declared identity is not two-sided neutral");
  if (!labels_.empty() && labels_.size() != size_)
    throw std::invalid_argument("FiniteSemigroup: label count differs from size");
  for (Elem g : generators_)
    if (g >= size_) throw std::invalid_argument("FiniteSemigroup: generator index out of range");
}

FiniteSemigroup::FiniteSemigroup(Trusted, std::size_t size, std::vector<Elem> table, std::optional<Elem> identity,
                                 std::vector<std::string> labels, std::vector<Elem> generators, std::string name)
    : size_(size),
      table_(std::move(table)),
      identity_(identity),
      labels_(std::move(labels)),
      generators_(std::move(generators)),
      name_(std::move(name)) {}

FiniteSemigroup FiniteSemigroup::with_detected_identity(std::size_t size, std::vector<Elem> table,
                                                        std::vector<std::string> labels, std::vector<Elem> generators,
                                                        std::string name) {
  auto id = find_identity(size, table);
  return FiniteSemigroup(size, std::move(table), id, std::move(labels), std::move(generators), std::move(name));
}

std::optional<Elem> FiniteSemigroup::find_identity(std::size_t size, std::span<const Elem> table) {
  for (std::size_t e = 0; e < size; ++e)
    if (is_identity(size, table, e)) return static_cast<Elem>(e);
  return std::nullopt;
}

std::string FiniteSemigroup::label(Elem a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

FiniteSemigroup FiniteSemigroup::renamed(std::string name) const {
  FiniteSemigroup copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

FiniteSemigroup FiniteSemigroup::with_generators(std::vector<Elem> generators) const {
  for (Elem g : generators)
    if (g >= size_) throw std::invalid_argument("FiniteSemigroup: generator index out of range");
  FiniteSemigroup copy = *this;
  copy.generators_ = std::move(generators);
  return copy;
}

// ---------------------------------------------------------------- named families

MonoidKind parse_monoid_kind(const std::string& s) {
  if (s == "full" || s == "self") return MonoidKind::full;
  if (s == "partial" || s == "pself") return MonoidKind::partial;
  if (s == "rel") return MonoidKind::rel;
  if (s == "self_le2") return MonoidKind::self_le2;
  if (s == "self_2") return MonoidKind::self_2;
  if (s == "sym") return MonoidKind::sym;
  throw std::invalid_argument("unknown monoid kind '" + s + "'");
}

std::string to_string(MonoidKind k) {
  switch (k) {
    case MonoidKind::full: return "full";
    case MonoidKind::partial: return "partial";
    case MonoidKind::rel: return "rel";
    case MonoidKind::self_le2: return "self_le2";
    case MonoidKind::self_2: return "self_2";
    case MonoidKind::sym: return "sym";
  }
  return "?";
}

std::vector<Endomap> named_endomaps(MonoidKind kind, std::size_t n) {
  if (kind == MonoidKind::partial || kind == MonoidKind::rel)
    throw std::invalid_argument("named_endomaps: family is not made of total maps");
  const std::uint64_t total = endomap_count(n);
  if (total > kMaxSemigroupSize * 64ULL) throw BudgetExceeded("named_endomaps: family too large to enumerate");
  std::vector<Endomap> out;
  for (std::uint64_t k = 0; k < total; ++k) {
    Endomap f = endomap_unrank(n, k);
    const std::size_t r = f.rank();
    const bool keep = kind == MonoidKind::full || (kind == MonoidKind::self_le2 && r <= 2) ||
                      (kind == MonoidKind::self_2 && r == 2) || (kind == MonoidKind::sym && r == n);
    if (keep) out.push_back(std::move(f));
  }
  return out;
}

namespace {

void check_size(std::uint64_t count, const ClosureBudget& budget, const std::string& what) {
  if (count > std::min<std::uint64_t>(budget.max_size, kMaxSemigroupSize))
    throw BudgetExceeded(what + ": " + std::to_string(count) + " elements exceed the size budget");
}

}  // namespace

FiniteSemigroup named_monoid(MonoidKind kind, std::size_t n, ClosureBudget budget) {
  const std::string name = to_string(kind) + ":" + std::to_string(n);
  switch (kind) {
    case MonoidKind::partial: {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < n; ++i) {
        count *= (n + 1);
        check_size(count, budget, name);
      }
      std::vector<PartialMap> elems;
      elems.reserve(count);
      for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<Point> im(n);
        std::uint64_t r = k;
        for (std::size_t i = n; i-- > 0;) {
          im[i] = static_cast<Point>(r % (n + 1));
          r /= (n + 1);
        }
        elems.emplace_back(n, std::move(im));
      }
      return tabulate<PartialMap>(
          elems, [](const PartialMap& a, const PartialMap& b) { return compose_partial(b, a); }, {}, name);
    }
    case MonoidKind::rel: {
      if (n * n >= 64) throw BudgetExceeded(name + ": too large");
      const std::uint64_t count = std::uint64_t{1} << (n * n);
      check_size(count, budget, name);
      std::vector<BinRel> elems;
      elems.reserve(count);
      for (std::uint64_t k = 0; k < count; ++k) elems.push_back(binrel_unrank(n, k));
      return tabulate(elems, [](const BinRel& a, const BinRel& b) { return compose_rel(a, b); }, {}, name);
    }
    default: {
      if (kind == MonoidKind::full) check_size(endomap_count(n), budget, name);
      if (kind == MonoidKind::self_2 && n != 2)
        throw std::invalid_argument(name + ": rank-2 maps are closed under composition only for n = 2");
      auto elems = named_endomaps(kind, n);
      check_size(elems.size(), budget, name);
      return tabulate<Endomap>(
          elems, [](const Endomap& a, const Endomap& b) { return compose_maps(b, a); }, {}, name);
    }
  }
}

FiniteSemigroup dual(const FiniteSemigroup& s) {
  const std::size_t n = s.size();
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = s.table_[b * n + a];
  std::string name = s.name_.empty() ? std::string{} : "dual(" + s.name_ + ")";
  if (s.name_.rfind("dual(", 0) == 0 && s.name_.back() == ')') name = s.name_.substr(5, s.name_.size() - 6);
  return FiniteSemigroup(FiniteSemigroup::Trusted{}, n, std::move(t), s.identity_, s.labels_, s.generators_,
                         std::move(name));
}

// ---------------------------------------------------------------- invariants

MonogenicSignature monogenic_signature(const FiniteSemigroup& s, Elem a) {
  std::unordered_map<Elem, std::size_t> first_seen;
  Elem p = a;
  for (std::size_t k = 1;; ++k) {
    auto [it, fresh] = first_seen.emplace(p, k);
    if (!fresh) return {it->second, k - it->second};
    p = s.mul(p, a);
  }
}

std::vector<ElementSignature> element_signatures(const FiniteSemigroup& s) {
  const std::size_t n = s.size();
  std::vector<ElementSignature> out(n);
  std::vector<bool> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Elem e = static_cast<Elem>(a);
    out[a].idempotent = s.mul(e, e) == e;
    out[a].monogenic = monogenic_signature(s, e);
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t t = 0; t < n; ++t) seen[s.mul(static_cast<Elem>(t), e)] = true;
    out[a].left_multiples = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t t = 0; t < n; ++t) seen[s.mul(e, static_cast<Elem>(t))] = true;
    out[a].right_multiples = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  }
  return out;
}

bool div_equivalent(const FiniteSemigroup& s, Elem a, Elem b) {
  const auto left_multiple = [&](Elem target, Elem base) {  // target in S*base
    for (std::size_t t = 0; t < s.size(); ++t)
      if (s.mul(static_cast<Elem>(t), base) == target) return true;
    return false;
  };
  const auto right_multiple = [&](Elem target, Elem base) {  // target in base*S
    for (std::size_t t = 0; t < s.size(); ++t)
      if (s.mul(base, static_cast<Elem>(t)) == target) return true;
    return false;
  };
  return left_multiple(a, b) && right_multiple(a, b) && left_multiple(b, a) && right_multiple(b, a);
}

std::vector<bool> generated_subsemigroup(const FiniteSemigroup& s, std::span<const Elem> gens) {
  std::vector<bool> in(s.size(), false);
  std::vector<Elem> list;
  for (Elem g : gens)
    if (!in[g]) {
      in[g] = true;
      list.push_back(g);
    }
  for (std::size_t cursor = 0; cursor < list.size(); ++cursor)
    for (Elem g : gens) {
      const Elem p = s.mul(list[cursor], g);
      if (!in[p]) {
        in[p] = true;
        list.push_back(p);
      }
    }
  return in;
}

std::vector<Elem> greedy_generators(const FiniteSemigroup& s) {
  std::vector<Elem> gens;
  std::vector<bool> covered(s.size(), false);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (covered[a]) continue;
    gens.push_back(static_cast<Elem>(a));
    covered = generated_subsemigroup(s, gens);
  }
  return gens;
}

}  // namespace dualemb
