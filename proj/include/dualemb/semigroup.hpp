#pragma once

// Finite semigroups as dense Cayley tables: construction by closure, the
// named transformation/relation families, duals and element invariants.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dualemb/maps.hpp"

namespace dualemb {

using Elem = std::uint16_t;

inline constexpr std::size_t kMaxSemigroupSize = 65535;

/// Thrown when a construction would exceed its configured size or step budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosureBudget {
  std::size_t max_size = 4096;
  std::uint64_t max_steps = std::uint64_t{1} << 28;
};

class FiniteSemigroup {
 public:
  FiniteSemigroup() = default;

  /// Validates bounds, associativity (all triples up to 512 elements, 10^6
  /// sampled triples above) and, when given, two-sided neutrality of `identity`.
  FiniteSemigroup(std::size_t size, std::vector<Elem> table, std::optional<Elem> identity = std::nullopt,
                  std::vector<std::string> labels = {}, std::vector<Elem> generators = {}, std::string name = {});

  /// Like the constructor, but looks the identity up in the table.
  static FiniteSemigroup with_detected_identity(std::size_t size, std::vector<Elem> table,
                                                std::vector<std::string> labels = {},
                                                std::vector<Elem> generators = {}, std::string name = {});

  std::size_t size() const { return size_; }
  Elem mul(Elem a, Elem b) const { return table_[std::size_t{a} * size_ + b]; }
  std::span<const Elem> table() const { return table_; }
  std::span<const Elem> row(Elem a) const { return std::span<const Elem>(table_).subspan(std::size_t{a} * size_, size_); }

  std::optional<Elem> identity() const { return identity_; }
  bool is_monoid() const { return identity_.has_value(); }

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const;
  const std::vector<Elem>& generators() const { return generators_; }
  const std::string& name() const { return name_; }

  FiniteSemigroup renamed(std::string name) const;
  FiniteSemigroup with_generators(std::vector<Elem> generators) const;

  bool operator==(const FiniteSemigroup& o) const {
    return size_ == o.size_ && table_ == o.table_ && identity_ == o.identity_;
  }

  static std::optional<Elem> find_identity(std::size_t size, std::span<const Elem> table);

 private:
  struct Trusted {};
  FiniteSemigroup(Trusted, std::size_t size, std::vector<Elem> table, std::optional<Elem> identity,
                  std::vector<std::string> labels, std::vector<Elem> generators, std::string name);

  friend FiniteSemigroup dual(const FiniteSemigroup& s);

  std::size_t size_ = 0;
  std::vector<Elem> table_;
  std::optional<Elem> identity_;
  std::vector<std::string> labels_;
  std::vector<Elem> generators_;
  std::string name_;
};

/// Result of a closure: the table plus the concrete element behind each index.
template <class T>
struct Generated {
  FiniteSemigroup semigroup;
  std::vector<T> elements;
};

/// Tabulates `product(a, b)` (meaning a*b) over a fixed element list.
template <class T, class Product, class Hash = std::hash<T>>
FiniteSemigroup tabulate(const std::vector<T>& elements, Product product, std::vector<Elem> generators = {},
                         std::string name = {}) {
  const std::size_t n = elements.size();
  if (n > kMaxSemigroupSize) throw BudgetExceeded("tabulate: more than 65535 elements");
  std::unordered_map<T, Elem, Hash> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements[i], static_cast<Elem>(i));
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(product(elements[a], elements[b]));
      if (it == index.end()) throw std::invalid_argument("tabulate: element list not closed under the product");
      table[a * n + b] = it->second;
    }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elements) labels.push_back(e.to_string());
  return FiniteSemigroup::with_detected_identity(n, std::move(table), std::move(labels), std::move(generators),
                                                 std::move(name));
}

/// Semigroup generated by `generators`; element order is breadth-first
/// discovery order (generators first, then right multiples by generators).
template <class T, class Product, class Hash = std::hash<T>>
Generated<T> close_under_product(const std::vector<T>& generators, Product product, ClosureBudget budget = {},
                                 std::string name = {}) {
  std::vector<T> elements;
  std::unordered_map<T, Elem, Hash> index;
  std::vector<Elem> gen_index;
  const std::size_t cap = std::min(budget.max_size, kMaxSemigroupSize);
  auto intern = [&](const T& e) -> Elem {
    auto it = index.find(e);
    if (it != index.end()) return it->second;
    if (elements.size() >= cap) throw BudgetExceeded("close_under_product: closure exceeds size budget");
    const Elem id = static_cast<Elem>(elements.size());
    index.emplace(e, id);
    elements.push_back(e);
    return id;
  };
  for (const auto& g : generators) {
    const Elem id = intern(g);
    if (std::find(gen_index.begin(), gen_index.end(), id) == gen_index.end()) gen_index.push_back(id);
  }
  std::uint64_t steps = 0;
  for (std::size_t cursor = 0; cursor < elements.size(); ++cursor)
    for (Elem g : gen_index) {
      if (++steps > budget.max_steps) throw BudgetExceeded("close_under_product: step budget exhausted");
      T next = product(elements[cursor], elements[g]);
      intern(next);
    }
  FiniteSemigroup s = tabulate<T, Product, Hash>(elements, product, gen_index, std::move(name));
  return {std::move(s), std::move(elements)};
}

enum class MonoidKind { full, partial, rel, self_le2, self_2, sym };

MonoidKind parse_monoid_kind(const std::string& s);
std::string to_string(MonoidKind k);

/// Canonical element order: lexicographic image sequences for the map
/// families (undefined sorts last for partial maps), bitmask rank for rel.
/// Products are composition with the right factor applied first.
FiniteSemigroup named_monoid(MonoidKind kind, std::size_t n, ClosureBudget budget = {});

/// Concrete elements of a named family, in the same canonical order.
std::vector<Endomap> named_endomaps(MonoidKind kind, std::size_t n);

FiniteSemigroup dual(const FiniteSemigroup& s);

struct MonogenicSignature {
  std::size_t index = 1;
  std::size_t period = 1;
  bool operator==(const MonogenicSignature&) const = default;
};

struct ElementSignature {
  bool idempotent = false;
  MonogenicSignature monogenic;
  std::size_t left_multiples = 0;   // |S a|
  std::size_t right_multiples = 0;  // |a S|
};

MonogenicSignature monogenic_signature(const FiniteSemigroup& s, Elem a);
std::vector<ElementSignature> element_signatures(const FiniteSemigroup& s);

/// a = x1 b = b x2 and b = y1 a = a y2 for some x1, x2, y1, y2 in S.
bool div_equivalent(const FiniteSemigroup& s, Elem a, Elem b);

/// Membership mask of the subsemigroup generated by `gens`.
std::vector<bool> generated_subsemigroup(const FiniteSemigroup& s, std::span<const Elem> gens);

/// Scans elements in index order and keeps those not generated by the ones kept so far.
std::vector<Elem> greedy_generators(const FiniteSemigroup& s);

}  // namespace dualemb
