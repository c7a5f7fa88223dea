#pragma once

// C-, S- and M-independence, degeneracy, the matroid exchange conditions and
// SC-rank over small finite algebras given by a closure oracle and a
// homomorphism-extension oracle.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualemb/free_act.hpp"

namespace dualemb {

/// Subsets of the carrier, bit i = element i; carriers have at most 64 elements.
using Subset = std::uint64_t;

inline constexpr std::size_t kMaxCarrier = 64;

/// Partial map I -> A as (element, image) pairs with distinct elements.
using PartialAssignment = std::vector<std::pair<std::size_t, std::size_t>>;

class AlgebraHandle {
 public:
  virtual ~AlgebraHandle() = default;
  virtual std::size_t size() const = 0;
  /// The subuniverse generated by `x`.
  virtual Subset closure(Subset x) const = 0;
  /// Whether the assignment extends to a homomorphism from the subuniverse
  /// generated by its domain into the algebra.
  virtual bool extends(const PartialAssignment& f) const = 0;
  virtual std::string describe() const = 0;
  virtual std::string element_label(std::size_t e) const { return std::to_string(e); }

  Subset everything() const { return size() == 64 ? ~Subset{0} : (Subset{1} << size()) - 1; }
};

/// F_M(Omega) with carrier index t * omega + p; the empty set is a subuniverse.
class FreeActAlgebra final : public AlgebraHandle {
 public:
  FreeActAlgebra(FiniteMonoid m, std::size_t omega);
  std::size_t size() const override { return m_.size() * omega_; }
  Subset closure(Subset x) const override;
  bool extends(const PartialAssignment& f) const override;
  std::string describe() const override;
  std::string element_label(std::size_t e) const override;

  const FiniteMonoid& monoid() const { return m_; }
  std::size_t omega() const { return omega_; }
  std::size_t act(Elem s, std::size_t e) const;  // s . (t, p) = (s t, p)

 private:
  FiniteMonoid m_;
  std::size_t omega_;
};

/// F_p^n with vectors indexed lexicographically in base p (first coordinate
/// most significant); the subuniverse generated by nothing is {0}.
class VectorSpaceAlgebra final : public AlgebraHandle {
 public:
  VectorSpaceAlgebra(std::uint32_t p, std::size_t n);
  std::size_t size() const override { return size_; }
  Subset closure(Subset x) const override;
  bool extends(const PartialAssignment& f) const override;
  std::string describe() const override;
  std::string element_label(std::size_t e) const override;

  std::uint32_t p() const { return p_; }
  std::size_t dimension() const { return n_; }
  std::vector<std::uint32_t> vector(std::size_t e) const;
  std::size_t index(const std::vector<std::uint32_t>& v) const;

 private:
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t scale(std::uint32_t c, std::size_t a) const;

  std::uint32_t p_;
  std::size_t n_;
  std::size_t size_;
};

inline std::vector<std::size_t> subset_elements(Subset s) {
  std::vector<std::size_t> out;
  for (; s; s &= s - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
  return out;
}

bool is_c_independent(const AlgebraHandle& a, Subset i);

struct IndependenceFlag {
  std::optional<bool> value;  // empty = skipped for budget
  std::optional<std::size_t> element;  // C-failure: element inside the closure of the others
  PartialAssignment map;                // S/M-failure: a non-extendable map
  bool holds() const { return value.value_or(false); }
  bool skipped() const { return !value.has_value(); }
};

struct IndependenceReport {
  Subset subset = 0;
  bool non_degenerate = true;
  std::optional<std::size_t> degenerate_element;
  IndependenceFlag c, s, m;
};

/// The S- and M-checks enumerate |I|^|I| and |A|^|I| maps; a flag whose
/// count exceeds `map_budget` is left skipped.
IndependenceReport independence_report(const AlgebraHandle& a, Subset i, std::uint64_t map_budget = 1'000'000);

struct MatroidViolation {
  Subset x = 0;
  std::size_t u = 0;
  std::size_t v = 0;  // unused by condition (2)
  Subset y = 0;       // conditions (3) and (4)
};

struct ConditionResult {
  std::optional<bool> holds;  // empty = not checked
  std::uint64_t violations = 0;
  std::optional<MatroidViolation> witness;
};

struct MatroidReport {
  ConditionResult exchange;             // (1)
  ConditionResult independent_growth;   // (2)
  ConditionResult maximal_generates;    // (3)
  ConditionResult extension_to_basis;   // (4)
  bool matroid() const { return exchange.holds.value_or(false); }
  bool consistent() const;  // every checked condition gives the same answer
};

/// Exhaustive over all subsets, |A| <= 16; conditions (3), (4) only when
/// requested and |A| <= 10.
MatroidReport matroid_check(const AlgebraHandle& a, bool small_conditions = false);
MatroidReport matroid_check_serial(const AlgebraHandle& a, bool small_conditions = false);

struct LatticeEmbedding {
  std::vector<std::size_t> index;  // the elements of I in ascending order
  std::vector<Subset> phi;         // phi[X] for X a mask over `index`
  bool join_ok = true;
  bool meet_ok = true;
  bool injective = true;
  std::optional<std::pair<Subset, Subset>> failure;  // a violating pair of index masks
  bool verified() const { return join_ok && meet_ok && injective; }
};

/// phi(X) = <X> for nonempty X, phi(empty) = the meet of the <p> when |I| >= 2
/// and <empty> otherwise; throws std::invalid_argument when I is degenerate
/// or not S-independent. |I| <= 10.
LatticeEmbedding fin_lattice_embedding(const AlgebraHandle& a, Subset i);

/// One element per index: the least of phi({i}) minus phi(empty). `phi` has
/// 2^k entries. Throws std::invalid_argument (naming the index) when phi is
/// not a meet-embedding or a difference is empty.
std::vector<std::size_t> extract_c_independent(const AlgebraHandle& a, const std::vector<Subset>& phi);

struct MaxIndependent {
  std::size_t size = 0;
  Subset witness = 0;
};

/// Exact branch and bound, |A| <= 20.
MaxIndependent max_c_independent(const AlgebraHandle& a);

struct ScRankReport {
  bool generating = false;
  bool s_independent = false;
  bool is_s_basis = false;
  MaxIndependent max_c;
  bool sc_ranked = false;
};

ScRankReport sc_rank_report(const AlgebraHandle& a, Subset basis_candidate);

}  // namespace dualemb
