#pragma once

// Deciding, witnessing and certifying (dual) embeddings between finite
// semigroups, plus the kernel/range counting certificate for embeddings of
// the rank-at-most-2 maps into a dual transformation monoid.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualemb/maps.hpp"
#include "dualemb/semigroup.hpp"

namespace dualemb {

enum class EmbedMode { semigroup, monoid };

std::string to_string(EmbedMode m);
EmbedMode parse_embed_mode(const std::string& s);

struct EmbeddingWitness {
  std::string source_ref;
  std::string target_ref;
  EmbedMode mode = EmbedMode::semigroup;
  bool dual_target = false;
  std::vector<std::uint64_t> map;  // source element -> target element index

  bool operator==(const EmbeddingWitness&) const = default;
};

/// Multiplication of a target semigroup that may be too large to tabulate.
class ProductOracle {
 public:
  virtual ~ProductOracle() = default;
  virtual bool contains(std::uint64_t a) const = 0;
  virtual std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::optional<std::uint64_t> identity() const = 0;
  virtual std::string name() const = 0;
};

class TableOracle final : public ProductOracle {
 public:
  explicit TableOracle(const FiniteSemigroup& s) : s_(&s) {}
  bool contains(std::uint64_t a) const override { return a < s_->size(); }
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const override {
    return s_->mul(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  std::optional<std::uint64_t> identity() const override;
  std::string name() const override { return s_->name(); }

 private:
  const FiniteSemigroup* s_;
};

/// Self(m) with elements addressed by endomap_rank; a*b applies b first.
class TransformationOracle final : public ProductOracle {
 public:
  explicit TransformationOracle(std::size_t m);
  bool contains(std::uint64_t a) const override;
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const override;
  std::optional<std::uint64_t> identity() const override { return identity_; }
  std::string name() const override { return "full:" + std::to_string(m_); }
  std::size_t points() const { return m_; }

 private:
  std::size_t m_;
  std::uint64_t identity_;
  bool saturated_;  // m^m does not fit in 64 bits; every index is valid
  std::uint64_t count_ = 0;
};

struct VerificationReport {
  bool injective = true;
  bool homomorphic = true;
  bool identity_preserved = true;
  std::uint64_t law_failures = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> violating_pairs;  // source pairs (a, b)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> collisions;       // distinct sources, same image
  bool passed() const { return injective && homomorphic && identity_preserved; }
};

/// Checks injectivity, w(ab) = w(a)w(b) (or w(b)w(a) for a dual target) on
/// every pair, and identity preservation in monoid mode. Throws
/// std::out_of_range when the witness has the wrong length or an image
/// outside the target.
VerificationReport verify_embedding(const FiniteSemigroup& source, const ProductOracle& target,
                                    const EmbeddingWitness& w, std::size_t max_report = 64);
VerificationReport verify_embedding_serial(const FiniteSemigroup& source, const ProductOracle& target,
                                           const EmbeddingWitness& w, std::size_t max_report = 64);

struct SearchOptions {
  EmbedMode mode = EmbedMode::semigroup;
  bool dual_target = false;
  std::uint64_t node_budget = 50'000'000;
  bool prune = true;
  int jobs = 1;
  bool deterministic = true;
  double seconds = 0;  // wall-clock limit, 0 = none
};

enum class SearchOutcome { found, none, inconclusive };
std::string to_string(SearchOutcome o);

struct ExhaustionCertificate {
  bool complete = false;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::vector<Elem> generator_order;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::inconclusive;
  std::optional<EmbeddingWitness> witness;
  ExhaustionCertificate stats;
  std::string reason;
};

/// Backtracking over generator images: generators are tried fail-first, each
/// assignment is closed under products with incremental consistency and
/// injectivity checks. A `none` outcome is only reported when the search ran
/// to completion. With `deterministic` set, the returned witness is the first
/// in the serial search order for any number of jobs.
SearchResult search_embedding(const FiniteSemigroup& source, const FiniteSemigroup& target,
                              const SearchOptions& options);

/// f |-> f^{-1}: Self(n) into the dual of Self(2^n), n <= 4.
EmbeddingWitness canonical_powerset_witness(std::size_t n);

enum class MuLemma { kernel_range, order_embedding, meet, mu_one_size, idempotent_excess };
inline constexpr MuLemma kAllMuLemmas[] = {MuLemma::kernel_range, MuLemma::order_embedding, MuLemma::meet,
                                           MuLemma::mu_one_size, MuLemma::idempotent_excess};

struct LemmaCheck {
  bool passed = true;
  std::uint64_t checked = 0;
  std::vector<std::string> counterexamples;
};

struct MuEntry {
  EquivRelation kernel;
  PointMask image = 0;  // range of the embedded image, as a subset of the target points
};

struct MuCertificate {
  std::size_t n = 0;
  std::size_t gamma_size = 0;
  EmbeddingWitness witness;  // restricted to the rank <= 2 maps
  bool witness_verified = false;
  VerificationReport verification;
  bool well_defined = true;
  std::vector<MuEntry> mu;  // one entry per kernel in Eq^{<=2}, ordered by kernel
  std::map<MuLemma, LemmaCheck> lemmas;
  bool partition_disjoint = true;
  std::size_t mu_one_size = 0;
  std::uint64_t bound = 0;           // |mu(1)| + 2 (2^{n-1} - 1)
  std::uint64_t partition_cover = 0;  // |mu(1)| + sum of the partition class sizes
  bool all_passed() const;
};

/// `w` maps either Self(n) (by endomap rank) or the rank <= 2 maps (in
/// named_monoid(self_le2, n) order) into the dual of Self(m); n >= 2.
MuCertificate mu_certificate(std::size_t n, std::size_t m, const EmbeddingWitness& w);

struct ThresholdRow {
  std::size_t m = 0;
  SearchOutcome semigroup = SearchOutcome::inconclusive;
  SearchOutcome monoid = SearchOutcome::inconclusive;
  std::uint64_t semigroup_nodes = 0;
  std::uint64_t monoid_nodes = 0;
  std::string note;
};

struct ThresholdTable {
  std::size_t n = 0;
  std::size_t gamma_max = 0;
  std::vector<ThresholdRow> rows;
  std::optional<std::size_t> min_semigroup;
  std::optional<std::size_t> min_monoid;
  bool conclusive = true;  // no row hit a budget
  bool consistent = true;  // every conclusive row agrees with the 2^n threshold
};

/// Rows m = n..gamma_max (m = 1 for n <= 1): rank <= 2 maps into dual Self(m)
/// as a semigroup, and Self(n) into dual Self(m) as a monoid. n >= 3 needs
/// `allow_large`.
ThresholdTable selfmap_dual_threshold(std::size_t n, std::size_t gamma_max, const SearchOptions& base,
                                      bool allow_large = false, ClosureBudget target_budget = {});

}  // namespace dualemb
