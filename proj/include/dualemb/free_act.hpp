#pragma once

// Free M-acts M x Omega, the monoid E(M) = Self(Omega) x M^Omega modelling
// their endomorphisms, the embeddings of M^op and of E(Rel(n)) that make
// End F_M(Omega) and Rel embed into each other, and left divisibility.
//
// Convention: (alpha, x) . (beta, y) = (alpha after beta, p -> y(p) x(beta(p))),
// which makes pair_to_endo(a . b) = pair_to_endo(a) after pair_to_endo(b).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualemb/embed.hpp"
#include "dualemb/maps.hpp"
#include "dualemb/semigroup.hpp"

namespace dualemb {

class FiniteMonoid {
 public:
  FiniteMonoid() = default;
  /// Throws std::invalid_argument when `s` has no identity.
  explicit FiniteMonoid(FiniteSemigroup s);

  std::size_t size() const { return s_.size(); }
  Elem mul(Elem a, Elem b) const { return s_.mul(a, b); }
  Elem one() const { return *s_.identity(); }
  const FiniteSemigroup& semigroup() const { return s_; }
  const std::string& name() const { return s_.name(); }

 private:
  FiniteSemigroup s_;
};

struct ActEndoPair {
  Endomap alpha;
  std::vector<Elem> x;  // x(p) for p in Omega

  bool operator==(const ActEndoPair&) const = default;
  std::string to_string() const;
};

/// Carrier point (t, p) of F_M(Omega) has index t * omega + p.
inline std::size_t act_point(std::size_t omega, Elem t, Point p) { return std::size_t{t} * omega + p; }

ActEndoPair e_identity(const FiniteMonoid& m, std::size_t omega);
ActEndoPair e_product(const FiniteMonoid& m, const ActEndoPair& a, const ActEndoPair& b);

/// |Self(Omega)| * |M|^|Omega|; throws std::overflow_error past 64 bits.
std::uint64_t e_size(const FiniteMonoid& m, std::size_t omega);
/// rank(alpha) * |M|^omega + x read as base-|M| digits, x(0) most significant.
std::uint64_t e_index(const FiniteMonoid& m, const ActEndoPair& a);
ActEndoPair e_unindex(const FiniteMonoid& m, std::size_t omega, std::uint64_t index);
/// Cayley table of E(M) in e_index order (at most 65535 elements).
FiniteSemigroup e_monoid(const FiniteMonoid& m, std::size_t omega);

/// f(t, p) = (t x(p), alpha(p)) on the |M| * omega carrier points.
Endomap pair_to_endo(const FiniteMonoid& m, const ActEndoPair& a);
/// f(s t, p) = s f(t, p) for all s, t, p.
bool is_equivariant(const FiniteMonoid& m, std::size_t omega, const Endomap& f);
/// Throws std::invalid_argument when `f` is not an act endomorphism.
ActEndoPair endo_to_pair(const FiniteMonoid& m, std::size_t omega, const Endomap& f);

/// x -> (id, constant x): M into the dual of E(M), monoid mode.
EmbeddingWitness mop_embedding_witness(const FiniteMonoid& m, std::size_t omega);

/// eta(alpha, x) on Omega x (Omega + {inf}), point (p, q) -> p (n + 1) + q
/// with q = n standing for inf: ((p0,q0),(p1,q1)) is in it iff p1 = alpha(p0)
/// and (q1, q0) lies in x(p0) plus the loop at inf.
class EtaEmbedding {
 public:
  /// `m` must be Rel(n) in its canonical element order.
  EtaEmbedding(const FiniteMonoid& m, std::size_t n);
  BinRel operator()(const ActEndoPair& a) const;
  /// The same relation read off pair_to_endo(a).
  BinRel via_endomorphism(const ActEndoPair& a) const;
  std::size_t points() const { return n_ * (n_ + 1); }

 private:
  BinRel barred(Elem relation) const;

  const FiniteMonoid* m_;
  std::size_t n_;
};

/// div[u * |M| + v] is true iff v = t u for some t.
std::vector<bool> left_divisibility(const FiniteMonoid& m);
bool is_left_uniserial(const FiniteMonoid& m);
bool is_group(const FiniteMonoid& m);

struct Antichain {
  std::size_t size = 0;
  std::vector<Elem> witness;
};

/// Largest set of pairwise left-incomparable elements, exact, |M| <= 16.
Antichain max_antichain(const FiniteMonoid& m);

/// One representative per isomorphism class of monoids of the given order
/// (1..4); identity is element 0 and the table is the least in its class.
std::vector<FiniteMonoid> enumerate_monoids(std::size_t order);

/// The monoid {1, a, b, 0} with every product inside {a, b, 0} equal to 0.
FiniteMonoid two_null_monoid();
/// {1, a} with a a = a.
FiniteMonoid two_element_semilattice();
/// Z_k.
FiniteMonoid cyclic_group(std::size_t k);

struct FreeActClassification {
  std::string monoid;
  std::size_t order = 0;
  std::size_t omega = 0;
  // direct from the definitions
  bool omega_is_s_basis = false;
  std::size_t max_c_independent = 0;
  bool sc_ranked_direct = false;  // some S-basis bounds every C-independent subset
  bool matroid_direct = false;    // exchange condition on every subset
  // from the criteria
  bool left_uniserial = false;
  bool group = false;
  std::size_t max_antichain = 0;
  bool sc_ranked_criterion = false;
  bool matroid_criterion = false;
  bool c_indep_characterization_ok = false;

  bool sc_agree() const { return sc_ranked_direct == sc_ranked_criterion; }
  bool matroid_agree() const { return matroid_direct == matroid_criterion; }
  bool consistent() const { return sc_agree() && matroid_agree() && c_indep_characterization_ok; }
};

/// Needs |M| * omega <= 16.
FreeActClassification classify_free_act(const FiniteMonoid& m, std::size_t omega);

}  // namespace dualemb
