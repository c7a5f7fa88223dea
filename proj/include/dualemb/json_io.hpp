#pragma once

// JSON encodings of the library's values and certificates.

#include <memory>
#include <string>

#include <json.hpp>

#include "dualemb/embed.hpp"
#include "dualemb/free_act.hpp"
#include "dualemb/indep.hpp"
#include "dualemb/linal.hpp"
#include "dualemb/maps.hpp"
#include "dualemb/semigroup.hpp"

namespace dualemb {

using Json = nlohmann::ordered_json;

/// Malformed documents; the message carries the file and byte offset.
class JsonInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

Json to_json(const Endomap& f);
Endomap endomap_from_json(const Json& j);
Json to_json(const BinRel& r);
BinRel binrel_from_json(const Json& j);
Json to_json(const EquivRelation& e);
EquivRelation equiv_from_json(const Json& j);

/// {"size","identity","table","labels","generators","name"}; identity may be null.
Json to_json(const FiniteSemigroup& s);
FiniteSemigroup semigroup_from_json(const Json& j);

/// A named descriptor ("full:3", "rel:2", "dual:full:2", "cyclic:3",
/// "two_null", "semilattice2", "trivial", "E:<monoid>:<omega>") or a path to
/// a semigroup JSON file.
FiniteSemigroup resolve_semigroup(const std::string& spec, ClosureBudget budget = {});

/// Like resolve_semigroup, but "implicit-full:m", and "full:m" past the size
/// budget, yield an untabulated Self(m).
struct ResolvedTarget {
  std::optional<FiniteSemigroup> table;
  std::unique_ptr<ProductOracle> oracle;
};
ResolvedTarget resolve_target(const std::string& spec, ClosureBudget budget = {});

Json to_json(const EmbeddingWitness& w);
/// Accepts a witness object or an artifact holding one under result.witness.
EmbeddingWitness witness_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const ExhaustionCertificate& c);
Json to_json(const SearchResult& r);

std::string lemma_key(MuLemma l);
Json to_json(const MuCertificate& c);
Json to_json(const ThresholdTable& t);

Json to_json(const FreeActClassification& c);

/// {"kind":"mact","monoid":<spec or semigroup>,"omega":k} or {"kind":"vspace","p":p,"n":n}.
std::unique_ptr<AlgebraHandle> algebra_from_json(const Json& j);
Json to_json(const AlgebraHandle& a, const IndependenceReport& r);
Json to_json(const AlgebraHandle& a, const MatroidReport& r);
Json to_json(const AlgebraHandle& a, const ScRankReport& r);

Json to_json(const Matrix& m);
Json to_json(const Subspace& s);

}  // namespace dualemb
