#include "dualemb/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dualemb {

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonInputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JsonInputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonInputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw JsonInputError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(const Endomap& f) { return Json{{"n", f.size()}, {"images", f.images()}}; }

Endomap endomap_from_json(const Json& j) {
  return Endomap(field<std::size_t>(j, "n"), field<std::vector<Point>>(j, "images"));
}

Json to_json(const BinRel& r) {
  Json rows = Json::array();
  for (Point x = 0; x < r.size(); ++x) {
    std::string s;
    for (Point y = 0; y < r.size(); ++y) s += r.test(x, y) ? '1' : '0';
    rows.push_back(s);
  }
  return Json{{"n", r.size()}, {"rows", rows}};
}

BinRel binrel_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "n");
  const auto rows = field<std::vector<std::string>>(j, "rows");
  if (rows.size() != n) throw JsonInputError("relation: expected " + std::to_string(n) + " rows");
  BinRel r(n);
  for (Point x = 0; x < n; ++x) {
    if (rows[x].size() != n) throw JsonInputError("relation: row " + std::to_string(x) + " has the wrong length");
    for (Point y = 0; y < n; ++y) {
      if (rows[x][y] != '0' && rows[x][y] != '1') throw JsonInputError("relation: rows are strings of 0 and 1");
      if (rows[x][y] == '1') r.set(x, y);
    }
  }
  return r;
}

Json to_json(const EquivRelation& e) { return Json{{"n", e.size()}, {"blocks", e.blocks()}}; }

EquivRelation equiv_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "n");
  const auto blocks = field<std::vector<std::vector<Point>>>(j, "blocks");
  std::vector<std::size_t> label(n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Point x : blocks[b]) {
      if (x >= n || label[x] != n) throw JsonInputError("equivalence: blocks must partition 0..n-1");
      label[x] = b;
    }
  for (std::size_t x = 0; x < n; ++x)
    if (label[x] == n) throw JsonInputError("equivalence: point " + std::to_string(x) + " in no block");
  return EquivRelation::from_labels(label);
}

Json to_json(const FiniteSemigroup& s) {
  Json table = Json::array();
  for (std::size_t a = 0; a < s.size(); ++a) {
    const auto row = s.row(static_cast<Elem>(a));
    table.push_back(std::vector<Elem>(row.begin(), row.end()));
  }
  Json j{{"name", s.name()}, {"size", s.size()}};
  j["identity"] = s.identity() ? Json(*s.identity()) : Json(nullptr);
  j["table"] = std::move(table);
  if (!s.labels().empty()) j["labels"] = s.labels();
  if (!s.generators().empty()) j["generators"] = s.generators();
  return j;
}

FiniteSemigroup semigroup_from_json(const Json& j) {
  const auto size = field<std::size_t>(j, "size");
  const auto rows = field<std::vector<std::vector<Elem>>>(j, "table");
  if (rows.size() != size) throw JsonInputError("semigroup: table must have 'size' rows");
  std::vector<Elem> table;
  table.reserve(size * size);
  for (const auto& r : rows) {
    if (r.size() != size) throw JsonInputError("semigroup: every table row must have 'size' entries");
    table.insert(table.end(), r.begin(), r.end());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels");
  std::vector<Elem> gens;
  if (j.contains("generators")) gens = field<std::vector<Elem>>(j, "generators");
  const std::string name = j.contains("name") ? field<std::string>(j, "name") : std::string{};
  if (j.contains("identity") && !j.at("identity").is_null())
    return FiniteSemigroup(size, std::move(table), field<Elem>(j, "identity"), std::move(labels), std::move(gens), name);
  return FiniteSemigroup::with_detected_identity(size, std::move(table), std::move(labels), std::move(gens), name);
}

namespace {

std::size_t parse_count(const std::string& s, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw std::invalid_argument("bad size in descriptor '" + spec + "'");
  return v;
}

}  // namespace

FiniteSemigroup resolve_semigroup(const std::string& spec, ClosureBudget budget) {
  if (spec.rfind("dual:", 0) == 0) return dual(resolve_semigroup(spec.substr(5), budget));
  if (spec.rfind("E:", 0) == 0) {
    const auto cut = spec.rfind(':');
    if (cut <= 2) throw std::invalid_argument("descriptor '" + spec + "' needs E:<monoid>:<omega>");
    const FiniteMonoid m(resolve_semigroup(spec.substr(2, cut - 2), budget));
    return e_monoid(m, parse_count(spec.substr(cut + 1), spec));
  }
  if (spec == "two_null") return two_null_monoid().semigroup();
  if (spec == "semilattice2") return two_element_semilattice().semigroup();
  if (spec == "trivial") return cyclic_group(1).semigroup().renamed("trivial");
  const auto colon = spec.find(':');
  if (colon != std::string::npos && !std::filesystem::exists(spec)) {
    const std::string kind = spec.substr(0, colon);
    const std::size_t n = parse_count(spec.substr(colon + 1), spec);
    if (kind == "cyclic") return cyclic_group(n).semigroup();
    return named_monoid(parse_monoid_kind(kind), n, budget);
  }
  if (!std::filesystem::exists(spec)) throw std::invalid_argument("no such semigroup file or descriptor '" + spec + "'");
  const Json doc = load_json_file(spec);
  try {
    if (doc.is_object() && doc.contains("result") && doc.contains("config")) return semigroup_from_json(doc.at("result"));
    return semigroup_from_json(doc);
  } catch (const JsonInputError& e) {
    throw JsonInputError(spec + ": " + e.what());
  }
}

ResolvedTarget resolve_target(const std::string& spec, ClosureBudget budget) {
  ResolvedTarget r;
  if (spec.rfind("implicit-full:", 0) == 0) {
    r.oracle = std::make_unique<TransformationOracle>(parse_count(spec.substr(14), spec));
    return r;
  }
  if (spec.rfind("full:", 0) == 0) {
    const std::size_t m = parse_count(spec.substr(5), spec);
    if (m > 16 || endomap_count(m) > budget.max_size) {
      r.oracle = std::make_unique<TransformationOracle>(m);
      return r;
    }
  }
  r.table = resolve_semigroup(spec, budget);
  r.oracle = std::make_unique<TableOracle>(*r.table);
  return r;
}

Json to_json(const EmbeddingWitness& w) {
  return Json{{"source", w.source_ref}, {"target", w.target_ref}, {"mode", to_string(w.mode)},
              {"dual", w.dual_target},  {"map", w.map}};
}

EmbeddingWitness witness_from_json(const Json& j) {
  if (j.is_object() && j.contains("result") && j.at("result").is_object() && j.at("result").contains("witness"))
    return witness_from_json(j.at("result").at("witness"));
  if (j.is_object() && j.contains("witness") && j.at("witness").is_object()) return witness_from_json(j.at("witness"));
  EmbeddingWitness w;
  w.mode = parse_embed_mode(field<std::string>(j, "mode"));
  w.dual_target = field<bool>(j, "dual");
  w.map = field<std::vector<std::uint64_t>>(j, "map");
  if (j.contains("source")) w.source_ref = field<std::string>(j, "source");
  if (j.contains("target")) w.target_ref = field<std::string>(j, "target");
  return w;
}

Json to_json(const VerificationReport& r) {
  Json pairs = Json::array(), coll = Json::array();
  for (auto [a, b] : r.violating_pairs) pairs.push_back({a, b});
  for (auto [a, b] : r.collisions) coll.push_back({a, b});
  return Json{{"passed", r.passed()},
              {"injective", r.injective},
              {"homomorphic", r.homomorphic},
              {"identity_preserved", r.identity_preserved},
              {"law_failures", r.law_failures},
              {"violating_pairs", pairs},
              {"collisions", coll}};
}

Json to_json(const ExhaustionCertificate& c) {
  return Json{{"complete", c.complete}, {"nodes", c.nodes}, {"pruned", c.pruned}, {"generator_order", c.generator_order}};
}

Json to_json(const SearchResult& r) {
  Json j{{"outcome", to_string(r.outcome)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  j["exhaustion"] = to_json(r.stats);
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

std::string lemma_key(MuLemma l) {
  switch (l) {
    case MuLemma::kernel_range: return "3.2";
    case MuLemma::order_embedding: return "3.3";
    case MuLemma::meet: return "3.4";
    case MuLemma::mu_one_size: return "3.5";
    case MuLemma::idempotent_excess: return "3.6";
  }
  return "?";
}

namespace {

std::vector<std::size_t> mask_points(PointMask m) {
  std::vector<std::size_t> out;
  for (; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::string lemma_name(MuLemma l) {
  switch (l) {
    case MuLemma::kernel_range: return "kernel inclusion reverses range inclusion";
    case MuLemma::order_embedding: return "mu is an order anti-embedding";
    case MuLemma::meet: return "distinct two-block kernels meet in mu(1)";
    case MuLemma::mu_one_size: return "mu(1) has at least two points";
    case MuLemma::idempotent_excess: return "rank-2 idempotents add at least two points";
  }
  return "?";
}

}  // namespace

Json to_json(const MuCertificate& c) {
  Json lemmas = Json::object(), details = Json::object();
  for (const auto& [l, chk] : c.lemmas) {
    lemmas[lemma_key(l)] = chk.passed;
    details[lemma_key(l)] = Json{{"statement", lemma_name(l)},
                                 {"passed", chk.passed},
                                 {"checked", chk.checked},
                                 {"counterexamples", chk.counterexamples}};
  }
  Json mu = Json::array();
  for (const auto& e : c.mu) mu.push_back(Json{{"kernel", e.kernel.blocks()}, {"image", mask_points(e.image)}});
  return Json{{"n", c.n},
              {"gamma_size", c.gamma_size},
              {"all_passed", c.all_passed()},
              {"lemmas", lemmas},
              {"mu_one_size", c.mu_one_size},
              {"bound", c.bound},
              {"partition_cover", c.partition_cover},
              {"partition_disjoint", c.partition_disjoint},
              {"well_defined", c.well_defined},
              {"witness_verified", c.witness_verified},
              {"lemma_details", details},
              {"verification", to_json(c.verification)},
              {"mu", mu},
              {"witness", to_json(c.witness)}};
}

Json to_json(const ThresholdTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row{{"m", r.m},
             {"semigroup", to_string(r.semigroup)},
             {"monoid", to_string(r.monoid)},
             {"semigroup_nodes", r.semigroup_nodes},
             {"monoid_nodes", r.monoid_nodes}};
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  Json j{{"n", t.n}, {"gamma_max", t.gamma_max}, {"rows", rows}};
  j["min_semigroup"] = t.min_semigroup ? Json(*t.min_semigroup) : Json(nullptr);
  j["min_monoid"] = t.min_monoid ? Json(*t.min_monoid) : Json(nullptr);
  j["conclusive"] = t.conclusive;
  j["consistent"] = t.consistent;
  return j;
}

Json to_json(const FreeActClassification& c) {
  return Json{{"monoid", c.monoid},
              {"order", c.order},
              {"omega", c.omega},
              {"direct",
               {{"omega_is_s_basis", c.omega_is_s_basis},
                {"max_c_independent", c.max_c_independent},
                {"sc_ranked", c.sc_ranked_direct},
                {"matroid", c.matroid_direct}}},
              {"criterion",
               {{"left_uniserial", c.left_uniserial},
                {"group", c.group},
                {"max_antichain", c.max_antichain},
                {"sc_ranked", c.sc_ranked_criterion},
                {"matroid", c.matroid_criterion}}},
              {"scRanked", c.sc_ranked_direct},
              {"matroid", c.matroid_direct},
              {"cIndepCharacterizationOk", c.c_indep_characterization_ok},
              {"routes_agree", c.sc_agree() && c.matroid_agree()}};
}

std::unique_ptr<AlgebraHandle> algebra_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "mact") {
    const Json& mj = j.at("monoid");
    FiniteSemigroup s = mj.is_string() ? resolve_semigroup(mj.get<std::string>()) : semigroup_from_json(mj);
    return std::make_unique<FreeActAlgebra>(FiniteMonoid(std::move(s)), field<std::size_t>(j, "omega"));
  }
  if (kind == "vspace")
    return std::make_unique<VectorSpaceAlgebra>(field<std::uint32_t>(j, "p"), field<std::size_t>(j, "n"));
  throw JsonInputError("instance kind must be 'mact' or 'vspace'");
}

namespace {

Json labels_of(const AlgebraHandle& a, Subset s) {
  Json out = Json::array();
  for (std::size_t e : subset_elements(s)) out.push_back(a.element_label(e));
  return out;
}

Json flag_json(const AlgebraHandle& a, const IndependenceFlag& f) {
  Json j{{"value", f.value ? Json(*f.value) : Json("skipped")}};
  if (f.element) j["witness_element"] = a.element_label(*f.element);
  if (!f.map.empty()) {
    Json m = Json::array();
    for (auto [x, y] : f.map) m.push_back({a.element_label(x), a.element_label(y)});
    j["witness_map"] = m;
  }
  return j;
}

Json condition_json(const AlgebraHandle& a, const ConditionResult& c) {
  if (!c.holds) return Json{{"holds", "not checked"}};
  Json j{{"holds", *c.holds}, {"violating_subsets", c.violations}};
  if (c.witness) {
    j["witness"] = Json{{"X", labels_of(a, c.witness->x)},
                        {"u", a.element_label(c.witness->u)},
                        {"v", a.element_label(c.witness->v)},
                        {"Y", labels_of(a, c.witness->y)}};
  }
  return j;
}

}  // namespace

Json to_json(const AlgebraHandle& a, const IndependenceReport& r) {
  Json j{{"algebra", a.describe()},
         {"subset", subset_elements(r.subset)},
         {"subset_labels", labels_of(a, r.subset)},
         {"nonDegenerate", r.non_degenerate}};
  if (r.degenerate_element) j["degenerate_element"] = a.element_label(*r.degenerate_element);
  j["cIndependent"] = flag_json(a, r.c);
  j["sIndependent"] = flag_json(a, r.s);
  j["mIndependent"] = flag_json(a, r.m);
  return j;
}

Json to_json(const AlgebraHandle& a, const MatroidReport& r) {
  return Json{{"algebra", a.describe()},
              {"matroid", r.matroid()},
              {"conditions_consistent", r.consistent()},
              {"condition_1", condition_json(a, r.exchange)},
              {"condition_2", condition_json(a, r.independent_growth)},
              {"condition_3", condition_json(a, r.maximal_generates)},
              {"condition_4", condition_json(a, r.extension_to_basis)}};
}

Json to_json(const AlgebraHandle& a, const ScRankReport& r) {
  return Json{{"algebra", a.describe()},
              {"generating", r.generating},
              {"sIndependent", r.s_independent},
              {"isSBasis", r.is_s_basis},
              {"maxCIndependentSize", r.max_c.size},
              {"maxCIndependentWitness", labels_of(a, r.max_c.witness)},
              {"scRanked", r.sc_ranked}};
}

Json to_json(const Matrix& m) { return Json{{"p", m.p()}, {"cols", m.cols()}, {"rows", m.row_list()}}; }

Json to_json(const Subspace& s) {
  return Json{{"p", s.p()}, {"n", s.ambient()}, {"dim", s.dim()}, {"rref", s.basis().row_list()}};
}

}  // namespace dualemb
