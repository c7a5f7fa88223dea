#include "dualemb/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "dualemb/kernels.hpp"

namespace dualemb::cli {

Json to_json(const RunConfig& c) {
  Json inst = Json::object();
  for (const auto& [k, v] : c.instances) inst[k] = v;
  Json j{{"command", c.command},
         {"instances", inst},
         {"budgets", {{"nodes", c.node_budget}, {"max_size", c.max_size}}},
         {"seed", c.seed},
         {"deterministic", c.deterministic},
         {"jobs", c.jobs}};
  j["budgets"]["seconds"] = c.seconds > 0 ? Json(c.seconds) : Json(nullptr);
  j["output"] = c.output.empty() ? Json(nullptr) : Json(c.output);
  return j;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool is_record_table(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_object()) return false;
    for (const auto& [k, v] : row.items())
      if (!is_scalar(v)) return false;
  }
  return true;
}

void render_table(const Json& rows, std::ostream& out, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& row : rows)
      if (row.contains(cols[c])) width[c] = std::max(width[c], scalar_text(row[cols[c]]).size());
  }
  out << indent;
  for (std::size_t c = 0; c < cols.size(); ++c) out << std::left << std::setw(static_cast<int>(width[c] + 2)) << cols[c];
  out << '\n';
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << std::left << std::setw(static_cast<int>(width[c] + 2))
          << (row.contains(cols[c]) ? scalar_text(row[cols[c]]) : std::string{});
    out << '\n';
  }
}

void render(const Json& j, std::ostream& out, const std::string& indent) {
  for (const auto& [k, v] : j.items()) {
    if (is_scalar(v)) {
      out << indent << k << ": " << scalar_text(v) << '\n';
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
      out << indent << k << ": " << v.dump() << '\n';
    } else if (is_record_table(v)) {
      out << indent << k << ":\n";
      render_table(v, out, indent + "  ");
    } else {
      out << indent << k << ":\n";
      render(v, out, indent + "  ");
    }
  }
}

struct Outcome {
  Json result;
  int exit = kEstablished;
};

int exit_for(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return kEstablished;
    case SearchOutcome::none: return kRefuted;
    case SearchOutcome::inconclusive: return kInconclusive;
  }
  return kInternal;
}

struct Globals {
  RunConfig config;
  ClosureBudget budget() const { return ClosureBudget{config.max_size, ClosureBudget{}.max_steps}; }
  SearchOptions search() const {
    SearchOptions o;
    o.node_budget = config.node_budget;
    o.seconds = config.seconds;
    o.deterministic = config.deterministic;
    o.jobs = config.jobs > 0 ? config.jobs : kernels::max_threads();
    return o;
  }
};

Json load_instance(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json_text(arg, "--instance");
  return load_json_file(arg);
}

Subset subset_from(const std::vector<std::size_t>& elems, const AlgebraHandle& a) {
  Subset s = 0;
  for (std::size_t e : elems) {
    if (e >= a.size())
      throw std::invalid_argument("--subset: element " + std::to_string(e) + " outside a carrier of size " +
                                  std::to_string(a.size()));
    s |= Subset{1} << e;
  }
  return s;
}

// build

struct BuildArgs {
  std::string monoid, act, space;
  std::size_t omega = 2;
  std::size_t canonical = 0;
};

Outcome cmd_build(Globals& g, const BuildArgs& a) {
  const int chosen = !a.monoid.empty() + !a.act.empty() + !a.space.empty() + (a.canonical > 0);
  if (chosen != 1)
    throw CLI::ValidationError("build", "give exactly one of --monoid, --act, --space, --canonical-witness");
  if (a.canonical) {
    g.config.instances["canonical_witness"] = std::to_string(a.canonical);
    return {Json{{"witness", to_json(canonical_powerset_witness(a.canonical))}}};
  }
  if (!a.monoid.empty()) {
    g.config.instances["monoid"] = a.monoid;
    return {to_json(resolve_semigroup(a.monoid, g.budget()))};
  }
  if (!a.act.empty()) {
    g.config.instances["act"] = a.act + " x " + std::to_string(a.omega);
    const FreeActAlgebra act(FiniteMonoid(resolve_semigroup(a.act, g.budget())), a.omega);
    Json labels = Json::array(), table = Json::array();
    for (std::size_t e = 0; e < act.size(); ++e) labels.push_back(act.element_label(e));
    for (std::size_t s = 0; s < act.monoid().size(); ++s) {
      Json row = Json::array();
      for (std::size_t e = 0; e < act.size(); ++e) row.push_back(act.act(static_cast<Elem>(s), e));
      table.push_back(row);
    }
    return {Json{{"kind", "mact"},
                 {"monoid", a.act},
                 {"omega", a.omega},
                 {"size", act.size()},
                 {"labels", labels},
                 {"action", table},
                 {"endomorphism_monoid_size", e_size(act.monoid(), a.omega)}}};
  }
  g.config.instances["space"] = a.space;
  const auto comma = a.space.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--space", "expected p,n");
  const auto p = static_cast<std::uint32_t>(std::stoul(a.space.substr(0, comma)));
  const auto n = static_cast<std::size_t>(std::stoul(a.space.substr(comma + 1)));
  const VectorSpaceAlgebra v(p, n);
  Json elems = Json::array();
  for (std::size_t e = 0; e < v.size(); ++e) elems.push_back(v.vector(e));
  return {Json{{"kind", "vspace"}, {"p", p}, {"n", n}, {"size", v.size()}, {"elements", elems}}};
}

// embed-search

struct SearchArgs {
  std::string source, target, mode = "semigroup";
  bool dual = false, no_prune = false;
};

Outcome cmd_embed_search(Globals& g, const SearchArgs& a) {
  g.config.instances["source"] = a.source;
  g.config.instances["target"] = a.target;
  const FiniteSemigroup source = resolve_semigroup(a.source, g.budget());
  const FiniteSemigroup target = resolve_semigroup(a.target, g.budget());
  SearchOptions o = g.search();
  o.mode = parse_embed_mode(a.mode);
  o.dual_target = a.dual;
  o.prune = !a.no_prune;
  SearchResult r = search_embedding(source, target, o);
  if (r.witness) {
    r.witness->source_ref = a.source;
    r.witness->target_ref = a.target;
  }
  Json j = to_json(r);
  if (r.witness) j["verification"] = to_json(verify_embedding(source, TableOracle(target), *r.witness));
  return {j, exit_for(r.outcome)};
}

// verify

struct VerifyArgs {
  std::string witness, source, target, mode, mu_cert;
  bool dual = false, no_dual = false;
};

Outcome verify_mu(Globals& g, const VerifyArgs& a) {
  g.config.instances["mu_certificate"] = a.mu_cert;
  const Json doc = load_json_file(a.mu_cert);
  const Json& stored = doc.contains("result") ? doc.at("result") : doc;
  if (!stored.contains("n") || !stored.contains("gamma_size") || !stored.contains("witness"))
    throw JsonInputError(a.mu_cert + ": not a mu-certificate (needs n, gamma_size, witness)");
  const auto n = stored.at("n").get<std::size_t>();
  const auto m = stored.at("gamma_size").get<std::size_t>();
  const MuCertificate cert = mu_certificate(n, m, witness_from_json(stored.at("witness")));
  const Json fresh = to_json(cert);
  const bool reproduced = stored.value("all_passed", !cert.all_passed()) == cert.all_passed() &&
                          stored.value("bound", Json()) == fresh.at("bound") &&
                          stored.value("lemmas", Json()) == fresh.at("lemmas");
  Json j{{"kind", "mu-certificate"}, {"reproduced", reproduced}, {"all_passed", cert.all_passed()},
         {"recomputed", fresh}};
  return {j, reproduced && cert.all_passed() ? kEstablished : kRefuted};
}

Outcome cmd_verify(Globals& g, const VerifyArgs& a) {
  if (!a.mu_cert.empty()) return verify_mu(g, a);
  if (a.witness.empty()) throw CLI::ValidationError("verify", "give --witness or --mu-cert");
  if (a.dual && a.no_dual) throw CLI::ValidationError("verify", "--dual and --no-dual are exclusive");
  EmbeddingWitness w = witness_from_json(load_json_file(a.witness));
  const std::string source_spec = a.source.empty() ? w.source_ref : a.source;
  const std::string target_spec = a.target.empty() ? w.target_ref : a.target;
  if (source_spec.empty() || target_spec.empty())
    throw CLI::ValidationError("verify", "witness names no source/target; give --source and --target");
  if (a.dual) w.dual_target = true;
  if (a.no_dual) w.dual_target = false;
  if (!a.mode.empty()) w.mode = parse_embed_mode(a.mode);
  g.config.instances["witness"] = a.witness;
  g.config.instances["source"] = source_spec;
  g.config.instances["target"] = target_spec;
  const FiniteSemigroup source = resolve_semigroup(source_spec, g.budget());
  const ResolvedTarget target = resolve_target(target_spec, g.budget());
  const VerificationReport r = verify_embedding(source, *target.oracle, w);
  Json j{{"kind", "witness"},
         {"mode", to_string(w.mode)},
         {"dual", w.dual_target},
         {"source_size", source.size()},
         {"verification", to_json(r)}};
  return {j, r.passed() ? kEstablished : kRefuted};
}

// mu-cert

struct MuArgs {
  std::size_t n = 2;
  std::size_t m = 0;
  std::string witness;
};

Outcome cmd_mu_cert(Globals& g, const MuArgs& a) {
  const std::size_t m = a.m ? a.m : (std::size_t{1} << a.n);
  g.config.instances["source"] = "self_le2:" + std::to_string(a.n);
  g.config.instances["target"] = "dual:full:" + std::to_string(m);
  EmbeddingWitness w;
  Json provenance;
  if (!a.witness.empty()) {
    g.config.instances["witness"] = a.witness;
    w = witness_from_json(load_json_file(a.witness));
    provenance = "file";
  } else if (a.n <= 4 && m == (std::size_t{1} << a.n)) {
    w = canonical_powerset_witness(a.n);
    provenance = "canonical";
  } else {
    const FiniteSemigroup source =
        named_monoid(MonoidKind::self_le2, a.n, ClosureBudget{kMaxSemigroupSize, ClosureBudget{}.max_steps});
    const FiniteSemigroup target = named_monoid(MonoidKind::full, m, g.budget());
    SearchOptions o = g.search();
    o.dual_target = true;
    const SearchResult r = search_embedding(source, target, o);
    if (!r.witness) {
      Json j{{"kind", "mu-certificate"}, {"n", a.n}, {"gamma_size", m}, {"search", to_json(r)}};
      return {j, exit_for(r.outcome)};
    }
    w = *r.witness;
    provenance = "search";
  }
  const MuCertificate cert = mu_certificate(a.n, m, w);
  Json j = to_json(cert);
  j["witness_provenance"] = provenance;
  return {j, cert.all_passed() ? kEstablished : kRefuted};
}

// threshold

struct ThresholdArgs {
  std::size_t n = 2;
  std::size_t gamma_max = 4;
  bool allow_large = false;
  std::size_t target_size = 65535;
};

Outcome cmd_threshold(Globals& g, const ThresholdArgs& a) {
  g.config.instances["n"] = std::to_string(a.n);
  g.config.instances["gamma_max"] = std::to_string(a.gamma_max);
  const ThresholdTable t = selfmap_dual_threshold(a.n, a.gamma_max, g.search(), a.allow_large,
                                                  ClosureBudget{a.target_size, ClosureBudget{}.max_steps});
  const int code = !t.conclusive ? kInconclusive : (t.consistent ? kEstablished : kRefuted);
  return {to_json(t), code};
}

// classify-acts

struct ClassifyArgs {
  std::size_t max_order = 3;
  std::size_t omega = 2;
  std::string monoid;
};

Outcome cmd_classify(Globals& g, const ClassifyArgs& a) {
  std::vector<FiniteMonoid> monoids;
  if (!a.monoid.empty()) {
    g.config.instances["monoid"] = a.monoid;
    monoids.emplace_back(resolve_semigroup(a.monoid, g.budget()));
  } else {
    if (a.max_order < 1 || a.max_order > 4) throw CLI::ValidationError("--max-order", "must be in 1..4");
    g.config.instances["sweep"] = "order<=" + std::to_string(a.max_order);
    for (std::size_t k = 1; k <= a.max_order; ++k)
      for (auto& m : enumerate_monoids(k)) monoids.push_back(std::move(m));
  }
  g.config.instances["omega"] = std::to_string(a.omega);
  Json records = Json::array();
  std::size_t agree = 0;
  for (const FiniteMonoid& m : monoids) {
    const FreeActClassification c = classify_free_act(m, a.omega);
    if (c.consistent()) ++agree;
    records.push_back(to_json(c));
  }
  Json j{{"records", records},
         {"rows", monoids.size()},
         {"consistent_rows", agree},
         {"all_consistent", agree == monoids.size()}};
  return {j, agree == monoids.size() ? kEstablished : kRefuted};
}

// indep / matroid

struct IndepArgs {
  std::string instance;
  std::vector<std::size_t> subset;
  std::vector<std::size_t> basis;
  std::uint64_t map_budget = 1'000'000;
};

Outcome cmd_indep(Globals& g, const IndepArgs& a) {
  g.config.instances["instance"] = a.instance;
  const auto alg = algebra_from_json(load_instance(a.instance));
  const Subset s = subset_from(a.subset, *alg);
  const IndependenceReport r = independence_report(*alg, s, a.map_budget);
  Json j = to_json(*alg, r);
  if (r.non_degenerate && r.s.holds() && a.subset.size() <= 10) {
    const LatticeEmbedding le = fin_lattice_embedding(*alg, s);
    j["latticeEmbedding"] = Json{{"verified", le.verified()},
                                 {"join", le.join_ok},
                                 {"meet", le.meet_ok},
                                 {"injective", le.injective}};
  }
  if (!a.basis.empty()) j["scRank"] = to_json(*alg, sc_rank_report(*alg, subset_from(a.basis, *alg)));
  const bool skipped = r.s.skipped() || r.m.skipped();
  return {j, skipped ? kInconclusive : kEstablished};
}

struct MatroidArgs {
  std::string instance;
  bool small_conditions = false;
};

Outcome cmd_matroid(Globals& g, const MatroidArgs& a) {
  g.config.instances["instance"] = a.instance;
  const auto alg = algebra_from_json(load_instance(a.instance));
  const MatroidReport r = matroid_check(*alg, a.small_conditions);
  return {to_json(*alg, r), r.matroid() ? kEstablished : kRefuted};
}

// linal-checks

struct LinalArgs {
  std::uint32_t p = 2;
  std::size_t n = 3;
  std::size_t trials = 1000;
};

std::vector<Vector> random_independent(Scalar p, std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> coord(0, p - 1);
  std::vector<Vector> out;
  while (out.size() < k) {
    Vector v(n);
    for (auto& c : v) c = coord(rng);
    out.push_back(v);
    if (!is_linearly_independent(p, n, out)) out.pop_back();
  }
  return out;
}

Outcome cmd_linal(Globals& g, const LinalArgs& a) {
  if (a.n < 1 || a.n > 8) throw CLI::ValidationError("--n", "must be in 1..8");
  g.config.instances["space"] = std::to_string(a.p) + "," + std::to_string(a.n);
  std::mt19937_64 rng(g.config.seed);
  bool ok = true;

  const DualDimensionReport dd = dual_dimension_check(a.n, a.p);
  ok = ok && dd.ok();

  const auto vectors = random_independent(a.p, a.n, a.n, rng);
  const SpanEmbedding span(a.p, a.n, vectors);
  const LatticeLawReport sl = lattice_laws(std::cref(span), a.n);
  const bool span_ok = sl.join_failures == 0 && sl.meet_failures == 0 && sl.injective_failures == 0 &&
                       sl.dim_failures == 0;
  const auto functionals = random_independent(a.p, a.n, a.n, rng);
  const PhiFromFunctionals phi(a.p, a.n, functionals);
  const LatticeLawReport pl = lattice_laws(std::cref(phi), a.n);
  const bool phi_ok = pl.union_meet_failures == 0 && pl.sum_law_failures == 0 && pl.injective_failures == 0 &&
                      pl.codim_failures == 0;
  const bool extract_ok = extract_independent_vectors(std::cref(span), a.n).size() == a.n &&
                          extract_independent_vectors([&](IndexSet x) { return orthogonal(phi(x)); }, a.n).size() == a.n;
  ok = ok && span_ok && phi_ok && extract_ok;

  std::uniform_int_distribution<std::size_t> rows(0, a.n);
  std::uint64_t proj_failures = 0;
  Json first_failure;
  for (std::size_t t = 0; t < a.trials; ++t) {
    const Subspace x = random_subspace(a.p, a.n, rows(rng), rng);
    const Subspace y = random_subspace(a.p, a.n, rows(rng), rng);
    const ProjectionPair pp = projection_pair(x, y);
    const bool good = pp.f.kernel() == x && pp.g.kernel() == y && pp.gf.kernel() == subspace_sum(x, y) &&
                      pp.f.is_idempotent() && pp.g.is_idempotent() && pp.gf.is_idempotent();
    if (!good) {
      if (proj_failures == 0) first_failure = Json{{"trial", t}, {"X", to_json(x)}, {"Y", to_json(y)}};
      ++proj_failures;
    }
  }
  ok = ok && proj_failures == 0;

  auto law = [](const LatticeLawReport& r) {
    return Json{{"pairs", r.pairs},
                {"join_failures", r.join_failures},
                {"meet_failures", r.meet_failures},
                {"injective_failures", r.injective_failures},
                {"dim_failures", r.dim_failures},
                {"codim_failures", r.codim_failures},
                {"sum_law_failures", r.sum_law_failures},
                {"union_meet_failures", r.union_meet_failures}};
  };
  Json j{{"p", a.p},
         {"n", a.n},
         {"all_passed", ok},
         {"dual_dimension",
          {{"ok", dd.ok()}, {"dual_dimension", dd.dual_dimension}, {"pairing_rank", dd.pairing_rank}}},
         {"span_embedding", {{"ok", span_ok}, {"vectors", vectors}, {"laws", law(sl)}}},
         {"phi_from_functionals", {{"ok", phi_ok}, {"functionals", functionals}, {"laws", law(pl)}}},
         {"extraction_ok", extract_ok},
         {"projection_pairs", {{"trials", a.trials}, {"failures", proj_failures}}}};
  if (proj_failures) j["projection_pairs"]["first_failure"] = first_failure;
  return {j, ok ? kEstablished : kRefuted};
}

}  // namespace

void render_text(const Json& j, std::ostream& out) { render(j, out, ""); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  RunConfig& c = g.config;
  CLI::App app{"Finite dual-embedding, free-act and independence checks"};
  app.name("dualemb");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "Root seed for every random choice")->capture_default_str();
  app.add_option("--jobs", c.jobs, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--node-budget", c.node_budget, "Search node budget")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seconds", c.seconds, "Wall-clock limit per search")->check(CLI::PositiveNumber);
  app.add_option("--max-size", c.max_size, "Largest semigroup to tabulate")->check(CLI::PositiveNumber)->capture_default_str();
  bool no_det = false;
  app.add_flag("--no-deterministic", no_det, "Return whichever witness a worker finds first");
  app.add_option("--out", c.output, "Write the JSON artifact to this file");
  app.add_flag("--text", c.text, "Print a text rendering instead of JSON");

  BuildArgs build;
  auto* s_build = app.add_subcommand("build", "Tabulate a named monoid, free act or vector space");
  s_build->add_option("--monoid", build.monoid, "Semigroup descriptor or file");
  s_build->add_option("--act", build.act, "Monoid of a free act");
  s_build->add_option("--omega", build.omega, "Free generators of the act")->check(CLI::PositiveNumber);
  s_build->add_option("--space", build.space, "Vector space as p,n");
  s_build->add_option("--canonical-witness", build.canonical, "Inverse-image witness for Self(n), n <= 4")
      ->check(CLI::Range(1, 4));

  SearchArgs search;
  auto* s_search = app.add_subcommand("embed-search", "Search for an embedding");
  s_search->add_option("--source", search.source)->required();
  s_search->add_option("--target", search.target)->required();
  s_search->add_option("--mode", search.mode)->check(CLI::IsMember({"semigroup", "monoid"}));
  s_search->add_flag("--dual", search.dual, "Embed into the dual of the target");
  s_search->add_flag("--no-prune", search.no_prune, "Disable signature pruning");

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Re-check a witness or a mu-certificate");
  s_verify->add_option("--witness", verify.witness);
  s_verify->add_option("--mu-cert", verify.mu_cert);
  s_verify->add_option("--source", verify.source);
  s_verify->add_option("--target", verify.target);
  s_verify->add_option("--mode", verify.mode)->check(CLI::IsMember({"semigroup", "monoid"}));
  s_verify->add_flag("--dual", verify.dual);
  s_verify->add_flag("--no-dual", verify.no_dual);

  MuArgs mu;
  auto* s_mu = app.add_subcommand("mu-cert", "Kernel/range certificate for rank <= 2 maps into dual Self(m)");
  s_mu->add_option("--n", mu.n)->check(CLI::Range(2, 5))->capture_default_str();
  s_mu->add_option("--m", mu.m, "Target points (default 2^n)");
  s_mu->add_option("--witness", mu.witness);

  ThresholdArgs th;
  auto* s_th = app.add_subcommand("threshold", "Least m with Self(n) embedding into dual Self(m)");
  s_th->add_option("--n", th.n)->capture_default_str();
  s_th->add_option("--gamma-max", th.gamma_max)->capture_default_str();
  s_th->add_flag("--allow-large", th.allow_large);
  s_th->add_option("--target-size", th.target_size, "Largest target table")->check(CLI::PositiveNumber);

  ClassifyArgs cl;
  auto* s_cl = app.add_subcommand("classify-acts", "SC-rank and matroid classification of free acts");
  s_cl->add_option("--max-order", cl.max_order)->capture_default_str();
  s_cl->add_option("--omega", cl.omega)->check(CLI::PositiveNumber)->capture_default_str();
  s_cl->add_option("--monoid", cl.monoid, "Classify one monoid instead of sweeping");

  IndepArgs ind;
  auto* s_ind = app.add_subcommand("indep", "Independence report for a subset");
  s_ind->add_option("--instance", ind.instance, "Instance JSON or file")->required();
  s_ind->add_option("--subset", ind.subset, "Element indices")->delimiter(',');
  s_ind->add_option("--basis", ind.basis, "Candidate S-basis for an SC-rank report")->delimiter(',');
  s_ind->add_option("--map-budget", ind.map_budget)->check(CLI::PositiveNumber);

  MatroidArgs mat;
  auto* s_mat = app.add_subcommand("matroid", "Exchange conditions over every subset");
  s_mat->add_option("--instance", mat.instance, "Instance JSON or file")->required();
  s_mat->add_flag("--small-conditions", mat.small_conditions);

  LinalArgs la;
  auto* s_la = app.add_subcommand("linal-checks", "Subspace lattice embeddings and projection pairs");
  s_la->add_option("--p", la.p)->capture_default_str();
  s_la->add_option("--n", la.n)->capture_default_str();
  s_la->add_option("--trials", la.trials)->capture_default_str();

  std::vector<const char*> argv{"dualemb"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kEstablished;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kEstablished;
  } catch (const CLI::ParseError& e) {
    err << "dualemb: " << e.what() << '\n';
    return kUsage;
  }
  c.deterministic = !no_det;
  c.command = app.get_subcommands().front()->get_name();
  if (c.jobs > 0) kernels::set_threads(c.jobs);

  Outcome o;
  try {
    if (s_build->parsed()) o = cmd_build(g, build);
    else if (s_search->parsed()) o = cmd_embed_search(g, search);
    else if (s_verify->parsed()) o = cmd_verify(g, verify);
    else if (s_mu->parsed()) o = cmd_mu_cert(g, mu);
    else if (s_th->parsed()) o = cmd_threshold(g, th);
    else if (s_cl->parsed()) o = cmd_classify(g, cl);
    else if (s_ind->parsed()) o = cmd_indep(g, ind);
    else if (s_mat->parsed()) o = cmd_matroid(g, mat);
    else o = cmd_linal(g, la);
  } catch (const CLI::ValidationError& e) {
    err << "dualemb: " << e.what() << '\n';
    return kUsage;
  } catch (const JsonInputError& e) {
    err << "dualemb: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "dualemb: budget exceeded: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::invalid_argument& e) {
    err << "dualemb: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "dualemb: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "dualemb: internal error: " << e.what() << '\n';
    return kInternal;
  }

  const Json artifact{{"config", to_json(c)}, {"result", o.result}, {"exit", o.exit}};
  if (!c.output.empty()) {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "dualemb: cannot write " << c.output << '\n';
      return kUsage;
    }
    f << artifact.dump(2) << '\n';
  }
  if (c.text) render_text(artifact, out);
  else if (c.output.empty()) out << artifact.dump(2) << '\n';
  return o.exit;
}

}  // namespace dualemb::cli
