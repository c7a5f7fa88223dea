#include <bit>
#include <stdexcept>

#include "dualemb/embed.hpp"

namespace dualemb {

namespace {

std::string mask_to_string(PointMask m) {
  std::string s = "{";
  bool first = true;
  for (PointMask r = m; r; r &= r - 1) {
    if (!first) s += ",";
    s += std::to_string(std::countr_zero(r));
    first = false;
  }
  return s + "}";
}

void record(LemmaCheck& c, bool ok, const std::string& what) {
  ++c.checked;
  if (!ok) {
    c.passed = false;
    if (c.counterexamples.size() < 16) c.counterexamples.push_back(what);
  }
}

bool subset(PointMask a, PointMask b) { return (a & ~b) == 0; }

}  // namespace

bool MuCertificate::all_passed() const {
  if (!witness_verified || !well_defined || !partition_disjoint) return false;
  for (MuLemma l : kAllMuLemmas) {
    auto it = lemmas.find(l);
    if (it == lemmas.end() || !it->second.passed) return false;
  }
  return bound <= gamma_size && partition_cover <= gamma_size;
}

MuCertificate mu_certificate(std::size_t n, std::size_t m, const EmbeddingWitness& w) {
  if (n < 2) throw std::invalid_argument("mu_certificate: need at least two source points");
  if (n > 5) throw std::invalid_argument("mu_certificate: at most five source points");
  if (!w.dual_target) throw std::invalid_argument("mu_certificate: witness must target the dual monoid");

  const TransformationOracle target(m);
  const auto maps = named_endomaps(MonoidKind::self_le2, n);
  const FiniteSemigroup source = named_monoid(MonoidKind::self_le2, n, ClosureBudget{kMaxSemigroupSize, ~0ULL});

  MuCertificate cert;
  cert.n = n;
  cert.gamma_size = m;
  cert.witness.source_ref = source.name();
  cert.witness.target_ref = target.name();
  cert.witness.mode = EmbedMode::semigroup;
  cert.witness.dual_target = true;

  if (w.map.size() == maps.size()) {
    cert.witness.map = w.map;
  } else if (w.map.size() == endomap_count(n)) {
    for (const Endomap& f : maps) cert.witness.map.push_back(w.map[endomap_rank(f)]);
  } else {
    throw std::out_of_range("mu_certificate: witness length matches neither the full nor the rank <= 2 maps");
  }

  cert.verification = verify_embedding(source, target, cert.witness);
  cert.witness_verified = cert.verification.passed();

  // Ranges of the embedded images.
  std::vector<PointMask> rng(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) rng[i] = range_mask(endomap_unrank(m, cert.witness.map[i]));
  std::vector<EquivRelation> ker(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) ker[i] = kernel_and_range(maps[i]).kernel;

  for (MuLemma l : kAllMuLemmas) cert.lemmas[l] = LemmaCheck{};

  // Kernel implication over all pairs; it also yields well-definedness.
  LemmaCheck& kr = cert.lemmas[MuLemma::kernel_range];
  for (std::size_t f = 0; f < maps.size(); ++f)
    for (std::size_t g = 0; g < maps.size(); ++g) {
      if (!ker[f].is_finer_than(ker[g])) continue;
      const bool ok = subset(rng[g], rng[f]);
      record(kr, ok, "f=" + maps[f].to_string() + " g=" + maps[g].to_string());
      if (!ok && ker[f] == ker[g]) cert.well_defined = false;
    }

  // mu as a table, one entry per kernel, first representative wins.
  std::map<EquivRelation, PointMask> mu;
  for (std::size_t i = 0; i < maps.size(); ++i) mu.emplace(ker[i], rng[i]);
  for (const auto& [k, img] : mu) cert.mu.push_back(MuEntry{k, img});

  const EquivRelation one = EquivRelation::coarse(n);
  const PointMask mu_one = mu.at(one);
  cert.mu_one_size = static_cast<std::size_t>(std::popcount(mu_one));

  LemmaCheck& oe = cert.lemmas[MuLemma::order_embedding];
  LemmaCheck& meet = cert.lemmas[MuLemma::meet];
  for (const auto& [a, ma] : mu)
    for (const auto& [b, mb] : mu) {
      const bool lhs = a.is_finer_than(b);
      const bool rhs = subset(mb, ma);
      record(oe, lhs == rhs, "alpha=" + a.to_string() + " beta=" + b.to_string());
      if (a != b && a.block_count() == 2 && b.block_count() == 2)
        record(meet, (ma & mb) == mu_one,
               "alpha=" + a.to_string() + " beta=" + b.to_string() + " meet=" + mask_to_string(ma & mb));
    }

  record(cert.lemmas[MuLemma::mu_one_size], cert.mu_one_size >= 2, "mu(1)=" + mask_to_string(mu_one));

  LemmaCheck& ie = cert.lemmas[MuLemma::idempotent_excess];
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].rank() == 2 && maps[i].is_idempotent())
      record(ie, std::popcount(rng[i] & ~mu_one) >= 2, "e=" + maps[i].to_string());

  // Classes mu(theta_X) \ mu(1) for nonempty X avoiding the last point.
  const std::size_t parts = (std::size_t{1} << (n - 1)) - 1;
  PointMask used = 0;
  std::uint64_t cover = 0;
  for (PointMask x = 1; x <= parts; ++x) {
    const PointMask d = mu.at(theta_of_subset(x, n)) & ~mu_one;
    if (used & d) cert.partition_disjoint = false;
    used |= d;
    cover += static_cast<std::uint64_t>(std::popcount(d));
  }
  cert.bound = cert.mu_one_size + 2 * parts;
  cert.partition_cover = cert.mu_one_size + cover;
  return cert;
}

// ---------------------------------------------------------------- threshold

ThresholdTable selfmap_dual_threshold(std::size_t n, std::size_t gamma_max, const SearchOptions& base,
                                      bool allow_large, ClosureBudget target_budget) {
  if (n >= 3 && !allow_large) throw std::invalid_argument("selfmap_dual_threshold: n >= 3 needs an explicit override");
  if (n > 4) throw std::invalid_argument("selfmap_dual_threshold: at most four source points");

  ThresholdTable table;
  table.n = n;
  table.gamma_max = gamma_max;

  const std::size_t expected = n <= 1 ? 1 : std::size_t{1} << n;
  const FiniteSemigroup semigroup_source = named_monoid(n >= 2 ? MonoidKind::self_le2 : MonoidKind::full, n);
  const FiniteSemigroup monoid_source = named_monoid(MonoidKind::full, n);

  for (std::size_t m = std::max<std::size_t>(n, 1); m <= gamma_max; ++m) {
    ThresholdRow row;
    row.m = m;
    std::optional<FiniteSemigroup> target;
    try {
      target = named_monoid(MonoidKind::full, m, target_budget);
    } catch (const BudgetExceeded& e) {
      row.note = e.what();
    }
    if (target) {
      SearchOptions opt = base;
      opt.dual_target = true;
      opt.mode = EmbedMode::semigroup;
      const SearchResult rs = search_embedding(semigroup_source, *target, opt);
      opt.mode = EmbedMode::monoid;
      const SearchResult rm = search_embedding(monoid_source, *target, opt);
      row.semigroup = rs.outcome;
      row.monoid = rm.outcome;
      row.semigroup_nodes = rs.stats.nodes;
      row.monoid_nodes = rm.stats.nodes;
    }
    for (SearchOutcome o : {row.semigroup, row.monoid}) {
      if (o == SearchOutcome::inconclusive) {
        table.conclusive = false;
        continue;
      }
      if ((o == SearchOutcome::found) != (m >= expected)) table.consistent = false;
    }
    if (row.semigroup == SearchOutcome::found && !table.min_semigroup) table.min_semigroup = m;
    if (row.monoid == SearchOutcome::found && !table.min_monoid) table.min_monoid = m;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace dualemb
