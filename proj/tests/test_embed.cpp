#include <doctest.h>

#include <bit>
#include <random>

#include "dualemb/embed.hpp"
#include "oracles.hpp"

using namespace dualemb;

namespace {

SearchOptions opts(bool dual, EmbedMode mode = EmbedMode::semigroup) {
  SearchOptions o;
  o.dual_target = dual;
  o.mode = mode;
  return o;
}

}  // namespace

TEST_CASE("search agrees with brute force on random small pairs") {
  std::mt19937_64 rng(41);
  int compared = 0;
  while (compared < 60) {
    const auto s = oracle::random_transformation_semigroup(rng, 3, 1 + compared % 2, 4);
    const auto t = oracle::random_transformation_semigroup(rng, 3, 2, 7);
    if (!s || !t) continue;
    ++compared;
    for (bool dual : {false, true})
      for (bool prune : {false, true}) {
        SearchOptions o = opts(dual);
        o.prune = prune;
        const auto r = search_embedding(*s, *t, o);
        REQUIRE(r.outcome != SearchOutcome::inconclusive);
        CHECK((r.outcome == SearchOutcome::found) == oracle::embedding_exists(*s, *t, dual, false));
        if (r.witness) CHECK(verify_embedding(*s, TableOracle(*t), *r.witness).passed());
        if (r.outcome == SearchOutcome::none) CHECK(r.stats.complete);
      }
  }
}

TEST_CASE("monoid mode requires identities to match") {
  const auto z2 = cyclic_group(2).semigroup();
  const auto full2 = named_monoid(MonoidKind::full, 2);
  const auto r = search_embedding(z2, full2, opts(false, EmbedMode::monoid));
  REQUIRE(r.outcome == SearchOutcome::found);
  CHECK(r.witness->map[*z2.identity()] == *full2.identity());
  CHECK(oracle::embedding_exists(z2, full2, false, true));
  // semilattice {1, a} into Z2 has no monoid embedding
  const auto sl = two_element_semilattice().semigroup();
  CHECK(search_embedding(sl, z2, opts(false, EmbedMode::monoid)).outcome == SearchOutcome::none);
  CHECK(search_embedding(z2, sl, opts(false, EmbedMode::monoid)).outcome == SearchOutcome::none);
  CHECK(search_embedding(z2, sl, opts(false)).outcome == SearchOutcome::none);
}

TEST_CASE("size bound and sharp threshold for two points") {
  const auto src = named_monoid(MonoidKind::full, 2);
  CHECK(search_embedding(named_monoid(MonoidKind::full, 3), src, opts(false)).outcome == SearchOutcome::none);
  CHECK(search_embedding(src, named_monoid(MonoidKind::full, 2), opts(true)).outcome == SearchOutcome::none);
  CHECK(search_embedding(src, named_monoid(MonoidKind::full, 3), opts(true)).outcome == SearchOutcome::none);
  const auto r = search_embedding(src, named_monoid(MonoidKind::full, 4), opts(true));
  CHECK(r.outcome == SearchOutcome::found);
  // without the dual, Self(2) sits inside Self(2) trivially
  CHECK(search_embedding(src, src, opts(false)).outcome == SearchOutcome::found);
}

TEST_CASE("a tiny node budget gives inconclusive, never none") {
  SearchOptions o = opts(true);
  o.node_budget = 3;
  const auto r = search_embedding(named_monoid(MonoidKind::full, 2), named_monoid(MonoidKind::full, 3), o);
  CHECK(r.outcome == SearchOutcome::inconclusive);
  CHECK_FALSE(r.stats.complete);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("deterministic witness does not depend on the worker count") {
  const auto tgt = named_monoid(MonoidKind::full, 4);
  SearchOptions o = opts(true);
  o.jobs = 1;
  const auto one = search_embedding(named_monoid(MonoidKind::full, 2), tgt, o);
  o.jobs = 4;
  const auto four = search_embedding(named_monoid(MonoidKind::full, 2), tgt, o);
  REQUIRE(one.witness);
  REQUIRE(four.witness);
  CHECK(one.witness->map == four.witness->map);
}

TEST_CASE("canonical powerset witness") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto w = canonical_powerset_witness(n);
    CHECK(w.mode == EmbedMode::monoid);
    CHECK(w.dual_target);
    const auto rep = verify_embedding(named_monoid(MonoidKind::full, n), TransformationOracle(std::size_t{1} << n), w);
    CHECK(rep.passed());
    const auto ser =
        verify_embedding_serial(named_monoid(MonoidKind::full, n), TransformationOracle(std::size_t{1} << n), w);
    CHECK(ser.law_failures == rep.law_failures);
  }
  // not a homomorphism into the undualized target once n >= 2
  auto w = canonical_powerset_witness(2);
  w.dual_target = false;
  const auto bad = verify_embedding(named_monoid(MonoidKind::full, 2), TransformationOracle(4), w);
  CHECK_FALSE(bad.homomorphic);
  CHECK(bad.injective);
  CHECK(!bad.violating_pairs.empty());
}

TEST_CASE("verification reports collisions and shape errors") {
  const auto s = named_monoid(MonoidKind::full, 2);
  const auto t = named_monoid(MonoidKind::full, 4);
  EmbeddingWitness w;
  w.map = {0, 0, 0, 0};
  const auto r = verify_embedding(s, TableOracle(t), w);
  CHECK_FALSE(r.injective);
  CHECK(r.homomorphic);
  CHECK(r.collisions.size() == 3);
  w.map = {0, 1};
  CHECK_THROWS_AS(verify_embedding(s, TableOracle(t), w), std::out_of_range);
  w.map = {0, 1, 2, 300};
  CHECK_THROWS_AS(verify_embedding(s, TableOracle(t), w), std::out_of_range);
}

TEST_CASE("transformation oracle agrees with the table") {
  const auto t = named_monoid(MonoidKind::full, 3);
  const TransformationOracle o(3);
  for (Elem a = 0; a < 27; ++a)
    for (Elem b = 0; b < 27; ++b) CHECK(o.multiply(a, b) == t.mul(a, b));
  CHECK(o.identity() == t.identity());
  CHECK_FALSE(o.contains(27));
  CHECK(TransformationOracle(16).contains(~std::uint64_t{0}));
}

TEST_CASE("mu certificate on the canonical witnesses") {
  for (std::size_t n : {2u, 3u}) {
    const std::size_t m = std::size_t{1} << n;
    const auto cert = mu_certificate(n, m, canonical_powerset_witness(n));
    CHECK(cert.witness_verified);
    CHECK(cert.well_defined);
    CHECK(cert.partition_disjoint);
    for (auto l : kAllMuLemmas) CHECK(cert.lemmas.at(l).passed);
    CHECK(cert.bound == m);
    CHECK(cert.partition_cover <= m);
    CHECK(cert.all_passed());
  }
}

TEST_CASE("mu certificate flags a broken witness") {
  auto w = canonical_powerset_witness(2);
  w.map[3] = w.map[0];
  const auto cert = mu_certificate(2, 4, w);
  CHECK_FALSE(cert.witness_verified);
  CHECK_FALSE(cert.all_passed());
  CHECK_THROWS_AS(mu_certificate(1, 2, w), std::invalid_argument);
  w.dual_target = false;
  CHECK_THROWS_AS(mu_certificate(2, 4, w), std::invalid_argument);
}

TEST_CASE("threshold table") {
  const auto t = selfmap_dual_threshold(2, 4, SearchOptions{});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].semigroup == SearchOutcome::none);
  CHECK(t.rows[1].semigroup == SearchOutcome::none);
  CHECK(t.rows[2].semigroup == SearchOutcome::found);
  CHECK(t.min_semigroup == 4u);
  CHECK(t.min_monoid == 4u);
  CHECK(t.conclusive);
  CHECK(t.consistent);
  const auto one = selfmap_dual_threshold(1, 2, SearchOptions{});
  CHECK(one.min_monoid == 1u);
  CHECK_THROWS_AS(selfmap_dual_threshold(3, 8, SearchOptions{}), std::invalid_argument);
}

namespace {

// Kernel inclusion between sources forces the reverse range inclusion between images.
void check_kernel_range(std::size_t n, std::size_t m, const EmbeddingWitness& w) {
  const auto maps = named_endomaps(MonoidKind::self_le2, n);
  REQUIRE(w.map.size() == maps.size());
  std::vector<PointMask> ranges;
  for (auto idx : w.map) ranges.push_back(range_mask(endomap_unrank(m, idx)));
  for (std::size_t f = 0; f < maps.size(); ++f)
    for (std::size_t g = 0; g < maps.size(); ++g)
      if (kernel_and_range(maps[f]).kernel.is_finer_than(kernel_and_range(maps[g]).kernel))
        CHECK((ranges[g] & ~ranges[f]) == 0);
}

}  // namespace

TEST_CASE("searched dual embeddings of the rank <= 2 maps reverse kernel inclusion") {
  const auto src2 = named_monoid(MonoidKind::self_le2, 2);
  for (std::size_t m : {4u, 5u}) {
    const auto tgt = named_monoid(MonoidKind::full, m);
    const auto r = search_embedding(src2, tgt, opts(true));
    REQUIRE(r.witness);
    REQUIRE(verify_embedding(src2, TableOracle(tgt), *r.witness).passed());
    check_kernel_range(2, m, *r.witness);
    const auto cert = mu_certificate(2, m, *r.witness);
    CHECK(cert.all_passed());
  }
  const auto cert3 = mu_certificate(3, 8, canonical_powerset_witness(3));
  check_kernel_range(3, 8, cert3.witness);
}

TEST_CASE("mu bound recomputed from the witness") {
  for (std::size_t n : {2u, 3u}) {
    const std::size_t m = std::size_t{1} << n;
    const auto cert = mu_certificate(n, m, canonical_powerset_witness(n));
    // the coarse kernel belongs to the constant maps; mu(1) is the range of any of their images
    const auto maps = named_endomaps(MonoidKind::self_le2, n);
    std::size_t mu_one = 0;
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps[i].rank() == 1) mu_one = std::popcount(range_mask(endomap_unrank(m, cert.witness.map[i])));
    CHECK(cert.mu_one_size == mu_one);
    CHECK(cert.bound == mu_one + 2 * ((std::uint64_t{1} << (n - 1)) - 1));
    // identical inputs give identical certificates
    const auto again = mu_certificate(n, m, canonical_powerset_witness(n));
    CHECK(again.bound == cert.bound);
    CHECK(again.partition_cover == cert.partition_cover);
    CHECK(again.witness == cert.witness);
  }
}
