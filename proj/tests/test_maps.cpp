#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace dualemb;

TEST_CASE("endomap rank and unrank are inverse") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::uint64_t count = endomap_count(n);
    for (std::uint64_t r = 0; r < count; ++r) CHECK(endomap_rank(endomap_unrank(n, r)) == r);
  }
  CHECK(endomap_rank(Endomap(3, {0, 0, 0})) == 0);
  CHECK(endomap_rank(Endomap(3, {2, 2, 2})) == 26);
  CHECK(endomap_rank(Endomap(3, {1, 0, 0})) == 9);
}

TEST_CASE("endomap construction validates images") {
  CHECK_THROWS_AS(Endomap(2, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Endomap(3, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(endomap_count(17), std::overflow_error);
}

TEST_CASE("compose_maps applies its first argument first") {
  const Endomap f(3, {1, 2, 0});
  const Endomap g(3, {0, 0, 2});
  const Endomap h = compose_maps(f, g);
  for (Point x = 0; x < 3; ++x) CHECK(h(x) == g(f(x)));
}

TEST_CASE("property: composition is associative with identity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto f = oracle::random_endomap(rng, n), g = oracle::random_endomap(rng, n),
               h = oracle::random_endomap(rng, n);
    CHECK(compose_maps(compose_maps(f, g), h) == compose_maps(f, compose_maps(g, h)));
    CHECK(compose_maps(f, Endomap::identity(n)) == f);
    CHECK(compose_maps(Endomap::identity(n), f) == f);
  }
}

TEST_CASE("property: partial composition agrees with the totalized maps") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto f = oracle::random_partial(rng, n), g = oracle::random_partial(rng, n);
    CHECK(compose_partial(f, g).totalize() == compose_maps(f.totalize(), g.totalize()));
  }
}

TEST_CASE("binrel rank round trip and bit layout") {
  for (std::uint64_t r = 0; r < 512; ++r) CHECK(binrel_rank(binrel_unrank(3, r)) == r);
  BinRel a(3);
  a.set(1, 2);
  CHECK(binrel_rank(a) == (std::uint64_t{1} << 5));
}

TEST_CASE("property: relation composition matches the definition") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto a = oracle::random_binrel(rng, n), b = oracle::random_binrel(rng, n);
    CHECK(compose_rel(a, b) == oracle::compose_rel(a, b));
  }
}

TEST_CASE("property: transposition is an involutive anti-homomorphism") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto a = oracle::random_binrel(rng, n), b = oracle::random_binrel(rng, n);
    CHECK(transpose(transpose(a)) == a);
    CHECK(transpose(compose_rel(a, b)) == compose_rel(transpose(b), transpose(a)));
  }
}

TEST_CASE("property: graphs turn map composition into relation composition") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto f = oracle::random_endomap(rng, n), g = oracle::random_endomap(rng, n);
    CHECK(BinRel::graph(compose_maps(f, g)) == compose_rel(BinRel::graph(g), BinRel::graph(f)));
  }
}

TEST_CASE("kernel and range") {
  const auto kr = kernel_and_range(Endomap(4, {2, 0, 2, 0}));
  CHECK(kr.range == std::vector<Point>{0, 2});
  CHECK(kr.kernel.blocks() == std::vector<std::vector<Point>>{{0, 2}, {1, 3}});
  CHECK(range_mask(Endomap(4, {2, 0, 2, 0})) == 0b101);
}

TEST_CASE("equivalence relations") {
  const auto e = EquivRelation::from_labels({7, 3, 7, 9});
  CHECK(e.block_count() == 3);
  CHECK(e.related(0, 2));
  CHECK_FALSE(e.related(0, 1));
  CHECK(EquivRelation::equality(4).is_finer_than(e));
  CHECK(e.is_finer_than(EquivRelation::coarse(4)));
  CHECK_FALSE(EquivRelation::coarse(4).is_finer_than(e));
  CHECK(theta_of_subset(0b0011, 4).blocks() == std::vector<std::vector<Point>>{{0, 1}, {2, 3}});
  CHECK(theta_of_subset(0, 4).block_count() == 1);
  CHECK(theta_of_subset(0b1111, 4).block_count() == 1);
}

TEST_CASE("separating idempotents exist for every pair of distinct two-block kernels") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::set<EquivRelation> kernels;
    for (PointMask z = 1; z + 1 < (PointMask{1} << n); ++z) kernels.insert(theta_of_subset(z, n));
    for (const auto& a : kernels)
      for (const auto& b : kernels) {
        if (a == b) continue;
        const auto [f, g] = separating_idempotents(a, b);
        CHECK(f.is_idempotent());
        CHECK(g.is_idempotent());
        CHECK(f.rank() == 2);
        CHECK(g.rank() == 2);
        CHECK(kernel_and_range(f).kernel == a);
        CHECK(kernel_and_range(g).kernel == b);
        CHECK(compose_maps(g, f).rank() == 1);
      }
  }
  CHECK_THROWS_AS(separating_idempotents(theta_of_subset(1, 3), theta_of_subset(1, 3)), std::invalid_argument);
}

TEST_CASE("property: inverse images reverse composition") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    const auto f = oracle::random_endomap(rng, n), g = oracle::random_endomap(rng, n);
    CHECK(inverse_image_map(compose_maps(f, g)) == compose_maps(inverse_image_map(g), inverse_image_map(f)));
  }
  // f^{-1}({0}) for f = (1, 0, 0) is {1, 2}
  CHECK(inverse_image_map(Endomap(3, {1, 0, 0}))(0b001) == 0b110);
}

TEST_CASE("exhaustive: kernels grow and ranges shrink under composition") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::uint64_t count = endomap_count(n);
    for (std::uint64_t a = 0; a < count; ++a) {
      const Endomap f = endomap_unrank(n, a);
      const auto kf = kernel_and_range(f).kernel;
      for (std::uint64_t b = 0; b < count; ++b) {
        const Endomap g = endomap_unrank(n, b);
        const Endomap gf = compose_maps(f, g);
        CHECK(kf.is_finer_than(kernel_and_range(gf).kernel));
        CHECK((range_mask(gf) & ~range_mask(g)) == 0);
      }
    }
  }
}

TEST_CASE("exhaustive: theta of a subset and of its complement agree") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const PointMask all = (PointMask{1} << n) - 1;
    for (PointMask z = 0; z <= all; ++z) {
      CHECK(theta_of_subset(z, n) == theta_of_subset(all & ~z, n));
      CHECK((theta_of_subset(z, n).block_count() == 2) == (z != 0 && z != all));
    }
  }
}

TEST_CASE("exhaustive: transposition on Rel(2)") {
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      const BinRel x = binrel_unrank(2, a), y = binrel_unrank(2, b);
      CHECK(transpose(compose_rel(x, y)) == compose_rel(transpose(y), transpose(x)));
    }
}

TEST_CASE("exhaustive: inverse images are injective and reverse composition") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::uint64_t count = endomap_count(n);
    std::set<Endomap> images;
    for (std::uint64_t a = 0; a < count; ++a) {
      const Endomap f = endomap_unrank(n, a);
      images.insert(inverse_image_map(f));
      for (std::uint64_t b = 0; b < count; ++b) {
        const Endomap g = endomap_unrank(n, b);
        CHECK(inverse_image_map(compose_maps(f, g)) == compose_maps(inverse_image_map(g), inverse_image_map(f)));
      }
    }
    CHECK(images.size() == count);
  }
}
