#include <doctest.h>

#include <random>

#include "dualemb/kernels.hpp"
#include "oracles.hpp"

using namespace dualemb;

namespace {

std::vector<kernels::Elem> random_table(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<kernels::Elem> d(0, static_cast<kernels::Elem>(n - 1));
  std::vector<kernels::Elem> t(n * n);
  for (auto& v : t) v = d(rng);
  return t;
}

std::uint64_t brute_violations(const std::vector<kernels::Elem>& t, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]]) ++v;
  return v;
}

}  // namespace

TEST_CASE("associativity kernels agree with each other and with a triple loop") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const auto t = random_table(rng, n);
    const auto expect = brute_violations(t, n);
    CHECK(kernels::associativity_violations(t, n) == expect);
    CHECK(kernels::associativity_violations_serial(t, n) == expect);
    const auto first = kernels::first_associativity_violation(t, n);
    CHECK(first.has_value() == (expect > 0));
  }
  const auto s = named_monoid(MonoidKind::rel, 2);
  CHECK(kernels::associativity_violations(s.table(), s.size()) == 0);
}

TEST_CASE("sampled associativity is reproducible and thread independent") {
  std::mt19937_64 rng(32);
  const auto t = random_table(rng, 12);
  const auto a = kernels::sampled_associativity_violations(t, 12, 20000, 7);
  CHECK(a == kernels::sampled_associativity_violations_serial(t, 12, 20000, 7));
  CHECK(a == kernels::sampled_associativity_violations(t, 12, 20000, 7));
  CHECK(kernels::sampled_triple(12, 7, 5) == kernels::sampled_triple(12, 7, 5));
  const auto s = named_monoid(MonoidKind::full, 3);
  CHECK(kernels::sampled_associativity_violations(s.table(), s.size(), 10000, 1) == 0);
}

TEST_CASE("scan_pairs and failing_indices match their serial twins") {
  auto pred = [](std::size_t a, std::size_t b) { return (a * 7 + b * 3) % 5 != 0; };
  for (std::size_t rows : {1u, 7u, 40u}) {
    const auto par = kernels::scan_pairs(rows, 33, pred, 10);
    const auto ser = kernels::scan_pairs_serial(rows, 33, pred, 10);
    CHECK(par.failures == ser.failures);
    CHECK(par.examples == ser.examples);
  }
  auto single = [](std::size_t i) { return i % 13 != 4; };
  std::uint64_t fp = 0, fs = 0;
  const auto par = kernels::failing_indices(5000, single, 20, &fp);
  const auto ser = kernels::failing_indices_serial(5000, single, 20, &fs);
  CHECK(par == ser);
  CHECK(fp == fs);
  CHECK(fs == 385);
}

TEST_CASE("thread count changes nothing") {
  kernels::set_threads(3);
  std::mt19937_64 rng(33);
  const auto t = random_table(rng, 10);
  const auto three = kernels::associativity_violations(t, 10);
  kernels::set_threads(1);
  CHECK(kernels::associativity_violations(t, 10) == three);
  kernels::set_threads(kernels::max_threads());
}
