#include "dualemb/kernels.hpp"

namespace dualemb::kernels {

namespace {

inline bool associative_at(std::span<const Elem> t, std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  return t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
}

}  // namespace

std::uint64_t associativity_violations_serial(std::span<const Elem> table, std::size_t n) {
  std::uint64_t bad = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab * n + c] != table[a * n + table[b * n + c]]) ++bad;
    }
  return bad;
}

std::uint64_t associativity_violations(std::span<const Elem> table, std::size_t n) {
#ifdef _OPENMP
  std::uint64_t bad = 0;
  const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for reduction(+ : bad) schedule(static)
  for (std::int64_t ia = 0; ia < nn; ++ia) {
    const auto a = static_cast<std::size_t>(ia);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = table[a * n + b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab * n + c] != table[a * n + table[b * n + c]]) ++bad;
    }
  }
  return bad;
#else
  return associativity_violations_serial(table, n);
#endif
}

Triple sampled_triple(std::size_t n, std::uint64_t seed, std::uint64_t i) {
  const std::uint64_t h0 = splitmix64(seed ^ splitmix64(3 * i));
  const std::uint64_t h1 = splitmix64(h0 + 1);
  const std::uint64_t h2 = splitmix64(h0 + 2);
  return {static_cast<std::size_t>(h0 % n), static_cast<std::size_t>(h1 % n), static_cast<std::size_t>(h2 % n)};
}

std::uint64_t sampled_associativity_violations_serial(std::span<const Elem> table, std::size_t n,
                                                      std::uint64_t samples, std::uint64_t seed) {
  if (n == 0) return 0;
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Triple t = sampled_triple(n, seed, i);
    if (!associative_at(table, n, t.a, t.b, t.c)) ++bad;
  }
  return bad;
}

std::uint64_t sampled_associativity_violations(std::span<const Elem> table, std::size_t n, std::uint64_t samples,
                                               std::uint64_t seed) {
#ifdef _OPENMP
  if (n == 0) return 0;
  std::uint64_t bad = 0;
  const std::int64_t ns = static_cast<std::int64_t>(samples);
#pragma omp parallel for reduction(+ : bad) schedule(static)
  for (std::int64_t i = 0; i < ns; ++i) {
    const Triple t = sampled_triple(n, seed, static_cast<std::uint64_t>(i));
    if (!associative_at(table, n, t.a, t.b, t.c)) ++bad;
  }
  return bad;
#else
  return sampled_associativity_violations_serial(table, n, samples, seed);
#endif
}

std::optional<Triple> first_associativity_violation(std::span<const Elem> table, std::size_t n) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!associative_at(table, n, a, b, c)) return Triple{a, b, c};
  return std::nullopt;
}

}  // namespace dualemb::kernels
