#pragma once

// Data-parallel sweeps used by the verifiers. Every OpenMP kernel has a
// serial twin with identical results; tests compare the two and the
// benchmark target times them against each other.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dualemb::kernels {

using Elem = std::uint16_t;

struct Triple {
  std::size_t a, b, c;
  bool operator==(const Triple&) const = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Number of triples with (ab)c != a(bc) over a dense row-major Cayley table.
std::uint64_t associativity_violations(std::span<const Elem> table, std::size_t n);
std::uint64_t associativity_violations_serial(std::span<const Elem> table, std::size_t n);

/// Same check on `samples` pseudo-random triples; triple i is a pure function of (seed, i).
std::uint64_t sampled_associativity_violations(std::span<const Elem> table, std::size_t n, std::uint64_t samples,
                                               std::uint64_t seed);
std::uint64_t sampled_associativity_violations_serial(std::span<const Elem> table, std::size_t n,
                                                      std::uint64_t samples, std::uint64_t seed);

Triple sampled_triple(std::size_t n, std::uint64_t seed, std::uint64_t i);

/// Least violating triple in lexicographic order, if any.
std::optional<Triple> first_associativity_violation(std::span<const Elem> table, std::size_t n);

struct PairScan {
  std::uint64_t failures = 0;
  std::vector<std::pair<std::size_t, std::size_t>> examples;  // lexicographically least failures
};

/// Evaluates pred(a, b) over [0,rows) x [0,cols) and collects failures.
template <class Pred>
PairScan scan_pairs_serial(std::size_t rows, std::size_t cols, Pred pred, std::size_t max_examples) {
  PairScan out;
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b)
      if (!pred(a, b)) {
        ++out.failures;
        if (out.examples.size() < max_examples) out.examples.emplace_back(a, b);
      }
  return out;
}

template <class Pred>
PairScan scan_pairs(std::size_t rows, std::size_t cols, Pred pred, std::size_t max_examples) {
#ifdef _OPENMP
  const std::int64_t nrows = static_cast<std::int64_t>(rows);
  std::vector<PairScan> per_row(rows);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t ia = 0; ia < nrows; ++ia) {
    const auto a = static_cast<std::size_t>(ia);
    PairScan& local = per_row[a];
    for (std::size_t b = 0; b < cols; ++b)
      if (!pred(a, b)) {
        ++local.failures;
        if (local.examples.size() < max_examples) local.examples.emplace_back(a, b);
      }
  }
  PairScan out;
  for (auto& r : per_row) {
    out.failures += r.failures;
    for (auto& e : r.examples)
      if (out.examples.size() < max_examples) out.examples.push_back(e);
  }
  return out;
#else
  return scan_pairs_serial(rows, cols, pred, max_examples);
#endif
}

/// Indices i in [0,count) with !pred(i), ascending.
template <class Pred>
std::vector<std::size_t> failing_indices_serial(std::size_t count, Pred pred, std::size_t max_examples,
                                                std::uint64_t* failures = nullptr) {
  std::vector<std::size_t> out;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i)
    if (!pred(i)) {
      ++total;
      if (out.size() < max_examples) out.push_back(i);
    }
  if (failures) *failures = total;
  return out;
}

template <class Pred>
std::vector<std::size_t> failing_indices(std::size_t count, Pred pred, std::size_t max_examples,
                                         std::uint64_t* failures = nullptr) {
#ifdef _OPENMP
  const std::int64_t n = static_cast<std::int64_t>(count);
  std::uint64_t total = 0;
  std::vector<std::size_t> all;
#pragma omp parallel
  {
    std::vector<std::size_t> local;
    std::uint64_t local_total = 0;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < n; ++i)
      if (!pred(static_cast<std::size_t>(i))) {
        ++local_total;
        local.push_back(static_cast<std::size_t>(i));
      }
#pragma omp critical
    {
      total += local_total;
      all.insert(all.end(), local.begin(), local.end());
    }
  }
  std::sort(all.begin(), all.end());
  if (all.size() > max_examples) all.resize(max_examples);
  if (failures) *failures = total;
  return all;
#else
  return failing_indices_serial(count, pred, max_examples, failures);
#endif
}

/// Worker count used by the parallel kernels.
inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

}  // namespace dualemb::kernels
