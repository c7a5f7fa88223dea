#include "dualemb/embed.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "dualemb/kernels.hpp"

namespace dualemb {

std::string to_string(EmbedMode m) { return m == EmbedMode::monoid ? "monoid" : "semigroup"; }

EmbedMode parse_embed_mode(const std::string& s) {
  if (s == "monoid") return EmbedMode::monoid;
  if (s == "semigroup") return EmbedMode::semigroup;
  throw std::invalid_argument("unknown embedding mode '" + s + "'");
}

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "witness";
    case SearchOutcome::none: return "none";
    case SearchOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<std::uint64_t> TableOracle::identity() const {
  if (auto e = s_->identity()) return *e;
  return std::nullopt;
}

TransformationOracle::TransformationOracle(std::size_t m) : m_(m) {
  if (m == 0) throw std::invalid_argument("TransformationOracle: need at least one point");
  if (m > 16) throw std::invalid_argument("TransformationOracle: at most 16 points");
  identity_ = endomap_rank(Endomap::identity(m));
  try {
    count_ = endomap_count(m);
    saturated_ = false;
  } catch (const std::overflow_error&) {
    saturated_ = true;
  }
}

bool TransformationOracle::contains(std::uint64_t a) const { return saturated_ || a < count_; }

std::uint64_t TransformationOracle::multiply(std::uint64_t a, std::uint64_t b) const {
  // a*b = a after b
  const Endomap fa = endomap_unrank(m_, a);
  const Endomap fb = endomap_unrank(m_, b);
  return endomap_rank(compose_maps(fb, fa));
}

// ---------------------------------------------------------------- verification

namespace {

template <class Scan>
VerificationReport verify_with(const FiniteSemigroup& source, const ProductOracle& target, const EmbeddingWitness& w,
                               std::size_t max_report, Scan scan) {
  if (w.map.size() != source.size())
    throw std::out_of_range("verify_embedding: witness has " + std::to_string(w.map.size()) +
                            " images for a source of size " + std::to_string(source.size()));
  for (std::size_t a = 0; a < w.map.size(); ++a)
    if (!target.contains(w.map[a]))
      throw std::out_of_range("verify_embedding: image of element " + std::to_string(a) + " outside target");

  VerificationReport rep;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> by_image(w.map.size());
  for (std::size_t a = 0; a < w.map.size(); ++a) by_image[a] = {w.map[a], a};
  std::sort(by_image.begin(), by_image.end());
  for (std::size_t i = 1; i < by_image.size(); ++i)
    if (by_image[i].first == by_image[i - 1].first) {
      rep.injective = false;
      if (rep.collisions.size() < max_report) rep.collisions.emplace_back(by_image[i - 1].second, by_image[i].second);
    }

  const bool dual = w.dual_target;
  const auto law = [&](std::size_t a, std::size_t b) {
    const std::uint64_t lhs = w.map[source.mul(static_cast<Elem>(a), static_cast<Elem>(b))];
    const std::uint64_t rhs = dual ? target.multiply(w.map[b], w.map[a]) : target.multiply(w.map[a], w.map[b]);
    return lhs == rhs;
  };
  kernels::PairScan s = scan(source.size(), law, max_report);
  rep.law_failures = s.failures;
  rep.homomorphic = s.failures == 0;
  for (auto [a, b] : s.examples) rep.violating_pairs.emplace_back(a, b);

  if (w.mode == EmbedMode::monoid) {
    const auto si = source.identity();
    const auto ti = target.identity();
    rep.identity_preserved = si && ti && w.map[*si] == *ti;
  }
  return rep;
}

}  // namespace

VerificationReport verify_embedding(const FiniteSemigroup& source, const ProductOracle& target,
                                    const EmbeddingWitness& w, std::size_t max_report) {
  return verify_with(source, target, w, max_report, [](std::size_t n, auto law, std::size_t k) {
    return kernels::scan_pairs(n, n, law, k);
  });
}

VerificationReport verify_embedding_serial(const FiniteSemigroup& source, const ProductOracle& target,
                                           const EmbeddingWitness& w, std::size_t max_report) {
  return verify_with(source, target, w, max_report, [](std::size_t n, auto law, std::size_t k) {
    return kernels::scan_pairs_serial(n, n, law, k);
  });
}

// ---------------------------------------------------------------- search

namespace {

using Clock = std::chrono::steady_clock;

enum class Stop { none, found, cut };

struct SharedControl {
  std::atomic<std::size_t> best_branch{std::numeric_limits<std::size_t>::max()};
  std::atomic<bool> halt{false};
  bool deterministic = true;
  std::optional<Clock::time_point> deadline;
};

struct Level {
  Elem generator;
  std::vector<Elem> candidates;
  std::uint64_t filtered = 0;
};

class Engine {
 public:
  Engine(const FiniteSemigroup& s, const FiniteSemigroup& t, const std::vector<ElementSignature>& ssig,
         const std::vector<ElementSignature>& tsig, const std::vector<Level>& levels, bool prune)
      : s_(&s),
        t_(&t),
        ssig_(&ssig),
        tsig_(&tsig),
        levels_(&levels),
        prune_(prune),
        image_(s.size(), -1),
        preimage_(t.size(), -1) {
    defined_.reserve(s.size());
  }

  bool assign(Elem s, Elem t) {
    if (image_[s] >= 0) return image_[s] == t;
    if (preimage_[t] >= 0) return false;
    if (prune_ && !compatible(s, t)) {
      ++pruned_;
      return false;
    }
    image_[s] = t;
    preimage_[t] = s;
    defined_.push_back(s);
    return true;
  }

  bool propagate(std::size_t cursor) {
    for (; cursor < defined_.size(); ++cursor) {
      const Elem c = defined_[cursor];
      const Elem ic = static_cast<Elem>(image_[c]);
      for (std::size_t j = 0; j < defined_.size(); ++j) {
        const Elem d = defined_[j];
        const Elem id = static_cast<Elem>(image_[d]);
        if (!assign(s_->mul(c, d), t_->mul(ic, id))) return false;
        if (!assign(s_->mul(d, c), t_->mul(id, ic))) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (defined_.size() > mark) {
      const Elem s = defined_.back();
      preimage_[image_[s]] = -1;
      image_[s] = -1;
      defined_.pop_back();
    }
  }

  std::size_t first_open_level(std::size_t level) const {
    while (level < levels_->size() && image_[(*levels_)[level].generator] >= 0) ++level;
    return level;
  }

  Stop dfs(std::size_t level, std::uint64_t budget, const SharedControl& ctl, std::size_t branch) {
    level = first_open_level(level);
    if (level == levels_->size()) {
      if (defined_.size() != s_->size()) throw std::logic_error("search_embedding: generators do not generate source");
      return Stop::found;
    }
    const Level& lv = (*levels_)[level];
    pruned_ += lv.filtered;
    for (Elem t : lv.candidates) {
      if (preimage_[t] >= 0) continue;
      if (interrupted(ctl, branch)) return Stop::cut;
      if (++nodes_ > budget) return Stop::cut;
      const std::size_t mark = defined_.size();
      if (assign(lv.generator, t) && propagate(mark)) {
        const Stop r = dfs(level + 1, budget, ctl, branch);
        if (r != Stop::none) return r;
      }
      undo(mark);
    }
    return Stop::none;
  }

  bool interrupted(const SharedControl& ctl, std::size_t branch) {
    if (ctl.halt.load(std::memory_order_relaxed)) return true;
    if (ctl.deterministic && branch > ctl.best_branch.load(std::memory_order_relaxed)) return true;
    if (ctl.deadline && (nodes_ & 1023) == 0 && Clock::now() > *ctl.deadline) return true;
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t pruned() const { return pruned_; }
  void count_node() { ++nodes_; }
  void add_pruned(std::uint64_t k) { pruned_ += k; }
  const std::vector<std::int32_t>& image() const { return image_; }
  std::size_t defined_count() const { return defined_.size(); }

 private:
  bool compatible(Elem s, Elem t) const {
    const auto& a = (*ssig_)[s];
    const auto& b = (*tsig_)[t];
    return a.idempotent == b.idempotent && a.monogenic == b.monogenic;
  }

  const FiniteSemigroup* s_;
  const FiniteSemigroup* t_;
  const std::vector<ElementSignature>* ssig_;
  const std::vector<ElementSignature>* tsig_;
  const std::vector<Level>* levels_;
  bool prune_;
  std::vector<std::int32_t> image_;
  std::vector<std::int32_t> preimage_;
  std::vector<Elem> defined_;
  std::uint64_t nodes_ = 0;
  std::uint64_t pruned_ = 0;
};

struct BranchResult {
  Stop stop = Stop::none;
  bool ran = false;
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::vector<std::int32_t> image;
};

}  // namespace

SearchResult search_embedding(const FiniteSemigroup& source, const FiniteSemigroup& target,
                              const SearchOptions& options) {
  if (options.node_budget == 0) throw std::invalid_argument("search_embedding: budget must be positive");
  if (options.mode == EmbedMode::monoid && !source.is_monoid())
    throw std::invalid_argument("search_embedding: monoid mode needs a source with identity");

  SearchResult result;
  const auto make_witness = [&](const std::vector<std::int32_t>& image) {
    EmbeddingWitness w;
    w.source_ref = source.name();
    w.target_ref = target.name();
    w.mode = options.mode;
    w.dual_target = options.dual_target;
    w.map.assign(image.begin(), image.end());
    return w;
  };
  const auto conclude_none = [&](std::string reason) {
    result.outcome = SearchOutcome::none;
    result.stats.complete = true;
    result.reason = std::move(reason);
    return result;
  };

  if (source.size() > target.size()) return conclude_none("source larger than target");
  if (options.mode == EmbedMode::monoid && !target.is_monoid()) return conclude_none("target has no identity");

  const FiniteSemigroup image_space = options.dual_target ? dual(target) : target;
  const auto ssig = element_signatures(source);
  const auto tsig = element_signatures(image_space);

  std::vector<Elem> gens = source.generators();
  if (gens.empty()) {
    gens = greedy_generators(source);
  } else {
    const auto cover = generated_subsemigroup(source, gens);
    if (std::find(cover.begin(), cover.end(), false) != cover.end())
      throw std::invalid_argument("search_embedding: recorded generators do not generate the source");
  }

  std::vector<Level> levels;
  for (Elem g : gens) {
    Level lv{g, {}, 0};
    for (std::size_t t = 0; t < image_space.size(); ++t) {
      const bool ok = !options.prune || (ssig[g].idempotent == tsig[t].idempotent &&
                                         ssig[g].monogenic == tsig[t].monogenic);
      if (ok)
        lv.candidates.push_back(static_cast<Elem>(t));
      else
        ++lv.filtered;
    }
    levels.push_back(std::move(lv));
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.candidates.size() != b.candidates.size()) return a.candidates.size() < b.candidates.size();
    return a.generator < b.generator;
  });
  for (const auto& lv : levels) result.stats.generator_order.push_back(lv.generator);

  Engine root(source, image_space, ssig, tsig, levels, options.prune);
  root.count_node();
  if (options.mode == EmbedMode::monoid) {
    if (!root.assign(*source.identity(), *image_space.identity()) || !root.propagate(0)) {
      result.stats.nodes = root.nodes();
      result.stats.pruned = root.pruned();
      return conclude_none("identity constraint inconsistent");
    }
  }

  SharedControl ctl;
  ctl.deterministic = options.deterministic;
  if (options.seconds > 0)
    ctl.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.seconds));

  const std::size_t top = root.first_open_level(0);
  if (top == levels.size()) {
    if (root.defined_count() != source.size())
      throw std::logic_error("search_embedding: generators do not generate source");
    result.outcome = SearchOutcome::found;
    result.witness = make_witness(root.image());
  } else {
    const Level& lv = levels[top];
    root.add_pruned(lv.filtered);
    const std::size_t branches = lv.candidates.size();
    std::vector<BranchResult> res(branches);
    const std::uint64_t budget = options.node_budget;

    const auto run_branch = [&](std::size_t j) {
      BranchResult& br = res[j];
      if (ctl.halt.load() || (ctl.deterministic && j > ctl.best_branch.load())) return;
      br.ran = true;
      Engine e = root;
      const Elem t = lv.candidates[j];
      e.count_node();
      const std::uint64_t base_nodes = e.nodes();
      const std::uint64_t base_pruned = e.pruned();
      if (e.assign(lv.generator, t) && e.propagate(e.defined_count() - 1)) {
        br.stop = e.dfs(top + 1, budget + base_nodes, ctl, j);
      }
      br.nodes = e.nodes() - base_nodes + 1;
      br.pruned = e.pruned() - base_pruned;
      if (br.stop == Stop::found) {
        br.image = e.image();
        std::size_t cur = ctl.best_branch.load();
        while (j < cur && !ctl.best_branch.compare_exchange_weak(cur, j)) {
        }
        if (!ctl.deterministic) ctl.halt.store(true);
      }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
      for (std::size_t j = 0; j < branches; ++j) {
        run_branch(j);
        if (res[j].stop != Stop::none) break;
      }
    } else {
      const std::int64_t nb = static_cast<std::int64_t>(branches);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
      for (std::int64_t j = 0; j < nb; ++j) run_branch(static_cast<std::size_t>(j));
    }

    // Merge in serial order: the outcome is what a single worker would report.
    std::uint64_t nodes = root.nodes();
    std::uint64_t pruned = root.pruned();
    result.outcome = SearchOutcome::none;
    for (std::size_t j = 0; j < branches; ++j) {
      const BranchResult& br = res[j];
      if (!ctl.deterministic && br.stop != Stop::found && !br.ran) continue;
      nodes += br.nodes;
      pruned += br.pruned;
      if (nodes > budget + 1) {
        result.outcome = SearchOutcome::inconclusive;
        result.reason = "node budget exhausted";
        break;
      }
      if (br.stop == Stop::cut) {
        if (!ctl.deterministic && ctl.halt.load()) continue;
        result.outcome = SearchOutcome::inconclusive;
        result.reason = ctl.deadline ? "node or time budget exhausted" : "node budget exhausted";
        break;
      }
      if (br.stop == Stop::found) {
        result.outcome = SearchOutcome::found;
        result.witness = make_witness(br.image);
        break;
      }
    }
    if (!ctl.deterministic && result.outcome != SearchOutcome::found && ctl.best_branch.load() < branches) {
      result.outcome = SearchOutcome::found;
      result.witness = make_witness(res[ctl.best_branch.load()].image);
    }
    result.stats.nodes = nodes;
    result.stats.pruned = pruned;
  }

  if (result.outcome == SearchOutcome::none) result.stats.complete = true;
  if (result.outcome == SearchOutcome::found) {
    const VerificationReport rep = verify_embedding(source, TableOracle(target), *result.witness);
    if (!rep.passed()) throw std::logic_error("search_embedding: produced a witness that fails verification");
  }
  return result;
}

// ---------------------------------------------------------------- canonical witness

EmbeddingWitness canonical_powerset_witness(std::size_t n) {
  if (n > 4) throw std::invalid_argument("canonical_powerset_witness: n <= 4");
  EmbeddingWitness w;
  w.source_ref = "full:" + std::to_string(n);
  w.target_ref = "full:" + std::to_string(std::size_t{1} << n);
  w.mode = EmbedMode::monoid;
  w.dual_target = true;
  for (const Endomap& f : named_endomaps(MonoidKind::full, n)) w.map.push_back(endomap_rank(inverse_image_map(f)));
  return w;
}

}  // namespace dualemb
