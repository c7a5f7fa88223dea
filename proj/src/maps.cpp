#include "dualemb/maps.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dualemb {

namespace {

std::size_t hash_combine(std::size_t seed, std::uint64_t v) {
  return seed ^ (std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <class Range>
std::string join_points(const Range& r, char open, char close) {
  std::ostringstream os;
  os << open;
  bool first = true;
  for (auto v : r) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << close;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Endomap

Endomap::Endomap(std::size_t n, std::vector<Point> images) : images_(std::move(images)) {
  if (images_.size() != n) throw std::invalid_argument("Endomap: image sequence length differs from n");
  for (Point v : images_)
    if (v >= n) throw std::invalid_argument("Endomap: image " + std::to_string(v) + " out of range");
}

Endomap Endomap::identity(std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  return Endomap(n, std::move(im));
}

Endomap Endomap::constant(std::size_t n, Point value) { return Endomap(n, std::vector<Point>(n, value)); }

std::size_t Endomap::rank() const {
  std::vector<bool> seen(images_.size(), false);
  std::size_t r = 0;
  for (Point v : images_)
    if (!seen[v]) {
      seen[v] = true;
      ++r;
    }
  return r;
}

bool Endomap::is_idempotent() const {
  for (Point v : images_)
    if (images_[v] != v) return false;
  return true;
}

std::string Endomap::to_string() const { return join_points(images_, '(', ')'); }

Endomap compose_maps(const Endomap& f, const Endomap& g) {
  if (f.size() != g.size()) throw std::invalid_argument("compose_maps: ground-set size mismatch");
  std::vector<Point> im(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) im[x] = g(f(static_cast<Point>(x)));
  return Endomap(f.size(), std::move(im));
}

std::uint64_t endomap_count(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (c > std::numeric_limits<std::uint64_t>::max() / std::max<std::size_t>(n, 1))
      throw std::overflow_error("endomap_count: n^n exceeds 64 bits");
    c *= n;
  }
  return c;
}

std::uint64_t endomap_rank(const Endomap& f) {
  // n^n may equal 2^64 for n = 16, so accumulate with wrap-free Horner steps.
  std::uint64_t r = 0;
  const std::uint64_t n = f.size();
  for (Point v : f.images()) r = r * n + v;
  return r;
}

Endomap endomap_unrank(std::size_t n, std::uint64_t rank) {
  std::vector<Point> im(n);
  for (std::size_t i = n; i-- > 0;) {
    im[i] = static_cast<Point>(rank % n);
    rank /= n;
  }
  return Endomap(n, std::move(im));
}

// ---------------------------------------------------------------- PartialMap

PartialMap::PartialMap(std::size_t n, std::vector<Point> images) : images_(std::move(images)) {
  if (images_.size() != n) throw std::invalid_argument("PartialMap: image sequence length differs from n");
  for (Point v : images_)
    if (v > n) throw std::invalid_argument("PartialMap: image " + std::to_string(v) + " out of range");
}

std::string PartialMap::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    if (images_[i] == undefined())
      os << '-';
    else
      os << images_[i];
  }
  os << ')';
  return os.str();
}

Endomap PartialMap::totalize() const {
  const std::size_t n = size();
  std::vector<Point> im(n + 1);
  for (std::size_t x = 0; x < n; ++x) im[x] = images_[x];  // undefined == n == sink
  im[n] = static_cast<Point>(n);
  return Endomap(n + 1, std::move(im));
}

PartialMap compose_partial(const PartialMap& f, const PartialMap& g) {
  if (f.size() != g.size()) throw std::invalid_argument("compose_partial: ground-set size mismatch");
  const Point undef = f.undefined();
  std::vector<Point> im(f.size(), undef);
  for (std::size_t x = 0; x < f.size(); ++x) {
    Point y = f(static_cast<Point>(x));
    if (y != undef) im[x] = g(y);
  }
  return PartialMap(f.size(), std::move(im));
}

// ---------------------------------------------------------------- EquivRelation

EquivRelation::EquivRelation(std::size_t n, std::vector<Point> block_id) : block_id_(std::move(block_id)) {
  if (block_id_.size() != n) throw std::invalid_argument("EquivRelation: labeling length differs from n");
  for (std::size_t x = 0; x < n; ++x) {
    Point b = block_id_[x];
    if (b > x || block_id_[b] != b)
      throw std::invalid_argument("EquivRelation: labels must be least block members");
  }
}

EquivRelation EquivRelation::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<Point> ids(labels.size());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    Point least = static_cast<Point>(x);
    for (std::size_t y = 0; y < x; ++y)
      if (labels[y] == labels[x]) {
        least = static_cast<Point>(y);
        break;
      }
    ids[x] = least;
  }
  return EquivRelation(labels.size(), std::move(ids));
}

EquivRelation EquivRelation::equality(std::size_t n) {
  std::vector<Point> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<Point>(i);
  return EquivRelation(n, std::move(ids));
}

EquivRelation EquivRelation::coarse(std::size_t n) { return EquivRelation(n, std::vector<Point>(n, 0)); }

std::size_t EquivRelation::block_count() const {
  std::size_t c = 0;
  for (std::size_t x = 0; x < block_id_.size(); ++x)
    if (block_id_[x] == x) ++c;
  return c;
}

std::vector<std::vector<Point>> EquivRelation::blocks() const {
  std::vector<std::vector<Point>> out;
  std::vector<std::size_t> slot(block_id_.size(), 0);
  for (std::size_t x = 0; x < block_id_.size(); ++x) {
    if (block_id_[x] == x) {
      slot[x] = out.size();
      out.push_back({});
    }
    out[slot[block_id_[x]]].push_back(static_cast<Point>(x));
  }
  return out;
}

bool EquivRelation::is_finer_than(const EquivRelation& other) const {
  if (size() != other.size()) throw std::invalid_argument("EquivRelation: size mismatch");
  for (std::size_t x = 0; x < size(); ++x)
    if (other.block_id_[x] != other.block_id_[block_id_[x]]) return false;
  return true;
}

std::string EquivRelation::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& b : blocks()) {
    if (!first) s += ',';
    s += join_points(b, '{', '}');
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------- BinRel

BinRel::BinRel(std::size_t n) : n_(n), rows_(n, 0) {
  if (n > kMaxMaskPoints) throw std::invalid_argument("BinRel: at most 64 points");
}

BinRel::BinRel(std::size_t n, std::vector<PointMask> rows) : n_(n), rows_(std::move(rows)) {
  if (n > kMaxMaskPoints) throw std::invalid_argument("BinRel: at most 64 points");
  if (rows_.size() != n) throw std::invalid_argument("BinRel: row count differs from n");
  const PointMask allowed = n == 64 ? ~PointMask{0} : ((PointMask{1} << n) - 1);
  for (PointMask r : rows_)
    if (r & ~allowed) throw std::invalid_argument("BinRel: row has bits beyond n");
}

BinRel BinRel::identity(std::size_t n) {
  BinRel r(n);
  for (std::size_t x = 0; x < n; ++x) r.rows_[x] = PointMask{1} << x;
  return r;
}

BinRel BinRel::full(std::size_t n) {
  BinRel r(n);
  const PointMask all = n == 64 ? ~PointMask{0} : ((PointMask{1} << n) - 1);
  for (auto& row : r.rows_) row = all;
  return r;
}

BinRel BinRel::graph(const Endomap& f) {
  BinRel r(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) r.rows_[x] = PointMask{1} << f(static_cast<Point>(x));
  return r;
}

void BinRel::set(Point x, Point y, bool value) {
  if (value)
    rows_[x] |= PointMask{1} << y;
  else
    rows_[x] &= ~(PointMask{1} << y);
}

std::string BinRel::to_string() const {
  std::string s;
  for (std::size_t x = 0; x < n_; ++x) {
    if (x) s += '/';
    for (std::size_t y = 0; y < n_; ++y) s += test(static_cast<Point>(x), static_cast<Point>(y)) ? '1' : '0';
  }
  return s;
}

std::uint64_t binrel_rank(const BinRel& r) {
  const std::size_t n = r.size();
  if (n * n > 64) throw std::invalid_argument("binrel_rank: at most 8 points");
  std::uint64_t k = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r.test(static_cast<Point>(x), static_cast<Point>(y))) k |= std::uint64_t{1} << (x * n + y);
  return k;
}

BinRel binrel_unrank(std::size_t n, std::uint64_t rank) {
  if (n * n > 64) throw std::invalid_argument("binrel_unrank: at most 8 points");
  BinRel r(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((rank >> (x * n + y)) & 1U) r.set(static_cast<Point>(x), static_cast<Point>(y));
  return r;
}

// ---------------------------------------------------------------- operations

KernelRange kernel_and_range(const Endomap& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> labels(f.images().begin(), f.images().end());
  KernelRange out{EquivRelation::from_labels(labels), {}};
  std::vector<bool> hit(n, false);
  for (Point v : f.images()) hit[v] = true;
  for (std::size_t y = 0; y < n; ++y)
    if (hit[y]) out.range.push_back(static_cast<Point>(y));
  return out;
}

PointMask range_mask(const Endomap& f) {
  if (f.size() > kMaxMaskPoints) throw std::invalid_argument("range_mask: at most 64 points");
  PointMask m = 0;
  for (Point v : f.images()) m |= PointMask{1} << v;
  return m;
}

EquivRelation theta_of_subset(PointMask z, std::size_t n) {
  if (n > kMaxMaskPoints) throw std::invalid_argument("theta_of_subset: at most 64 points");
  std::vector<std::size_t> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = (z >> x) & 1U;
  return EquivRelation::from_labels(labels);
}

std::pair<Endomap, Endomap> separating_idempotents(const EquivRelation& alpha, const EquivRelation& beta) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("separating_idempotents: size mismatch");
  if (alpha.block_count() != 2 || beta.block_count() != 2)
    throw std::invalid_argument("separating_idempotents: both relations need exactly two blocks");
  if (alpha == beta) throw std::invalid_argument("separating_idempotents: relations must differ");

  const auto ablocks = alpha.blocks();
  const auto bblocks = beta.blocks();
  const auto in_block = [](const std::vector<Point>& block, Point x) {
    return std::binary_search(block.begin(), block.end(), x);
  };
  const auto least_common = [&](const std::vector<Point>& a, const std::vector<Point>& b) -> long {
    for (Point x : a)
      if (in_block(b, x)) return static_cast<long>(x);
    return -1;
  };

  // A0 is the first alpha-block meeting both beta-blocks; one exists since alpha != beta.
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& a0 = ablocks[i];
    const auto& a1 = ablocks[1 - i];
    long b0 = least_common(a0, bblocks[0]);
    long b1 = least_common(a0, bblocks[1]);
    if (b0 < 0 || b1 < 0) continue;
    const Point a = a1.front();
    const std::size_t n = alpha.size();
    std::vector<Point> fi(n), gi(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Point p = static_cast<Point>(x);
      fi[x] = in_block(a0, p) ? static_cast<Point>(b0) : a;
      gi[x] = in_block(bblocks[0], p) ? static_cast<Point>(b0) : static_cast<Point>(b1);
    }
    return {Endomap(n, std::move(fi)), Endomap(n, std::move(gi))};
  }
  throw std::logic_error("separating_idempotents: no alpha-block meets both beta-blocks");
}

BinRel compose_rel(const BinRel& alpha, const BinRel& beta) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("compose_rel: size mismatch");
  const std::size_t n = alpha.size();
  std::vector<PointMask> rows(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    PointMask mids = beta.row(static_cast<Point>(x));
    while (mids) {
      const int z = std::countr_zero(mids);
      mids &= mids - 1;
      rows[x] |= alpha.row(static_cast<Point>(z));
    }
  }
  return BinRel(n, std::move(rows));
}

BinRel transpose(const BinRel& alpha) {
  const std::size_t n = alpha.size();
  BinRel t(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (alpha.test(static_cast<Point>(x), static_cast<Point>(y))) t.set(static_cast<Point>(y), static_cast<Point>(x));
  return t;
}

Endomap inverse_image_map(const Endomap& f) {
  const std::size_t n = f.size();
  if (n > 20) throw std::invalid_argument("inverse_image_map: at most 20 points");
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Point> im(subsets);
  for (std::size_t s = 0; s < subsets; ++s) {
    std::size_t pre = 0;
    for (std::size_t x = 0; x < n; ++x)
      if ((s >> f(static_cast<Point>(x))) & 1U) pre |= std::size_t{1} << x;
    im[s] = static_cast<Point>(pre);
  }
  return Endomap(subsets, std::move(im));
}

std::size_t EndomapHash::operator()(const Endomap& f) const noexcept {
  std::size_t h = f.size();
  for (Point v : f.images()) h = hash_combine(h, v);
  return h;
}

std::size_t PartialMapHash::operator()(const PartialMap& f) const noexcept {
  std::size_t h = f.size() * 31 + 7;
  for (Point v : f.images()) h = hash_combine(h, v);
  return h;
}

std::size_t BinRelHash::operator()(const BinRel& r) const noexcept {
  std::size_t h = r.size() * 131 + 3;
  for (PointMask row : r.rows()) h = hash_combine(h, row);
  return h;
}

}  // namespace dualemb
