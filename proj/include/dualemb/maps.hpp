#pragma once

// Concrete maps and relations on a finite ground set {0, ..., n-1}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace dualemb {

using Point = std::uint32_t;

/// Subsets of a ground set of at most 64 points, bit i = membership of point i.
using PointMask = std::uint64_t;

inline constexpr std::size_t kMaxMaskPoints = 64;

class Endomap {
 public:
  Endomap() = default;
  Endomap(std::size_t n, std::vector<Point> images);

  static Endomap identity(std::size_t n);
  static Endomap constant(std::size_t n, Point value);

  std::size_t size() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  std::size_t rank() const;
  bool is_idempotent() const;

  bool operator==(const Endomap&) const = default;
  auto operator<=>(const Endomap&) const = default;

  std::string to_string() const;

 private:
  std::vector<Point> images_;
};

/// x -> g(f(x)): f is applied first.
Endomap compose_maps(const Endomap& f, const Endomap& g);

/// Lexicographic rank of the image sequence among all n^n endomaps
/// (first point most significant).
std::uint64_t endomap_rank(const Endomap& f);
Endomap endomap_unrank(std::size_t n, std::uint64_t rank);

/// n^n, throws std::overflow_error when it does not fit in 64 bits.
std::uint64_t endomap_count(std::size_t n);

class PartialMap {
 public:
  PartialMap() = default;
  /// Entries equal to n mean "undefined".
  PartialMap(std::size_t n, std::vector<Point> images);

  std::size_t size() const { return images_.size(); }
  Point undefined() const { return static_cast<Point>(images_.size()); }
  bool defined_at(Point x) const { return images_[x] != undefined(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool operator==(const PartialMap&) const = default;
  auto operator<=>(const PartialMap&) const = default;

  std::string to_string() const;

  /// Total map on n+1 points sending undefined values and the new point n to n.
  Endomap totalize() const;

 private:
  std::vector<Point> images_;
};

/// (g after f)(x) defined iff f(x) defined and g(f(x)) defined.
PartialMap compose_partial(const PartialMap& f, const PartialMap& g);

class EquivRelation {
 public:
  EquivRelation() = default;
  /// block_id[x] must be the least member of the block of x.
  EquivRelation(std::size_t n, std::vector<Point> block_id);

  static EquivRelation from_labels(const std::vector<std::size_t>& labels);
  static EquivRelation equality(std::size_t n);
  static EquivRelation coarse(std::size_t n);

  std::size_t size() const { return block_id_.size(); }
  Point block_of(Point x) const { return block_id_[x]; }
  const std::vector<Point>& block_ids() const { return block_id_; }
  bool related(Point x, Point y) const { return block_id_[x] == block_id_[y]; }

  std::size_t block_count() const;
  /// Blocks ordered by least member, members ascending.
  std::vector<std::vector<Point>> blocks() const;

  /// Inclusion as sets of pairs.
  bool is_finer_than(const EquivRelation& other) const;

  bool operator==(const EquivRelation&) const = default;
  auto operator<=>(const EquivRelation&) const = default;

  std::string to_string() const;

 private:
  std::vector<Point> block_id_;
};

class BinRel {
 public:
  BinRel() = default;
  explicit BinRel(std::size_t n);
  BinRel(std::size_t n, std::vector<PointMask> rows);

  static BinRel identity(std::size_t n);
  static BinRel full(std::size_t n);
  static BinRel graph(const Endomap& f);

  std::size_t size() const { return n_; }
  bool test(Point x, Point y) const { return (rows_[x] >> y) & 1U; }
  void set(Point x, Point y, bool value = true);
  PointMask row(Point x) const { return rows_[x]; }
  const std::vector<PointMask>& rows() const { return rows_; }

  bool operator==(const BinRel&) const = default;
  auto operator<=>(const BinRel&) const = default;

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<PointMask> rows_;
};

/// Index of a relation on n <= 8 points: bit (x*n + y) set iff (x,y) in it.
std::uint64_t binrel_rank(const BinRel& r);
BinRel binrel_unrank(std::size_t n, std::uint64_t rank);

struct KernelRange {
  EquivRelation kernel;
  std::vector<Point> range;  // ascending
};

KernelRange kernel_and_range(const Endomap& f);
PointMask range_mask(const Endomap& f);

/// The partition {Z, complement of Z}; one block when Z is empty or everything.
EquivRelation theta_of_subset(PointMask z, std::size_t n);

/// Idempotent f, g of rank 2 with Ker f = alpha, Ker g = beta and
/// "f after g" constant. Both arguments need exactly two blocks and must differ.
std::pair<Endomap, Endomap> separating_idempotents(const EquivRelation& alpha,
                                                   const EquivRelation& beta);

/// (x,y) in result iff some z has (x,z) in beta and (z,y) in alpha.
BinRel compose_rel(const BinRel& alpha, const BinRel& beta);
BinRel transpose(const BinRel& alpha);

/// S |-> f^{-1}(S) on the 2^n subset indices (n <= 20).
Endomap inverse_image_map(const Endomap& f);

struct EndomapHash {
  std::size_t operator()(const Endomap& f) const noexcept;
};
struct PartialMapHash {
  std::size_t operator()(const PartialMap& f) const noexcept;
};
struct BinRelHash {
  std::size_t operator()(const BinRel& r) const noexcept;
};

}  // namespace dualemb

template <>
struct std::hash<dualemb::Endomap> : dualemb::EndomapHash {};
template <>
struct std::hash<dualemb::PartialMap> : dualemb::PartialMapHash {};
template <>
struct std::hash<dualemb::BinRel> : dualemb::BinRelHash {};
