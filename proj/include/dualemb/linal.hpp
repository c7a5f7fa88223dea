#pragma once

// Linear algebra over prime fields F_p (p <= 251). Vectors are rows; a linear
// map is stored as the matrix whose i-th row is the image of e_i, so
// apply(f, v) = v A_f and "f then g" has matrix A_f A_g.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dualemb {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is a prime <= 251.
  explicit PrimeField(Scalar p);

  Scalar p() const { return p_; }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const { return (a + p_ - b) % p_; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }
  Scalar neg(Scalar a) const { return (p_ - a) % p_; }
  Scalar inv(Scalar a) const;  // a != 0

  bool operator==(const PrimeField&) const = default;

 private:
  Scalar p_ = 2;
  std::vector<Scalar> inverse_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(Scalar p, std::size_t rows, std::size_t cols);
  Matrix(Scalar p, std::size_t cols, const std::vector<Vector>& rows);

  static Matrix identity(Scalar p, std::size_t n);

  Scalar p() const { return field_.p(); }
  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v) { data_[r * cols_ + c] = v % field_.p(); }
  Vector row(std::size_t r) const;
  std::vector<Vector> row_list() const;

  /// Reduced row echelon form with zero rows removed.
  Matrix rref() const;
  std::size_t rank() const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  /// Throws std::invalid_argument when singular or not square.
  Matrix inverse() const;
  /// Rows stacked below.
  Matrix stacked(const Matrix& o) const;
  /// Basis (as rows) of {v : v M^T = 0}, i.e. vectors orthogonal to every row.
  Matrix null_space() const;

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::string to_string() const;

 private:
  PrimeField field_{2};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Vector apply_rows(const Vector& v, const Matrix& a);  // v A

class Subspace {
 public:
  Subspace() = default;
  /// Row space of the given spanning vectors.
  Subspace(Scalar p, std::size_t n, const std::vector<Vector>& spanning);
  static Subspace zero(Scalar p, std::size_t n);
  static Subspace whole(Scalar p, std::size_t n);

  Scalar p() const { return basis_.p(); }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t codim() const { return n_ - dim(); }
  const Matrix& basis() const { return basis_; }  // RREF, no zero rows

  bool contains(const Vector& v) const;
  bool contains(const Subspace& o) const;
  /// All p^dim elements in lexicographic order (p^n <= 2^16).
  std::vector<Vector> elements() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  Matrix basis_;
};

Subspace subspace_sum(const Subspace& x, const Subspace& y);
Subspace subspace_intersection(const Subspace& x, const Subspace& y);
std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& x, const Subspace& y);

/// Functionals vanishing on X, coordinates in the dual basis.
Subspace orthogonal(const Subspace& x);

class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(Matrix a);
  static LinearMap identity(Scalar p, std::size_t n);

  const Matrix& matrix() const { return a_; }
  std::size_t domain_dim() const { return a_.rows(); }
  std::size_t codomain_dim() const { return a_.cols(); }
  Vector apply(const Vector& v) const { return apply_rows(v, a_); }
  Subspace kernel() const;
  Subspace range() const;
  bool is_idempotent() const;

  bool operator==(const LinearMap& o) const { return a_ == o.a_; }

 private:
  Matrix a_;
};

/// `first`, then `second`.
LinearMap then(const LinearMap& first, const LinearMap& second);

struct DualDimensionReport {
  std::size_t n = 0;
  Scalar p = 2;
  std::size_t dual_dimension = 0;
  std::size_t pairing_rank = 0;
  bool dual_basis_ok = false;
  bool ok() const { return dual_basis_ok && dual_dimension == n && pairing_rank == n; }
};

/// Builds V* = functionals on F_p^n, the dual basis, and the rank of the
/// evaluation pairing.
DualDimensionReport dual_dimension_check(std::size_t n, Scalar p);

/// Subsets of an index set of size k as bitmasks.
using IndexSet = std::uint32_t;

/// phi(X) = the common kernel of the functionals indexed by X; phi(empty) = V.
class PhiFromFunctionals {
 public:
  /// Throws std::invalid_argument when the functionals are dependent.
  PhiFromFunctionals(Scalar p, std::size_t n, std::vector<Vector> functionals);
  Subspace operator()(IndexSet x) const;
  std::size_t count() const { return ls_.size(); }
  Scalar p() const { return p_; }
  std::size_t ambient() const { return n_; }

 private:
  Scalar p_;
  std::size_t n_;
  std::vector<Vector> ls_;
};

/// phi(X) = span of the vectors indexed by X; phi(empty) = {0}.
class SpanEmbedding {
 public:
  SpanEmbedding(Scalar p, std::size_t n, std::vector<Vector> vectors);
  Subspace operator()(IndexSet x) const;
  std::size_t count() const { return vs_.size(); }

 private:
  Scalar p_;
  std::size_t n_;
  std::vector<Vector> vs_;
};

using SubspaceFamily = std::function<Subspace(IndexSet)>;

struct LatticeLawReport {
  std::uint64_t pairs = 0;
  std::uint64_t join_failures = 0;    // phi(X u Y) = phi(X) + phi(Y)
  std::uint64_t meet_failures = 0;    // phi(X n Y) = phi(X) n phi(Y)
  std::uint64_t injective_failures = 0;
  std::uint64_t codim_failures = 0;   // codim phi(X) = |X|
  std::uint64_t dim_failures = 0;     // dim phi(X) = |X|
  std::uint64_t sum_law_failures = 0;  // phi(X) + phi(Y) = phi(X n Y)
  std::uint64_t union_meet_failures = 0;  // phi(X u Y) = phi(X) n phi(Y)
};

/// Every law above evaluated over all pairs of subsets of {0..k-1}.
LatticeLawReport lattice_laws(const SubspaceFamily& phi, std::size_t k);

/// Least vector of phi({i}) \ phi(empty) for each i; throws
/// std::invalid_argument naming the index when phi is not a meet-embedding
/// on the subsets of {0..k-1} or a difference is empty.
std::vector<Vector> extract_independent_vectors(const SubspaceFamily& phi, std::size_t k);

struct ProjectionPair {
  Subspace z, x_complement, y_complement, t;  // V = Z + X' + Y' + T, direct
  LinearMap f, g, gf;                         // ker f = X, ker g = Y, gf = f then g
};

/// Greedy basis extension: X' and Y' from the RREF rows of X and Y, T from
/// the standard basis.
ProjectionPair projection_pair(const Subspace& x, const Subspace& y);

bool is_linearly_independent(Scalar p, std::size_t n, const std::vector<Vector>& vs);

/// Vector with lexicographic index `idx` (first coordinate most significant).
Vector vector_from_index(Scalar p, std::size_t n, std::uint64_t idx);
std::uint64_t vector_index(Scalar p, const Vector& v);

/// Every subspace of F_p^n, ordered by dimension then RREF; p^n <= 2^16.
std::vector<Subspace> all_subspaces(Scalar p, std::size_t n);

/// Row space of `rows` uniformly random vectors.
Subspace random_subspace(Scalar p, std::size_t n, std::size_t rows, std::mt19937_64& rng);

}  // namespace dualemb
