#include "dualemb/linal.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dualemb {

PrimeField::PrimeField(Scalar p) : p_(p) {
  if (p < 2 || p > 251) throw std::invalid_argument("PrimeField: modulus must be a prime <= 251");
  for (Scalar d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  inverse_.assign(p, 0);
  for (Scalar a = 1; a < p; ++a)
    for (Scalar b = 1; b < p; ++b)
      if ((a * b) % p == 1) {
        inverse_[a] = b;
        break;
      }
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField: zero has no inverse");
  return inverse_[a % p_];
}

// ---------------------------------------------------------------- matrices

Matrix::Matrix(Scalar p, std::size_t rows, std::size_t cols)
    : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Scalar p, std::size_t cols, const std::vector<Vector>& rows)
    : field_(p), rows_(rows.size()), cols_(cols), data_(rows.size() * cols) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Matrix: row of wrong length");
    for (std::size_t c = 0; c < cols; ++c) data_[r * cols + c] = rows[r][c] % p;
  }
}

Matrix Matrix::identity(Scalar p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vector> Matrix::row_list() const {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

Matrix Matrix::rref() const {
  Matrix m = *this;
  const PrimeField& f = field_;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::size_t piv = lead;
    while (piv < rows_ && m.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != lead)
      for (std::size_t k = 0; k < cols_; ++k) std::swap(m.data_[piv * cols_ + k], m.data_[lead * cols_ + k]);
    const Scalar s = f.inv(m.at(lead, c));
    for (std::size_t k = 0; k < cols_; ++k) m.data_[lead * cols_ + k] = f.mul(m.data_[lead * cols_ + k], s);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead || m.at(r, c) == 0) continue;
      const Scalar factor = m.at(r, c);
      for (std::size_t k = 0; k < cols_; ++k)
        m.data_[r * cols_ + k] = f.sub(m.data_[r * cols_ + k], f.mul(factor, m.data_[lead * cols_ + k]));
    }
    ++lead;
  }
  m.rows_ = lead;
  m.data_.resize(lead * cols_);
  return m;
}

std::size_t Matrix::rank() const { return rref().rows(); }

Matrix Matrix::transpose() const {
  Matrix t(p(), cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_ || p() != o.p()) throw std::invalid_argument("Matrix: shape or field mismatch in product");
  Matrix out(p(), rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        out.data_[r * o.cols_ + c] = field_.add(out.data_[r * o.cols_ + c], field_.mul(a, o.at(k, c)));
    }
  return out;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix aug(p(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, at(r, c));
    aug.set(r, n + r, 1);
  }
  const Matrix red = aug.rref();
  if (red.rows() != n) throw std::invalid_argument("Matrix: singular");
  Matrix inv(p(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (red.at(r, r) != 1) throw std::invalid_argument("Matrix: singular");
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, red.at(r, n + c));
  }
  return inv;
}

Matrix Matrix::stacked(const Matrix& o) const {
  if (cols_ != o.cols_ || p() != o.p()) throw std::invalid_argument("Matrix: shape or field mismatch when stacking");
  Matrix out = *this;
  out.rows_ += o.rows_;
  out.data_.insert(out.data_.end(), o.data_.begin(), o.data_.end());
  return out;
}

Matrix Matrix::null_space() const {
  const Matrix red = rref();
  std::vector<std::size_t> pivot_of_row;
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t r = 0; r < red.rows(); ++r) {
    std::size_t c = 0;
    while (red.at(r, c) == 0) ++c;
    pivot_of_row.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols_, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < red.rows(); ++r) v[pivot_of_row[r]] = field_.neg(red.at(r, free));
    basis.push_back(std::move(v));
  }
  return Matrix(p(), cols_, basis).rref();
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    s += r ? ",[" : "[";
    for (std::size_t c = 0; c < cols_; ++c) s += (c ? "," : "") + std::to_string(at(r, c));
    s += "]";
  }
  return s + "]";
}

Vector apply_rows(const Vector& v, const Matrix& a) {
  if (v.size() != a.rows()) throw std::invalid_argument("apply: vector length differs from the domain dimension");
  const PrimeField& f = a.field();
  Vector out(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (v[r] % f.p() == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] = f.add(out[c], f.mul(v[r] % f.p(), a.at(r, c)));
  }
  return out;
}

// ---------------------------------------------------------------- subspaces

Subspace::Subspace(Scalar p, std::size_t n, const std::vector<Vector>& spanning)
    : n_(n), basis_(Matrix(p, n, spanning).rref()) {}

Subspace Subspace::zero(Scalar p, std::size_t n) { return Subspace(p, n, {}); }

Subspace Subspace::whole(Scalar p, std::size_t n) { return Subspace(p, n, Matrix::identity(p, n).row_list()); }

bool Subspace::contains(const Vector& v) const {
  if (v.size() != n_) throw std::invalid_argument("Subspace: vector of wrong length");
  return Matrix(p(), n_, {v}).stacked(basis_).rank() == dim();
}

bool Subspace::contains(const Subspace& o) const {
  if (o.n_ != n_ || o.p() != p()) throw std::invalid_argument("Subspace: ambient mismatch");
  return basis_.stacked(o.basis_).rank() == dim();
}

std::vector<Vector> Subspace::elements() const {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    count *= p();
    if (count > (1U << 16)) throw std::invalid_argument("Subspace: too many elements to list");
  }
  std::vector<Vector> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(apply_rows(vector_from_index(p(), dim(), k), basis_));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Subspace::to_string() const { return basis_.to_string(); }

namespace {

void check_same(const Subspace& x, const Subspace& y) {
  if (x.ambient() != y.ambient() || x.p() != y.p()) throw std::invalid_argument("Subspace: ambient space mismatch");
}

Subspace from_matrix(Scalar p, std::size_t n, const Matrix& m) { return Subspace(p, n, m.row_list()); }

}  // namespace

Subspace subspace_sum(const Subspace& x, const Subspace& y) {
  check_same(x, y);
  return from_matrix(x.p(), x.ambient(), x.basis().stacked(y.basis()));
}

Subspace subspace_intersection(const Subspace& x, const Subspace& y) {
  // Zassenhaus: row-reduce [X X; Y 0]; rows of the form [0 w] span X n Y.
  check_same(x, y);
  const std::size_t n = x.ambient();
  const Scalar p = x.p();
  Matrix z(p, x.dim() + y.dim(), 2 * n);
  for (std::size_t r = 0; r < x.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      z.set(r, c, x.basis().at(r, c));
      z.set(r, n + c, x.basis().at(r, c));
    }
  for (std::size_t r = 0; r < y.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) z.set(x.dim() + r, c, y.basis().at(r, c));
  const Matrix red = z.rref();
  std::vector<Vector> meet;
  for (std::size_t r = 0; r < red.rows(); ++r) {
    bool left_zero = true;
    for (std::size_t c = 0; c < n && left_zero; ++c) left_zero = red.at(r, c) == 0;
    if (!left_zero) continue;
    Vector w(n);
    for (std::size_t c = 0; c < n; ++c) w[c] = red.at(r, n + c);
    meet.push_back(std::move(w));
  }
  return Subspace(p, n, meet);
}

std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& x, const Subspace& y) {
  return {subspace_sum(x, y), subspace_intersection(x, y)};
}

Subspace orthogonal(const Subspace& x) {
  if (x.dim() == 0) return Subspace::whole(x.p(), x.ambient());
  return from_matrix(x.p(), x.ambient(), x.basis().null_space());
}

// ---------------------------------------------------------------- linear maps

LinearMap::LinearMap(Matrix a) : a_(std::move(a)) {}

LinearMap LinearMap::identity(Scalar p, std::size_t n) { return LinearMap(Matrix::identity(p, n)); }

Subspace LinearMap::kernel() const {
  // v A = 0  <=>  A^T v^T = 0
  if (a_.cols() == 0) return Subspace::whole(a_.p(), a_.rows());
  return from_matrix(a_.p(), a_.rows(), a_.transpose().null_space());
}

Subspace LinearMap::range() const { return Subspace(a_.p(), a_.cols(), a_.row_list()); }

bool LinearMap::is_idempotent() const { return a_.rows() == a_.cols() && a_ * a_ == a_; }

LinearMap then(const LinearMap& first, const LinearMap& second) { return LinearMap(first.matrix() * second.matrix()); }

DualDimensionReport dual_dimension_check(std::size_t n, Scalar p) {
  DualDimensionReport r;
  r.n = n;
  r.p = p;
  const PrimeField field(p);
  // A functional is a 1 x n row acting by the dot product; the dual basis is
  // e_i^*(e_j) = [i = j].
  std::vector<Vector> dual_basis;
  for (std::size_t i = 0; i < n; ++i) {
    Vector l(n, 0);
    l[i] = 1;
    dual_basis.push_back(std::move(l));
  }
  r.dual_dimension = Matrix(p, n, dual_basis).rank();
  r.dual_basis_ok = true;
  Matrix pairing(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector ej = Matrix::identity(p, n).row(j);
      Scalar v = 0;
      for (std::size_t k = 0; k < n; ++k) v = field.add(v, field.mul(dual_basis[i][k], ej[k]));
      pairing.set(i, j, v);
      if (v != (i == j ? 1U : 0U)) r.dual_basis_ok = false;
    }
  r.pairing_rank = pairing.rank();
  // Every functional is a combination of the dual basis: l = sum l(e_j) e_j^*.
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= p;
  if (total <= 4096)
    for (std::uint64_t k = 0; k < total; ++k) {
      const Vector l = vector_from_index(p, n, k);
      Vector recon(n, 0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c) recon[c] = field.add(recon[c], field.mul(l[j], dual_basis[j][c]));
      if (recon != l) r.dual_basis_ok = false;
    }
  return r;
}

// ---------------------------------------------------------------- embeddings of subset lattices

bool is_linearly_independent(Scalar p, std::size_t n, const std::vector<Vector>& vs) {
  return Matrix(p, n, vs).rank() == vs.size();
}

PhiFromFunctionals::PhiFromFunctionals(Scalar p, std::size_t n, std::vector<Vector> functionals)
    : p_(p), n_(n), ls_(std::move(functionals)) {
  if (ls_.size() > 31) throw std::invalid_argument("PhiFromFunctionals: at most 31 functionals");
  if (!is_linearly_independent(p, n, ls_)) throw std::invalid_argument("PhiFromFunctionals: functionals are dependent");
}

Subspace PhiFromFunctionals::operator()(IndexSet x) const {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < ls_.size(); ++i)
    if ((x >> i) & 1U) rows.push_back(ls_[i]);
  if (rows.empty()) return Subspace::whole(p_, n_);
  return from_matrix(p_, n_, Matrix(p_, n_, rows).null_space());
}

SpanEmbedding::SpanEmbedding(Scalar p, std::size_t n, std::vector<Vector> vectors)
    : p_(p), n_(n), vs_(std::move(vectors)) {
  if (vs_.size() > 31) throw std::invalid_argument("SpanEmbedding: at most 31 vectors");
  if (!is_linearly_independent(p, n, vs_)) throw std::invalid_argument("SpanEmbedding: vectors are dependent");
}

Subspace SpanEmbedding::operator()(IndexSet x) const {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < vs_.size(); ++i)
    if ((x >> i) & 1U) rows.push_back(vs_[i]);
  return Subspace(p_, n_, rows);
}

LatticeLawReport lattice_laws(const SubspaceFamily& phi, std::size_t k) {
  if (k > 12) throw std::invalid_argument("lattice_laws: at most 12 indices");
  const IndexSet total = IndexSet{1} << k;
  std::vector<Subspace> val(total);
  for (IndexSet x = 0; x < total; ++x) val[x] = phi(x);
  LatticeLawReport r;
  for (IndexSet x = 0; x < total; ++x) {
    const auto card = static_cast<std::size_t>(std::popcount(x));
    if (val[x].codim() != card) ++r.codim_failures;
    if (val[x].dim() != card) ++r.dim_failures;
  }
  for (IndexSet x = 0; x < total; ++x)
    for (IndexSet y = 0; y < total; ++y) {
      ++r.pairs;
      const auto [sum, meet] = sum_and_intersection(val[x], val[y]);
      if (!(val[x | y] == sum)) ++r.join_failures;
      if (!(val[x & y] == meet)) ++r.meet_failures;
      if (x != y && val[x] == val[y]) ++r.injective_failures;
      if (!(sum == val[x & y])) ++r.sum_law_failures;
      if (!(meet == val[x | y])) ++r.union_meet_failures;
    }
  return r;
}

std::vector<Vector> extract_independent_vectors(const SubspaceFamily& phi, std::size_t k) {
  if (k > 12) throw std::invalid_argument("extract_independent_vectors: at most 12 indices");
  const IndexSet total = IndexSet{1} << k;
  std::vector<Subspace> val(total);
  for (IndexSet x = 0; x < total; ++x) val[x] = phi(x);
  for (IndexSet x = 0; x < total; ++x)
    for (IndexSet y = 0; y < total; ++y) {
      if (!(val[x & y] == subspace_intersection(val[x], val[y])))
        throw std::invalid_argument("extract_independent_vectors: not a meet-homomorphism at subsets " +
                                    std::to_string(x) + ", " + std::to_string(y));
      if (x < y && val[x] == val[y])
        throw std::invalid_argument("extract_independent_vectors: not injective at subsets " + std::to_string(x) +
                                    ", " + std::to_string(y));
    }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < k; ++i) {
    const Subspace& single = val[IndexSet{1} << i];
    std::optional<Vector> pick;
    for (const Vector& v : single.elements())
      if (!val[0].contains(v)) {
        pick = v;
        break;
      }
    if (!pick) throw std::invalid_argument("extract_independent_vectors: phi({" + std::to_string(i) + "}) equals phi(empty)");
    out.push_back(*pick);
  }
  if (!out.empty() && !is_linearly_independent(val[0].p(), val[0].ambient(), out))
    throw std::logic_error("extract_independent_vectors: extracted family is dependent");
  return out;
}

// ---------------------------------------------------------------- projections

namespace {

// Appends candidates to `basis` whenever they increase the rank.
std::vector<Vector> extend_greedily(Scalar p, std::size_t n, std::vector<Vector>& basis,
                                    const std::vector<Vector>& candidates) {
  std::vector<Vector> added;
  for (const Vector& v : candidates) {
    basis.push_back(v);
    if (Matrix(p, n, basis).rank() == basis.size()) {
      added.push_back(v);
    } else {
      basis.pop_back();
    }
  }
  return added;
}

}  // namespace

ProjectionPair projection_pair(const Subspace& x, const Subspace& y) {
  check_same(x, y);
  const Scalar p = x.p();
  const std::size_t n = x.ambient();
  ProjectionPair r;
  r.z = subspace_intersection(x, y);

  std::vector<Vector> basis = r.z.basis().row_list();
  const std::size_t nz = basis.size();
  const auto xc = extend_greedily(p, n, basis, x.basis().row_list());
  const auto yc = extend_greedily(p, n, basis, y.basis().row_list());
  const auto tc = extend_greedily(p, n, basis, Matrix::identity(p, n).row_list());
  if (basis.size() != n) throw std::logic_error("projection_pair: basis extension did not reach full rank");
  r.x_complement = Subspace(p, n, xc);
  r.y_complement = Subspace(p, n, yc);
  r.t = Subspace(p, n, tc);

  const Matrix b(p, n, basis);
  const Matrix b_inv = b.inverse();
  // Coordinates relative to [Z, X', Y', T]: f keeps Y' and T, g keeps X' and T.
  Matrix df(p, n, n), dg(p, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_x = i >= nz && i < nz + xc.size();
    const bool in_y = i >= nz + xc.size() && i < nz + xc.size() + yc.size();
    const bool in_t = i >= nz + xc.size() + yc.size();
    if (in_y || in_t) df.set(i, i, 1);
    if (in_x || in_t) dg.set(i, i, 1);
  }
  r.f = LinearMap(b_inv * df * b);
  r.g = LinearMap(b_inv * dg * b);
  r.gf = then(r.f, r.g);
  return r;
}

// ---------------------------------------------------------------- enumeration

Vector vector_from_index(Scalar p, std::size_t n, std::uint64_t idx) {
  Vector v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<Scalar>(idx % p);
    idx /= p;
  }
  return v;
}

std::uint64_t vector_index(Scalar p, const Vector& v) {
  std::uint64_t idx = 0;
  for (Scalar c : v) idx = idx * p + c % p;
  return idx;
}

std::vector<Subspace> all_subspaces(Scalar p, std::size_t n) {
  const PrimeField field(p);
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    points *= p;
    if (points > (1U << 16)) throw std::invalid_argument("all_subspaces: p^n exceeds 2^16");
  }
  std::vector<Subspace> out;
  // Pivot sets, then the free RREF entries right of each pivot outside pivot columns.
  for (std::uint32_t pivots = 0; pivots < (1U << n); ++pivots) {
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < n; ++c)
      if ((pivots >> c) & 1U) piv.push_back(c);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!((pivots >> c) & 1U)) cells.emplace_back(r, c);
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) combos *= p;
    for (std::uint64_t k = 0; k < combos; ++k) {
      std::vector<Vector> rows(piv.size(), Vector(n, 0));
      for (std::size_t r = 0; r < piv.size(); ++r) rows[r][piv[r]] = 1;
      std::uint64_t code = k;
      for (const auto& [r, c] : cells) {
        rows[r][c] = static_cast<Scalar>(code % p);
        code /= p;
      }
      out.emplace_back(p, n, rows);
    }
  }
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis().row_list() < b.basis().row_list();
  });
  return out;
}

Subspace random_subspace(Scalar p, std::size_t n, std::size_t rows, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> coord(0, p - 1);
  std::vector<Vector> vs(rows, Vector(n));
  for (auto& v : vs)
    for (auto& c : v) c = coord(rng);
  return Subspace(p, n, vs);
}

}  // namespace dualemb
