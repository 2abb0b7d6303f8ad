#include "leibniz/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "leibniz/error.hpp"
#include "leibniz/modular.hpp"

namespace leibniz {

namespace {

// Below this many rows the direct rational elimination is cheaper than a modular lift.
constexpr std::size_t kModularMinRows = 64;

}  // namespace

// ---------------------------------------------------------------------------
// Sparse vectors

SparseVector to_sparse(const Vector& dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (sgn(dense[i]) != 0) out.push_back({i, dense[i]});
  return out;
}

Vector to_dense(const SparseVector& sparse, std::size_t size) {
  Vector out(size);
  for (const auto& e : sparse) {
    if (e.col >= size) throw DimensionMismatch("sparse entry outside dense size");
    out[e.col] = e.value;
  }
  return out;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) out.add_row(to_sparse(m.row_vector(r)));
  return out;
}

void SparseMatrix::add_row(SparseVector row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].col >= cols_) throw DimensionMismatch("sparse row entry outside column range");
    if (i > 0 && row[i].col <= row[i - 1].col) throw Error("sparse row columns not strictly increasing");
  }
  std::erase_if(row, [](const SparseEntry& e) { return sgn(e.value) == 0; });
  rows_.push_back(std::move(row));
}

// ---------------------------------------------------------------------------
// Incremental reduced echelon form

namespace {

// row - coef * other, both rational sparse vectors.
SparseVector axpy(const SparseVector& row, const Scalar& coef, const SparseVector& other) {
  SparseVector out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar v;
  while (i < row.size() || j < other.size()) {
    if (j >= other.size() || (i < row.size() && row[i].col < other[j].col)) {
      out.push_back(row[i++]);
    } else if (i >= row.size() || other[j].col < row[i].col) {
      out.push_back({other[j].col, -coef * other[j].value});
      ++j;
    } else {
      v = row[i].value - coef * other[j].value;
      if (sgn(v) != 0) out.push_back({row[i].col, v});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// Stored rows have leading entry one and zeros in every other pivot column, so reducing a
// new row is a single combination with the row's own pivot-column entries as coefficients.
struct EchelonBuilder::Impl {
  std::size_t cols;
  std::vector<SparseVector> rows;
  std::vector<std::int64_t> pivot_row;  // column -> index into rows, or -1
  mutable Vector scratch;
  mutable std::vector<char> touched;

  explicit Impl(std::size_t c) : cols(c), pivot_row(c, -1), scratch(c), touched(c, 0) {}

  SparseVector reduce(const SparseVector& row) const {
    std::vector<std::size_t> used;
    auto touch = [&](std::size_t c) {
      if (!touched[c]) {
        touched[c] = 1;
        used.push_back(c);
      }
    };
    Scalar t;
    for (const auto& e : row) {
      const auto owner = pivot_row[e.col];
      if (owner < 0) {
        touch(e.col);
        scratch[e.col] += e.value;
        continue;
      }
      const SparseVector& p = rows[static_cast<std::size_t>(owner)];
      for (std::size_t i = 1; i < p.size(); ++i) {
        touch(p[i].col);
        mpq_mul(t.get_mpq_t(), e.value.get_mpq_t(), p[i].value.get_mpq_t());
        scratch[p[i].col] -= t;
      }
    }
    std::sort(used.begin(), used.end());
    SparseVector out;
    for (const std::size_t c : used) {
      if (sgn(scratch[c]) != 0) out.push_back({c, scratch[c]});
      scratch[c] = 0;
      touched[c] = 0;
    }
    return out;
  }
};

EchelonBuilder::EchelonBuilder(std::size_t cols) : impl_(std::make_unique<Impl>(cols)) {}
EchelonBuilder::~EchelonBuilder() = default;
EchelonBuilder::EchelonBuilder(EchelonBuilder&&) noexcept = default;
EchelonBuilder& EchelonBuilder::operator=(EchelonBuilder&&) noexcept = default;

bool EchelonBuilder::insert(const SparseVector& row) {
  for (const auto& e : row)
    if (e.col >= impl_->cols) throw DimensionMismatch("row entry outside echelon column range");
  SparseVector reduced = impl_->reduce(row);
  if (reduced.empty()) return false;
  const Scalar lead = reduced.front().value;
  if (lead != 1)
    for (auto& e : reduced) e.value /= lead;
  const std::size_t p = reduced.front().col;
  for (auto& existing : impl_->rows) {
    auto it = std::lower_bound(existing.begin(), existing.end(), p,
                               [](const SparseEntry& e, std::size_t c) { return e.col < c; });
    if (it == existing.end() || it->col != p) continue;
    const Scalar coef = it->value;
    existing = axpy(existing, coef, reduced);
  }
  impl_->pivot_row[p] = static_cast<std::int64_t>(impl_->rows.size());
  impl_->rows.push_back(std::move(reduced));
  return true;
}

bool EchelonBuilder::in_span(const SparseVector& row) const {
  for (const auto& e : row)
    if (e.col >= impl_->cols) throw DimensionMismatch("row entry outside echelon column range");
  return impl_->reduce(row).empty();
}

std::size_t EchelonBuilder::rank() const { return impl_->rows.size(); }
std::size_t EchelonBuilder::cols() const { return impl_->cols; }

SparseRref EchelonBuilder::finish() const {
  SparseRref out;
  out.cols = impl_->cols;
  for (std::size_t c = 0; c < impl_->cols; ++c)
    if (impl_->pivot_row[c] >= 0) {
      out.pivots.push_back(c);
      out.rows.push_back(impl_->rows[static_cast<std::size_t>(impl_->pivot_row[c])]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Dense fraction-free (Bareiss) elimination

namespace {

RrefResult dense_rref(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  // Clear denominators row by row; the row space is unchanged.
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }

  std::vector<std::size_t> pivots;
  Integer previous = 1;
  Integer t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Integer& pivot = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer factor = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = pivot * a[i][j] - factor * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    // Entries of the pivot row left of the next pivot column stay as they are.
    previous = pivot;
    pivots.push_back(c);
    ++r;
  }

  // Normalize pivot rows and clear above each pivot.
  RrefResult out;
  out.reduced = Matrix(rows, cols);
  out.rank = pivots.size();
  out.pivots = pivots;
  for (std::size_t i = 0; i < out.rank; ++i) {
    const Integer& lead = a[i][pivots[i]];
    for (std::size_t c = pivots[i]; c < cols; ++c) {
      if (sgn(a[i][c]) == 0) continue;
      Scalar v(a[i][c], lead);
      v.canonicalize();
      out.reduced(i, c) = std::move(v);
    }
  }
  for (std::size_t i = out.rank; i-- > 0;) {
    for (std::size_t above = 0; above < i; ++above) {
      const Scalar coef = out.reduced(above, pivots[i]);
      if (sgn(coef) == 0) continue;
      for (std::size_t c = pivots[i]; c < cols; ++c)
        if (sgn(out.reduced(i, c)) != 0) out.reduced(above, c) -= coef * out.reduced(i, c);
    }
  }
  return out;
}

Matrix dense_from_rref(const SparseRref& s, std::size_t rows) {
  Matrix out(std::max(rows, s.rank()), s.cols);
  for (std::size_t r = 0; r < s.rank(); ++r)
    for (const auto& e : s.rows[r]) out(r, e.col) = e.value;
  return out;
}

}  // namespace

RrefResult rref(const Matrix& m, const EliminationOptions& options) {
  if (m.cols() <= options.dense_column_threshold) return dense_rref(m);
  const SparseRref s = rref(SparseMatrix::from_dense(m));
  RrefResult out;
  out.reduced = dense_from_rref(s, m.rows());
  out.rank = s.rank();
  out.pivots = s.pivots;
  return out;
}

SparseRref rref(const SparseMatrix& m) {
  if (m.rows() >= kModularMinRows)
    if (auto lifted = modular_rref(m)) return std::move(*lifted);
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return builder.finish();
}

std::size_t rank(const Matrix& m, const EliminationOptions& options) {
  if (m.cols() <= options.dense_column_threshold) return dense_rref(m).rank;
  return rank(SparseMatrix::from_dense(m));
}

std::size_t rank(const SparseMatrix& m) {
  if (m.rows() >= kModularMinRows)
    if (auto lifted = modular_rref(m)) return lifted->rank();
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) builder.insert(m.row(r));
  return builder.rank();
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix(0, ambient_dim);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Matrix::identity(ambient_dim);
  s.pivots_.resize(ambient_dim);
  std::iota(s.pivots_.begin(), s.pivots_.end(), std::size_t{0});
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionMismatch("spanning vector has wrong ambient dimension");
  if (vectors.empty()) return zero(ambient_dim);
  return row_space(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::row_space(const Matrix& m) {
  const RrefResult r = rref(m);
  Subspace s;
  s.ambient_dim_ = m.cols();
  s.basis_ = Matrix(r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) s.basis_(i, c) = r.reduced(i, c);
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::from_rref(const SparseRref& reduced) {
  Subspace s;
  s.ambient_dim_ = reduced.cols;
  s.basis_ = dense_from_rref(reduced, reduced.rank());
  s.pivots_ = reduced.pivots;
  return s;
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row_vector(r));
  return out;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector and subspace ambient dimensions differ");
  Vector coords(dim());
  Vector residual = v;
  for (std::size_t r = 0; r < dim(); ++r) {
    coords[r] = v[pivots_[r]];
    if (sgn(coords[r]) == 0) continue;
    for (std::size_t c = 0; c < ambient_dim_; ++c)
      if (sgn(basis_(r, c)) != 0) residual[c] -= coords[r] * basis_(r, c);
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("subspaces of different ambient dimension");
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_.row_vector(r))) return false;
  return true;
}

Subspace subspace_sum(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionMismatch("subspace sum across ambient dimensions");
  auto vectors = s.basis_vectors();
  auto more = t.basis_vectors();
  vectors.insert(vectors.end(), more.begin(), more.end());
  return Subspace::span(s.ambient_dim(), vectors);
}

Subspace subspace_intersection(const Subspace& s, const Subspace& t) {
  const std::size_t n = s.ambient_dim();
  if (n != t.ambient_dim()) throw DimensionMismatch("subspace intersection across ambient dimensions");
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(n);
  // Solve sum_i alpha_i s_i = sum_j beta_j t_j.
  Matrix system(n, s.dim() + t.dim());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < s.dim(); ++i) system(c, i) = s.basis()(i, c);
    for (std::size_t j = 0; j < t.dim(); ++j) system(c, s.dim() + j) = -t.basis()(j, c);
  }
  const Subspace kernel = nullspace(system);
  std::vector<Vector> vectors;
  for (std::size_t r = 0; r < kernel.dim(); ++r) {
    Vector x(n);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const Scalar& alpha = kernel.basis()(r, i);
      if (sgn(alpha) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) x[c] += alpha * s.basis()(i, c);
    }
    vectors.push_back(std::move(x));
  }
  return Subspace::span(n, vectors);
}

bool contains(const Subspace& s, const Vector& v) { return s.contains(v); }
bool equals(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw DimensionMismatch("subspace comparison across ambient dimensions");
  return s == t;
}

// ---------------------------------------------------------------------------
// Kernels and solving

namespace {

Subspace kernel_of_rref(const SparseRref& r) {
  const std::size_t n = r.cols;
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  // Column access to the non-pivot part of the reduced rows.
  std::vector<SparseVector> kernel(n);
  for (std::size_t f = 0; f < n; ++f)
    if (!is_pivot[f]) kernel[f].push_back({f, Scalar(1)});
  for (std::size_t i = 0; i < r.rank(); ++i)
    for (const auto& e : r.rows[i])
      if (!is_pivot[e.col]) kernel[e.col].push_back({r.pivots[i], -e.value});
  SparseMatrix basis(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    auto& v = kernel[f];
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    basis.add_row(std::move(v));
  }
  return Subspace::from_rref(rref(basis));
}

}  // namespace

Subspace nullspace(const Matrix& m, const EliminationOptions& options) {
  const RrefResult r = rref(m, options);
  SparseRref s;
  s.cols = m.cols();
  s.pivots = r.pivots;
  for (std::size_t i = 0; i < r.rank; ++i) s.rows.push_back(to_sparse(r.reduced.row_vector(i)));
  return kernel_of_rref(s);
}

Subspace nullspace(const SparseMatrix& m) { return kernel_of_rref(rref(m)); }

std::optional<Vector> solve(const SparseMatrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("right-hand side length differs from row count");
  const std::size_t n = m.cols();
  EchelonBuilder builder(n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVector row = m.row(r);
    if (sgn(rhs[r]) != 0) row.push_back({n, rhs[r]});
    builder.insert(row);
  }
  const SparseRref reduced = builder.finish();
  Vector x(n);
  for (std::size_t i = 0; i < reduced.rank(); ++i) {
    if (reduced.pivots[i] == n) return std::nullopt;
    const auto& row = reduced.rows[i];
    if (row.back().col == n) x[reduced.pivots[i]] = row.back().value;
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = 1;
  }
  const RrefResult r = rref(augmented);
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) throw SingularMatrix("matrix is not invertible");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) out(i, c) = r.reduced(i, n + c);
  return out;
}

// ---------------------------------------------------------------------------
// Nilpotent matrices

Nilpotency is_nilpotent_matrix(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("nilpotency test needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {true, 0};
  Matrix power = m;
  for (std::size_t t = 1; t <= n; ++t) {
    if (power.is_zero()) return {true, t};
    power = power * m;
  }
  return {false, std::nullopt};
}

std::vector<std::size_t> jordan_blocks_nilpotent(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("Jordan blocks need a square matrix");
  const std::size_t n = m.rows();
  // ranks[j] = rank(M^j)
  std::vector<std::size_t> ranks{n};
  Matrix power = Matrix::identity(n);
  while (ranks.back() > 0) {
    if (ranks.size() > n) throw NotNilpotent("matrix is not nilpotent");
    power = power * m;
    const std::size_t r = rank(power);
    if (r == ranks.back()) throw NotNilpotent("matrix is not nilpotent");
    ranks.push_back(r);
  }
  // Blocks of size >= j: ranks[j-1] - ranks[j].
  std::vector<std::size_t> sizes;
  for (std::size_t j = ranks.size() - 1; j >= 1; --j) {
    const std::size_t at_least = ranks[j - 1] - ranks[j];
    const std::size_t at_least_next = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    sizes.insert(sizes.end(), at_least - at_least_next, j);
  }
  return sizes;
}

}  // namespace leibniz
