#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

struct SparseEntry {
  std::size_t col;
  Scalar value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector: entries sorted by strictly increasing column, no stored zeros.
using SparseVector = std::vector<SparseEntry>;

SparseVector to_sparse(const Vector& dense);
Vector to_dense(const SparseVector& sparse, std::size_t size);

/// Row-oriented sparse matrix used to stream large homogeneous systems.
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t cols) : cols_(cols) {}
  static SparseMatrix from_dense(const Matrix& m);

  /// Appends a row. Entries must be sorted by column and inside [0, cols).
  void add_row(SparseVector row);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t i) const { return rows_[i]; }

 private:
  std::size_t cols_;
  std::vector<SparseVector> rows_;
};

struct EliminationOptions {
  /// Matrices with at most this many columns are eliminated densely.
  std::size_t dense_column_threshold = 64;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form of a sparse system, kept sparse.
struct SparseRref {
  std::size_t cols = 0;
  std::vector<SparseVector> rows;  // pivot coefficient 1, ordered by pivot column
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return rows.size(); }
};

/// Incremental row-reduced echelon builder over the rationals.
///
/// The stored rows are always in reduced echelon form, so intermediate entries stay
/// bounded by those of the final answer and finish() only reorders rows.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t cols);
  ~EchelonBuilder();
  EchelonBuilder(EchelonBuilder&&) noexcept;
  EchelonBuilder& operator=(EchelonBuilder&&) noexcept;

  /// Adds a row to the span. Returns true when the rank grew.
  bool insert(const SparseVector& row);
  bool insert(const Vector& row) { return insert(to_sparse(row)); }

  /// True when the row already lies in the span of the inserted rows.
  bool in_span(const SparseVector& row) const;

  std::size_t rank() const;
  std::size_t cols() const;

  /// The unique reduced form, rows ordered by pivot column.
  SparseRref finish() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RrefResult rref(const Matrix& m, const EliminationOptions& options = {});
SparseRref rref(const SparseMatrix& m);

std::size_t rank(const Matrix& m, const EliminationOptions& options = {});
std::size_t rank(const SparseMatrix& m);

/// Canonical subspace of Q^n: the reduced row-echelon basis of its row span.
///
/// Two subspaces are equal as sets iff their canonical bases agree entrywise.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace from_rref(const SparseRref& reduced);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vector> basis_vectors() const;

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of v in the canonical basis; empty when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& s, const Subspace& t);
Subspace subspace_intersection(const Subspace& s, const Subspace& t);
bool contains(const Subspace& s, const Vector& v);
bool equals(const Subspace& s, const Subspace& t);

/// Kernel {v : M v = 0}.
Subspace nullspace(const Matrix& m, const EliminationOptions& options = {});
Subspace nullspace(const SparseMatrix& m);

/// Some solution of M x = rhs, or nothing when the system is inconsistent.
std::optional<Vector> solve(const SparseMatrix& m, const Vector& rhs);

/// Throws SingularMatrix when m is not invertible.
Matrix inverse(const Matrix& m);

struct Nilpotency {
  bool nilpotent = false;
  /// Smallest t with M^t = 0, when nilpotent.
  std::optional<std::size_t> index;
};

Nilpotency is_nilpotent_matrix(const Matrix& m);

/// Jordan block sizes of a nilpotent matrix, read off the rank sequence of its powers.
std::vector<std::size_t> jordan_blocks_nilpotent(const Matrix& m);

}  // namespace leibniz
