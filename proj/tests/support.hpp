#pragma once

// Independent reference routines for the unit tests. None of these call into the
// elimination kernels under test.

#include <algorithm>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"

namespace oracle {

using leibniz::Matrix;
using leibniz::Scalar;
using leibniz::Vector;

// Textbook Gaussian elimination with rational division at every step.
inline std::size_t naive_rank(std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Scalar f = rows[r][c] / rows[rank][c];
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t naive_rank(const Matrix& m) {
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
  return naive_rank(rows);
}

inline Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t l = 0; l < a.cols(); ++l) out(i, j) += a(i, l) * b(l, j);
  return out;
}

// Jordan block sizes of a nilpotent matrix by explicit chain counting: the number
// of blocks of size exactly s is dim ker M^s - dim ker M^{s-1} minus the same
// difference one step higher, with kernels measured by the naive rank.
inline std::vector<std::size_t> chain_blocks(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> kernel_dims{0};
  Matrix power = Matrix::identity(n);
  for (std::size_t s = 1; s <= n + 1; ++s) {
    power = naive_product(power, m);
    kernel_dims.push_back(n - naive_rank(power));
  }
  std::vector<std::size_t> sizes;
  for (std::size_t s = n; s >= 1; --s) {
    const long gain = static_cast<long>(kernel_dims[s]) - static_cast<long>(kernel_dims[s - 1]);
    const long next = static_cast<long>(kernel_dims[s + 1]) - static_cast<long>(kernel_dims[s]);
    for (long t = 0; t < gain - next; ++t) sizes.push_back(s);
  }
  return sizes;
}

// Structure-constant oracles: read c_{ij}^k through Algebra::constant and redo everything
// with plain loops.

inline Vector naive_bracket(const leibniz::Algebra& a, const Vector& x, const Vector& y) {
  const std::size_t n = a.dim();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * a.constant(i, j, k);
    }
  }
  return out;
}

inline Vector basis(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

// Number of basis triples with nonzero [x,[y,z]] - [[x,y],z] + [[x,z],y].
inline std::size_t leibniz_violations(const leibniz::Algebra& a) {
  const std::size_t n = a.dim();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vector x = basis(n, i), y = basis(n, j), z = basis(n, k);
        const Vector l = naive_bracket(a, x, naive_bracket(a, y, z));
        const Vector r1 = naive_bracket(a, naive_bracket(a, x, y), z);
        const Vector r2 = naive_bracket(a, naive_bracket(a, x, z), y);
        for (std::size_t c = 0; c < n; ++c)
          if (l[c] - r1[c] + r2[c] != 0) {
            ++bad;
            break;
          }
      }
  return bad;
}

// D[b_i,b_j] = [D b_i, b_j] + [b_i, D b_j], column convention.
inline bool naive_is_derivation(const leibniz::Algebra& a, const Matrix& d) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector lhs = d * naive_bracket(a, basis(n, i), basis(n, j));
      const Vector r1 = naive_bracket(a, d.column(i), basis(n, j));
      const Vector r2 = naive_bracket(a, basis(n, i), d.column(j));
      for (std::size_t c = 0; c < n; ++c)
        if (lhs[c] != r1[c] + r2[c]) return false;
    }
  return true;
}

// dim Der(A) from a dense n^3 x n^2 system solved by naive_rank.
inline std::size_t naive_derivation_dim(const leibniz::Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c) {
        // Unknown d(r, s) sits at r * n + s.
        Vector row(n * n);
        for (std::size_t k = 0; k < n; ++k) row[c * n + k] += a.constant(i, j, k);
        for (std::size_t r = 0; r < n; ++r) {
          row[r * n + i] -= a.constant(r, j, c);
          row[r * n + j] -= a.constant(i, r, c);
        }
        bool zero = true;
        for (const auto& v : row) zero = zero && v == 0;
        if (!zero) rows.push_back(std::move(row));
      }
  return n * n - naive_rank(rows);
}

// Cocycle identity on every basis triple for phi given as phi(i, j, c).
template <typename Phi>
bool naive_is_cocycle(const leibniz::Algebra& a, Phi phi) {
  const std::size_t n = a.dim();
  auto apply = [&](const Vector& x, const Vector& y) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        for (std::size_t c = 0; c < n; ++c) out[c] += x[i] * y[j] * phi(i, j, c);
      }
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vector x = basis(n, i), y = basis(n, j), z = basis(n, k);
        const Vector t1 = naive_bracket(a, x, apply(y, z));
        const Vector t2 = naive_bracket(a, apply(x, y), z);
        const Vector t3 = naive_bracket(a, apply(x, z), y);
        const Vector t4 = apply(x, naive_bracket(a, y, z));
        const Vector t5 = apply(naive_bracket(a, x, y), z);
        const Vector t6 = apply(naive_bracket(a, x, z), y);
        for (std::size_t c = 0; c < n; ++c)
          if (t1[c] - t2[c] + t3[c] + t4[c] - t5[c] + t6[c] != 0) return false;
      }
  return true;
}

// Gauss-Jordan on [M | I].
inline Matrix naive_inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    Vector row(2 * n);
    for (std::size_t c = 0; c < n; ++c) row[c] = m(r, c);
    row[n + r] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (rows[p][c] == 0) ++p;
    std::swap(rows[p], rows[c]);
    const Scalar lead = rows[c][c];
    for (auto& v : rows[c]) v /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || rows[r][c] == 0) continue;
      const Scalar f = rows[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) rows[r][j] -= f * rows[c][j];
    }
  }
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = rows[r][n + c];
  return out;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

  Scalar rational(long bound = 9, long den_bound = 5) {
    Scalar q(integer(-bound, bound), integer(1, den_bound));
    q.canonicalize();
    return q;
  }

  Scalar nonzero_rational(long bound = 9, long den_bound = 5) {
    Scalar q;
    do q = rational(bound, den_bound);
    while (q == 0);
    return q;
  }

  // Sparse-ish random matrix; density in percent.
  Matrix matrix(std::size_t rows, std::size_t cols, int density = 60) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (integer(1, 100) <= density) m(r, c) = rational();
    return m;
  }

  // Invertible integer matrix with determinant +-1: product of elementary moves.
  Matrix unimodular(std::size_t n, int moves = 0) {
    Matrix m = Matrix::identity(n);
    if (n < 2) return m;
    if (moves == 0) moves = static_cast<int>(3 * n);
    for (int t = 0; t < moves; ++t) {
      const auto i = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1));
      auto j = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 2));
      if (j >= i) ++j;
      const long f = integer(-2, 2);
      for (std::size_t c = 0; c < n; ++c) m(i, c) += f * m(j, c);
    }
    return m;
  }

  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

}  // namespace oracle
