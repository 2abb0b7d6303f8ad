#include <doctest.h>

#include "leibniz/error.hpp"
#include "leibniz/linalg.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

Matrix strictly_upper(std::size_t n, oracle::Rng& rng) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) m(r, c) = rng.rational();
  return m;
}

Matrix jordan_matrix(const std::vector<std::size_t>& blocks) {
  std::size_t n = 0;
  for (auto b : blocks) n += b;
  Matrix m(n, n);
  std::size_t offset = 0;
  for (auto b : blocks) {
    for (std::size_t i = 0; i + 1 < b; ++i) m(offset + i, offset + i + 1) = 1;
    offset += b;
  }
  return m;
}

}  // namespace

TEST_CASE("scalars parse and print canonically") {
  CHECK(format_scalar(parse_scalar("6/4")) == "3/2");
  CHECK(format_scalar(parse_scalar(" -10/5 ")) == "-2");
  CHECK(format_scalar(parse_scalar("+0/7")) == "0");
  CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_scalar("x"), ParseError);
  CHECK_THROWS_AS(parse_scalar(""), ParseError);
}

TEST_CASE("rref of small matrices") {
  const RrefResult id = rref(Matrix::identity(4));
  CHECK(id.rank == 4);
  CHECK(id.reduced == Matrix::identity(4));

  const Matrix m = Matrix::from_rows({{1, 2}, {2, 4}}, 2);
  const RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.reduced == Matrix::from_rows({{1, 2}, {0, 0}}, 2));
  CHECK(r.pivots == std::vector<std::size_t>{0});

  const Matrix frac = Matrix::from_rows({{Scalar(1, 2), Scalar(1, 3)}, {Scalar(1, 4), Scalar(1, 5)}}, 2);
  CHECK(rref(frac).reduced == Matrix::identity(2));
}

TEST_CASE("rank agrees with the naive elimination oracle") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix m = rng.matrix(6, 9, trial % 2 ? 30 : 70);
    const std::size_t expected = oracle::naive_rank(m);
    CHECK(rank(m) == expected);
    CHECK(rank(SparseMatrix::from_dense(m)) == expected);
    EliminationOptions sparse_only;
    sparse_only.dense_column_threshold = 0;
    CHECK(rank(m, sparse_only) == expected);
  }
}

TEST_CASE("dense and sparse paths give the same reduced form") {
  oracle::Rng rng(12);
  EliminationOptions sparse_only;
  sparse_only.dense_column_threshold = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix m = rng.matrix(static_cast<std::size_t>(rng.integer(1, 8)),
                                static_cast<std::size_t>(rng.integer(1, 10)), 50);
    const RrefResult dense = rref(m);
    const RrefResult sparse = rref(m, sparse_only);
    CHECK(dense.reduced == sparse.reduced);
    CHECK(dense.pivots == sparse.pivots);
    CHECK(rref(dense.reduced).reduced == dense.reduced);
  }
}

TEST_CASE("nullspace dimension and membership") {
  CHECK(nullspace(Matrix(3, 3)).dim() == 3);
  CHECK(nullspace(Matrix::identity(3)).dim() == 0);
  const Subspace k = nullspace(Matrix::from_rows({{1, 1}}, 2));
  CHECK(k.dim() == 1);
  CHECK(k == Subspace::span(2, {{1, -1}}));

  oracle::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix m = rng.matrix(static_cast<std::size_t>(rng.integer(1, 7)),
                                static_cast<std::size_t>(rng.integer(1, 9)), 40);
    const Subspace kernel = nullspace(m);
    CHECK(kernel.dim() + oracle::naive_rank(m) == m.cols());
    for (const auto& v : kernel.basis_vectors()) CHECK(is_zero(m * v));
    CHECK(nullspace(SparseMatrix::from_dense(m)) == kernel);
  }
}

TEST_CASE("subspace lattice") {
  const Subspace e1 = Subspace::span(3, {{1, 0, 0}});
  const Subspace e2 = Subspace::span(3, {{0, 1, 0}});
  CHECK(subspace_intersection(e1, e2).dim() == 0);
  CHECK(subspace_sum(e1, Subspace::zero(3)) == e1);
  CHECK(subspace_sum(e1, e2).contains(Vector{3, -2, 0}));
  CHECK_FALSE(contains(subspace_sum(e1, e2), Vector{0, 0, 1}));
  CHECK_THROWS_AS(subspace_sum(e1, Subspace::zero(4)), DimensionMismatch);

  oracle::Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 12));
    auto random_space = [&] {
      const auto count = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n)));
      std::vector<Vector> vs;
      for (std::size_t i = 0; i < count; ++i) vs.push_back(rng.matrix(1, n, 35).row_vector(0));
      return Subspace::span(n, vs);
    };
    const Subspace s = random_space();
    const Subspace t = random_space();
    const Subspace sum = subspace_sum(s, t);
    const Subspace cap = subspace_intersection(s, t);
    CHECK(sum.dim() + cap.dim() == s.dim() + t.dim());
    CHECK(sum.contains(s));
    CHECK(s.contains(cap));
    CHECK(t.contains(cap));
    auto rows = s.basis_vectors();
    auto more = t.basis_vectors();
    rows.insert(rows.end(), more.begin(), more.end());
    CHECK(sum.dim() == oracle::naive_rank(rows));
    CHECK(equals(subspace_sum(t, s), sum));
  }
}

TEST_CASE("coordinates reconstruct vectors") {
  const Subspace s = Subspace::span(3, {{1, 2, 3}, {0, 1, 1}});
  const Vector v{2, 7, 9};
  const auto c = s.coordinates(v);
  REQUIRE(c.has_value());
  Vector rebuilt(3);
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t j = 0; j < 3; ++j) rebuilt[j] += (*c)[r] * s.basis()(r, j);
  CHECK(rebuilt == v);
  CHECK_FALSE(s.coordinates(Vector{0, 0, 1}).has_value());
}

TEST_CASE("solve and inverse") {
  SparseMatrix m(3);
  m.add_row({{0, 1}, {1, 1}});
  m.add_row({{1, 1}, {2, 1}});
  const auto x = solve(m, {3, 5});
  REQUIRE(x.has_value());
  CHECK((*x)[0] + (*x)[1] == 3);
  CHECK((*x)[1] + (*x)[2] == 5);

  SparseMatrix bad(1);
  bad.add_row({{0, 1}});
  bad.add_row({{0, 2}});
  CHECK_FALSE(solve(bad, {1, 1}).has_value());

  oracle::Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = rng.unimodular(5);
    CHECK(u * inverse(u) == Matrix::identity(5));
  }
  CHECK_THROWS_AS(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, 2)), SingularMatrix);
}

TEST_CASE("nilpotent matrices") {
  oracle::Rng rng(16);
  const auto upper = is_nilpotent_matrix(strictly_upper(5, rng));
  CHECK(upper.nilpotent);
  CHECK(is_nilpotent_matrix(jordan_matrix({5})).index == 5);
  CHECK_FALSE(is_nilpotent_matrix(Matrix::identity(2)).nilpotent);
  CHECK_THROWS_AS(is_nilpotent_matrix(Matrix(2, 3)), DimensionMismatch);

  CHECK(jordan_blocks_nilpotent(Matrix(4, 4)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(jordan_blocks_nilpotent(jordan_matrix({6})) == std::vector<std::size_t>{6});
  CHECK_THROWS_AS(jordan_blocks_nilpotent(Matrix::identity(3)), NotNilpotent);
}

TEST_CASE("Jordan blocks match chain counting on conjugated matrices") {
  oracle::Rng rng(17);
  const std::vector<std::vector<std::size_t>> shapes{{1}, {2, 1}, {3, 3}, {4, 1, 1}, {2, 2, 2}, {3, 2, 1}, {5, 1}};
  for (const auto& shape : shapes) {
    const Matrix j = jordan_matrix(shape);
    const Matrix p = rng.unimodular(j.rows());
    const Matrix conj = p * j * inverse(p);
    const auto blocks = jordan_blocks_nilpotent(conj);
    CHECK(blocks == shape);
    CHECK(blocks == oracle::chain_blocks(conj));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const Matrix m = strictly_upper(n, rng);
    const auto blocks = jordan_blocks_nilpotent(m);
    std::size_t total = 0;
    for (auto b : blocks) total += b;
    CHECK(total == n);
    CHECK(std::is_sorted(blocks.rbegin(), blocks.rend()));
    CHECK(blocks == oracle::chain_blocks(m));
  }
}
