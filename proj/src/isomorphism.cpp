#include "leibniz/isomorphism.hpp"

#include <string>

#include "leibniz/error.hpp"

namespace leibniz {

Algebra transport(const Algebra& a, const Matrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatch("basis change size differs from algebra dimension");
  const Matrix inv = inverse(p);
  std::vector<Element> columns;
  for (std::size_t i = 0; i < n; ++i) columns.push_back(p.column(i));
  Algebra out(a.labels());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set_product(i, j, inv * a.bracket(columns[i], columns[j]));
  return out;
}

HomomorphismCheck is_homomorphism(const Algebra& a, const Algebra& b, const Matrix& p) {
  if (p.rows() != b.dim() || p.cols() != a.dim()) throw DimensionMismatch("map shape does not match the algebras");
  std::vector<Element> images;
  for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(p.column(i));
  HomomorphismCheck out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (p * a.product_dense(i, j) != b.bracket(images[i], images[j])) {
        out.violation = std::make_pair(i, j);
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

bool is_isomorphism(const Algebra& a, const Algebra& b, const Matrix& p) {
  if (a.dim() != b.dim()) throw DimensionMismatch("isomorphic algebras have equal dimension");
  return rank(p) == a.dim() && is_homomorphism(a, b, p).ok;
}

Matrix mu3_change_of_basis(std::size_t n, std::size_t k) {
  if (n < 2 * k + 5) throw ConstraintViolation("mu3 requires n - 2k - 1 >= 4");
  const std::size_t m0 = n - 2 * k - 1;  // e's in the original form
  auto old_e = [](std::size_t i) { return i - 1; };
  auto old_f = [m0](std::size_t j) { return m0 + j - 1; };
  auto new_e = [](std::size_t i) { return i - 1; };
  auto new_f = [m0](std::size_t j) { return m0 + 1 + j - 1; };
  Matrix p(n, n);
  p(old_f(k + 1), new_e(1)) = 1;
  p(old_e(1), new_e(2)) = 1;
  p(old_f(k + 1), new_e(2)) = -1;
  for (std::size_t i = 2; i <= m0; ++i) p(old_e(i), new_e(i + 1)) = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    p(old_f(j), new_f(j)) = 1;
    p(old_f(k + 1 + j), new_f(k + j)) = 1;
  }
  return p;
}

Matrix rmu3_to_rn_relabeling(std::size_t n, std::size_t k) {
  const Algebra source = make_R_mu3(n, k);
  const Algebra target = make_Rn(n - k - 1, k + 1);
  const std::size_t m = n - 2 * k;
  auto s = [&](const std::string& l) { return source.index_of(l); };
  auto t = [&](const std::string& l) { return target.index_of(l); };
  auto name = [](char c, std::size_t i) { return std::string(1, c) + std::to_string(i); };
  Matrix p(source.dim(), source.dim());
  for (std::size_t i = 1; i <= m - 1; ++i) p(s(name('e', i + 1)), t(name('e', i))) = 1;
  for (std::size_t i = 1; i <= k; ++i) p(s(name('f', k + i)), t(name('e', m - 1 + i))) = 1;
  p(s("e1"), t("f1")) = 1;
  for (std::size_t i = 2; i <= k + 1; ++i) p(s(name('f', i - 1)), t(name('f', i))) = 1;
  p(s("y1"), t("y1")) = 1;
  for (std::size_t i = 2; i <= k + 1; ++i) p(s(name('x', i - 1)), t(name('y', i))) = 1;
  p(s("y2"), t(name('y', k + 2))) = 1;
  return p;
}

Matrix lgamma_map(const Vector& alpha, const Vector& beta) {
  if (alpha.size() != beta.size()) throw DimensionMismatch("alpha and beta must have equal length");
  const std::size_t k = alpha.size();
  Matrix p(2 * k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    p(i, i) = alpha[i];
    p(i, k + i) = beta[i];
    p(k + i, k + i) = 1;
  }
  return p;
}

namespace {

Scalar power(const Scalar& a, std::size_t e) {
  Scalar out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= a;
  return out;
}

void require_nonzero(const Scalar& A) {
  if (A == 0) throw ConstraintViolation("scaling factor must be nonzero");
}

}  // namespace

RMu1Params scale_params_mu1(std::size_t n, std::size_t k, const RMu1Params& p, const Scalar& A) {
  require_nonzero(A);
  p.validate(n, k);
  RMu1Params out = p;
  for (std::size_t r = 0; r < out.a.rows(); ++r) {
    const Scalar f = power(A, r + 1);  // row r holds t = r + 2
    for (std::size_t j = 0; j < k; ++j) out.a(r, j) /= f;
  }
  out.phi = out.phi.scaled(1 / A);
  const Scalar top = power(A, n - 2 * k);
  out.delta = out.delta.scaled(1 / top);
  return out;
}

RMu2Params scale_params_mu2(const RMu2Params& p, const Scalar& A) {
  require_nonzero(A);
  RMu2Params out = p;
  for (auto& v : out.b) v /= A;
  for (auto& v : out.beta) v /= A;
  out.phi = out.phi.scaled(1 / A);
  out.theta = out.theta.scaled(1 / (A * A));
  return out;
}

Matrix scaling_basis_change_mu1(std::size_t n, std::size_t k, const Scalar& A) {
  require_nonzero(A);
  const std::size_t m = n - 2 * k;
  Matrix p = Matrix::identity(n + k);
  for (std::size_t i = 1; i <= m; ++i) p(i - 1, i - 1) = power(A, i);
  for (std::size_t i = 1; i <= k; ++i) p(m + k + i - 1, m + k + i - 1) = A;
  return p;
}

Matrix scaling_basis_change_mu2(std::size_t n, std::size_t k, const Scalar& A) {
  require_nonzero(A);
  const std::size_t m = n - 2 * k;
  Matrix p = Matrix::identity(n + k);
  for (std::size_t i = 1; i <= m; ++i) p(i - 1, i - 1) = power(A, i);
  p(m, m) = A;                  // f_1
  p(m + k, m + k) = A * A;      // f_{k+1}
  for (std::size_t j = 2; j <= k; ++j) p(m + k + j - 1, m + k + j - 1) = A;
  return p;
}

ScalingWitness<RMu1Params> witness_isomorphism_mu1(std::size_t n, std::size_t k, const RMu1Params& p,
                                                   const Scalar& A) {
  ScalingWitness<RMu1Params> w;
  w.A = A;
  w.source = p;
  w.target = scale_params_mu1(n, k, p, A);
  w.change.P = scaling_basis_change_mu1(n, k, A);
  w.verified = is_isomorphism(make_R_mu1(n, k, w.target), make_R_mu1(n, k, p), w.change.P);
  return w;
}

ScalingWitness<RMu2Params> witness_isomorphism_mu2(std::size_t n, std::size_t k, const RMu2Params& p,
                                                   const Scalar& A) {
  ScalingWitness<RMu2Params> w;
  w.A = A;
  w.source = p;
  w.target = scale_params_mu2(p, A);
  w.change.P = scaling_basis_change_mu2(n, k, A);
  w.verified = is_isomorphism(make_R_mu2(n, k, w.target), make_R_mu2(n, k, p), w.change.P);
  return w;
}

std::optional<Scalar> rational_root(const Scalar& value, std::size_t w) {
  if (w == 0) throw ConstraintViolation("root degree must be positive");
  if (value == 0) return Scalar(0);
  const bool negative = sgn(value) < 0;
  if (negative && w % 2 == 0) return std::nullopt;
  Integer num = abs(value.get_num());
  Integer den = value.get_den();
  Integer rn;
  Integer rd;
  const auto exp = static_cast<unsigned long>(w);
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), exp) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), exp) == 0) return std::nullopt;
  Scalar out(rn, rd);
  out.canonicalize();
  return negative ? Scalar(-out) : out;
}

namespace {

struct Slot {
  Scalar value;
  std::size_t weight;
};

// Chooses A for the scan-ordered (value, weight) list, or nothing when no rational
// normalization exists.
std::optional<Scalar> choose_scaling(const std::vector<Slot>& slots, bool& all_zero) {
  all_zero = true;
  const Slot* first = nullptr;
  for (const auto& s : slots) {
    if (s.value != 0) {
      first = &s;
      break;
    }
  }
  if (first == nullptr) return std::nullopt;
  all_zero = false;
  if (auto root = rational_root(first->value, first->weight)) {
    Scalar A = *root;
    if (first->weight % 2 == 0) {
      for (const auto& s : slots) {
        if (s.value == 0 || s.weight % 2 == 0) continue;
        if (sgn(s.value) * sgn(A) < 0) A = -A;  // s / A^odd keeps the sign of s / A
        break;
      }
    }
    return A;
  }
  for (const auto& s : slots)
    if (s.value != 0 && s.weight == 1) return s.value;
  return std::nullopt;
}

}  // namespace

CanonicalForm<RMu1Params> canonical_scaling_form_mu1(std::size_t n, std::size_t k, const RMu1Params& p) {
  p.validate(n, k);
  std::vector<Slot> slots;
  for (std::size_t r = 0; r < p.a.rows(); ++r)
    for (std::size_t j = 0; j < p.a.cols(); ++j) slots.push_back({p.a(r, j), r + 1});
  for (const auto& v : p.phi.data()) slots.push_back({v, 1});
  for (const auto& v : p.delta.data()) slots.push_back({v, n - 2 * k});
  CanonicalForm<RMu1Params> out{p};
  bool all_zero = false;
  const auto A = choose_scaling(slots, all_zero);
  if (A) {
    out.A = *A;
    out.params = scale_params_mu1(n, k, p, *A);
  } else {
    out.irrational_root = !all_zero;
  }
  return out;
}

CanonicalForm<RMu2Params> canonical_scaling_form_mu2(const RMu2Params& p) {
  std::vector<Slot> slots;
  for (const auto& v : p.b) slots.push_back({v, 1});
  for (const auto& v : p.beta) slots.push_back({v, 1});
  for (const auto& v : p.phi.data()) slots.push_back({v, 1});
  for (const auto& v : p.theta.data()) slots.push_back({v, 2});
  CanonicalForm<RMu2Params> out{p};
  bool all_zero = false;
  const auto A = choose_scaling(slots, all_zero);
  if (A) {
    out.A = *A;
    out.params = scale_params_mu2(p, *A);
  } else {
    out.irrational_root = !all_zero;
  }
  return out;
}

}  // namespace leibniz
