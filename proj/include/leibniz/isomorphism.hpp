#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/families.hpp"

namespace leibniz {

/// Invertible matrix whose column i is the new basis vector b'_i in old coordinates.
/// Read as a map it sends the transported algebra into the original one.
struct BasisChange {
  Matrix P;
};

/// Structure constants in the basis b'_i = P b_i: [b'_i, b'_j] = sum_k c'_{ij}^k b'_k.
/// Labels are kept. Throws SingularMatrix when P is not invertible.
Algebra transport(const Algebra& a, const Matrix& p);

struct HomomorphismCheck {
  bool ok = false;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // first basis pair of A that fails
};

/// P maps A into B (column j = image of a_j in B's basis); checks P[x,y] = [Px,Py].
HomomorphismCheck is_homomorphism(const Algebra& a, const Algebra& b, const Matrix& p);
bool is_isomorphism(const Algebra& a, const Algebra& b, const Matrix& p);

/// Basis of the convenient mu3 form written in the original basis:
/// e'_1 = f_{k+1}, e'_2 = e_1 - f_{k+1}, e'_{i+1} = e_i (i >= 2), f'_j = f_j, f'_{k+j} = f_{k+1+j}.
Matrix mu3_change_of_basis(std::size_t n, std::size_t k);

/// Basis of R_n(n' - k' - 1, k' + 1) written in the basis of R(mu3)(n', k'):
/// e'_i = e_{i+1}, e'_{n'-2k'-1+i} = f_{k'+i}, f'_1 = e_1, f'_i = f_{i-1},
/// y'_1 = y_1, y'_i = x_{i-1}, y'_{k'+2} = y_2.
Matrix rmu3_to_rn_relabeling(std::size_t n, std::size_t k);

/// phi(f_i) = alpha_i f_i, phi(x_i) = beta_i f_i + x_i on the basis of L(gamma).
Matrix lgamma_map(const Vector& alpha, const Vector& beta);

/// a'_{t,j} = a_{t,j} / A^{t-1}, phi' = phi / A, delta' = delta / A^{n-2k}.
RMu1Params scale_params_mu1(std::size_t n, std::size_t k, const RMu1Params& p, const Scalar& A);
/// b' = b / A, beta' = beta / A, phi' = phi / A, theta' = theta / A^2.
RMu2Params scale_params_mu2(const RMu2Params& p, const Scalar& A);

/// Explicit basis change with transport(R(p), P) = R(scale(p, A)).
Matrix scaling_basis_change_mu1(std::size_t n, std::size_t k, const Scalar& A);
Matrix scaling_basis_change_mu2(std::size_t n, std::size_t k, const Scalar& A);

template <typename Params>
struct ScalingWitness {
  Scalar A;
  BasisChange change;
  Params source;
  Params target;
  bool verified = false;
};

/// Builds the scaling basis change and verifies R(scaled) -> R(p) is an isomorphism.
ScalingWitness<RMu1Params> witness_isomorphism_mu1(std::size_t n, std::size_t k, const RMu1Params& p,
                                                   const Scalar& A);
ScalingWitness<RMu2Params> witness_isomorphism_mu2(std::size_t n, std::size_t k, const RMu2Params& p,
                                                   const Scalar& A);

template <typename Params>
struct CanonicalForm {
  Params params;
  Scalar A = 1;                  // representative = scale(p, A)
  bool irrational_root = false;  // no rational normalization was available
};

/// Orbit representative under the scaling action. The first nonzero parameter in scan
/// order is made 1 when its weight-th root is rational (for even weights the sign of A is
/// fixed by making the first nonzero odd-weight parameter positive); otherwise the first
/// nonzero weight-one parameter is made 1; otherwise the input is returned and flagged.
/// Scan order: mu1 a, phi, delta (weights t-1, 1, n-2k); mu2 b, beta, phi, theta
/// (weights 1, 1, 1, 2). Arrays are scanned row by row.
CanonicalForm<RMu1Params> canonical_scaling_form_mu1(std::size_t n, std::size_t k, const RMu1Params& p);
CanonicalForm<RMu2Params> canonical_scaling_form_mu2(const RMu2Params& p);

/// Exact rational w-th root, if one exists.
std::optional<Scalar> rational_root(const Scalar& value, std::size_t w);

}  // namespace leibniz
