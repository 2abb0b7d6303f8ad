#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/matrix.hpp"

namespace leibniz {

enum class FamilyId {
  MU1,
  MU2,
  MU3_ORIGINAL,
  MU3_CONVENIENT,
  ABELIAN,
  L_GAMMA,
  R_MU1,
  R_MU2,
  R_MU3,
  RN,
  RM,
  RNKM,
};

std::string_view family_name(FamilyId id);

enum class Mu3Form { Original, Convenient };

/// Parameters of the solvable extension of mu1 by k nil-independent derivations.
struct RMu1Params {
  Matrix a;      // row t-2 holds a_{t,1..k} for 2 <= t <= n-2k
  Matrix phi;    // k x k, zero diagonal
  Matrix delta;  // k x k

  static RMu1Params zero(std::size_t n, std::size_t k);
  /// Throws ConstraintViolation when the shapes do not fit (n, k) or phi has a diagonal entry.
  void validate(std::size_t n, std::size_t k) const;
  friend bool operator==(const RMu1Params&, const RMu1Params&) = default;
};

/// Parameters of the solvable extension of mu2.
struct RMu2Params {
  Vector b;      // b_1..b_k
  Vector beta;   // beta_1..beta_k
  Matrix phi;    // k x k; only entries with column >= 2 and i != j are used
  Matrix theta;  // k x k

  static RMu2Params zero(std::size_t k);
  void validate(std::size_t k) const;
  friend bool operator==(const RMu2Params&, const RMu2Params&) = default;
};

/// Entries must be -1 or 0.
using GammaVector = std::vector<int>;

/// Basis e1..e_{n-2k}, f1..f_{2k}. Requires k >= 1 and n - 2k >= 4.
Algebra make_mu1(std::size_t n, std::size_t k);
Algebra make_mu2(std::size_t n, std::size_t k);

/// Original form: e1..e_{n-2k-1}, f1..f_{2k+1}. Convenient form: e1..e_{n-2k}, f1..f_{2k}.
/// Requires n - 2k - 1 >= 4.
Algebra make_mu3(std::size_t n, std::size_t k, Mu3Form form);

/// k-dimensional algebra with zero bracket on f1..fk.
Algebra make_abelian(std::size_t k);

/// Basis f1..fk, x1..xk with [f_i,x_i] = f_i and [x_i,f_i] = gamma_i f_i.
Algebra make_L_gamma(const GammaVector& gamma);

/// mu1 extended by x1..xk; dimension n + k.
Algebra make_R_mu1(std::size_t n, std::size_t k, const RMu1Params& p);
/// mu2 extended by x1..xk; dimension n + k.
Algebra make_R_mu2(std::size_t n, std::size_t k, const RMu2Params& p);
/// Convenient mu3 extended by y1, y2, x1..xk; dimension n + k + 2.
Algebra make_R_mu3(std::size_t n, std::size_t k);

/// Basis e1..en, f1..fk, y1..y_{k+1}. Requires k >= 2 and n >= k + 3.
Algebra make_Rn(std::size_t n, std::size_t k);
/// Basis e1..em, f1..fk, y1..y_{k+1}. Requires m >= 1 and k >= 1.
Algebra make_Rm(std::size_t m, std::size_t k);
/// Basis e1..e_{n-k+m}, f1..fk, y1..y_{k+1}. Requires 2 <= m <= k and n >= k + 3.
Algebra make_Rnkm(std::size_t n, std::size_t k, std::size_t m);

}  // namespace leibniz
