#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/families.hpp"
#include "leibniz/linalg.hpp"

namespace leibniz {

/// Square matrix acting on an algebra: column j holds the image of b_j.
using LinearOperator = Matrix;

/// Row-major flattening of an operator, M(r, c) -> index r * n + c.
Vector flatten(const LinearOperator& m);

struct DerivationSpace {
  std::vector<LinearOperator> basis;
  Subspace flat;  // span of the flattened basis inside Q^{n*n}
  std::size_t dim() const { return basis.size(); }
};

/// True when D[x,y] = [Dx,y] + [x,Dy] on all basis pairs.
bool is_derivation(const Algebra& a, const LinearOperator& d);

/// Linear system in the n^2 entries of D whose kernel is Der(A).
SparseMatrix derivation_system(const Algebra& a);

DerivationSpace derivation_space(const Algebra& a);

/// Span of the right multiplications R_{b_i}, flattened.
Subspace inner_derivation_space(const Algebra& a);

/// Zero center and every derivation inner.
bool is_complete(const Algebra& a);

struct PatternTerm {
  std::size_t parameter;
  Scalar coef;
};

/// Entry of the derivation matrix written row-wise: the coefficient of b_to in D(b_from).
struct PatternCell {
  std::size_t from;
  std::size_t to;
  std::vector<PatternTerm> terms;
  std::string block;
};

/// Declarative parameterization of a derivation space. Cells not listed are zero.
struct PatternSpec {
  FamilyId family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::string> labels;
  std::vector<std::string> parameters;
  std::vector<PatternCell> cells;

  /// Operator obtained by setting one parameter to 1 and the rest to 0.
  LinearOperator generator(std::size_t parameter) const;
};

/// Block form (A B; C D) with D = (D1 D2; 0 a1 E + D1) on e1..e_{n-2k}, f1..f_{2k}.
PatternSpec derivation_pattern_mu1(std::size_t n, std::size_t k);
/// As for mu1 with the b1 shifts and the corrected lower-right block D3.
PatternSpec derivation_pattern_mu2(std::size_t n, std::size_t k);
/// Convenient form of mu3.
PatternSpec derivation_pattern_mu3(std::size_t n, std::size_t k);
/// 2k+1 parameters a, b_1..b_k, c_1..c_k.
PatternSpec derivation_pattern_Rn(std::size_t n, std::size_t k);

struct PatternReport {
  bool ok = false;
  std::size_t derivation_dim = 0;
  std::size_t parameter_count = 0;
  std::size_t pattern_dim = 0;  // rank of the parameter generators
  std::vector<std::string> violations;
};

/// Equality of Der(A) with the parameterized space. Throws Error when the pattern is for
/// a different basis.
PatternReport verify_derivation_pattern(const Algebra& a, const PatternSpec& spec);

/// One row per basis derivation; the columns are the diagonal parameters whose vanishing
/// makes the derivation nilpotent: d_11..d_kk for mu1, b_1, d_22..d_kk for mu2 and
/// a_1, a_2, d_11..d_kk for mu3 (convenient form).
Matrix diagonal_functionals(const Algebra& a, const DerivationSpace& space, FamilyId family);

enum class NilVerdict { CertifiedDependent, NotRefuted };

struct NilIndependenceCertificate {
  NilVerdict verdict = NilVerdict::NotRefuted;
  std::optional<Vector> witness;  // coefficients of a nilpotent nontrivial combination
  std::size_t trials = 0;
};

/// Randomized search for a nontrivial nilpotent combination. Linear dependence is
/// detected exactly before sampling.
NilIndependenceCertificate nil_independence_certificate(const std::vector<LinearOperator>& ops, std::size_t trials,
                                                        std::uint64_t seed);

struct NilradicalReport {
  bool ok = false;
  bool ideal = false;
  bool nilpotent = false;
  std::vector<std::string> nilpotent_actions;  // complement vectors acting nilpotently on N
};

/// N is an ideal, nilpotent, and no complement basis vector acts nilpotently on it.
NilradicalReport verify_nilradical_candidate(const Algebra& a, const Subspace& n);

}  // namespace leibniz
