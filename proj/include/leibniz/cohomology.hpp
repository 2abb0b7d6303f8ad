#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/linalg.hpp"

namespace leibniz {

/// Bilinear map L x L -> L given by its values on ordered basis pairs.
/// Flat coordinate of the b_c component of phi(b_i, b_j) is (i * n + j) * n + c.
class Cochain2 {
 public:
  Cochain2() = default;
  explicit Cochain2(std::size_t n) : n_(n), values_(n * n * n) {}
  static Cochain2 from_flat(std::size_t n, Vector flat);

  std::size_t dim() const { return n_; }
  Element value(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Element& v);
  void add(std::size_t i, std::size_t j, std::size_t c, const Scalar& coef);
  const Scalar& at(std::size_t i, std::size_t j, std::size_t c) const { return values_[(i * n_ + j) * n_ + c]; }
  Element apply(const Element& x, const Element& y) const;
  const Vector& flat() const { return values_; }
  bool is_zero() const { return leibniz::is_zero(values_); }

  friend bool operator==(const Cochain2&, const Cochain2&) = default;

 private:
  std::size_t n_ = 0;
  Vector values_;
};

/// [x,phi(y,z)] - [phi(x,y),z] + [phi(x,z),y] + phi(x,[y,z]) - phi([x,y],z) + phi([x,z],y)
Element cocycle_defect(const Algebra& a, const Cochain2& phi, const Element& x, const Element& y, const Element& z);

/// First basis triple with nonzero cocycle defect, if any.
std::optional<std::array<std::size_t, 3>> first_cocycle_violation(const Algebra& a, const Cochain2& phi);

/// psi(x,y) = [d x, y] + [x, d y] - d[x,y]
Cochain2 coboundary_of(const Algebra& a, const LinearOperator& d);

/// The bracket of A viewed as a cochain.
Cochain2 bracket_cochain(const Algebra& a);

/// Linear system in the n^3 cochain coordinates whose kernel is ZL^2(A,A).
SparseMatrix cocycle_system(const Algebra& a);

struct CochainSpace {
  Subspace space;  // inside Q^{n^3}
  std::size_t dim() const { return space.dim(); }
  std::vector<Cochain2> basis() const;
};

CochainSpace zl2(const Algebra& a);
/// Image of d -> psi_d, materialized from the n^2 elementary operators.
CochainSpace bl2(const Algebra& a);
/// n^2 - dim Der(A).
std::size_t bl2_dim(const Algebra& a);

struct CohomologyReport {
  std::size_t dim_Z2 = 0;
  std::size_t dim_B2 = 0;
  std::size_t dim_HL2 = 0;
  bool rigid = false;
  bool b2_in_z2 = false;
  bool b2_dim_matches_derivations = false;  // materialized B^2 against n^2 - dim Der
  std::vector<Cochain2> witness;            // complement of B^2 in Z^2
};

CohomologyReport hl2(const Algebra& a);
bool is_cohomologically_rigid(const Algebra& a);

/// A linear map d with psi_d = phi, or nothing when phi is not a coboundary.
std::optional<LinearOperator> coboundary_preimage(const Algebra& a, const Cochain2& phi);

enum class RelativeKind { Rm, Rnkm };

/// Base algebra together with its one-step extension by a new top vector E.
struct RelativeContext {
  RelativeKind kind = RelativeKind::Rm;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  Algebra base;
  Algebra extended;
  std::size_t target = 0;  // index of E in the extended basis
  std::string describe() const;
};

/// R_m inside R_{m+1}, target e_{m+1}. Requires m >= 1, k >= 1.
RelativeContext make_Rm_context(std::size_t m, std::size_t k);
/// R_{n-k+m} inside R_{n-k+m+1}, target e_{n-k+m+1}. Requires 1 <= m <= k-1.
RelativeContext make_Rnkm_context(std::size_t n, std::size_t k, std::size_t m);

enum class GeneratorKind { Phi, Psi, PhiPrime, Chi, Xi };

struct RelativeGenerator {
  GeneratorKind kind;
  std::size_t index = 0;  // 1-based; unused for Psi
  std::string name() const;
};

/// All generators of the context in their natural order.
std::vector<RelativeGenerator> relative_generators(const RelativeContext& ctx);

/// Number of generators the context should have: m + 2k + 2 for R_m and n + k + m + 2
/// for R_{n-k+m}.
std::size_t expected_generator_count(const RelativeContext& ctx);

/// Cochain on the extended algebra with value E on the generator's pair and the values
/// forced by the relation system. Throws ConstraintViolation for an index out of range.
Cochain2 build_relative_cochain(const RelativeContext& ctx, const RelativeGenerator& g);

struct GeneratorCheck {
  std::string name;
  bool cocycle = false;
  bool coboundary = false;
  std::optional<std::array<std::size_t, 3>> failing_triple;
};

struct RelativeBasisReport {
  std::size_t count = 0;
  std::size_t expected = 0;
  bool independent = false;
  std::vector<GeneratorCheck> generators;
  bool ok = false;
};

RelativeBasisReport verify_relative_basis(const RelativeContext& ctx);

}  // namespace leibniz
