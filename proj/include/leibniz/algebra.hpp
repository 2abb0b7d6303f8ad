#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/linalg.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

/// Coefficient vector in an algebra's basis.
using Element = Vector;

/// Finite-dimensional algebra given by structure constants c_{ij}^k on a labeled basis.
/// Pairs without a stored product multiply to zero.
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::vector<std::string> labels);

  /// Algebra with zero bracket on basis b1..bn.
  static Algebra with_dim(std::size_t n);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a basis label; throws Error when absent.
  std::size_t index_of(std::string_view label) const;

  /// Replaces [b_i, b_j].
  void set_product(std::size_t i, std::size_t j, SparseVector value);
  void set_product(std::size_t i, std::size_t j, const Vector& value);
  /// Adds coef * b_k to [b_i, b_j].
  void add_to_product(std::size_t i, std::size_t j, std::size_t k, const Scalar& coef);

  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Element product_dense(std::size_t i, std::size_t j) const;
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const;

  Element bracket(const Element& x, const Element& y) const;
  Element basis_vector(std::size_t i) const { return unit_vector(dim(), i); }

  /// Same labels and same structure constants.
  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  std::vector<std::string> labels_;
  std::vector<SparseVector> table_;
};

/// Same structure constants, labels ignored.
bool same_structure_constants(const Algebra& a, const Algebra& b);

/// Copy of the table under new labels.
Algebra relabel(const Algebra& a, std::vector<std::string> labels);

/// Label-keyed construction helper: set_bracket(a, "e1", "f1", {{"e2", 1}, {"f3", 1}}).
void set_bracket(Algebra& a, std::string_view left, std::string_view right,
                 const std::vector<std::pair<std::string, Scalar>>& value);

/// Span of the named basis vectors.
Subspace coordinate_span(const Algebra& a, const std::vector<std::string>& labels);

/// [x,[y,z]] - [[x,y],z] + [[x,z],y]
Element leibniz_defect(const Algebra& a, const Element& x, const Element& y, const Element& z);

struct LeibnizCheck {
  bool ok = true;
  std::vector<std::array<std::size_t, 3>> violations;  // basis triples with nonzero defect
};

LeibnizCheck check_leibniz(const Algebra& a);

/// Matrix of y -> [x, y] (column j = image of b_j).
Matrix left_multiplication(const Algebra& a, const Element& x);
/// Matrix of y -> [y, x].
Matrix right_multiplication(const Algebra& a, const Element& x);

/// {x : [y, x] = 0 for all y}
Subspace right_annihilator(const Algebra& a);
/// {x : [y, x] = [x, y] = 0 for all y}
Subspace center(const Algebra& a);

struct AnnihilatorSpotcheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks [b_i,b_i] and [b_i,b_j] + [b_j,b_i] lie in the right annihilator.
AnnihilatorSpotcheck annihilator_membership_spotcheck(const Algebra& a);

/// Span of all [s, t] with s in S and t in T.
Subspace product_space(const Algebra& a, const Subspace& s, const Subspace& t);

enum class SeriesKind { LowerCentral, Derived };

struct SeriesReport {
  SeriesKind kind = SeriesKind::LowerCentral;
  std::vector<Subspace> terms;  // terms[0] is the whole space; last term repeats under one more step
  std::size_t stabilized_at = 1;  // 1-based index of the last term
  bool terminates_at_zero = false;
  std::vector<std::size_t> dims() const;
};

SeriesReport lower_central_series(const Algebra& a);
SeriesReport derived_series(const Algebra& a);
bool is_nilpotent(const Algebra& a);
bool is_solvable(const Algebra& a);

bool is_subalgebra(const Algebra& a, const Subspace& s);
bool is_ideal(const Algebra& a, const Subspace& s);

/// A / S on the basis of non-pivot coordinates of S. Throws NotAnIdeal.
Algebra quotient_algebra(const Algebra& a, const Subspace& s);

/// Subalgebra S in the basis given by the canonical rows of S. Throws NotAnIdeal when S
/// is not closed under the bracket.
Algebra restrict_to(const Algebra& a, const Subspace& s);

Algebra direct_sum(const Algebra& a, const Algebra& b);

struct CharacteristicSequence {
  std::vector<std::size_t> sequence;
  Element witness;  // sample element attaining the maximum
  std::size_t sample_size = 0;
};

/// Default sample: the standard basis vectors at non-pivot coordinates of L^2, plus the
/// sums of every two and every three of them.
std::vector<Element> default_characteristic_sample(const Algebra& a);

/// Lexicographic maximum of the Jordan types of R_x over the sample. This is a lower
/// bound for the characteristic sequence. Throws Error for a sample element in L^2 and
/// NotNilpotent when some R_x is not nilpotent.
CharacteristicSequence characteristic_sequence(const Algebra& a,
                                               const std::optional<std::vector<Element>>& sample = std::nullopt);

/// deg b = largest i with b in L^i. Requires a nilpotent algebra.
std::vector<std::size_t> filtration_degrees(const Algebra& a);

/// True when every nonzero c_{ij}^l has degree(l) = degree(i) + degree(j).
bool graded_check(const Algebra& a, const std::vector<std::size_t>& degrees);
bool graded_check(const Algebra& a);

}  // namespace leibniz
