#include "leibniz/algebra.hpp"

#include <algorithm>
#include <string>

#include "leibniz/error.hpp"

namespace leibniz {

namespace {

bool same_sparse(const SparseVector& a, const SparseVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].col != b[i].col || a[i].value != b[i].value) return false;
  return true;
}

void require_element(const Algebra& a, const Element& x) {
  if (x.size() != a.dim()) throw DimensionMismatch("element length differs from algebra dimension");
}

// Residual of v modulo the canonical basis of S (zero at every pivot of S).
Vector reduce_modulo(const Subspace& s, Vector v) {
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const Scalar coef = v[s.pivots()[r]];
    if (sgn(coef) == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (sgn(s.basis()(r, c)) != 0) v[c] -= coef * s.basis()(r, c);
  }
  return v;
}

std::string triple_name(const Algebra& a, std::size_t i, std::size_t j) {
  return "(" + a.labels()[i] + "," + a.labels()[j] + ")";
}

}  // namespace

Algebra::Algebra(std::vector<std::string> labels) : labels_(std::move(labels)), table_(labels_.size() * labels_.size()) {}

Algebra Algebra::with_dim(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("b" + std::to_string(i));
  return Algebra(std::move(labels));
}

std::size_t Algebra::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error("no basis vector labeled '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

void Algebra::set_product(std::size_t i, std::size_t j, SparseVector value) {
  if (i >= dim() || j >= dim()) throw DimensionMismatch("product index outside the basis");
  for (std::size_t t = 0; t < value.size(); ++t) {
    if (value[t].col >= dim()) throw DimensionMismatch("product value outside the basis");
    if (t > 0 && value[t].col <= value[t - 1].col) throw Error("product value columns not increasing");
  }
  std::erase_if(value, [](const SparseEntry& e) { return sgn(e.value) == 0; });
  table_[i * dim() + j] = std::move(value);
}

void Algebra::set_product(std::size_t i, std::size_t j, const Vector& value) {
  if (value.size() != dim()) throw DimensionMismatch("product value length differs from dimension");
  set_product(i, j, to_sparse(value));
}

void Algebra::add_to_product(std::size_t i, std::size_t j, std::size_t k, const Scalar& coef) {
  if (i >= dim() || j >= dim() || k >= dim()) throw DimensionMismatch("product index outside the basis");
  Element v = product_dense(i, j);
  v[k] += coef;
  set_product(i, j, to_sparse(v));
}

Element Algebra::product_dense(std::size_t i, std::size_t j) const { return to_dense(product(i, j), dim()); }

const Scalar& Algebra::constant(std::size_t i, std::size_t j, std::size_t k) const {
  static const Scalar zero;
  for (const auto& e : product(i, j))
    if (e.col == k) return e.value;
  return zero;
}

Element Algebra::bracket(const Element& x, const Element& y) const {
  require_element(*this, x);
  require_element(*this, y);
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(y[j]) == 0) continue;
      const auto& p = product(i, j);
      if (p.empty()) continue;
      const Scalar w = x[i] * y[j];
      for (const auto& e : p) out[e.col] += w * e.value;
    }
  }
  return out;
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (a.labels_ != b.labels_) return false;
  for (std::size_t t = 0; t < a.table_.size(); ++t)
    if (!same_sparse(a.table_[t], b.table_[t])) return false;
  return true;
}

bool same_structure_constants(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!same_sparse(a.product(i, j), b.product(i, j))) return false;
  return true;
}

Algebra relabel(const Algebra& a, std::vector<std::string> labels) {
  if (labels.size() != a.dim()) throw DimensionMismatch("one label per basis vector expected");
  Algebra out(std::move(labels));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out.set_product(i, j, a.product(i, j));
  return out;
}

void set_bracket(Algebra& a, std::string_view left, std::string_view right,
                 const std::vector<std::pair<std::string, Scalar>>& value) {
  Element v(a.dim());
  for (const auto& [label, coef] : value) v[a.index_of(label)] += coef;
  a.set_product(a.index_of(left), a.index_of(right), v);
}

Subspace coordinate_span(const Algebra& a, const std::vector<std::string>& labels) {
  std::vector<Vector> vs;
  for (const auto& l : labels) vs.push_back(a.basis_vector(a.index_of(l)));
  return Subspace::span(a.dim(), vs);
}

Element leibniz_defect(const Algebra& a, const Element& x, const Element& y, const Element& z) {
  Element out = a.bracket(x, a.bracket(y, z));
  const Element second = a.bracket(a.bracket(x, y), z);
  const Element third = a.bracket(a.bracket(x, z), y);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] += third[c] - second[c];
  return out;
}

LeibnizCheck check_leibniz(const Algebra& a) {
  const std::size_t n = a.dim();
  LeibnizCheck out;
  Element acc(n);
  auto add_bracket_of_sparse = [&](const SparseVector& left, std::size_t right, const Scalar& sign) {
    for (const auto& e : left)
      for (const auto& f : a.product(e.col, right)) acc[f.col] += sign * e.value * f.value;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        std::fill(acc.begin(), acc.end(), Scalar(0));
        // [b_i, [b_j, b_l]]
        for (const auto& e : a.product(j, l))
          for (const auto& f : a.product(i, e.col)) acc[f.col] += e.value * f.value;
        add_bracket_of_sparse(a.product(i, j), l, Scalar(-1));
        add_bracket_of_sparse(a.product(i, l), j, Scalar(1));
        if (!is_zero(acc)) out.violations.push_back({i, j, l});
      }
    }
  }
  out.ok = out.violations.empty();
  return out;
}

Matrix left_multiplication(const Algebra& a, const Element& x) {
  const std::size_t n = a.dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Element v = a.bracket(x, a.basis_vector(j));
    for (std::size_t r = 0; r < n; ++r) m(r, j) = v[r];
  }
  return m;
}

Matrix right_multiplication(const Algebra& a, const Element& x) {
  const std::size_t n = a.dim();
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Element v = a.bracket(a.basis_vector(j), x);
    for (std::size_t r = 0; r < n; ++r) m(r, j) = v[r];
  }
  return m;
}

namespace {

// Rows of the joint system: for each basis b_i and component c, the coefficient of x_j
// in [b_i, x] (and optionally in [x, b_i]).
Subspace joint_kernel(const Algebra& a, bool include_right) {
  const std::size_t n = a.dim();
  SparseMatrix system(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int side = 0; side < (include_right ? 2 : 1); ++side) {
      std::vector<Vector> rows(n, Vector(n));
      for (std::size_t j = 0; j < n; ++j) {
        const auto& p = side == 0 ? a.product(i, j) : a.product(j, i);
        for (const auto& e : p) rows[e.col][j] = e.value;
      }
      for (auto& r : rows)
        if (!is_zero(r)) system.add_row(to_sparse(r));
    }
  }
  return nullspace(system);
}

}  // namespace

Subspace right_annihilator(const Algebra& a) { return joint_kernel(a, false); }
Subspace center(const Algebra& a) { return joint_kernel(a, true); }

AnnihilatorSpotcheck annihilator_membership_spotcheck(const Algebra& a) {
  const Subspace ann = right_annihilator(a);
  AnnihilatorSpotcheck out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!ann.contains(a.product_dense(i, i))) out.violations.push_back("[x,x] at x=" + a.labels()[i]);
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      Element s = a.product_dense(i, j);
      const Element t = a.product_dense(j, i);
      for (std::size_t c = 0; c < s.size(); ++c) s[c] += t[c];
      if (!ann.contains(s)) out.violations.push_back("[x,y]+[y,x] at " + triple_name(a, i, j));
    }
  }
  out.ok = out.violations.empty();
  return out;
}

Subspace product_space(const Algebra& a, const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != a.dim() || t.ambient_dim() != a.dim())
    throw DimensionMismatch("subspace does not live in the algebra");
  EchelonBuilder builder(a.dim());
  const auto sv = s.basis_vectors();
  const auto tv = t.basis_vectors();
  for (const auto& x : sv)
    for (const auto& y : tv) builder.insert(to_sparse(a.bracket(x, y)));
  return Subspace::from_rref(builder.finish());
}

std::vector<std::size_t> SeriesReport::dims() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.dim());
  return out;
}

namespace {

SeriesReport run_series(const Algebra& a, SeriesKind kind) {
  SeriesReport report;
  report.kind = kind;
  const Subspace whole = Subspace::full(a.dim());
  report.terms.push_back(whole);
  while (true) {
    const Subspace& last = report.terms.back();
    Subspace next = product_space(a, last, kind == SeriesKind::LowerCentral ? whole : last);
    if (next.dim() == last.dim()) break;
    report.terms.push_back(std::move(next));
  }
  report.stabilized_at = report.terms.size();
  report.terminates_at_zero = report.terms.back().dim() == 0;
  return report;
}

}  // namespace

SeriesReport lower_central_series(const Algebra& a) { return run_series(a, SeriesKind::LowerCentral); }
SeriesReport derived_series(const Algebra& a) { return run_series(a, SeriesKind::Derived); }
bool is_nilpotent(const Algebra& a) { return lower_central_series(a).terminates_at_zero; }
bool is_solvable(const Algebra& a) { return derived_series(a).terminates_at_zero; }

bool is_subalgebra(const Algebra& a, const Subspace& s) { return s.contains(product_space(a, s, s)); }

bool is_ideal(const Algebra& a, const Subspace& s) {
  const Subspace whole = Subspace::full(a.dim());
  return s.contains(product_space(a, s, whole)) && s.contains(product_space(a, whole, s));
}

Algebra quotient_algebra(const Algebra& a, const Subspace& s) {
  if (s.ambient_dim() != a.dim()) throw DimensionMismatch("ideal does not live in the algebra");
  if (!is_ideal(a, s)) throw NotAnIdeal("quotient by a subspace that is not a two-sided ideal");
  std::vector<bool> pivot(a.dim(), false);
  for (auto p : s.pivots()) pivot[p] = true;
  std::vector<std::size_t> kept;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    if (pivot[c]) continue;
    kept.push_back(c);
    labels.push_back(a.labels()[c]);
  }
  Algebra q(labels);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (a.product(kept[i], kept[j]).empty()) continue;
      const Vector r = reduce_modulo(s, a.product_dense(kept[i], kept[j]));
      Vector v(kept.size());
      for (std::size_t t = 0; t < kept.size(); ++t) v[t] = r[kept[t]];
      q.set_product(i, j, v);
    }
  }
  return q;
}

Algebra restrict_to(const Algebra& a, const Subspace& s) {
  if (s.ambient_dim() != a.dim()) throw DimensionMismatch("subspace does not live in the algebra");
  std::vector<std::string> labels;
  const auto basis = s.basis_vectors();
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto nz = to_sparse(basis[r]);
    const bool coordinate = nz.size() == 1 && nz.front().value == 1;
    labels.push_back(coordinate ? a.labels()[nz.front().col] : "s" + std::to_string(r + 1));
  }
  Algebra out(labels);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto coords = s.coordinates(a.bracket(basis[i], basis[j]));
      if (!coords) throw NotAnIdeal("subspace is not closed under the bracket");
      out.set_product(i, j, *coords);
    }
  }
  return out;
}

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  Algebra out(labels);
  const std::size_t shift = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out.set_product(i, j, a.product(i, j));
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      SparseVector v = b.product(i, j);
      for (auto& e : v) e.col += shift;
      out.set_product(i + shift, j + shift, std::move(v));
    }
  }
  return out;
}

std::vector<Element> default_characteristic_sample(const Algebra& a) {
  const Subspace l2 = product_space(a, Subspace::full(a.dim()), Subspace::full(a.dim()));
  std::vector<bool> pivot(a.dim(), false);
  for (auto p : l2.pivots()) pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.dim(); ++c)
    if (!pivot[c]) free.push_back(c);

  std::vector<Element> sample;
  for (auto c : free) sample.push_back(a.basis_vector(c));
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = i + 1; j < free.size(); ++j) {
      Element x = a.basis_vector(free[i]);
      x[free[j]] = 1;
      sample.push_back(x);
      for (std::size_t l = j + 1; l < free.size(); ++l) {
        Element y = x;
        y[free[l]] = 1;
        sample.push_back(std::move(y));
      }
    }
  }
  return sample;
}

CharacteristicSequence characteristic_sequence(const Algebra& a, const std::optional<std::vector<Element>>& sample) {
  const std::vector<Element> elements = sample ? *sample : default_characteristic_sample(a);
  const Subspace l2 = product_space(a, Subspace::full(a.dim()), Subspace::full(a.dim()));
  CharacteristicSequence out;
  out.sample_size = elements.size();
  for (const auto& x : elements) {
    require_element(a, x);
    if (l2.contains(x)) throw Error("characteristic sequence sample element lies in L^2");
    auto blocks = jordan_blocks_nilpotent(right_multiplication(a, x));
    if (out.sequence.empty() || blocks > out.sequence) {
      out.sequence = std::move(blocks);
      out.witness = x;
    }
  }
  return out;
}

std::vector<std::size_t> filtration_degrees(const Algebra& a) {
  const SeriesReport series = lower_central_series(a);
  if (!series.terminates_at_zero) throw NotNilpotent("filtration degrees need a nilpotent algebra");
  std::vector<std::size_t> degrees(a.dim(), 1);
  for (std::size_t b = 0; b < a.dim(); ++b) {
    const Element v = a.basis_vector(b);
    for (std::size_t i = 0; i < series.terms.size(); ++i)
      if (series.terms[i].contains(v)) degrees[b] = i + 1;
  }
  return degrees;
}

bool graded_check(const Algebra& a, const std::vector<std::size_t>& degrees) {
  if (degrees.size() != a.dim()) throw DimensionMismatch("one degree per basis vector expected");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& e : a.product(i, j))
        if (degrees[e.col] != degrees[i] + degrees[j]) return false;
  return true;
}

bool graded_check(const Algebra& a) { return graded_check(a, filtration_degrees(a)); }

}  // namespace leibniz
