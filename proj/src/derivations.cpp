#include "leibniz/derivations.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "leibniz/error.hpp"

namespace leibniz {

Vector flatten(const LinearOperator& m) { return m.data(); }

bool is_derivation(const Algebra& a, const LinearOperator& d) {
  const std::size_t n = a.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("operator size differs from algebra dimension");
  std::vector<Element> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(d.column(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Element lhs = d * a.product_dense(i, j);
      const Element t1 = a.bracket(images[i], a.basis_vector(j));
      const Element t2 = a.bracket(a.basis_vector(i), images[j]);
      for (std::size_t c = 0; c < n; ++c)
        if (lhs[c] != t1[c] + t2[c]) return false;
    }
  }
  return true;
}

SparseMatrix derivation_system(const Algebra& a) {
  const std::size_t n = a.dim();
  SparseMatrix system(n * n);
  auto unknown = [n](std::size_t r, std::size_t c) { return r * n + c; };
  std::vector<std::map<std::size_t, Scalar>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& r : rows) r.clear();
      // D([b_i,b_j])_c = sum_l T_ij^l M(c,l)
      for (const auto& e : a.product(i, j))
        for (std::size_t c = 0; c < n; ++c) rows[c][unknown(c, e.col)] += e.value;
      // -[D b_i, b_j]_c = -sum_s M(s,i) T_sj^c
      for (std::size_t s = 0; s < n; ++s)
        for (const auto& e : a.product(s, j)) rows[e.col][unknown(s, i)] -= e.value;
      // -[b_i, D b_j]_c = -sum_s M(s,j) T_is^c
      for (std::size_t s = 0; s < n; ++s)
        for (const auto& e : a.product(i, s)) rows[e.col][unknown(s, j)] -= e.value;
      for (const auto& r : rows) {
        SparseVector row;
        for (const auto& [col, v] : r)
          if (sgn(v) != 0) row.push_back({col, v});
        if (!row.empty()) system.add_row(std::move(row));
      }
    }
  }
  return system;
}

DerivationSpace derivation_space(const Algebra& a) {
  const std::size_t n = a.dim();
  DerivationSpace out;
  out.flat = nullspace(derivation_system(a));
  for (const auto& v : out.flat.basis_vectors()) out.basis.push_back(reshape(v, n, n));
  return out;
}

Subspace inner_derivation_space(const Algebra& a) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < a.dim(); ++i) vs.push_back(flatten(right_multiplication(a, a.basis_vector(i))));
  return Subspace::span(a.dim() * a.dim(), vs);
}

bool is_complete(const Algebra& a) {
  if (center(a).dim() != 0) return false;
  return equals(derivation_space(a).flat, inner_derivation_space(a));
}

LinearOperator PatternSpec::generator(std::size_t parameter) const {
  const std::size_t n = labels.size();
  LinearOperator m(n, n);
  for (const auto& cell : cells)
    for (const auto& t : cell.terms)
      if (t.parameter == parameter) m(cell.to, cell.from) += t.coef;
  return m;
}

namespace {

class PatternBuilder {
 public:
  PatternBuilder(FamilyId family, std::size_t n, std::size_t k, const Algebra& a) {
    spec_.family = family;
    spec_.n = n;
    spec_.k = k;
    spec_.labels = a.labels();
    algebra_ = &a;
  }

  void put(const std::string& from, const std::string& to, const std::string& parameter, const Scalar& coef,
           const std::string& block) {
    if (coef == 0) return;
    const std::size_t p = parameter_index(parameter);
    const auto key = std::make_pair(algebra_->index_of(from), algebra_->index_of(to));
    auto it = cell_index_.find(key);
    if (it == cell_index_.end()) {
      it = cell_index_.emplace(key, spec_.cells.size()).first;
      spec_.cells.push_back({key.first, key.second, {}, block});
    }
    auto& terms = spec_.cells[it->second].terms;
    const auto t = std::find_if(terms.begin(), terms.end(), [p](const PatternTerm& x) { return x.parameter == p; });
    if (t == terms.end()) {
      terms.push_back({p, coef});
    } else {
      t->coef += coef;
    }
  }

  PatternSpec finish() { return std::move(spec_); }

 private:
  std::size_t parameter_index(const std::string& name) {
    const auto it = std::find(spec_.parameters.begin(), spec_.parameters.end(), name);
    if (it != spec_.parameters.end()) return static_cast<std::size_t>(it - spec_.parameters.begin());
    spec_.parameters.push_back(name);
    return spec_.parameters.size() - 1;
  }

  PatternSpec spec_;
  const Algebra* algebra_ = nullptr;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_index_;
};

std::string e(std::size_t i) { return "e" + std::to_string(i); }
std::string f(std::size_t i) { return "f" + std::to_string(i); }
std::string y(std::size_t i) { return "y" + std::to_string(i); }
std::string idx(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

long as_long(std::size_t v) { return static_cast<long>(v); }

// The k x k blocks shared by the three mu patterns: D1 on the f_i rows, D2 mapping f_i
// to f_{k+j}, D1 repeated on the f_{k+i} rows, and c_i in the last e column.
void put_f_blocks(PatternBuilder& b, std::size_t m, std::size_t k, bool repeat_d1) {
  for (std::size_t i = 1; i <= k; ++i) {
    b.put(f(i), e(m), "c" + std::to_string(i), 1, "C");
    for (std::size_t j = 1; j <= k; ++j) {
      b.put(f(i), f(k + j), "D2_" + idx(i, j), 1, "D2");
      if (repeat_d1) {
        b.put(f(i), f(j), "D1_" + idx(i, j), 1, "D1");
        b.put(f(k + i), f(k + j), "D1_" + idx(i, j), 1, "D1 repeated");
      }
    }
  }
}

}  // namespace

PatternSpec derivation_pattern_mu1(std::size_t n, std::size_t k) {
  const Algebra a = make_mu1(n, k);
  const std::size_t m = n - 2 * k;
  PatternBuilder b(FamilyId::MU1, n, k, a);
  for (std::size_t i = 1; i <= m; ++i) {
    b.put(e(i), e(i), "a1", as_long(i), "A");
    for (std::size_t j = i + 1; j <= m; ++j) b.put(e(i), e(j), "a" + std::to_string(j - i + 1), 1, "A");
  }
  for (std::size_t i = 1; i <= 2 * k; ++i) b.put(e(1), f(i), "b" + std::to_string(i), 1, "B");
  for (std::size_t i = 1; i <= k; ++i) b.put(e(2), f(k + i), "b" + std::to_string(i), 1, "B");
  put_f_blocks(b, m, k, true);
  for (std::size_t i = 1; i <= k; ++i) b.put(f(k + i), f(k + i), "a1", 1, "a1 E + D1");
  return b.finish();
}

PatternSpec derivation_pattern_mu2(std::size_t n, std::size_t k) {
  const Algebra a = make_mu2(n, k);
  const std::size_t m = n - 2 * k;
  PatternBuilder b(FamilyId::MU2, n, k, a);
  for (std::size_t i = 1; i <= m; ++i) {
    b.put(e(i), e(i), "a1", as_long(i), "A");
    b.put(e(i), e(i), "b1", as_long(i) - 1, "A");
    for (std::size_t j = i + 1; j <= m; ++j) b.put(e(i), e(j), "a" + std::to_string(j - i + 1), 1, "A");
  }
  for (std::size_t i = 1; i <= 2 * k; ++i) b.put(e(1), f(i), "b" + std::to_string(i), 1, "B");
  for (std::size_t i = 1; i <= k; ++i) b.put(e(2), f(k + i), "b" + std::to_string(i), 1, "B");
  put_f_blocks(b, m, k, false);
  // D1: first column is (a1 + b1, 0, ..., 0); the other columns are free.
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 2; j <= k; ++j) {
      b.put(f(i), f(j), "d" + idx(i, j), 1, "D1");
      b.put(f(k + i), f(k + j), "d" + idx(i, j), 1, "D3");
    }
  }
  b.put(f(1), f(1), "a1", 1, "D1");
  b.put(f(1), f(1), "b1", 1, "D1");
  b.put(f(k + 1), f(k + 1), "a1", 1, "D3");
  b.put(f(k + 1), f(k + 1), "b1", 1, "D3");
  // D3 = D1 + a1 E - sum_j b_j e_{1,j}
  for (std::size_t i = 1; i <= k; ++i) b.put(f(k + i), f(k + i), "a1", 1, "D3");
  for (std::size_t j = 1; j <= k; ++j) b.put(f(k + 1), f(k + j), "b" + std::to_string(j), -1, "D3");
  return b.finish();
}

PatternSpec derivation_pattern_mu3(std::size_t n, std::size_t k) {
  const Algebra a = make_mu3(n, k, Mu3Form::Convenient);
  const std::size_t m = n - 2 * k;
  PatternBuilder b(FamilyId::MU3_CONVENIENT, n, k, a);
  b.put(e(1), e(1), "a1", 1, "A");
  for (std::size_t i = 2; i <= m; ++i) {
    b.put(e(i), e(i), "a1", as_long(i) - 2, "A");
    b.put(e(i), e(i), "a2", 1, "A");
    for (std::size_t j = i + 1; j <= m; ++j) b.put(e(i), e(j), "a" + std::to_string(j - i + 2), 1, "A");
  }
  b.put(e(1), e(m), "beta", 1, "A");
  for (std::size_t i = 1; i <= 2 * k; ++i) b.put(e(1), f(i), "b1_" + std::to_string(i), 1, "B");
  for (std::size_t i = 1; i <= k; ++i) {
    b.put(e(2), f(k + i), "b2_" + std::to_string(i), 1, "B");
    b.put(e(3), f(k + i), "b1_" + std::to_string(i), 1, "B");
  }
  put_f_blocks(b, m, k, true);
  for (std::size_t i = 1; i <= k; ++i) b.put(f(k + i), f(k + i), "a2", 1, "a2 E + D1");
  return b.finish();
}

PatternSpec derivation_pattern_Rn(std::size_t n, std::size_t k) {
  const Algebra a = make_Rn(n, k);
  PatternBuilder b(FamilyId::RN, n, k, a);
  auto bi = [](std::size_t i) { return "b" + std::to_string(i); };
  auto ci = [](std::size_t i) { return "c" + std::to_string(i); };
  b.put(e(1), e(1), "a", 1, "d(e1)");
  b.put(e(1), e(2), ci(1), -1, "d(e1)");
  for (std::size_t i = 2; i <= k; ++i) b.put(e(1), e(n - k + i), ci(i), -1, "d(e1)");
  for (std::size_t i = 2; i <= n - k; ++i) {
    b.put(e(i), e(i), "a", 1, "d(e_i)");
    b.put(e(i), e(i), bi(1), as_long(i) - 1, "d(e_i)");
    b.put(e(i), e(i + 1), ci(1), -1, "d(e_i)");
  }
  b.put(e(n - k + 1), e(n - k + 1), "a", 1, "d(e_{n-k+1})");
  b.put(e(n - k + 1), e(n - k + 1), bi(1), as_long(n - k), "d(e_{n-k+1})");
  for (std::size_t i = 2; i <= k; ++i) {
    b.put(e(n - k + i), e(n - k + i), "a", 1, "d(e_{n-k+i})");
    b.put(e(n - k + i), e(n - k + i), bi(i), 1, "d(e_{n-k+i})");
  }
  for (std::size_t i = 1; i <= k; ++i) {
    b.put(f(i), f(i), bi(i), 1, "d(f_i)");
    b.put(y(i), f(i), ci(i), 1, "d(y_i)");
  }
  return b.finish();
}

namespace {

std::string cell_name(const PatternSpec& spec, std::size_t from, std::size_t to) {
  return "(" + spec.labels[from] + "->" + spec.labels[to] + ")";
}

// Names the cell constraints a derivation breaks. Each parameter is read off the first
// cell where it appears alone; every cell is then compared with the pattern's value.
void name_violations(const PatternSpec& spec, const LinearOperator& d, std::size_t which,
                     std::vector<std::string>& out) {
  const std::size_t n = spec.labels.size();
  std::vector<std::optional<Scalar>> value(spec.parameters.size());
  for (const auto& cell : spec.cells) {
    if (cell.terms.size() != 1) continue;
    const auto& t = cell.terms.front();
    if (!value[t.parameter]) value[t.parameter] = d(cell.to, cell.from) / t.coef;
  }
  std::vector<std::vector<bool>> listed(n, std::vector<bool>(n, false));
  const std::string prefix = "derivation " + std::to_string(which + 1) + ": ";
  for (const auto& cell : spec.cells) {
    listed[cell.from][cell.to] = true;
    Scalar expected;
    bool known = true;
    for (const auto& t : cell.terms) {
      if (!value[t.parameter]) {
        known = false;
        break;
      }
      expected += t.coef * *value[t.parameter];
    }
    if (!known) {
      out.push_back(prefix + "relation of block " + cell.block + " at " + cell_name(spec, cell.from, cell.to) +
                    " has no determining cell");
    } else if (expected != d(cell.to, cell.from)) {
      out.push_back(prefix + "relation of block " + cell.block + " fails at " + cell_name(spec, cell.from, cell.to));
    }
  }
  for (std::size_t from = 0; from < n; ++from)
    for (std::size_t to = 0; to < n; ++to)
      if (!listed[from][to] && d(to, from) != 0)
        out.push_back(prefix + "nonzero entry in a zero cell " + cell_name(spec, from, to));
}

}  // namespace

PatternReport verify_derivation_pattern(const Algebra& a, const PatternSpec& spec) {
  if (spec.labels != a.labels()) throw Error("derivation pattern is written for a different basis");
  PatternReport report;
  const DerivationSpace der = derivation_space(a);
  report.derivation_dim = der.dim();
  report.parameter_count = spec.parameters.size();

  std::vector<Vector> generators;
  for (std::size_t p = 0; p < spec.parameters.size(); ++p) {
    const LinearOperator g = spec.generator(p);
    if (!is_derivation(a, g))
      report.violations.push_back("parameter " + spec.parameters[p] + " does not give a derivation");
    generators.push_back(flatten(g));
  }
  const Subspace pattern = Subspace::span(a.dim() * a.dim(), generators);
  report.pattern_dim = pattern.dim();
  if (report.pattern_dim != report.parameter_count)
    report.violations.push_back("pattern parameters are linearly dependent");

  for (std::size_t i = 0; i < der.dim(); ++i)
    if (!pattern.contains(flatten(der.basis[i]))) name_violations(spec, der.basis[i], i, report.violations);

  if (report.derivation_dim != report.parameter_count)
    report.violations.push_back("derivation space has dimension " + std::to_string(report.derivation_dim) +
                                " but the pattern has " + std::to_string(report.parameter_count) + " parameters");
  report.ok = report.violations.empty() && equals(pattern, der.flat);
  return report;
}

Matrix diagonal_functionals(const Algebra& a, const DerivationSpace& space, FamilyId family) {
  const auto fs = static_cast<std::size_t>(std::count_if(a.labels().begin(), a.labels().end(),
                                                         [](const std::string& l) { return l.front() == 'f'; }));
  const std::size_t k = fs / 2;
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, col) in column convention
  auto self = [&](const std::string& l) {
    const std::size_t i = a.index_of(l);
    return std::make_pair(i, i);
  };
  switch (family) {
    case FamilyId::MU1:
      for (std::size_t i = 1; i <= k; ++i) cells.push_back(self(f(i)));
      break;
    case FamilyId::MU2:
      cells.emplace_back(a.index_of(f(1)), a.index_of(e(1)));
      for (std::size_t i = 2; i <= k; ++i) cells.push_back(self(f(i)));
      break;
    case FamilyId::MU3_CONVENIENT:
      cells.push_back(self(e(1)));
      cells.push_back(self(e(2)));
      for (std::size_t i = 1; i <= k; ++i) cells.push_back(self(f(i)));
      break;
    default:
      throw Error("diagonal functionals are defined for mu1, mu2 and mu3 (convenient form) only");
  }
  Matrix out(space.dim(), cells.size());
  for (std::size_t r = 0; r < space.dim(); ++r)
    for (std::size_t c = 0; c < cells.size(); ++c) out(r, c) = space.basis[r](cells[c].first, cells[c].second);
  return out;
}

NilIndependenceCertificate nil_independence_certificate(const std::vector<LinearOperator>& ops, std::size_t trials,
                                                        std::uint64_t seed) {
  if (ops.empty()) throw Error("nil-independence needs at least one operator");
  const std::size_t n = ops.front().rows();
  for (const auto& op : ops)
    if (op.rows() != n || op.cols() != n) throw DimensionMismatch("operators must be square of equal size");

  auto combine = [&](const Vector& coefs) {
    LinearOperator m(n, n);
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (coefs[i] != 0) m = m + ops[i].scaled(coefs[i]);
    return m;
  };

  NilIndependenceCertificate out;
  // A vanishing combination is nilpotent.
  Matrix stacked(n * n, ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t t = 0; t < n * n; ++t) stacked(t, i) = ops[i].data()[t];
  const Subspace relations = nullspace(stacked);
  if (relations.dim() > 0) {
    out.verdict = NilVerdict::CertifiedDependent;
    out.witness = relations.basis_vectors().front();
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    Vector coefs(ops.size());
    // Mostly sparse combinations so that single operators and pairs are covered too.
    do {
      for (auto& c : coefs) c = (rng() % 3 == 0) ? dist(rng) : 0;
    } while (is_zero(coefs));
    ++out.trials;
    if (is_nilpotent_matrix(combine(coefs)).nilpotent) {
      out.verdict = NilVerdict::CertifiedDependent;
      out.witness = coefs;
      return out;
    }
  }
  return out;
}

NilradicalReport verify_nilradical_candidate(const Algebra& a, const Subspace& n) {
  NilradicalReport report;
  report.ideal = is_ideal(a, n);
  if (!report.ideal) return report;
  report.nilpotent = is_nilpotent(restrict_to(a, n));
  std::vector<bool> pivot(a.dim(), false);
  for (auto p : n.pivots()) pivot[p] = true;
  const auto basis = n.basis_vectors();
  for (std::size_t c = 0; c < a.dim(); ++c) {
    if (pivot[c]) continue;
    const Element x = a.basis_vector(c);
    Matrix action(n.dim(), n.dim());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto coords = n.coordinates(a.bracket(basis[j], x));
      for (std::size_t r = 0; r < n.dim(); ++r) action(r, j) = (*coords)[r];
    }
    if (is_nilpotent_matrix(action).nilpotent) report.nilpotent_actions.push_back(a.labels()[c]);
  }
  report.ok = report.nilpotent && report.nilpotent_actions.empty();
  return report;
}

}  // namespace leibniz
