#include "leibniz/cohomology.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "leibniz/error.hpp"
#include "leibniz/families.hpp"

namespace leibniz {

Cochain2 Cochain2::from_flat(std::size_t n, Vector flat) {
  if (flat.size() != n * n * n) throw DimensionMismatch("cochain needs n^3 coordinates");
  Cochain2 c(n);
  c.values_ = std::move(flat);
  return c;
}

Element Cochain2::value(std::size_t i, std::size_t j) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>((i * n_ + j) * n_);
  return Element(first, first + static_cast<std::ptrdiff_t>(n_));
}

void Cochain2::set(std::size_t i, std::size_t j, const Element& v) {
  if (v.size() != n_) throw DimensionMismatch("cochain value length differs from dimension");
  std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>((i * n_ + j) * n_));
}

void Cochain2::add(std::size_t i, std::size_t j, std::size_t c, const Scalar& coef) {
  if (i >= n_ || j >= n_ || c >= n_) throw DimensionMismatch("cochain index outside the basis");
  values_[(i * n_ + j) * n_ + c] += coef;
}

Element Cochain2::apply(const Element& x, const Element& y) const {
  if (x.size() != n_ || y.size() != n_) throw DimensionMismatch("cochain argument length differs from dimension");
  Element out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Scalar w = x[i] * y[j];
      for (std::size_t c = 0; c < n_; ++c)
        if (sgn(at(i, j, c)) != 0) out[c] += w * at(i, j, c);
    }
  }
  return out;
}

Element cocycle_defect(const Algebra& a, const Cochain2& phi, const Element& x, const Element& y, const Element& z) {
  if (phi.dim() != a.dim()) throw DimensionMismatch("cochain and algebra dimensions differ");
  const std::vector<Element> terms{
      a.bracket(x, phi.apply(y, z)),          a.bracket(phi.apply(x, y), z), a.bracket(phi.apply(x, z), y),
      phi.apply(x, a.bracket(y, z)),          phi.apply(a.bracket(x, y), z), phi.apply(a.bracket(x, z), y),
  };
  static constexpr int sign[] = {1, -1, 1, 1, -1, 1};
  Element out(a.dim());
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += sign[t] * terms[t][c];
  return out;
}

std::optional<std::array<std::size_t, 3>> first_cocycle_violation(const Algebra& a, const Cochain2& phi) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (!is_zero(cocycle_defect(a, phi, a.basis_vector(i), a.basis_vector(j), a.basis_vector(l))))
          return std::array<std::size_t, 3>{i, j, l};
  return std::nullopt;
}

Cochain2 coboundary_of(const Algebra& a, const LinearOperator& d) {
  const std::size_t n = a.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("operator size differs from algebra dimension");
  Cochain2 psi(n);
  std::vector<Element> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(d.column(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Element v = a.bracket(images[i], a.basis_vector(j));
      const Element w = a.bracket(a.basis_vector(i), images[j]);
      const Element dv = d * a.product_dense(i, j);
      for (std::size_t c = 0; c < n; ++c) v[c] += w[c] - dv[c];
      psi.set(i, j, v);
    }
  }
  return psi;
}

Cochain2 bracket_cochain(const Algebra& a) {
  Cochain2 c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c.set(i, j, a.product_dense(i, j));
  return c;
}

namespace {

// Accumulates one sparse row per output component.
class RowAccumulator {
 public:
  explicit RowAccumulator(std::size_t n) : rows_(n) {}

  void add(std::size_t component, std::size_t unknown, const Scalar& coef) {
    rows_[component].push_back({unknown, coef});
  }

  // Emits the merged rows, keeping empty rows only when asked.
  void flush(SparseMatrix& out, bool keep_empty) {
    for (auto& r : rows_) {
      std::sort(r.begin(), r.end(), [](const SparseEntry& x, const SparseEntry& y) { return x.col < y.col; });
      SparseVector merged;
      for (auto& e : r) {
        if (!merged.empty() && merged.back().col == e.col) {
          merged.back().value += e.value;
        } else {
          merged.push_back(std::move(e));
        }
      }
      std::erase_if(merged, [](const SparseEntry& e) { return sgn(e.value) == 0; });
      if (keep_empty || !merged.empty()) out.add_row(std::move(merged));
      r.clear();
    }
  }

 private:
  std::vector<SparseVector> rows_;
};

}  // namespace

SparseMatrix cocycle_system(const Algebra& a) {
  const std::size_t n = a.dim();
  auto u = [n](std::size_t i, std::size_t j, std::size_t c) { return (i * n + j) * n + c; };
  SparseMatrix system(n * n * n);
  RowAccumulator acc(n);
  const Scalar minus_one(-1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t s = 0; s < n; ++s) {
          // [b_i, phi(b_j,b_l)]
          for (const auto& e : a.product(i, s)) acc.add(e.col, u(j, l, s), e.value);
          // -[phi(b_i,b_j), b_l]
          for (const auto& e : a.product(s, l)) acc.add(e.col, u(i, j, s), -e.value);
          // +[phi(b_i,b_l), b_j]
          for (const auto& e : a.product(s, j)) acc.add(e.col, u(i, l, s), e.value);
        }
        for (std::size_t c = 0; c < n; ++c) {
          // phi(b_i,[b_j,b_l]) - phi([b_i,b_j],b_l) + phi([b_i,b_l],b_j)
          for (const auto& e : a.product(j, l)) acc.add(c, u(i, e.col, c), e.value);
          for (const auto& e : a.product(i, j)) acc.add(c, u(e.col, l, c), -e.value);
          for (const auto& e : a.product(i, l)) acc.add(c, u(e.col, j, c), e.value);
        }
        acc.flush(system, false);
      }
    }
  }
  return system;
}

std::vector<Cochain2> CochainSpace::basis() const {
  const std::size_t cube = space.ambient_dim();
  std::size_t n = 0;
  while (n * n * n < cube) ++n;
  std::vector<Cochain2> out;
  for (auto& v : space.basis_vectors()) out.push_back(Cochain2::from_flat(n, std::move(v)));
  return out;
}

CochainSpace zl2(const Algebra& a) { return {nullspace(cocycle_system(a))}; }

namespace {

std::vector<Cochain2> elementary_coboundaries(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<Cochain2> out;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      LinearOperator d(n, n);
      d(r, c) = 1;
      out.push_back(coboundary_of(a, d));
    }
  }
  return out;
}

bool in_kernel(const SparseMatrix& system, const Vector& v) {
  for (std::size_t r = 0; r < system.rows(); ++r) {
    Scalar s;
    for (const auto& e : system.row(r))
      if (sgn(v[e.col]) != 0) s += e.value * v[e.col];
    if (sgn(s) != 0) return false;
  }
  return true;
}

}  // namespace

CochainSpace bl2(const Algebra& a) {
  const std::size_t n = a.dim();
  EchelonBuilder builder(n * n * n);
  for (const auto& psi : elementary_coboundaries(a)) builder.insert(to_sparse(psi.flat()));
  return {Subspace::from_rref(builder.finish())};
}

std::size_t bl2_dim(const Algebra& a) { return a.dim() * a.dim() - derivation_space(a).dim(); }

CohomologyReport hl2(const Algebra& a) {
  const std::size_t n = a.dim();
  CohomologyReport report;
  const SparseMatrix system = cocycle_system(a);
  const Subspace z2 = nullspace(system);
  report.dim_Z2 = z2.dim();

  const auto generators = elementary_coboundaries(a);
  EchelonBuilder builder(n * n * n);
  report.b2_in_z2 = true;
  for (const auto& psi : generators) {
    if (report.b2_in_z2 && !in_kernel(system, psi.flat())) report.b2_in_z2 = false;
    builder.insert(to_sparse(psi.flat()));
  }
  report.dim_B2 = builder.rank();
  report.b2_dim_matches_derivations = report.dim_B2 == bl2_dim(a);

  for (auto& v : z2.basis_vectors()) {
    auto sv = to_sparse(v);
    if (builder.insert(sv)) report.witness.push_back(Cochain2::from_flat(n, std::move(v)));
  }
  report.dim_HL2 = report.dim_Z2 >= report.dim_B2 ? report.dim_Z2 - report.dim_B2 : 0;
  if (report.witness.size() != report.dim_HL2) report.b2_in_z2 = false;
  report.rigid = report.b2_in_z2 && report.dim_HL2 == 0;
  return report;
}

bool is_cohomologically_rigid(const Algebra& a) { return hl2(a).rigid; }

std::optional<LinearOperator> coboundary_preimage(const Algebra& a, const Cochain2& phi) {
  const std::size_t n = a.dim();
  if (phi.dim() != n) throw DimensionMismatch("cochain and algebra dimensions differ");
  auto m = [n](std::size_t r, std::size_t c) { return r * n + c; };
  SparseMatrix system(n * n);
  Vector rhs;
  RowAccumulator acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // [d b_i, b_j]_c + [b_i, d b_j]_c - (d [b_i,b_j])_c
      for (std::size_t s = 0; s < n; ++s) {
        for (const auto& e : a.product(s, j)) acc.add(e.col, m(s, i), e.value);
        for (const auto& e : a.product(i, s)) acc.add(e.col, m(s, j), e.value);
      }
      for (const auto& e : a.product(i, j))
        for (std::size_t c = 0; c < n; ++c) acc.add(c, m(c, e.col), -e.value);
      acc.flush(system, true);
      for (std::size_t c = 0; c < n; ++c) rhs.push_back(phi.at(i, j, c));
    }
  }
  const auto x = solve(system, rhs);
  if (!x) return std::nullopt;
  return reshape(*x, n, n);
}

// ---------------------------------------------------------------------------
// Relative cochains

namespace {

std::string e(std::size_t i) { return "e" + std::to_string(i); }
std::string f(std::size_t i) { return "f" + std::to_string(i); }
std::string y(std::size_t i) { return "y" + std::to_string(i); }

void require(bool condition, const std::string& message) {
  if (!condition) throw ConstraintViolation(message);
}

}  // namespace

std::string RelativeContext::describe() const {
  if (kind == RelativeKind::Rm) return "R_m(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
  return "R_{n-k+m}(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")";
}

RelativeContext make_Rm_context(std::size_t m, std::size_t k) {
  require(m >= 1 && k >= 1, "R_m context requires m >= 1 and k >= 1");
  RelativeContext ctx;
  ctx.kind = RelativeKind::Rm;
  ctx.k = k;
  ctx.m = m;
  ctx.base = make_Rm(m, k);
  ctx.extended = make_Rm(m + 1, k);
  ctx.target = ctx.extended.index_of(e(m + 1));
  return ctx;
}

RelativeContext make_Rnkm_context(std::size_t n, std::size_t k, std::size_t m) {
  require(k >= 2 && m >= 1 && m + 1 <= k, "R_{n-k+m} context requires 1 <= m <= k - 1");
  require(n >= k + 3, "R_{n-k+m} context requires n >= k + 3");
  RelativeContext ctx;
  ctx.kind = RelativeKind::Rnkm;
  ctx.n = n;
  ctx.k = k;
  ctx.m = m;
  // For m = 1 the base algebra R_{n-k+1} has no e_1 f_i brackets and coincides with R_m.
  ctx.base = m == 1 ? make_Rm(n - k + 1, k) : make_Rnkm(n, k, m);
  ctx.extended = make_Rnkm(n, k, m + 1);
  ctx.target = ctx.extended.index_of(e(n - k + m + 1));
  return ctx;
}

std::string RelativeGenerator::name() const {
  switch (kind) {
    case GeneratorKind::Phi: return "phi" + std::to_string(index);
    case GeneratorKind::Psi: return "psi";
    case GeneratorKind::PhiPrime: return "phi'" + std::to_string(index);
    case GeneratorKind::Chi: return "chi" + std::to_string(index);
    case GeneratorKind::Xi: return "xi" + std::to_string(index);
  }
  return "?";
}

std::vector<RelativeGenerator> relative_generators(const RelativeContext& ctx) {
  std::vector<RelativeGenerator> out;
  const std::size_t phis = ctx.kind == RelativeKind::Rm ? ctx.m : ctx.n - ctx.k;
  for (std::size_t i = 1; i <= phis; ++i) out.push_back({GeneratorKind::Phi, i});
  out.push_back({GeneratorKind::Psi, 0});
  for (std::size_t i = 1; i <= ctx.k; ++i) out.push_back({GeneratorKind::PhiPrime, i});
  for (std::size_t i = 1; i <= ctx.k + 1; ++i) out.push_back({GeneratorKind::Chi, i});
  if (ctx.kind == RelativeKind::Rnkm)
    for (std::size_t i = 2; i <= ctx.m + 1; ++i) out.push_back({GeneratorKind::Xi, i});
  return out;
}

std::size_t expected_generator_count(const RelativeContext& ctx) {
  if (ctx.kind == RelativeKind::Rm) return ctx.m + 2 * ctx.k + 2;
  return ctx.n + ctx.k + ctx.m + 2;
}

Cochain2 build_relative_cochain(const RelativeContext& ctx, const RelativeGenerator& g) {
  const Algebra& a = ctx.extended;
  const std::size_t k = ctx.k;
  const std::size_t m = ctx.m;
  Cochain2 phi(a.dim());
  auto put = [&](const std::string& left, const std::string& right, long coef) {
    phi.add(a.index_of(left), a.index_of(right), ctx.target, Scalar(coef));
  };
  const auto lm = static_cast<long>(m);
  const std::string range = "generator " + g.name() + " outside its index range";

  if (ctx.kind == RelativeKind::Rm) {
    switch (g.kind) {
      case GeneratorKind::Phi:
        require(g.index >= 1 && g.index <= m, range);
        put(e(g.index), f(1), 1);
        // phi(e_i, y_1) = (i - 1 - m) phi(e_{i-1}, f_1)
        if (g.index + 1 <= m) put(e(g.index + 1), y(1), static_cast<long>(g.index) - lm);
        break;
      case GeneratorKind::Psi:
        put(e(1), y(1), 1);
        break;
      case GeneratorKind::PhiPrime:
        require(g.index >= 1 && g.index <= k, range);
        put(y(g.index), f(g.index), 1);
        if (g.index == 1) {
          put(f(1), y(1), lm - 1);
        } else {
          put(f(g.index), y(1), lm);
          put(f(g.index), y(g.index), -1);
        }
        put(f(g.index), y(k + 1), 1);
        break;
      case GeneratorKind::Chi:
        require(g.index >= 1 && g.index <= k + 1, range);
        put(y(g.index), y(k + 1), 1);
        put(y(g.index), y(1), lm);
        break;
      case GeneratorKind::Xi:
        throw ConstraintViolation("xi generators exist only in the R_{n-k+m} context");
    }
    return phi;
  }

  const std::size_t nk = ctx.n - k;
  switch (g.kind) {
    case GeneratorKind::Phi: {
      require(g.index >= 1 && g.index <= nk, range);
      put(e(g.index), f(1), 1);
      const std::size_t j = g.index + 1;
      if (j <= nk + 1) {
        put(e(j), y(1), static_cast<long>(j) - 1);
        put(e(j), y(m + 1), -1);
      }
      break;
    }
    case GeneratorKind::Psi:
      put(e(1), y(m + 1), 1);
      break;
    case GeneratorKind::PhiPrime:
      require(g.index >= 1 && g.index <= k, range);
      put(y(g.index), f(g.index), 1);
      if (g.index != m + 1) {
        put(f(g.index), y(g.index), -1);
        put(f(g.index), y(m + 1), 1);
      }
      put(f(g.index), y(k + 1), 1);
      break;
    case GeneratorKind::Chi:
      require(g.index >= 1 && g.index <= k + 1, range);
      put(y(g.index), y(k + 1), 1);
      put(y(g.index), y(m + 1), 1);
      break;
    case GeneratorKind::Xi:
      require(g.index >= 2 && g.index <= m + 1, range);
      put(e(1), f(g.index), 1);
      if (g.index <= m) {
        put(e(nk + g.index), y(g.index), 1);
        put(e(nk + g.index), y(m + 1), -1);
      }
      break;
  }
  return phi;
}

RelativeBasisReport verify_relative_basis(const RelativeContext& ctx) {
  RelativeBasisReport report;
  const auto generators = relative_generators(ctx);
  report.count = generators.size();
  report.expected = expected_generator_count(ctx);
  EchelonBuilder builder(ctx.extended.dim() * ctx.extended.dim() * ctx.extended.dim());
  bool all_pass = true;
  for (const auto& g : generators) {
    const Cochain2 phi = build_relative_cochain(ctx, g);
    GeneratorCheck check;
    check.name = g.name();
    check.failing_triple = first_cocycle_violation(ctx.extended, phi);
    check.cocycle = !check.failing_triple.has_value();
    check.coboundary = coboundary_preimage(ctx.extended, phi).has_value();
    all_pass = all_pass && check.cocycle && check.coboundary;
    builder.insert(to_sparse(phi.flat()));
    report.generators.push_back(std::move(check));
  }
  report.independent = builder.rank() == generators.size();
  report.ok = all_pass && report.independent && report.count == report.expected;
  return report;
}

}  // namespace leibniz
