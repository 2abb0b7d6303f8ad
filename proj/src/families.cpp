#include "leibniz/families.hpp"

#include <string>

#include "leibniz/error.hpp"

namespace leibniz {

namespace {

std::string e(std::size_t i) { return "e" + std::to_string(i); }
std::string f(std::size_t i) { return "f" + std::to_string(i); }
std::string x(std::size_t i) { return "x" + std::to_string(i); }
std::string y(std::size_t i) { return "y" + std::to_string(i); }

std::vector<std::string> labels(std::size_t es, std::size_t fs, std::size_t ys = 0, std::size_t xs = 0) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= es; ++i) out.push_back(e(i));
  for (std::size_t i = 1; i <= fs; ++i) out.push_back(f(i));
  for (std::size_t i = 1; i <= ys; ++i) out.push_back(y(i));
  for (std::size_t i = 1; i <= xs; ++i) out.push_back(x(i));
  return out;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConstraintViolation(message);
}

void require_mu_sizes(const char* name, std::size_t n, std::size_t k) {
  require(k >= 1, std::string(name) + " requires k >= 1");
  require(n >= 2 * k + 4, std::string(name) + " requires n - 2k >= 4");
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* what) {
  require(m.rows() == rows && m.cols() == cols,
          std::string(what) + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
}

// Copies every product of `from` into `to`, whose basis starts with from's basis.
void embed(const Algebra& from, Algebra& to) {
  for (std::size_t i = 0; i < from.dim(); ++i)
    for (std::size_t j = 0; j < from.dim(); ++j) to.set_product(i, j, from.product(i, j));
}

// Shared f/y part of the R_n, R_m and R_{n-k+m} tables.
void add_torus_action(Algebra& a, std::size_t k) {
  for (std::size_t i = 1; i <= k; ++i) {
    set_bracket(a, f(i), y(i), {{f(i), 1}});
    set_bracket(a, y(i), f(i), {{f(i), -1}});
  }
}

}  // namespace

std::string_view family_name(FamilyId id) {
  switch (id) {
    case FamilyId::MU1: return "mu1";
    case FamilyId::MU2: return "mu2";
    case FamilyId::MU3_ORIGINAL: return "mu3-original";
    case FamilyId::MU3_CONVENIENT: return "mu3-convenient";
    case FamilyId::ABELIAN: return "abelian";
    case FamilyId::L_GAMMA: return "Lgamma";
    case FamilyId::R_MU1: return "Rmu1";
    case FamilyId::R_MU2: return "Rmu2";
    case FamilyId::R_MU3: return "Rmu3";
    case FamilyId::RN: return "Rn";
    case FamilyId::RM: return "Rm";
    case FamilyId::RNKM: return "Rnkm";
  }
  return "unknown";
}

RMu1Params RMu1Params::zero(std::size_t n, std::size_t k) {
  require_mu_sizes("Rmu1", n, k);
  return {Matrix(n - 2 * k - 1, k), Matrix(k, k), Matrix(k, k)};
}

void RMu1Params::validate(std::size_t n, std::size_t k) const {
  require_mu_sizes("Rmu1", n, k);
  require_shape(a, n - 2 * k - 1, k, "a");
  require_shape(phi, k, k, "phi");
  require_shape(delta, k, k, "delta");
  for (std::size_t i = 0; i < k; ++i) require(phi(i, i) == 0, "phi has no diagonal entries");
}

RMu2Params RMu2Params::zero(std::size_t k) { return {Vector(k), Vector(k), Matrix(k, k), Matrix(k, k)}; }

void RMu2Params::validate(std::size_t k) const {
  require(k >= 1, "Rmu2 requires k >= 1");
  require(b.size() == k && beta.size() == k, "b and beta must have k entries");
  require_shape(phi, k, k, "phi");
  require_shape(theta, k, k, "theta");
  for (std::size_t i = 0; i < k; ++i) {
    require(phi(i, i) == 0, "phi has no diagonal entries");
    require(phi(i, 0) == 0, "phi has no entries in column 1");
  }
}

Algebra make_mu1(std::size_t n, std::size_t k) {
  require_mu_sizes("mu1", n, k);
  const std::size_t m = n - 2 * k;
  Algebra a(labels(m, 2 * k));
  for (std::size_t i = 1; i < m; ++i) set_bracket(a, e(i), e(1), {{e(i + 1), 1}});
  for (std::size_t j = 1; j <= k; ++j) set_bracket(a, e(1), f(j), {{f(k + j), 1}});
  return a;
}

Algebra make_mu2(std::size_t n, std::size_t k) {
  require_mu_sizes("mu2", n, k);
  const std::size_t m = n - 2 * k;
  Algebra a(labels(m, 2 * k));
  for (std::size_t i = 1; i < m; ++i) set_bracket(a, e(i), e(1), {{e(i + 1), 1}});
  set_bracket(a, e(1), f(1), {{e(2), 1}, {f(k + 1), 1}});
  for (std::size_t i = 2; i < m; ++i) set_bracket(a, e(i), f(1), {{e(i + 1), 1}});
  for (std::size_t j = 2; j <= k; ++j) set_bracket(a, e(1), f(j), {{f(k + j), 1}});
  return a;
}

Algebra make_mu3(std::size_t n, std::size_t k, Mu3Form form) {
  require(n >= 2 * k + 5, "mu3 requires n - 2k - 1 >= 4");
  if (form == Mu3Form::Original) {
    const std::size_t m = n - 2 * k - 1;
    Algebra a(labels(m, 2 * k + 1));
    for (std::size_t i = 1; i < m; ++i) set_bracket(a, e(i), e(1), {{e(i + 1), 1}});
    for (std::size_t j = 1; j <= k; ++j) set_bracket(a, e(1), f(j), {{f(k + 1 + j), 1}});
    for (std::size_t i = 1; i < m; ++i) set_bracket(a, e(i), f(k + 1), {{e(i + 1), 1}});
    return a;
  }
  const std::size_t m = n - 2 * k;
  Algebra a(labels(m, 2 * k));
  for (std::size_t i = 2; i < m; ++i) set_bracket(a, e(i), e(1), {{e(i + 1), 1}});
  for (std::size_t j = 1; j <= k; ++j) set_bracket(a, e(2), f(j), {{f(k + j), 1}});
  return a;
}

Algebra make_abelian(std::size_t k) { return Algebra(labels(0, k)); }

Algebra make_L_gamma(const GammaVector& gamma) {
  const std::size_t k = gamma.size();
  Algebra a(labels(0, k, 0, k));
  for (std::size_t i = 1; i <= k; ++i) {
    const int g = gamma[i - 1];
    require(g == 0 || g == -1, "gamma entries must be -1 or 0");
    set_bracket(a, f(i), x(i), {{f(i), 1}});
    if (g != 0) set_bracket(a, x(i), f(i), {{f(i), g}});
  }
  return a;
}

Algebra make_R_mu1(std::size_t n, std::size_t k, const RMu1Params& p) {
  p.validate(n, k);
  const std::size_t m = n - 2 * k;
  Algebra a(labels(m, 2 * k, 0, k));
  embed(make_mu1(n, k), a);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      std::vector<std::pair<std::string, Scalar>> value;
      for (std::size_t t = i + 1; t <= m; ++t) value.push_back({e(t), p.a(t - i + 1 - 2, j - 1)});
      set_bracket(a, e(i), x(j), value);
    }
  }
  for (std::size_t i = 1; i <= k; ++i) {
    set_bracket(a, f(i), x(i), {{f(i), 1}});
    set_bracket(a, f(k + i), x(i), {{f(k + i), 1}});
    set_bracket(a, x(i), f(i), {{f(i), -1}});
    for (std::size_t j = 1; j <= k; ++j) {
      if (i != j) set_bracket(a, x(i), f(j), {{f(k + j), p.phi(i - 1, j - 1)}});
      set_bracket(a, x(i), x(j), {{e(m), p.delta(i - 1, j - 1)}});
    }
  }
  return a;
}

Algebra make_R_mu2(std::size_t n, std::size_t k, const RMu2Params& p) {
  require_mu_sizes("Rmu2", n, k);
  p.validate(k);
  const std::size_t m = n - 2 * k;
  Algebra a(labels(m, 2 * k, 0, k));
  embed(make_mu2(n, k), a);
  set_bracket(a, e(1), x(1), {{f(1), 1}, {f(k + 1), p.b[0]}});
  set_bracket(a, e(2), x(1), {{e(2), 1}, {f(k + 1), 1}});
  for (std::size_t j = 3; j <= m; ++j) set_bracket(a, e(j), x(1), {{e(j), static_cast<long>(j) - 1}});
  set_bracket(a, x(1), e(1), {{f(1), -1}, {f(k + 1), p.beta[0]}});
  for (std::size_t i = 2; i <= k; ++i) {
    set_bracket(a, e(1), x(i), {{f(k + 1), p.b[i - 1]}});
    set_bracket(a, x(i), e(1), {{f(k + 1), p.beta[i - 1]}});
    set_bracket(a, f(k + i), x(i), {{f(k + i), 1}});
  }
  for (std::size_t i = 1; i <= k; ++i) {
    set_bracket(a, f(i), x(i), {{f(i), 1}});
    set_bracket(a, x(i), f(i), {{f(i), -1}});
    for (std::size_t j = 2; j <= k; ++j)
      if (i != j) set_bracket(a, x(i), f(j), {{f(k + j), p.phi(i - 1, j - 1)}});
    for (std::size_t j = 1; j <= k; ++j) set_bracket(a, x(i), x(j), {{f(k + 1), p.theta(i - 1, j - 1)}});
  }
  return a;
}

Algebra make_R_mu3(std::size_t n, std::size_t k) {
  require(n >= 2 * k + 5, "Rmu3 requires n - 2k - 1 >= 4");
  const std::size_t m = n - 2 * k;
  std::vector<std::string> names = labels(m, 2 * k, 2, k);
  Algebra a(names);
  embed(make_mu3(n, k, Mu3Form::Convenient), a);
  set_bracket(a, e(1), y(1), {{e(1), 1}});
  set_bracket(a, y(1), e(1), {{e(1), -1}});
  for (std::size_t j = 2; j <= m; ++j) {
    set_bracket(a, e(j), y(1), {{e(j), static_cast<long>(j) - 2}});
    set_bracket(a, e(j), y(2), {{e(j), 1}});
  }
  for (std::size_t i = 1; i <= k; ++i) {
    set_bracket(a, f(k + i), y(2), {{f(k + i), 1}});
    set_bracket(a, f(i), x(i), {{f(i), 1}});
    set_bracket(a, f(k + i), x(i), {{f(k + i), 1}});
    set_bracket(a, x(i), f(i), {{f(i), -1}});
  }
  return a;
}

Algebra make_Rn(std::size_t n, std::size_t k) {
  require(k >= 2, "Rn requires k >= 2");
  require(n >= k + 3, "Rn requires n >= k + 3");
  Algebra a(labels(n, k, k + 1));
  for (std::size_t i = 1; i <= n - k; ++i) set_bracket(a, e(i), f(1), {{e(i + 1), 1}});
  for (std::size_t i = 2; i <= k; ++i) set_bracket(a, e(1), f(i), {{e(n - k + i), 1}});
  add_torus_action(a, k);
  for (std::size_t i = 1; i <= n; ++i) set_bracket(a, e(i), y(k + 1), {{e(i), 1}});
  for (std::size_t i = 1; i <= n - k + 1; ++i) set_bracket(a, e(i), y(1), {{e(i), static_cast<long>(i) - 1}});
  for (std::size_t i = 2; i <= k; ++i) set_bracket(a, e(n - k + i), y(i), {{e(n - k + i), 1}});
  return a;
}

Algebra make_Rm(std::size_t m, std::size_t k) {
  require(m >= 1, "Rm requires m >= 1");
  require(k >= 1, "Rm requires k >= 1");
  Algebra a(labels(m, k, k + 1));
  for (std::size_t i = 1; i < m; ++i) set_bracket(a, e(i), f(1), {{e(i + 1), 1}});
  add_torus_action(a, k);
  for (std::size_t i = 1; i <= m; ++i) {
    set_bracket(a, e(i), y(k + 1), {{e(i), 1}});
    set_bracket(a, e(i), y(1), {{e(i), static_cast<long>(i) - 1}});
  }
  return a;
}

Algebra make_Rnkm(std::size_t n, std::size_t k, std::size_t m) {
  require(m >= 2 && m <= k, "Rnkm requires 2 <= m <= k");
  require(n >= k + 3, "Rnkm requires n >= k + 3");
  const std::size_t top = n - k + m;
  Algebra a(labels(top, k, k + 1));
  for (std::size_t i = 1; i <= n - k; ++i) set_bracket(a, e(i), f(1), {{e(i + 1), 1}});
  for (std::size_t i = 2; i <= m; ++i) set_bracket(a, e(1), f(i), {{e(n - k + i), 1}});
  add_torus_action(a, k);
  for (std::size_t i = 1; i <= top; ++i) set_bracket(a, e(i), y(k + 1), {{e(i), 1}});
  for (std::size_t i = 1; i <= n - k + 1; ++i) set_bracket(a, e(i), y(1), {{e(i), static_cast<long>(i) - 1}});
  for (std::size_t i = 2; i <= m; ++i) set_bracket(a, e(n - k + i), y(i), {{e(n - k + i), 1}});
  return a;
}

}  // namespace leibniz
