#include <doctest.h>

#include "leibniz/algebra.hpp"
#include "leibniz/cohomology.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/error.hpp"
#include "leibniz/families.hpp"
#include "leibniz/isomorphism.hpp"
#include "support.hpp"

using namespace leibniz;

namespace {

bool oracle_cocycle(const Algebra& a, const Cochain2& phi) {
  return oracle::naive_is_cocycle(a, [&](std::size_t i, std::size_t j, std::size_t c) { return phi.at(i, j, c); });
}

Matrix random_operator(std::size_t n, oracle::Rng& rng) { return rng.matrix(n, n, 50); }

}  // namespace

TEST_CASE("cocycle defect on simple cochains") {
  const Algebra mu1 = make_mu1(8, 2);
  CHECK_FALSE(first_cocycle_violation(mu1, Cochain2(mu1.dim())));
  const Cochain2 bracket = bracket_cochain(mu1);
  CHECK_FALSE(first_cocycle_violation(mu1, bracket));
  CHECK(oracle_cocycle(mu1, bracket));

  // Identity operator: each bracket counted twice minus once.
  CHECK(coboundary_of(mu1, Matrix::identity(mu1.dim())) == bracket);
  for (const auto& d : derivation_space(mu1).basis) CHECK(coboundary_of(mu1, d).is_zero());
}

TEST_CASE("coboundaries of random operators are cocycles") {
  oracle::Rng rng(41);
  const Algebra rn = make_Rn(5, 2);
  for (int t = 0; t < 3; ++t) {
    const Cochain2 psi = coboundary_of(rn, random_operator(rn.dim(), rng));
    CHECK_FALSE(first_cocycle_violation(rn, psi));
    CHECK(oracle_cocycle(rn, psi));
  }
}

TEST_CASE("a non-cocycle is detected") {
  const Algebra a = make_L_gamma({0});
  Cochain2 phi(a.dim());
  phi.add(0, 0, 1, 1);
  const bool oracle_ok = oracle_cocycle(a, phi);
  CHECK(oracle_ok == !first_cocycle_violation(a, phi).has_value());
  CHECK_FALSE(oracle_ok);
}

TEST_CASE("cohomology of small algebras") {
  const auto abelian = hl2(make_abelian(1));
  CHECK(abelian.dim_Z2 == 1);
  CHECK(abelian.dim_B2 == 0);
  CHECK(abelian.dim_HL2 == 1);
  CHECK_FALSE(abelian.rigid);
  CHECK_FALSE(is_cohomologically_rigid(make_abelian(2)));

  for (std::size_t k : {2, 3}) CHECK(hl2(make_Rm(1, k)).dim_HL2 == 0);
  CHECK(is_cohomologically_rigid(make_Rn(5, 2)));
  for (int g1 : {-1, 0})
    for (int g2 : {-1, 0}) CHECK(is_cohomologically_rigid(make_L_gamma({g1, g2})));
}

TEST_CASE("Z2 and B2 against the oracles") {
  for (const auto& a : {make_L_gamma({-1}), make_Rm(1, 2), make_mu1(6, 1)}) {
    const auto z = zl2(a);
    for (const auto& phi : z.basis()) CHECK(oracle_cocycle(a, phi));
    const auto b = bl2(a);
    CHECK(z.space.contains(b.space));
    const std::size_t n = a.dim();
    CHECK(b.dim() == n * n - oracle::naive_derivation_dim(a));
    CHECK(b.dim() == bl2_dim(a));
    const auto report = hl2(a);
    CHECK(report.b2_in_z2);
    CHECK(report.b2_dim_matches_derivations);
    CHECK(report.dim_HL2 == z.dim() - b.dim());
    CHECK(report.witness.size() == report.dim_HL2);
    for (const auto& w : report.witness) CHECK_FALSE(coboundary_preimage(a, w));
  }
}

TEST_CASE("coboundary preimages") {
  oracle::Rng rng(9);
  const Algebra a = make_Rm(2, 2);
  for (int t = 0; t < 3; ++t) {
    const Cochain2 psi = coboundary_of(a, random_operator(a.dim(), rng));
    const auto d = coboundary_preimage(a, psi);
    REQUIRE(d);
    CHECK(coboundary_of(a, *d) == psi);
  }
  Cochain2 phi(1);
  phi.add(0, 0, 0, 1);
  CHECK_FALSE(coboundary_preimage(make_abelian(1), phi));
}

TEST_CASE("HL2 is invariant under basis change") {
  oracle::Rng rng(13);
  for (const auto& a : {make_L_gamma({-1, 0}), make_Rm(1, 2), make_mu1(6, 1)}) {
    const auto before = hl2(a);
    const auto after = hl2(transport(a, rng.unimodular(a.dim())));
    CHECK(after.dim_Z2 == before.dim_Z2);
    CHECK(after.dim_B2 == before.dim_B2);
    CHECK(after.dim_HL2 == before.dim_HL2);
  }
}

TEST_CASE("relative cochain bases") {
  const auto rm = make_Rm_context(2, 2);
  const auto report = verify_relative_basis(rm);
  CHECK(report.ok);
  CHECK(report.count == 8);
  CHECK(report.expected == 8);
  CHECK(report.independent);
  for (const auto& g : report.generators) {
    CHECK(g.cocycle);
    CHECK(g.coboundary);
  }
  for (const auto& g : relative_generators(rm)) {
    const Cochain2 phi = build_relative_cochain(rm, g);
    CHECK(oracle_cocycle(rm.extended, phi));
    CHECK(coboundary_preimage(rm.extended, phi));
  }

  const auto rnkm = make_Rnkm_context(6, 3, 1);
  const auto r2 = verify_relative_basis(rnkm);
  CHECK(r2.ok);
  CHECK(r2.count == 6 + 3 + 1 + 2);
  CHECK_THROWS_AS(make_Rnkm_context(6, 3, 3), ConstraintViolation);

  const Cochain2 zero(rm.extended.dim());
  CHECK_FALSE(first_cocycle_violation(rm.extended, zero));
  CHECK(coboundary_preimage(rm.extended, zero));
}
