#include "leibniz/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "leibniz/cohomology.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/error.hpp"
#include "leibniz/families.hpp"
#include "leibniz/family_spec.hpp"
#include "leibniz/isomorphism.hpp"

namespace leibniz {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Flagged: return "flagged";
  }
  return "fail";
}

const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> registry = {
      {"mu-leibniz", "families", "mu1(n,k), mu2(n,k) and both bases of mu3(n,k) satisfy the Leibniz identity"},
      {"mu-structure", "core_algebra",
       "mu1 and mu2 are nilpotent with characteristic sequence (n-2k,1,...,1); mu3 with (n-2k-1,1,...,1)"},
      {"charseq-sample-bound", "core_algebra",
       "characteristic sequences are certified as lower bounds over a finite sample of L minus L^2"},
      {"mu3-change-of-basis", "isomorphism", "the substitution between the two bases of mu3 is an isomorphism"},
      {"mu-derivation-pattern", "derivations", "Der(mu_i) is exactly the span of its parametrized derivation pattern"},
      {"mu-diagonal-rank", "derivations", "the diagonal parts of Der(mu_i) have rank k, k, k+2 for i = 1, 2, 3"},
      {"diagonal-rank-floor-reading", "derivations", "the rank bound k+2[i/3] is read with [.] as the floor"},
      {"right-annihilator", "core_algebra",
       "in R(mu_i), e2..e_{n-2k} and f_{k+1}..f_{2k} lie in the right annihilator and e1, f1..fk do not"},
      {"solvable-extension-leibniz", "families",
       "R(mu1) and R(mu2) satisfy the Leibniz identity for every parameter tuple, and so does R(mu3)"},
      {"solvable-extension-nilradical", "derivations",
       "in R(mu_i) the span of the e and f vectors is a nilpotent ideal on which the complement acts "
       "by nil-independent operators"},
      {"scaling-isomorphism-mu1", "isomorphism",
       "R(mu1) with parameters p is isomorphic to R(mu1) with the A-scaled parameters for every nonzero A"},
      {"scaling-isomorphism-mu2", "isomorphism",
       "R(mu2) with parameters p is isomorphic to R(mu2) with the A-scaled parameters for every nonzero A"},
      {"scaling-index-range", "isomorphism",
       "the scaled coefficients a'_{i,j} run over 2 <= i <= n-2k (statement text gives n-2k+1)"},
      {"lgamma-automorphisms", "isomorphism",
       "f_i -> alpha_i f_i, x_i -> beta_i f_i + x_i is an automorphism of L(gamma) iff every alpha_i != 0 and "
       "(1+gamma_i) beta_i = 0"},
      {"lgamma-rigidity", "cohomology", "HL^2(L(gamma), L(gamma)) = 0"},
      {"rmu3-rn-isomorphism", "isomorphism", "R(mu3) over (n,k) is isomorphic to Rn(n-k-1, k+1)"},
      {"rn-derivations", "derivations", "Der(Rn) is the (2k+1)-parameter derivation pattern"},
      {"rn-complete", "derivations", "Rn has trivial center and only inner derivations"},
      {"rm-quotient", "core_algebra", "R_m is the quotient of Rn by <e_{m+1},...,e_n>"},
      {"rm-quotient-span", "core_algebra",
       "the printed quotient span <e_{m+1},...,e_{n-k}> is not an ideal of Rn; <e_{m+1},...,e_n> is used"},
      {"rnkm-quotient", "core_algebra", "R_{n,k,m} is the quotient of Rn by <e_{n-k+m+1},...,e_n>"},
      {"rigidity", "cohomology", "HL^2 vanishes for R_m, R_{n,k,m} and Rn"},
      {"relative-cochains-rm", "cohomology",
       "the m+2k+2 relative cochains of R_{m+1} over R_m are cocycles and coboundaries"},
      {"relative-cochains-rnkm", "cohomology",
       "the n+k+m+2 relative cochains of R_{n,k,m+1} over R_{n,k,m} are cocycles and coboundaries"},
      {"der-commutator-closure", "derivations", "the commutator of two derivations is a derivation"},
      {"inner-derivations", "derivations", "every right multiplication is a derivation"},
      {"coboundary-cocycle", "cohomology", "B^2 lies in Z^2 and dim B^2 = n^2 - dim Der"},
      {"transport-invariance", "isomorphism", "structural invariants are unchanged by a change of basis"},
  };
  return registry;
}

const Claim& find_claim(std::string_view id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw Error("unknown claim id '" + std::string(id) + "'");
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [v](const VerificationRecord& r) { return r.verdict == v; }));
}

namespace {

const std::set<std::string> kModules = {"core_algebra", "families", "derivations", "cohomology", "isomorphism"};

struct Outcome {
  Verdict verdict = Verdict::Fail;
  Json evidence = Json::object();
};

Outcome judge(bool ok, Json evidence) { return {ok ? Verdict::Pass : Verdict::Fail, std::move(evidence)}; }

struct Task {
  std::string claim;
  std::string instance;
  std::function<Outcome()> run;
};

std::string sized(std::string_view family, std::size_t n, std::size_t k) {
  return std::string(family) + ":n=" + std::to_string(n) + ",k=" + std::to_string(k);
}

std::vector<std::string> labels_of(const std::string& prefix, std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t i = from; i <= to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Json triple_labels(const Algebra& a, const std::array<std::size_t, 3>& t) {
  return Json::array({a.labels()[t[0]], a.labels()[t[1]], a.labels()[t[2]]});
}

Json leibniz_evidence(const Algebra& a, const LeibnizCheck& c) {
  Json e = {{"dim", a.dim()}, {"violations", c.violations.size()}};
  if (!c.violations.empty()) e["first_violation"] = triple_labels(a, c.violations.front());
  return e;
}

// ---- random parameters -------------------------------------------------------------------

Scalar random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  return Scalar(num(rng), den(rng));
}

Scalar random_nonzero(std::mt19937_64& rng) {
  for (;;) {
    Scalar s = random_rational(rng);
    s.canonicalize();
    if (s != 0) return s;
  }
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = random_rational(rng);
      m(r, c).canonicalize();
    }
  return m;
}

Vector random_vector(std::mt19937_64& rng, std::size_t size) {
  Vector v(size);
  for (auto& x : v) {
    x = random_rational(rng);
    x.canonicalize();
  }
  return v;
}

RMu1Params random_rmu1(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  RMu1Params p{random_matrix(rng, n - 2 * k - 1, k), random_matrix(rng, k, k), random_matrix(rng, k, k)};
  for (std::size_t i = 0; i < k; ++i) p.phi(i, i) = 0;
  return p;
}

RMu2Params random_rmu2(std::mt19937_64& rng, std::size_t k) {
  RMu2Params p{random_vector(rng, k), random_vector(rng, k), random_matrix(rng, k, k), random_matrix(rng, k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    p.phi(i, 0) = 0;
    p.phi(i, i) = 0;
  }
  return p;
}

// Unit lower times unit upper triangular with small integer entries.
Matrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> entry(-2, 2);
  Matrix lower = Matrix::identity(n);
  Matrix upper = Matrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      lower(r, c) = entry(rng);
      upper(c, r) = entry(rng);
    }
  return lower * upper;
}

// ---- grids -------------------------------------------------------------------------------

using Pair = std::pair<std::size_t, std::size_t>;

std::vector<Pair> mu_grid(const SuiteConfig& c, std::size_t extra) {
  std::vector<Pair> out;
  for (std::size_t k = 1; k <= c.k_max; ++k)
    for (std::size_t n = 2 * k + 4 + extra; n <= c.n_max; ++n) out.push_back({n, k});
  return out;
}

std::vector<Pair> rn_grid(const SuiteConfig& c) {
  std::vector<Pair> out;
  for (std::size_t k = 2; k <= c.k_max; ++k)
    for (std::size_t n = k + 3; n <= c.n_max; ++n) out.push_back({n, k});
  return out;
}

// ---- shared checks -----------------------------------------------------------------------

// Matrix of y -> [y, x] restricted to the subspace n, in the coordinates of n's canonical basis.
Matrix restricted_right_action(const Algebra& a, const Subspace& n, const Element& x) {
  const auto basis = n.basis_vectors();
  Matrix action(n.dim(), n.dim());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto coords = n.coordinates(a.bracket(basis[j], x));
    if (!coords) throw NotAnIdeal("subspace is not invariant under right multiplication");
    for (std::size_t r = 0; r < n.dim(); ++r) action(r, j) = (*coords)[r];
  }
  return action;
}

std::vector<std::string> nilradical_labels(const Algebra& a) {
  std::vector<std::string> out;
  for (const auto& l : a.labels())
    if (l[0] == 'e' || l[0] == 'f') out.push_back(l);
  return out;
}

Outcome annihilator_outcome(const Algebra& a, std::size_t n, std::size_t k) {
  const Subspace ann = right_annihilator(a);
  std::vector<std::string> inside = labels_of("e", 2, n - 2 * k);
  for (auto& l : labels_of("f", k + 1, 2 * k)) inside.push_back(l);
  std::vector<std::string> outside = {"e1"};
  for (auto& l : labels_of("f", 1, k)) outside.push_back(l);
  Json missing = Json::array();
  Json unexpected = Json::array();
  for (const auto& l : inside)
    if (!ann.contains(a.basis_vector(a.index_of(l)))) missing.push_back(l);
  for (const auto& l : outside)
    if (ann.contains(a.basis_vector(a.index_of(l)))) unexpected.push_back(l);
  const bool ok = missing.empty() && unexpected.empty();
  return judge(ok, {{"dim_Ann_r", ann.dim()},
                    {"expected_members", inside.size()},
                    {"missing_members", missing},
                    {"unexpected_members", unexpected}});
}

Outcome nilradical_outcome(const Algebra& a, std::uint64_t seed) {
  const Subspace n = coordinate_span(a, nilradical_labels(a));
  const NilradicalReport r = verify_nilradical_candidate(a, n);
  Json e = {{"dim_N", n.dim()},
            {"ideal", r.ideal},
            {"nilpotent", r.nilpotent},
            {"nilpotent_actions", r.nilpotent_actions}};
  if (!r.ok) return judge(false, e);
  std::vector<Matrix> actions;
  for (std::size_t c = 0; c < a.dim(); ++c)
    if (!n.contains(a.basis_vector(c))) actions.push_back(restricted_right_action(a, n, a.basis_vector(c)));
  const auto cert = nil_independence_certificate(actions, 32, seed);
  e["complement_dim"] = actions.size();
  e["nil_independence"] = cert.verdict == NilVerdict::NotRefuted ? "not refuted" : "dependent";
  e["nil_independence_trials"] = cert.trials;
  return judge(cert.verdict == NilVerdict::NotRefuted, e);
}

Outcome rigidity_outcome(const Algebra& a) {
  const CohomologyReport r = hl2(a);
  Json e = cohomology_to_json(a, r, false);
  e["dim"] = a.dim();
  return judge(r.dim_HL2 == 0 && r.b2_in_z2 && r.b2_dim_matches_derivations, e);
}

Outcome relative_outcome(const RelativeContext& ctx, std::size_t formula) {
  const RelativeBasisReport r = verify_relative_basis(ctx);
  Json failing = Json::array();
  for (const auto& g : r.generators)
    if (!g.cocycle || !g.coboundary) {
      Json f = {{"name", g.name}, {"cocycle", g.cocycle}, {"coboundary", g.coboundary}};
      if (g.failing_triple) f["failing_triple"] = triple_labels(ctx.extended, *g.failing_triple);
      failing.push_back(std::move(f));
    }
  Json names = Json::array();
  for (const auto& g : r.generators) names.push_back(g.name);
  const bool ok = r.ok && r.count == formula && r.expected == formula;
  return judge(ok, {{"context", ctx.describe()},
                    {"generators", r.count},
                    {"expected", formula},
                    {"independent", r.independent},
                    {"names", names},
                    {"failing", failing}});
}

Json derivation_invariants(const Algebra& a, bool with_cohomology) {
  Json inv = {{"leibniz", check_leibniz(a).ok},
              {"dim_Der", derivation_space(a).dim()},
              {"dim_Inner", inner_derivation_space(a).dim()},
              {"dim_Ann_r", right_annihilator(a).dim()},
              {"dim_center", center(a).dim()},
              {"lower_central", lower_central_series(a).dims()},
              {"derived", derived_series(a).dims()}};
  if (with_cohomology) inv["dim_HL2"] = hl2(a).dim_HL2;
  return inv;
}

// ---- planning ----------------------------------------------------------------------------

class Planner {
 public:
  explicit Planner(const SuiteConfig& c) : config_(c), rng_(c.seed) {}

  std::vector<Task> plan() {
    plan_mu();
    plan_extensions();
    plan_lgamma();
    plan_rn();
    plan_properties();
    std::vector<Task> out;
    for (const auto& claim : claim_registry()) {
      if (!config_.modules.empty() && !config_.modules.count(claim.module)) continue;
      for (auto& t : tasks_)
        if (t.claim == claim.id) out.push_back(std::move(t));
    }
    return out;
  }

 private:
  void add(std::string claim, std::string instance, std::function<Outcome()> run) {
    tasks_.push_back({std::move(claim), std::move(instance), std::move(run)});
  }

  std::uint64_t draw_seed() { return rng_(); }

  void plan_mu() {
    const auto grid = mu_grid(config_, 0);
    const auto grid3 = mu_grid(config_, 1);
    for (auto [n, k] : grid) {
      add("mu-leibniz", sized("mu1", n, k), [n = n, k = k] {
        const Algebra a = make_mu1(n, k);
        const auto c = check_leibniz(a);
        return judge(c.ok, leibniz_evidence(a, c));
      });
      add("mu-leibniz", sized("mu2", n, k), [n = n, k = k] {
        const Algebra a = make_mu2(n, k);
        const auto c = check_leibniz(a);
        return judge(c.ok, leibniz_evidence(a, c));
      });
    }
    for (auto [n, k] : grid3)
      for (auto form : {Mu3Form::Original, Mu3Form::Convenient}) {
        const std::string name = form == Mu3Form::Original ? "original" : "convenient";
        add("mu-leibniz", sized("mu3", n, k) + ",form=" + name, [n = n, k = k, form] {
          const Algebra a = make_mu3(n, k, form);
          const auto c = check_leibniz(a);
          return judge(c.ok, leibniz_evidence(a, c));
        });
      }

    auto structure = [](Algebra a, std::size_t head) {
      const SeriesReport lcs = lower_central_series(a);
      Json e = {{"lower_central", lcs.dims()}, {"nilpotent", lcs.terminates_at_zero}};
      if (!lcs.terminates_at_zero) return judge(false, e);
      const auto cs = characteristic_sequence(a);
      std::vector<std::size_t> expected(a.dim() - head, 1);
      expected.insert(expected.begin(), head);
      const auto spot = annihilator_membership_spotcheck(a);
      e["characteristic_sequence"] = cs.sequence;
      e["expected"] = expected;
      e["sample_size"] = cs.sample_size;
      e["squares_in_Ann_r"] = spot.ok;
      return judge(cs.sequence == expected && spot.ok, e);
    };
    for (auto [n, k] : grid) {
      add("mu-structure", sized("mu1", n, k), [=, n = n, k = k] { return structure(make_mu1(n, k), n - 2 * k); });
      add("mu-structure", sized("mu2", n, k), [=, n = n, k = k] { return structure(make_mu2(n, k), n - 2 * k); });
    }
    for (auto [n, k] : grid3)
      add("mu-structure", sized("mu3", n, k) + ",form=original",
          [=, n = n, k = k] { return structure(make_mu3(n, k, Mu3Form::Original), n - 2 * k - 1); });
    if (!grid.empty()) {
      const auto [n, k] = grid.front();
      add("charseq-sample-bound", sized("mu1", n, k), [n = n, k = k] {
        const Algebra a = make_mu1(n, k);
        const auto cs = characteristic_sequence(a);
        return Outcome{Verdict::Flagged,
                       {{"sample", "non-pivot basis vectors of L^2 and their sums of two and three"},
                        {"sample_size", cs.sample_size},
                        {"characteristic_sequence", cs.sequence},
                        {"note", "the maximum over all of L minus L^2 is not certified; the value is a lower "
                                 "bound that matches the expected sequence"}}};
      });
    }

    for (auto [n, k] : grid3)
      add("mu3-change-of-basis", sized("mu3", n, k), [n = n, k = k] {
        const Algebra original = make_mu3(n, k, Mu3Form::Original);
        const Algebra convenient = make_mu3(n, k, Mu3Form::Convenient);
        const Matrix p = mu3_change_of_basis(n, k);
        const auto hom = is_homomorphism(convenient, original, p);
        return judge(hom.ok && is_isomorphism(convenient, original, p),
                     {{"dim", original.dim()}, {"homomorphism", hom.ok}, {"rank", rank(p)}});
      });

    auto pattern = [](const Algebra& a, const PatternSpec& spec) {
      const PatternReport r = verify_derivation_pattern(a, spec);
      return judge(r.ok, {{"dim_Der", r.derivation_dim},
                          {"parameters", r.parameter_count},
                          {"pattern_dim", r.pattern_dim},
                          {"violations", r.violations}});
    };
    for (auto [n, k] : grid) {
      add("mu-derivation-pattern", sized("mu1", n, k),
          [=, n = n, k = k] { return pattern(make_mu1(n, k), derivation_pattern_mu1(n, k)); });
      add("mu-derivation-pattern", sized("mu2", n, k),
          [=, n = n, k = k] { return pattern(make_mu2(n, k), derivation_pattern_mu2(n, k)); });
    }
    for (auto [n, k] : grid3)
      add("mu-derivation-pattern", sized("mu3", n, k) + ",form=convenient", [=, n = n, k = k] {
        return pattern(make_mu3(n, k, Mu3Form::Convenient), derivation_pattern_mu3(n, k));
      });

    auto diag = [](const Algebra& a, FamilyId id, std::size_t expected) {
      const DerivationSpace d = derivation_space(a);
      const std::size_t r = rank(diagonal_functionals(a, d, id));
      return judge(r == expected, {{"dim_Der", d.dim()}, {"rank", r}, {"expected", expected}});
    };
    for (auto [n, k] : grid) {
      add("mu-diagonal-rank", sized("mu1", n, k), [=, n = n, k = k] { return diag(make_mu1(n, k), FamilyId::MU1, k); });
      add("mu-diagonal-rank", sized("mu2", n, k), [=, n = n, k = k] { return diag(make_mu2(n, k), FamilyId::MU2, k); });
    }
    for (auto [n, k] : grid3)
      add("mu-diagonal-rank", sized("mu3", n, k) + ",form=convenient", [=, n = n, k = k] {
        return diag(make_mu3(n, k, Mu3Form::Convenient), FamilyId::MU3_CONVENIENT, k + 2);
      });
    if (!grid.empty()) {
      add("diagonal-rank-floor-reading", "mu1, mu2, mu3", [] {
        Json rows = Json::array();
        for (std::size_t i = 1; i <= 3; ++i)
          rows.push_back({{"i", i}, {"floor(i/3)", i / 3}, {"bound", "k+" + std::to_string(2 * (i / 3))}});
        return Outcome{Verdict::Flagged,
                       {{"reading", rows},
                        {"note", "the bracket notation is undefined in the source; the floor reading agrees "
                                 "with the ranks recorded under mu-diagonal-rank"}}};
      });
    }
    if (!grid.empty()) {
      const auto [n, k] = grid.front();
      add("scaling-index-range", sized("Rmu1", n, k), [n = n, k = k] {
        return Outcome{Verdict::Flagged,
                       {{"statement_range", "2 <= i <= n-2k+1"},
                        {"table_range", "2 <= i <= n-2k"},
                        {"used", "table_range"},
                        {"e_vectors", n - 2 * k},
                        {"note", "index n-2k+1 names no basis vector of mu1"}}};
      });
    }
  }

  void plan_extensions() {
    const auto grid = mu_grid(config_, 0);
    const auto grid3 = mu_grid(config_, 1);
    struct Sample1 { std::size_t n, k; RMu1Params p; Scalar A; std::uint64_t seed; };
    struct Sample2 { std::size_t n, k; RMu2Params p; Scalar A; std::uint64_t seed; };
    std::vector<Sample1> s1;
    std::vector<Sample2> s2;
    for (auto [n, k] : grid)
      for (std::size_t s = 0; s < config_.samples; ++s) {
        RMu1Params p1 = random_rmu1(rng_, n, k);
        Scalar a1 = random_nonzero(rng_);
        s1.push_back({n, k, std::move(p1), a1, draw_seed()});
        RMu2Params p2 = random_rmu2(rng_, k);
        Scalar a2 = random_nonzero(rng_);
        s2.push_back({n, k, std::move(p2), a2, draw_seed()});
      }
    std::vector<std::pair<Pair, std::uint64_t>> s3;
    for (auto pk : grid3) s3.push_back({pk, draw_seed()});

    auto spec1 = [](const Sample1& s) { return sized("Rmu1", s.n, s.k) + "," + rmu1_params_to_spec(s.p); };
    auto spec2 = [](const Sample2& s) { return sized("Rmu2", s.n, s.k) + "," + rmu2_params_to_spec(s.p); };

    for (const auto& s : s1)
      add("right-annihilator", spec1(s), [s] { return annihilator_outcome(make_R_mu1(s.n, s.k, s.p), s.n, s.k); });
    for (const auto& s : s2)
      add("right-annihilator", spec2(s), [s] { return annihilator_outcome(make_R_mu2(s.n, s.k, s.p), s.n, s.k); });
    for (const auto& [pk, seed] : s3)
      add("right-annihilator", sized("Rmu3", pk.first, pk.second),
          [pk = pk] { return annihilator_outcome(make_R_mu3(pk.first, pk.second), pk.first, pk.second); });

    auto leib = [](const Algebra& a) {
      const auto c = check_leibniz(a);
      return judge(c.ok, leibniz_evidence(a, c));
    };
    for (const auto& s : s1)
      add("solvable-extension-leibniz", spec1(s), [=] { return leib(make_R_mu1(s.n, s.k, s.p)); });
    for (const auto& s : s2)
      add("solvable-extension-leibniz", spec2(s), [=] { return leib(make_R_mu2(s.n, s.k, s.p)); });
    for (const auto& [pk, seed] : s3)
      add("solvable-extension-leibniz", sized("Rmu3", pk.first, pk.second),
          [=, pk = pk] { return leib(make_R_mu3(pk.first, pk.second)); });

    for (const auto& s : s1)
      add("solvable-extension-nilradical", spec1(s),
          [s] { return nilradical_outcome(make_R_mu1(s.n, s.k, s.p), s.seed); });
    for (const auto& s : s2)
      add("solvable-extension-nilradical", spec2(s),
          [s] { return nilradical_outcome(make_R_mu2(s.n, s.k, s.p), s.seed); });
    for (const auto& [pk, seed] : s3)
      add("solvable-extension-nilradical", sized("Rmu3", pk.first, pk.second),
          [pk = pk, seed = seed] { return nilradical_outcome(make_R_mu3(pk.first, pk.second), seed); });

    for (const auto& s : s1)
      add("scaling-isomorphism-mu1", spec1(s) + " A=" + format_scalar(s.A), [s] {
        const auto w = witness_isomorphism_mu1(s.n, s.k, s.p, s.A);
        const auto cf = canonical_scaling_form_mu1(s.n, s.k, s.p);
        const auto wc = witness_isomorphism_mu1(s.n, s.k, s.p, cf.A);
        const bool canonical_ok = wc.verified && wc.target == cf.params;
        return judge(w.verified && canonical_ok, {{"A", format_scalar(s.A)},
                                                  {"verified", w.verified},
                                                  {"scaled", rmu1_params_to_spec(w.target)},
                                                  {"canonical_A", format_scalar(cf.A)},
                                                  {"canonical", rmu1_params_to_spec(cf.params)},
                                                  {"canonical_verified", canonical_ok},
                                                  {"irrational_root", cf.irrational_root}});
      });
    for (const auto& s : s2)
      add("scaling-isomorphism-mu2", spec2(s) + " A=" + format_scalar(s.A), [s] {
        const auto w = witness_isomorphism_mu2(s.n, s.k, s.p, s.A);
        const auto cf = canonical_scaling_form_mu2(s.p);
        const auto wc = witness_isomorphism_mu2(s.n, s.k, s.p, cf.A);
        const bool canonical_ok = wc.verified && wc.target == cf.params;
        return judge(w.verified && canonical_ok, {{"A", format_scalar(s.A)},
                                                  {"verified", w.verified},
                                                  {"scaled", rmu2_params_to_spec(w.target)},
                                                  {"canonical_A", format_scalar(cf.A)},
                                                  {"canonical", rmu2_params_to_spec(cf.params)},
                                                  {"canonical_verified", canonical_ok},
                                                  {"irrational_root", cf.irrational_root}});
      });

    for (auto [n, k] : grid3)
      add("rmu3-rn-isomorphism", sized("Rmu3", n, k), [n = n, k = k] {
        const Algebra r3 = make_R_mu3(n, k);
        const Algebra rn = make_Rn(n - k - 1, k + 1);
        const Matrix p = rmu3_to_rn_relabeling(n, k);
        return judge(is_isomorphism(rn, r3, p), {{"Rn", sized("Rn", n - k - 1, k + 1)}, {"dim", r3.dim()}});
      });
  }

  void plan_lgamma() {
    for (std::size_t k = 1; k <= std::min<std::size_t>(config_.k_max, 3); ++k)
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        GammaVector g(k);
        std::string text = "Lgamma:g=[";
        for (std::size_t i = 0; i < k; ++i) {
          g[i] = (mask >> i) & 1 ? -1 : 0;
          text += (i ? "," : "") + std::to_string(g[i]);
        }
        text += "]";
        add("lgamma-automorphisms", text, [g] {
          const std::size_t k = g.size();
          const Algebra a = make_L_gamma(g);
          std::size_t cases = 0;
          std::size_t automorphisms = 0;
          Json mismatches = Json::array();
          auto probe = [&](const Vector& alpha, const Vector& beta) {
            bool predicted = true;
            for (std::size_t i = 0; i < k; ++i)
              if (alpha[i] == 0 || (1 + g[i]) * beta[i] != 0) predicted = false;
            const bool actual = is_isomorphism(a, a, lgamma_map(alpha, beta));
            ++cases;
            automorphisms += actual;
            if (actual != predicted) mismatches.push_back({{"alpha", vector_to_json(alpha)}, {"beta", vector_to_json(beta)}});
          };
          const Vector alpha_values = {Scalar(2), Scalar(-1, 3), Scalar(3)};
          for (std::size_t bm = 0; bm < (std::size_t{1} << k); ++bm) {
            Vector alpha(k), beta(k);
            for (std::size_t i = 0; i < k; ++i) {
              alpha[i] = alpha_values[i % 3];
              beta[i] = (bm >> i) & 1 ? Scalar(i + 1, 2) : Scalar(0);
            }
            probe(alpha, beta);
            for (std::size_t z = 0; z < k; ++z) {
              Vector degenerate = alpha;
              degenerate[z] = 0;
              probe(degenerate, beta);
            }
          }
          return judge(mismatches.empty(),
                       {{"cases", cases}, {"automorphisms", automorphisms}, {"mismatches", mismatches}});
        });
        add("lgamma-rigidity", text, [g] { return rigidity_outcome(make_L_gamma(g)); });
      }
  }

  void plan_rn() {
    const auto grid = rn_grid(config_);
    for (auto [n, k] : grid)
      add("rn-derivations", sized("Rn", n, k), [n = n, k = k] {
        const Algebra a = make_Rn(n, k);
        const PatternReport r = verify_derivation_pattern(a, derivation_pattern_Rn(n, k));
        return judge(r.ok && r.derivation_dim == 2 * k + 1, {{"dim_Der", r.derivation_dim},
                                                             {"expected", 2 * k + 1},
                                                             {"pattern_dim", r.pattern_dim},
                                                             {"violations", r.violations}});
      });
    for (auto [n, k] : grid)
      add("rn-complete", sized("Rn", n, k), [n = n, k = k] {
        const Algebra a = make_Rn(n, k);
        const DerivationSpace d = derivation_space(a);
        const Subspace inner = inner_derivation_space(a);
        const std::size_t z = center(a).dim();
        const bool complete = is_complete(a);
        const bool ok = complete && z == 0 && inner.dim() == d.dim() && d.flat.contains(inner);
        return judge(ok, {{"dim_center", z}, {"dim_Der", d.dim()}, {"dim_Inner", inner.dim()}, {"complete", complete}});
      });

    auto quotient = [](std::size_t n, std::size_t k, std::size_t first, const Algebra& expected) {
      const Algebra rn = make_Rn(n, k);
      const Subspace s = coordinate_span(rn, labels_of("e", first, n));
      const bool ideal = is_ideal(rn, s);
      Json e = {{"ideal", ideal}, {"dim_ideal", s.dim()}};
      if (!ideal) return judge(false, e);
      const bool same = same_structure_constants(quotient_algebra(rn, s), expected);
      e["matches_table"] = same;
      return judge(same, e);
    };
    for (auto [n, k] : grid)
      for (std::size_t m = 1; m <= n - k + 1; ++m)
        add("rm-quotient", sized("Rn", n, k) + " / <e" + std::to_string(m + 1) + "..e" + std::to_string(n) + ">",
            [=, n = n, k = k] { return quotient(n, k, m + 1, make_Rm(m, k)); });
    for (auto [n, k] : grid) {
      add("rm-quotient-span", sized("Rn", n, k) + " / <e2..e" + std::to_string(n - k) + ">", [n = n, k = k] {
        const Algebra rn = make_Rn(n, k);
        const Subspace printed = coordinate_span(rn, labels_of("e", 2, n - k));
        const bool ideal = is_ideal(rn, printed);
        const Element escape = rn.bracket(rn.basis_vector(rn.index_of("e" + std::to_string(n - k))),
                                          rn.basis_vector(rn.index_of("f1")));
        return Outcome{ideal ? Verdict::Pass : Verdict::Flagged,
                       {{"printed_span_is_ideal", ideal},
                        {"escaping_bracket", "[e" + std::to_string(n - k) + ",f1] = " + element_to_text(rn, escape)},
                        {"used_span", "<e_{m+1},...,e_n>"}}};
      });
    }
    for (auto [n, k] : grid)
      for (std::size_t m = 2; m <= k; ++m)
        add("rnkm-quotient",
            sized("Rn", n, k) + " / <e" + std::to_string(n - k + m + 1) + "..e" + std::to_string(n) + ">",
            [=, n = n, k = k] { return quotient(n, k, n - k + m + 1, make_Rnkm(n, k, m)); });

    const std::size_t cap = config_.max_cohomology_dim;
    for (std::size_t k = 2; k <= config_.k_max; ++k)
      for (std::size_t m = 1; m + k <= std::max<std::size_t>(config_.n_max, k + 1); ++m)
        if (m + 2 * k + 1 <= cap)
          add("rigidity", "Rm:m=" + std::to_string(m) + ",k=" + std::to_string(k),
              [m, k] { return rigidity_outcome(make_Rm(m, k)); });
    for (auto [n, k] : grid)
      for (std::size_t m = 2; m < k; ++m)
        if (n + m + k + 1 <= cap)
          add("rigidity", "Rnkm:n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",m=" + std::to_string(m),
              [n = n, k = k, m] { return rigidity_outcome(make_Rnkm(n, k, m)); });
    for (auto [n, k] : grid)
      if (n + 2 * k + 1 <= cap)
        add("rigidity", sized("Rn", n, k), [n = n, k = k] { return rigidity_outcome(make_Rn(n, k)); });

    for (std::size_t k = 2; k <= config_.k_max; ++k)
      for (std::size_t m = 1; m + k <= std::max<std::size_t>(config_.n_max, k + 1); ++m)
        add("relative-cochains-rm", "R_" + std::to_string(m + 1) + " over R_" + std::to_string(m) + ", k=" +
                                        std::to_string(k),
            [m, k] { return relative_outcome(make_Rm_context(m, k), m + 2 * k + 2); });
    for (auto [n, k] : grid)
      for (std::size_t m = 1; m < k; ++m)
        add("relative-cochains-rnkm",
            "R_{n,k," + std::to_string(m + 1) + "} over R_{n,k," + std::to_string(m) + "}, n=" + std::to_string(n) +
                ", k=" + std::to_string(k),
            [n = n, k = k, m] { return relative_outcome(make_Rnkm_context(n, k, m), n + k + m + 2); });
  }

  void plan_properties() {
    std::vector<std::string> specs;
    const auto grid = mu_grid(config_, 0);
    const auto grid3 = mu_grid(config_, 1);
    if (!grid.empty()) {
      const auto [n, k] = grid.front();
      specs.push_back(sized("mu1", n, k));
      specs.push_back(sized("mu2", n, k));
      specs.push_back(sized("Rmu1", n, k) + "," + rmu1_params_to_spec(random_rmu1(rng_, n, k)));
      specs.push_back(sized("Rmu2", n, k) + "," + rmu2_params_to_spec(random_rmu2(rng_, k)));
    }
    if (!grid3.empty()) specs.push_back(sized("mu3", grid3.front().first, grid3.front().second));
    if (config_.k_max >= 2) specs.push_back("Lgamma:g=[-1,0]");
    const auto rn = rn_grid(config_);
    if (!rn.empty()) {
      specs.push_back(sized("Rn", rn.front().first, rn.front().second));
      specs.push_back("Rm:m=2,k=2");
    }

    const std::size_t cap = config_.max_cohomology_dim;
    for (const auto& spec : specs) {
      add("der-commutator-closure", spec, [spec] {
        const Algebra a = construct_from_spec(spec);
        const DerivationSpace d = derivation_space(a);
        std::size_t pairs = 0;
        bool ok = true;
        for (std::size_t i = 0; i < d.dim() && ok; ++i)
          for (std::size_t j = i + 1; j < d.dim() && ok; ++j) {
            ++pairs;
            const Matrix c = d.basis[i] * d.basis[j] - d.basis[j] * d.basis[i];
            ok = d.flat.contains(flatten(c)) && is_derivation(a, c);
          }
        return judge(ok, {{"dim_Der", d.dim()}, {"pairs", pairs}});
      });
      add("inner-derivations", spec, [spec] {
        const Algebra a = construct_from_spec(spec);
        const DerivationSpace d = derivation_space(a);
        bool each = true;
        for (std::size_t i = 0; i < a.dim(); ++i)
          each = each && is_derivation(a, right_multiplication(a, a.basis_vector(i)));
        const Subspace inner = inner_derivation_space(a);
        return judge(each && d.flat.contains(inner), {{"dim_Inner", inner.dim()}, {"dim_Der", d.dim()}});
      });
    }
    for (const auto& spec : specs) {
      add("coboundary-cocycle", spec, [spec, cap] {
        const Algebra a = construct_from_spec(spec);
        if (a.dim() > cap) return Outcome{Verdict::Pass, {{"skipped", "dimension above cohomology cap"}}};
        const CohomologyReport r = hl2(a);
        const std::size_t der = derivation_space(a).dim();
        const bool ok = r.b2_in_z2 && r.dim_B2 + der == a.dim() * a.dim() && r.b2_dim_matches_derivations;
        Json e = cohomology_to_json(a, r, false);
        e["dim_Der"] = der;
        return judge(ok, e);
      });
    }
    for (const auto& spec : specs) {
      std::vector<Matrix> changes;
      const std::size_t dim = construct_from_spec(spec).dim();
      for (std::size_t t = 0; t < config_.transports; ++t) changes.push_back(random_unimodular(rng_, dim));
      add("transport-invariance", spec, [spec, changes, cap] {
        const Algebra a = construct_from_spec(spec);
        const bool with_hl2 = a.dim() <= std::min<std::size_t>(cap, 9);
        const Json base = derivation_invariants(a, with_hl2);
        Json differing = Json::array();
        std::size_t isomorphisms = 0;
        for (std::size_t t = 0; t < changes.size(); ++t) {
          const Algebra b = transport(a, changes[t]);
          isomorphisms += is_isomorphism(b, a, changes[t]);
          const Json inv = derivation_invariants(b, with_hl2);
          if (inv != base) differing.push_back({{"transport", t}, {"invariants", inv}});
        }
        return judge(differing.empty() && isomorphisms == changes.size(), {{"invariants", base},
                                                                           {"transports", changes.size()},
                                                                           {"verified_isomorphisms", isomorphisms},
                                                                           {"differing", differing}});
      });
    }
  }

  const SuiteConfig& config_;
  std::mt19937_64 rng_;
  std::vector<Task> tasks_;
};

VerificationRecord execute(const Task& task) {
  VerificationRecord rec;
  rec.claim_id = task.claim;
  rec.instance = task.instance;
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = task.run();
    rec.verdict = o.verdict;
    rec.evidence = std::move(o.evidence);
  } catch (const std::exception& e) {
    rec.verdict = Verdict::Fail;
    rec.evidence = {{"error", e.what()}};
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<VerificationRecord> execute_all(const std::vector<Task>& tasks, std::size_t threads) {
  std::vector<VerificationRecord> out(tasks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = execute(tasks[i]);
  };
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

std::string format_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << s << "s";
  return out.str();
}

}  // namespace

void validate(const SuiteConfig& c) {
  if (c.k_max < 1) throw ConstraintViolation("k-max must be at least 1");
  if (c.n_max < 5) throw ConstraintViolation("n-max must be at least 5 (smallest Rn is Rn(5,2))");
  if (c.samples < 1) throw ConstraintViolation("samples must be at least 1");
  if (c.transports < 1) throw ConstraintViolation("transports must be at least 1");
  for (const auto& m : c.modules)
    if (!kModules.count(m))
      throw ParseError("unknown module '" + m + "' (expected core_algebra, families, derivations, cohomology, isomorphism)");
}

SuiteReport run_paper_suite(const SuiteConfig& config) {
  validate(config);
  Planner planner(config);
  const std::vector<Task> tasks = planner.plan();
  return SuiteReport{config, execute_all(tasks, config.threads)};
}

const std::vector<std::string>& analyze_check_names() {
  static const std::vector<std::string> names = {"leibniz",     "series",     "annihilator", "charseq",
                                                 "derivations", "cohomology", "complete"};
  return names;
}

std::vector<VerificationRecord> analyze_algebra(const Algebra& a, const std::set<std::string>& checks,
                                                const std::string& instance) {
  const auto& names = analyze_check_names();
  for (const auto& c : checks)
    if (std::find(names.begin(), names.end(), c) == names.end()) throw ParseError("unknown check '" + c + "'");

  std::vector<Task> tasks;
  auto add = [&](const std::string& name, std::function<Outcome()> run) {
    if (checks.count(name)) tasks.push_back({name, instance, std::move(run)});
  };
  add("leibniz", [&a] {
    const auto c = check_leibniz(a);
    return judge(c.ok, leibniz_evidence(a, c));
  });
  add("series", [&a] {
    const SeriesReport lcs = lower_central_series(a);
    const SeriesReport der = derived_series(a);
    return judge(true, {{"lower_central", lcs.dims()},
                        {"derived", der.dims()},
                        {"nilpotent", lcs.terminates_at_zero},
                        {"solvable", der.terminates_at_zero}});
  });
  add("annihilator", [&a] {
    const Subspace ann = right_annihilator(a);
    const auto spot = annihilator_membership_spotcheck(a);
    Json basis = Json::array();
    for (const auto& v : ann.basis_vectors()) basis.push_back(element_to_text(a, v));
    return judge(spot.ok, {{"dim_Ann_r", ann.dim()},
                           {"basis", basis},
                           {"dim_center", center(a).dim()},
                           {"squares_in_Ann_r", spot.ok},
                           {"violations", spot.violations}});
  });
  add("charseq", [&a] {
    if (!is_nilpotent(a))
      return Outcome{Verdict::Flagged, {{"nilpotent", false}, {"note", "characteristic sequence needs a nilpotent algebra"}}};
    const auto cs = characteristic_sequence(a);
    return judge(true, {{"nilpotent", true},
                        {"characteristic_sequence", cs.sequence},
                        {"witness", element_to_text(a, cs.witness)},
                        {"sample_size", cs.sample_size}});
  });
  add("derivations", [&a] {
    const DerivationSpace d = derivation_space(a);
    const Subspace inner = inner_derivation_space(a);
    return judge(d.flat.contains(inner), {{"dim_Der", d.dim()}, {"dim_Inner", inner.dim()}});
  });
  add("cohomology", [&a] {
    const CohomologyReport r = hl2(a);
    return judge(r.b2_in_z2 && r.b2_dim_matches_derivations, cohomology_to_json(a, r, true));
  });
  add("complete", [&a] {
    const std::size_t z = center(a).dim();
    const std::size_t der = derivation_space(a).dim();
    const std::size_t inner = inner_derivation_space(a).dim();
    return judge(true, {{"complete", is_complete(a)}, {"dim_center", z}, {"dim_Der", der}, {"dim_Inner", inner}});
  });
  return execute_all(tasks, 1);
}

Json record_to_json(const VerificationRecord& r, bool timings) {
  Json j = {{"claim", r.claim_id}};
  for (const auto& c : claim_registry())
    if (c.id == r.claim_id) j["statement"] = c.statement;
  j["instance"] = r.instance;
  j["verdict"] = verdict_name(r.verdict);
  j["evidence"] = r.evidence;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

namespace {

Json summary_json(const std::vector<VerificationRecord>& records) {
  std::size_t pass = 0, fail = 0, flagged = 0;
  for (const auto& r : records) {
    pass += r.verdict == Verdict::Pass;
    fail += r.verdict == Verdict::Fail;
    flagged += r.verdict == Verdict::Flagged;
  }
  return {{"total", records.size()}, {"pass", pass}, {"fail", fail}, {"flagged", flagged}};
}

}  // namespace

Json suite_to_json(const SuiteReport& report, bool timings) {
  const SuiteConfig& c = report.config;
  Json modules = Json::array();
  for (const auto& m : c.modules) modules.push_back(m);
  Json claims = Json::array();
  for (const auto& claim : claim_registry())
    claims.push_back({{"id", claim.id}, {"module", claim.module}, {"statement", claim.statement}});
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(record_to_json(r, timings));
  return {{"schema", kSchema},
          {"kind", "paper-suite"},
          {"random", {{"generator", "mt19937_64"}, {"seed", c.seed}}},
          {"config",
           {{"n_max", c.n_max},
            {"k_max", c.k_max},
            {"samples", c.samples},
            {"transports", c.transports},
            {"max_cohomology_dim", c.max_cohomology_dim},
            {"modules", modules}}},
          {"summary", summary_json(report.records)},
          {"claims", claims},
          {"records", records}};
}

Json analysis_to_json(const std::vector<VerificationRecord>& records, const std::string& instance, bool timings) {
  Json out = Json::array();
  for (const auto& r : records) {
    Json j = {{"check", r.claim_id}, {"verdict", verdict_name(r.verdict)}, {"evidence", r.evidence}};
    if (timings) j["seconds"] = r.seconds;
    out.push_back(std::move(j));
  }
  return {{"schema", kSchema},
          {"kind", "analysis"},
          {"instance", instance},
          {"summary", summary_json(records)},
          {"records", out}};
}

std::string records_to_text(const std::vector<VerificationRecord>& records, bool timings) {
  std::ostringstream out;
  for (const auto& r : records) {
    std::string v(verdict_name(r.verdict));
    for (auto& ch : v) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    out << std::left << std::setw(8) << v << std::setw(32) << r.claim_id << r.instance;
    if (timings) out << "  (" << format_seconds(r.seconds) << ")";
    out << "\n";
    if (r.verdict != Verdict::Pass) out << "        " << r.evidence.dump() << "\n";
  }
  return out.str();
}

std::string suite_to_text(const SuiteReport& report, bool timings) {
  std::ostringstream out;
  out << records_to_text(report.records, timings);
  out << report.records.size() << " records: " << report.count(Verdict::Pass) << " pass, "
      << report.count(Verdict::Fail) << " fail, " << report.count(Verdict::Flagged) << " flagged (seed "
      << report.config.seed << ")\n";
  return out.str();
}

}  // namespace leibniz
