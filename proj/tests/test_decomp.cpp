#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "rk/algfile.hpp"
#include "rk/catalog.hpp"
#include "rk/decomp.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using namespace rk;

namespace {

Subspace spanned(const LieAlgebra& g, const std::vector<std::string>& exprs) {
  return catalog_span(g, exprs);
}

Decomposition from_exprs(const LieAlgebra& g,
                         const std::vector<std::string>& h,
                         const std::vector<std::string>& v) {
  return Decomposition(g, spanned(g, h), spanned(g, v));
}

Vec vec_of(const LieAlgebra& g, const std::string& expr) {
  auto v = parse_vector_expr(g, expr);
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_CASE("construction rejects non-splitting pairs") {
  const LieAlgebra& g = catalog_load("h3+h3");
  const Subspace h = spanned(g, {"x1", "y1", "z2"});
  CHECK_THROWS_AS(Decomposition(g, h, spanned(g, {"x1", "x2", "y2"})),
                  std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Decomposition(g, h, spanned(g, {"x2", "y2"})),
                  std::invalid_argument);  // does not span
  CHECK_THROWS_AS(Decomposition(g, h, Subspace::full(3)),
                  std::invalid_argument);  // wrong ambient space
}

TEST_CASE("projections split every vector along the decomposition") {
  const LieAlgebra& g = catalog_load("h3+h3");
  const Decomposition d =
      from_exprs(g, {"x1", "y1", "z2"}, {"x2", "y2", "z1"});
  for (int i = 0; i < g.dim(); ++i) {
    const Vec e = unit_vec(g.dim(), i);
    const Vec ph = d.project_H(e);
    const Vec pv = d.project_V(e);
    CHECK(add(ph, pv) == e);
    CHECK(d.H().contains(ph));
    CHECK(d.V().contains(pv));
    CHECK(d.project_H(ph) == ph);  // idempotent
    CHECK(is_zero_vec(d.project_V(ph)));
  }
}

TEST_CASE("respect, openness, and mutuality flags") {
  SUBCASE("open and mutual") {
    const LieAlgebra& g = catalog_load("h3+h3");
    const auto a =
        analyze(from_exprs(g, {"x1", "y1", "z2"}, {"x2", "y2", "z1"}));
    CHECK(a.respects);
    CHECK(a.mutual);
    CHECK(!a.h_is_subalgebra);
    CHECK(!a.v_is_subalgebra);
    CHECK(a.open_flag);
  }
  SUBCASE("subalgebra complement respects but is not open") {
    const LieAlgebra& g = catalog_load("f4");
    const auto a = analyze(from_exprs(g, {"x3", "x4"}, {"x1", "x2"}));
    CHECK(a.respects);
    CHECK(a.h_is_subalgebra);
    CHECK(!a.v_is_subalgebra);
    CHECK(!a.open_flag);
  }
  SUBCASE("failure to respect") {
    const LieAlgebra& g = catalog_load("f4");
    const auto a = analyze(from_exprs(g, {"x1", "x2"}, {"x3", "x4"}));
    CHECK(!a.respects);  // [x3,x1] = -x4 leaves H
    CHECK(!a.open_flag);
    CHECK(!a.mutual);
  }
}

TEST_CASE("derived subspaces on the hand-checked five-dimensional witness") {
  const LieAlgebra& g = catalog_load("Ex3.4");
  const Decomposition d = from_exprs(g, {"x1", "y1", "y2+z"}, {"x2", "y2"});
  const auto a = analyze(d);
  CHECK(a.respects);
  CHECK(a.open_flag);
  CHECK(!a.mutual);
  CHECK(a.H_V == spanned(g, {"y2+z"}));
  CHECK(a.V_H == spanned(g, {"y2"}));
  CHECK(a.K_H == spanned(g, {"y2+z"}));
  CHECK(a.Vbar == spanned(g, {"x2", "y2", "z"}));
  CHECK(a.Hbar == spanned(g, {"x1", "y1", "y2", "z"}));
  CHECK(a.induced_V_abelian);
  CHECK(a.induced_V.validate().ok);
  CHECK(invariant_violations(d, a).empty());
}

TEST_CASE("the induced algebra carries the projected bracket") {
  // H = span(x1,y1,z1+z2), V = span(x2,y2,z1-z2): the class of z2 projects
  // to -(z1-z2)/2, so the canonical V basis (z1-z2, x2, y2) has
  // [x2,y2] = -1/2 (z1-z2).
  const LieAlgebra& g = catalog_load("h3+h3");
  const auto a =
      analyze(from_exprs(g, {"x1", "y1", "z1+z2"}, {"x2", "y2", "z1-z2"}));
  CHECK(a.open_flag);
  CHECK(a.mutual);
  CHECK(!a.induced_V_abelian);
  REQUIRE(a.induced_V.dim() == 3);
  const Vec got = a.induced_V.bracket_basis(1, 2);
  const Vec want = {make_scalar(-1, 2), Scalar(0), Scalar(0)};
  CHECK(got == want);
  CHECK(nilpotent_type_dim_le4(a.induced_V) == std::string("h3"));
}

TEST_CASE("closure clauses on hand-checked witnesses") {
  SUBCASE("dimension-six table row") {
    const auto& e = catalog_expected("L6_10");
    REQUIRE(e.h3.has_value());
    const LieAlgebra& g = catalog_load("L6_10");
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    const auto rep = check_lji(d);
    CHECK(rep.all_hold);
    CHECK(rep.clauses.size() == 7);
    for (const auto& c : rep.clauses) CHECK(c.holds);
    CHECK(analyze(d).H_V.dim() == 1);
    CHECK(analyze(d).H_V == spanned(g, {"x6"}));
  }
  SUBCASE("five-dimensional witness") {
    const LieAlgebra& g = catalog_load("Ex3.4");
    const auto rep =
        check_lji(from_exprs(g, {"x1", "y1", "y2+z"}, {"x2", "y2"}));
    CHECK(rep.all_hold);
    for (const auto& c : rep.clauses) {
      CAPTURE(c.label);
      CHECK(c.holds);
    }
  }
  SUBCASE("ideal complement holds trivially with K_H = H") {
    const LieAlgebra& g = catalog_load("f4");
    const Decomposition d = from_exprs(g, {"x2", "x3", "x4"}, {"x1"});
    const auto a = analyze(d);
    CHECK(a.respects);
    CHECK(!a.open_flag);  // V is a one-dimensional subalgebra
    CHECK(a.K_H == d.H());
    const auto rep = check_lji(d);
    CHECK(rep.all_hold);
    CHECK(!rep.clauses[5].applicable);  // (f) binds open decompositions only
    CHECK(!rep.clauses[6].applicable);
  }
  SUBCASE("precondition is enforced") {
    const LieAlgebra& g = catalog_load("f4");
    CHECK_THROWS_AS(check_lji(from_exprs(g, {"x1", "x2"}, {"x3", "x4"})),
                    std::invalid_argument);
  }
}

TEST_CASE("closure clauses across every stored table witness") {
  for (const auto& name : catalog_names()) {
    const auto& e = catalog_expected(name);
    if (!e.h3) continue;
    CAPTURE(name);
    const LieAlgebra& g = catalog_load(name);
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    const auto a = analyze(d);
    CHECK(a.respects);
    CHECK(a.open_flag);
    CHECK(a.H_V.dim() == 1);
    CHECK(check_lji(d).all_hold);
    CHECK(invariant_violations(d, a).empty());
  }
}

TEST_CASE("stored example witnesses match their recorded flags") {
  for (const auto& name : catalog_names()) {
    const auto& e = catalog_expected(name);
    for (const auto& w : e.witnesses) {
      CAPTURE(name);
      CAPTURE(w.tag);
      const LieAlgebra& g = catalog_load(name);
      const Decomposition d = from_exprs(g, w.H, w.V);
      const auto a = analyze(d);
      CHECK(a.respects);
      CHECK(a.open_flag);
      CHECK(a.mutual == w.mutual);
      if (w.induced_V_abelian)
        CHECK(a.induced_V_abelian == *w.induced_V_abelian);
      CHECK(check_lji(d).all_hold);
      CHECK(invariant_violations(d, a).empty());
    }
  }
}

TEST_CASE("adapted bases and their guarantees") {
  SUBCASE("table row pins h3 to the stored line") {
    const auto& e = catalog_expected("L6_10");
    const LieAlgebra& g = catalog_load("L6_10");
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    const auto basis = adapted_basis(d);
    REQUIRE(basis.size() == 3);
    CHECK(spanned(g, {"x6"}).contains(basis[2]));
    CHECK(is_zero_vec(g.bracket(basis[1], basis[2])));
    CHECK(!is_zero_vec(d.project_V(g.bracket(basis[0], basis[1]))));
    CHECK(d.H() == Subspace::span(basis, g.dim()));
  }
  SUBCASE("mutual witness pins h3 to the second center line") {
    const LieAlgebra& g = catalog_load("h3+h3");
    const Decomposition d =
        from_exprs(g, {"x1", "y1", "z2"}, {"x2", "y2", "z1"});
    const auto basis = adapted_basis(d);
    CHECK(spanned(g, {"z2"}).contains(basis[2]));
  }
  SUBCASE("triangularity of the projected action") {
    const auto& e = catalog_expected("L6_13");
    const LieAlgebra& g = catalog_load("L6_13");
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    const auto basis = adapted_basis(d);
    const auto a = analyze(d);
    const Subspace tail = Subspace::span({basis[1], basis[2]}, g.dim());
    for (const Vec& z : a.Vbar.basis_rows()) {
      CHECK(tail.contains(d.project_H(g.bracket(z, basis[0]))));
      CHECK(a.H_V.contains(d.project_H(g.bracket(z, basis[1]))));
    }
  }
  SUBCASE("preconditions are enforced") {
    const LieAlgebra& f = catalog_load("f4");
    CHECK_THROWS_AS(adapted_basis(from_exprs(f, {"x2", "x3", "x4"}, {"x1"})),
                    std::invalid_argument);  // not open
    const LieAlgebra& e36 = catalog_load("Ex3.6");
    CHECK_THROWS_AS(
        adapted_basis(from_exprs(e36, {"h1", "h2", "h3"}, {"v1", "v2"})),
        std::invalid_argument);  // open but not nilpotent
  }
}

TEST_CASE("dimension-six structure report on every stored witness") {
  int rows = 0;
  for (const auto& name : catalog_names()) {
    const auto& e = catalog_expected(name);
    if (!e.h3) continue;
    CAPTURE(name);
    const LieAlgebra& g = catalog_load(name);
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    const auto rep = structural_conditions_dim6(d);
    for (const auto& c : rep.conditions) {
      CAPTURE(c.label);
      CHECK(c.holds);
    }
    CHECK(rep.all_hold);
    REQUIRE(rep.hbar_type.has_value());
    CHECK(*rep.hbar_type == e.h3->Hbar_type);
    REQUIRE(rep.induced_type.has_value());
    const std::string induced =
        *rep.induced_type == "R3" ? "R3" : *rep.induced_type;
    CHECK(induced == e.h3->V_type);
    CHECK(rep.vbar_type == std::string("h3+R"));
    ++rows;
  }
  CHECK(rows == 14);
}

TEST_CASE("dimension-six structure report on the mutual witnesses") {
  for (const std::string name : {"h3+h3", "R+h5"}) {
    const auto& e = catalog_expected(name);
    const LieAlgebra& g = catalog_load(name);
    for (const auto& w : e.witnesses) {
      CAPTURE(name);
      CAPTURE(w.tag);
      const auto rep =
          structural_conditions_dim6(from_exprs(g, w.H, w.V));
      CHECK(rep.all_hold);
      CHECK(rep.hbar_type == std::string("h3+R"));
    }
  }
}

TEST_CASE("structure report spot checks") {
  SUBCASE("center dimension one goes with the filiform closure") {
    const auto& e = catalog_expected("L6_13");
    const LieAlgebra& g = catalog_load("L6_13");
    const auto rep = structural_conditions_dim6(
        from_exprs(g, e.h3->H, e.h3->V));
    CHECK(rep.hbar_type == std::string("f4"));
    CHECK(g.center().dim() == 1);
    CHECK(rep.all_hold);
  }
  SUBCASE("non-abelian induced algebra on a decomposable row") {
    const auto& e = catalog_expected("L5_4+R");
    const LieAlgebra& g = catalog_load("L5_4+R");
    const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
    CHECK(!analyze(d).induced_V_abelian);
    const auto rep = structural_conditions_dim6(d);
    CHECK(rep.induced_type == std::string("h3"));
    CHECK(rep.all_hold);
  }
  SUBCASE("preconditions are enforced") {
    const LieAlgebra& g = catalog_load("Ex3.4");  // dimension five
    CHECK_THROWS_AS(structural_conditions_dim6(
                        from_exprs(g, {"x1", "y1", "y2+z"}, {"x2", "y2"})),
                    std::invalid_argument);
  }
}

TEST_CASE("ideal complements give respectful decompositions under perturbation") {
  std::mt19937_64 rng(0x20260816ull);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (const auto& name : catalog_names()) {
    const LieAlgebra& g = catalog_load(name);
    const int n = g.dim();
    std::vector<Subspace> ideals;
    const Subspace der = g.derived_subalgebra();
    if (der.dim() > 0 && der.dim() < n) ideals.push_back(der);
    const Subspace z = g.center();
    if (z.dim() > 0 && z.dim() < n) ideals.push_back(z);
    for (const Subspace& h : ideals) {
      const Subspace v0 = complement(h, Subspace::full(n));
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<Vec> rows = v0.basis_rows();
        for (Vec& r : rows)
          for (const Vec& b : h.basis_rows())
            axpy(r, Scalar(coeff(rng)), b);
        const Subspace v = Subspace::span(rows, n);
        CAPTURE(name);
        const Decomposition d(g, h, v);
        const auto a = analyze(d);
        CHECK(a.respects);  // [g, ideal] stays in the ideal
        CHECK(a.induced_V.validate().ok);
        if (g.is_nilpotent())
          CHECK(a.induced_V.series().nilpotency_class.has_value());
        CHECK(invariant_violations(d, a).empty());
      }
    }
  }
}

TEST_CASE("analysis is deterministic") {
  const auto& e = catalog_expected("L6_13");
  const LieAlgebra& g = catalog_load("L6_13");
  const Decomposition d = from_exprs(g, e.h3->H, e.h3->V);
  const auto a1 = analyze(d);
  const auto a2 = analyze(d);
  CHECK(a1.H_V == a2.H_V);
  CHECK(a1.V_H == a2.V_H);
  CHECK(a1.K_H == a2.K_H);
  CHECK(serialize_algebra(a1.induced_V) == serialize_algebra(a2.induced_V));
  const auto b1 = adapted_basis(d);
  const auto b2 = adapted_basis(d);
  CHECK(b1 == b2);
}

TEST_CASE("subalgebra complements in a filiform algebra meet the bound") {
  // V = span(x2,x4,x6) is an abelian subalgebra, H = span(x1,x3,x5)
  // absorbs [V,H], and dim V attains floor(dim g / 2).
  const LieAlgebra& g = catalog_load("L6_18");
  REQUIRE(g.is_filiform());
  const Decomposition d =
      from_exprs(g, {"x1", "x3", "x5"}, {"x2", "x4", "x6"});
  const auto a = analyze(d);
  CHECK(a.respects);
  CHECK(a.v_is_subalgebra);
  CHECK(!a.open_flag);
  CHECK(d.V().dim() == g.dim() / 2);
  CHECK(invariant_violations(d, a).empty());
  CHECK(vec_of(g, "x2+x4+x6").size() == 6);
}

TEST_CASE("five-dimensional open witnesses outside the unimodular case") {
  for (const std::string name : {"Ex3.4", "Ex3.6", "Ex3.10"}) {
    CAPTURE(name);
    const auto& e = catalog_expected(name);
    const LieAlgebra& g = catalog_load(name);
    CHECK(!g.is_unimodular());
    REQUIRE(e.witnesses.size() == 1);
    const auto& w = e.witnesses.front();
    const Decomposition d = from_exprs(g, w.H, w.V);
    const auto a = analyze(d);
    CHECK(a.open_flag);
    CHECK(invariant_violations(d, a).empty());
    REQUIRE(e.facts.dim_derived.has_value());
    CHECK(g.derived_subalgebra().dim() == *e.facts.dim_derived);
  }
}
