#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "rk/liealg.hpp"

#include <random>
#include <set>

using namespace rk;

namespace {

Vec qvec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Scalar(x));
  return v;
}

Vec random_vec(std::mt19937_64& gen, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i)
    v[i] = make_scalar(static_cast<long>(gen() % 11) - 5,
                       1 + static_cast<long>(gen() % 3));
  return v;
}

// [x1,x2]=x3, [x1,x3]=x4, [x1,x4]=x5: 5-dimensional, class 4
LieAlgebra filiform5() {
  LieAlgebra g("fil5", {"x1", "x2", "x3", "x4", "x5"});
  g.set_bracket(0, 1, unit_vec(5, 2));
  g.set_bracket(0, 2, unit_vec(5, 3));
  g.set_bracket(0, 3, unit_vec(5, 4));
  return g;
}

// [x1,x2]=x2: solvable, not nilpotent, not unimodular
LieAlgebra affine2() {
  LieAlgebra g("aff2", {"x1", "x2"});
  g.set_bracket(0, 1, unit_vec(2, 1));
  return g;
}

}  // namespace

TEST_CASE("construction and basis lookup") {
  LieAlgebra h3 = heisenberg(1);
  CHECK(h3.dim() == 3);
  CHECK(h3.name() == "h3");
  CHECK(h3.basis_names() == std::vector<std::string>{"x1", "y1", "z"});
  CHECK(h3.basis_index("y1") == 1);
  CHECK(h3.basis_index("nope") == -1);
  CHECK_THROWS(LieAlgebra("bad", {"a", "a"}));

  LieAlgebra g("g", {"a", "b"});
  CHECK_THROWS(g.set_bracket(1, 0, qvec({0, 0})));
  CHECK_THROWS(g.set_bracket(0, 1, qvec({0, 0, 0})));
}

TEST_CASE("validate accepts consistent tables") {
  CHECK(heisenberg(1).validate().ok);
  CHECK(heisenberg(2).validate().ok);
  CHECK(filiform_f4().validate().ok);
  CHECK(filiform5().validate().ok);
  CHECK(abelian(4).validate().ok);
  CHECK(affine2().validate().ok);
}

TEST_CASE("validate reports the first failing triple") {
  // [x1,x2]=x3, [x1,x3]=x1 breaks Jacobi: the cyclic sum on (x1,x2,x3)
  // equals [x2,-x1] = x3.
  LieAlgebra g("broken", {"x1", "x2", "x3"});
  g.set_bracket(0, 1, unit_vec(3, 2));
  g.set_bracket(0, 2, unit_vec(3, 0));
  auto rep = g.validate();
  REQUIRE_FALSE(rep.ok);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->i == 0);
  CHECK(rep.violation->j == 1);
  CHECK(rep.violation->k == 2);
  CHECK(rep.violation->residual == qvec({0, 0, 1}));
}

TEST_CASE("bracket bilinearity and antisymmetry") {
  LieAlgebra h3 = heisenberg(1);
  Vec x = unit_vec(3, 0), y = unit_vec(3, 1), z = unit_vec(3, 2);
  CHECK(h3.bracket(x, y) == z);
  CHECK(h3.bracket(y, x) == scaled(z, Scalar(-1)));
  CHECK(h3.bracket(add(scaled(x, Scalar(2)), y), y) == scaled(z, Scalar(2)));
  CHECK(h3.bracket_basis(1, 0) == scaled(z, Scalar(-1)));
  CHECK(h3.bracket_basis(1, 1) == Vec(3, Scalar(0)));
  CHECK_THROWS(h3.bracket(qvec({1, 0}), x));

  std::mt19937_64 gen(31);
  for (const LieAlgebra& g : {heisenberg(2), filiform_f4(), filiform5()}) {
    const int n = g.dim();
    for (int t = 0; t < 50; ++t) {
      Vec u = random_vec(gen, n), v = random_vec(gen, n), w = random_vec(gen, n);
      CHECK(g.bracket(u, u) == Vec(n, Scalar(0)));
      CHECK(g.bracket(u, v) == scaled(g.bracket(v, u), Scalar(-1)));
      Vec jac = g.bracket(u, g.bracket(v, w));
      axpy(jac, Scalar(1), g.bracket(v, g.bracket(w, u)));
      axpy(jac, Scalar(1), g.bracket(w, g.bracket(u, v)));
      CHECK(is_zero_vec(jac));
      // bilinearity in the first slot
      Vec lhs = g.bracket(add(u, scaled(v, Scalar(3))), w);
      Vec rhs = add(g.bracket(u, w), scaled(g.bracket(v, w), Scalar(3)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("subspace bracket") {
  LieAlgebra f4 = filiform_f4();
  Subspace full = Subspace::full(4);
  Subspace derived = f4.subspace_bracket(full, full);
  CHECK(derived == Subspace::span({unit_vec(4, 2), unit_vec(4, 3)}, 4));
  CHECK(f4.derived_subalgebra() == derived);
  CHECK(f4.subspace_bracket(full, Subspace::zero(4)) == Subspace::zero(4));

  // monotone in both arguments
  std::mt19937_64 gen(37);
  LieAlgebra h5 = heisenberg(2);
  for (int t = 0; t < 20; ++t) {
    Subspace a = Subspace::span({random_vec(gen, 5)}, 5);
    Subspace a2 = a.sum(Subspace::span({random_vec(gen, 5)}, 5));
    Subspace b = Subspace::span({random_vec(gen, 5)}, 5);
    Subspace b2 = b.sum(Subspace::span({random_vec(gen, 5)}, 5));
    CHECK(h5.subspace_bracket(a2, b2).contains(h5.subspace_bracket(a, b)));
  }
}

TEST_CASE("center and series") {
  LieAlgebra h5 = heisenberg(2);
  CHECK(h5.center() == Subspace::span({unit_vec(5, 4)}, 5));

  SeriesReport f4s = filiform_f4().series();
  REQUIRE(f4s.lower_central_series.size() == 4);
  CHECK(f4s.lower_central_series[0] == Subspace::full(4));
  CHECK(f4s.lower_central_series[1] ==
        Subspace::span({unit_vec(4, 2), unit_vec(4, 3)}, 4));
  CHECK(f4s.lower_central_series[2] == Subspace::span({unit_vec(4, 3)}, 4));
  CHECK(f4s.lower_central_series[3] == Subspace::zero(4));
  CHECK(f4s.nilpotency_class == 3);
  CHECK(f4s.center == Subspace::span({unit_vec(4, 3)}, 4));

  REQUIRE(f4s.derived_series.size() == 3);
  CHECK(f4s.derived_series[1] == f4s.lower_central_series[1]);
  CHECK(f4s.derived_series[2] == Subspace::zero(4));

  SeriesReport ab = abelian(3).series();
  CHECK(ab.nilpotency_class == 1);
  CHECK(ab.center == Subspace::full(3));

  SeriesReport aff = affine2().series();
  CHECK_FALSE(aff.nilpotency_class.has_value());
  CHECK(aff.lower_central_series.back() == Subspace::span({unit_vec(2, 1)}, 2));

  // weakly decreasing chains
  for (const LieAlgebra& g : {heisenberg(2), filiform5(), affine2()}) {
    SeriesReport s = g.series();
    for (size_t i = 1; i < s.derived_series.size(); ++i)
      CHECK(s.derived_series[i - 1].contains(s.derived_series[i]));
    for (size_t i = 1; i < s.lower_central_series.size(); ++i)
      CHECK(s.lower_central_series[i - 1].contains(s.lower_central_series[i]));
  }
}

TEST_CASE("nilpotency flags") {
  CHECK(heisenberg(2).is_nilpotent());
  CHECK(abelian(5).is_nilpotent());
  CHECK_FALSE(affine2().is_nilpotent());
  CHECK(abelian(5).is_abelian());
  CHECK_FALSE(heisenberg(1).is_abelian());
}

TEST_CASE("adjoint matrices, traces, unimodularity") {
  LieAlgebra aff = affine2();
  Matrix ad1 = aff.ad_matrix(unit_vec(2, 0));
  CHECK(ad1.apply(unit_vec(2, 1)) == unit_vec(2, 1));
  CHECK(ad1.apply(unit_vec(2, 0)) == Vec(2, Scalar(0)));
  CHECK(aff.trace_ad(unit_vec(2, 0)) == Scalar(1));
  CHECK_FALSE(aff.is_unimodular());

  for (const LieAlgebra& g : {heisenberg(2), filiform_f4(), filiform5()})
    CHECK(g.is_unimodular());

  LieAlgebra r3 = abelian(3);
  for (int i = 0; i < 3; ++i)
    CHECK(r3.ad_matrix(unit_vec(3, i)) == Matrix(3, 3));

  // ad is a representation: ad([u,v]) = ad(u)ad(v) - ad(v)ad(u)
  std::mt19937_64 gen(41);
  LieAlgebra f4 = filiform_f4();
  for (int t = 0; t < 20; ++t) {
    Vec u = random_vec(gen, 4), v = random_vec(gen, 4);
    Matrix lhs = f4.ad_matrix(f4.bracket(u, v));
    Matrix a = f4.ad_matrix(u), b = f4.ad_matrix(v);
    Matrix rhs = a * b;
    Matrix ba = b * a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rhs.at(i, j) -= ba.at(i, j);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("filiform detection") {
  CHECK(filiform_f4().is_filiform());
  CHECK(filiform5().is_filiform());
  CHECK_FALSE(heisenberg(2).is_filiform());
  CHECK_FALSE(abelian(3).is_filiform());
  CHECK_THROWS_AS(affine2().is_filiform(), std::invalid_argument);

  auto w = filiform_witness(filiform_f4());
  REQUIRE(w.has_value());
  // the witness has ad^(dim-2) nonzero
  LieAlgebra f4 = filiform_f4();
  Matrix p = f4.ad_matrix(*w) * f4.ad_matrix(*w);
  bool nonzero = false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (p.at(i, j) != 0) nonzero = true;
  CHECK(nonzero);

  CHECK_FALSE(filiform_witness(heisenberg(2)).has_value());
}

TEST_CASE("direct sums") {
  LieAlgebra two = direct_sum(heisenberg(1), heisenberg(1));
  CHECK(two.dim() == 6);
  CHECK(two.name() == "h3+h3");
  CHECK(two.validate().ok);
  // block structure: [e0,e1] = e2, [e3,e4] = e5, all cross brackets zero
  CHECK(two.bracket(unit_vec(6, 0), unit_vec(6, 1)) == unit_vec(6, 2));
  CHECK(two.bracket(unit_vec(6, 3), unit_vec(6, 4)) == unit_vec(6, 5));
  CHECK(is_zero_vec(two.bracket(unit_vec(6, 0), unit_vec(6, 4))));
  // names stay unique
  std::set<std::string> names(two.basis_names().begin(), two.basis_names().end());
  CHECK(names.size() == 6);

  LieAlgebra ab = direct_sum(abelian(2), abelian(3));
  CHECK(ab.dim() == 5);
  CHECK(ab.is_abelian());

  LieAlgebra rh5 = direct_sum(abelian(1), heisenberg(2));
  CHECK(rh5.name() == "R+h5");
  CHECK(rh5.dim() == 6);
  CHECK(rh5.center().dim() == 2);  // the R factor plus z
  CHECK(rh5.derived_subalgebra().dim() == 1);
}

TEST_CASE("coordinates in a subspace") {
  Subspace s = Subspace::span({qvec({1, 0, 2}), qvec({0, 1, -1})}, 3);
  CHECK(coords_in(s, qvec({2, 3, 1})) == qvec({2, 3}));
  CHECK_THROWS(coords_in(s, qvec({0, 0, 1})));
}

TEST_CASE("materialized subalgebras") {
  LieAlgebra f4 = filiform_f4();
  Subspace s = Subspace::span({unit_vec(4, 0), unit_vec(4, 2), unit_vec(4, 3)}, 4);
  LieAlgebra sub = materialize_subalgebra(f4, s, "sub");
  CHECK(sub.dim() == 3);
  CHECK(sub.validate().ok);
  CHECK(nilpotent_type_dim_le4(sub) == "h3");

  Subspace ab = Subspace::span({unit_vec(4, 1), unit_vec(4, 2), unit_vec(4, 3)}, 4);
  CHECK(materialize_subalgebra(f4, ab, "ab").is_abelian());

  Subspace open_pair = Subspace::span({unit_vec(4, 0), unit_vec(4, 1)}, 4);
  CHECK_THROWS_AS(materialize_subalgebra(f4, open_pair, "x"),
                  std::invalid_argument);
}

TEST_CASE("materialized quotients") {
  LieAlgebra f4 = filiform_f4();
  LieAlgebra q1 = materialize_quotient(f4, Subspace::span({unit_vec(4, 3)}, 4), "q1");
  CHECK(q1.dim() == 3);
  CHECK(nilpotent_type_dim_le4(q1) == "h3");

  LieAlgebra q2 = materialize_quotient(
      f4, Subspace::span({unit_vec(4, 2), unit_vec(4, 3)}, 4), "q2");
  CHECK(q2.dim() == 2);
  CHECK(q2.is_abelian());

  CHECK_THROWS_AS(
      materialize_quotient(f4, Subspace::span({unit_vec(4, 0)}, 4), "bad"),
      std::invalid_argument);
}

TEST_CASE("small nilpotent type recognition") {
  CHECK(nilpotent_type_dim_le4(filiform_f4()) == "f4");
  CHECK(nilpotent_type_dim_le4(heisenberg(1)) == "h3");
  CHECK(nilpotent_type_dim_le4(abelian(4)) == "R4");
  CHECK(nilpotent_type_dim_le4(abelian(3)) == "R3");
  CHECK(nilpotent_type_dim_le4(abelian(1)) == "R");
  CHECK(nilpotent_type_dim_le4(direct_sum(heisenberg(1), abelian(1))) == "h3+R");
  CHECK_FALSE(nilpotent_type_dim_le4(heisenberg(2)).has_value());
  CHECK_FALSE(nilpotent_type_dim_le4(affine2()).has_value());
}
