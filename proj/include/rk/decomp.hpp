#pragma once

// Direct-sum decompositions g = H (+) V and the structure they induce:
// whether V respects H (that is, [V,H] is contained in H), the subspaces
// H_V, V_H and K_H built from projected brackets, the algebra V inherits
// through pi_V, clause-by-clause closure reports, and the adapted bases
// that drive the dimension-six analysis.

#include "rk/exactlin.hpp"
#include "rk/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rk {

class Decomposition {
 public:
  // Requires H (+) V = g; throws std::invalid_argument when the subspaces
  // overlap, live in the wrong ambient space, or fail to span.
  Decomposition(const LieAlgebra& g, Subspace H, Subspace V);

  const LieAlgebra& algebra() const { return *g_; }
  const Subspace& H() const { return H_; }
  const Subspace& V() const { return V_; }

  // x = project_H(x) + project_V(x), splitting along the decomposition.
  Vec project_H(const Vec& x) const;
  Vec project_V(const Vec& x) const;

 private:
  const LieAlgebra* g_;
  Subspace H_, V_;
  Matrix proj_H_, proj_V_;
};

struct DecompAnalysis {
  bool respects = false;  // [V,H] subset of H
  bool h_is_subalgebra = false;
  bool v_is_subalgebra = false;
  bool open_flag = false;  // respects, and neither H nor V is a subalgebra
  bool mutual = false;     // respects in both orders (forces [H,V] = 0)
  Subspace H_V;   // span of pi_H[v,v'] over v, v' in V
  Subspace V_H;   // span of pi_V[h,h'] over h, h' in H
  Subspace K_H;   // {h in H : pi_V[h,h'] = 0 for every h' in H}
  Subspace Vbar;  // V + H_V
  Subspace Hbar;  // H + V_H
  // V with the bracket pi_V[.,.], on the canonical basis rows of V. Always
  // well-defined as a skew table; satisfies Jacobi whenever V respects H.
  LieAlgebra induced_V = LieAlgebra("V", {});
  bool induced_V_abelian = false;
};

// Exact, deterministic, and a pure function of the decomposition.
DecompAnalysis analyze(const Decomposition& d);

struct LjiClause {
  char label = '?';  // 'a' through 'g'
  std::string statement;
  bool applicable = true;  // the last two clauses bind open decompositions
  bool holds = true;
};

struct LjiReport {
  std::vector<LjiClause> clauses;
  bool all_hold = true;  // over the applicable clauses
};

// Clause-by-clause closure report for a respectful decomposition:
//   (a) [K_H, K_H] is contained in K_H,
//   (b) [V, K_H] is contained in K_H,
//   (c) H_V is contained in K_H,
//   (d) V_H is an ideal of the induced algebra on V,
//   (e) H + V_H is an ideal of g,
//   (f) open forces dim H >= 3,
//   (g) open with dim H = 3 forces H_V = K_H and dim H_V = 1.
// Throws std::invalid_argument unless V respects H.
LjiReport check_lji(const Decomposition& d);

// For an open respectful decomposition of a nilpotent algebra with
// dim H = 3: an ordered basis (h1, h2, h3) of H such that h3 spans H_V,
// every z in V + H_V has pi_H[z,h1] in span(h2,h3) and pi_H[z,h2] in
// span(h3), [h2,h3] = 0, and pi_V[h1,h2] != 0. Built from the joint
// kernel of the projected actions, ties broken by canonical basis order.
// Throws std::invalid_argument when the preconditions fail and
// std::logic_error if the flag construction fails on the instance.
std::vector<Vec> adapted_basis(const Decomposition& d);

struct StructuralCondition {
  std::string label;
  bool holds = false;
};

struct StructuralReport {
  std::vector<StructuralCondition> conditions;
  bool all_hold = false;
  std::vector<Vec> adapted;  // (h1, h2, h3) as returned by adapted_basis
  Vec v3;                    // pi_V[h1, h2]
  std::optional<std::string> hbar_type;     // type of H + V_H when closed
  std::optional<std::string> vbar_type;     // type of V + H_V when closed
  std::optional<std::string> induced_type;  // type of the induced algebra
};

// The dimension-six consequences, asserted on a concrete open respectful
// decomposition with dim H = 3 of a nilpotent algebra of dimension 6.
// Throws std::invalid_argument when those preconditions fail.
StructuralReport structural_conditions_dim6(const Decomposition& d);

// Tripwire shared by the search engine and the tests: properties that any
// decomposition this library reports must satisfy. Returns a description
// of each violated property; empty means all hold.
std::vector<std::string> invariant_violations(const Decomposition& d,
                                              const DecompAnalysis& a);

}  // namespace rk
