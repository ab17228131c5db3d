#pragma once

// Lie algebras over Q presented by structure constants on a finite basis.
// Brackets are stored for i < j only; antisymmetry and bilinearity are
// structural. Validation checks the Jacobi identity on all basis triples.

#include "rk/exactlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rk {

struct JacobiViolation {
  int i, j, k;   // basis indices of the first failing triple
  Vec residual;  // [xi,[xj,xk]] + [xj,[xk,xi]] + [xk,[xi,xj]]
};

struct ValidationReport {
  bool ok = false;
  std::optional<JacobiViolation> violation;
};

struct SeriesReport {
  std::vector<Subspace> derived_series;        // g, [g,g], [[g,g],[g,g]], ...
  std::vector<Subspace> lower_central_series;  // g, [g,g], [g,[g,g]], ...
  Subspace center;
  std::optional<int> nilpotency_class;  // set iff the lcs reaches 0
};

class LieAlgebra {
 public:
  LieAlgebra(std::string name, std::vector<std::string> basis_names);

  // Defines [x_i, x_j] = v for basis indices i < j. Unset pairs are zero.
  void set_bracket(int i, int j, Vec v);

  int dim() const { return static_cast<int>(basis_names_.size()); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  int basis_index(const std::string& name) const;  // -1 if absent

  // [x_i, x_j] for any pair, using antisymmetry.
  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& u, const Vec& v) const;

  ValidationReport validate() const;

  Subspace subspace_bracket(const Subspace& a, const Subspace& b) const;
  Subspace derived_subalgebra() const;  // [g,g]
  Subspace center() const;
  SeriesReport series() const;
  bool is_nilpotent() const;
  bool is_abelian() const;

  // Matrix of x |-> [v,x] in the column convention used by Matrix::apply.
  Matrix ad_matrix(const Vec& v) const;
  Scalar trace_ad(const Vec& v) const;
  bool is_unimodular() const;

  // Maximal nilpotency class (= dim - 1). Throws std::invalid_argument on a
  // non-nilpotent input.
  bool is_filiform() const;

 private:
  int pair_index(int i, int j) const;  // i < j

  std::string name_;
  std::vector<std::string> basis_names_;
  std::vector<Vec> table_;  // index pair_index(i,j), value [x_i,x_j]
};

// An element X with ad(X)^(dim-2) != 0, searched over basis vectors and
// small-integer pairwise combinations. Exhibits maximal nilpotency; the
// class criterion in is_filiform is the decision procedure.
std::optional<Vec> filiform_witness(const LieAlgebra& g);

// Block-diagonal sum. Basis names are kept where globally unique and
// suffixed with "_2", "_3", ... otherwise; the name becomes "g1+g2".
LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2);

LieAlgebra heisenberg(int n);   // h_{2n+1}: [x_i, y_i] = z, i = 1..n
LieAlgebra filiform_f4();       // [x1,x2] = x3, [x1,x3] = x4
LieAlgebra abelian(int n);      // zero bracket; named "R" / "Rn"

// Coordinates of v in the canonical basis of s (throws if v is outside s).
Vec coords_in(const Subspace& s, const Vec& v);

// The Lie algebra structure induced on a bracket-closed subspace, with the
// canonical basis rows of s as its basis. Throws std::invalid_argument if s
// is not closed under the bracket. Jacobi is re-checked.
LieAlgebra materialize_subalgebra(const LieAlgebra& g, const Subspace& s,
                                  const std::string& name,
                                  const std::string& prefix = "u");

// g / ideal realized on the deterministic complement of the ideal, with the
// bracket projected along the ideal. Throws std::invalid_argument if the
// subspace is not an ideal. Jacobi is re-checked.
LieAlgebra materialize_quotient(const LieAlgebra& g, const Subspace& ideal,
                                const std::string& name,
                                const std::string& prefix = "q");

// Isomorphism type of a nilpotent algebra of dimension <= 4, pinned by
// exact invariants (dim, dim [g,g], dim Z): "0", "R", "R2", "R3", "R4",
// "h3", "h3+R", "f4". nullopt if the dimension exceeds 4 or g is not
// nilpotent.
std::optional<std::string> nilpotent_type_dim_le4(const LieAlgebra& g);

}  // namespace rk
