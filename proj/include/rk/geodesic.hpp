#pragma once

// Metric notions on rational Lie algebras: exact inner products, geodesic
// elements, the admissibility test for realizing an element as geodesic
// under some metric, totally geodesic subalgebras, and orthonormal geodesic
// bases. All checks are exact; nothing here approximates.

#include "rk/exactlin.hpp"
#include "rk/liealg.hpp"

#include <optional>
#include <vector>

namespace rk {

// A Lie algebra together with a rational inner product. The Gram matrix is
// validated on construction: symmetric, with every leading principal minor
// positive (Sylvester's criterion, evaluated exactly).
class MetricLieAlgebra {
 public:
  // Throws std::invalid_argument when the Gram matrix is not square of the
  // algebra's dimension, not symmetric, or not positive definite.
  MetricLieAlgebra(LieAlgebra algebra, Matrix gram);

  static MetricLieAlgebra with_identity_gram(LieAlgebra algebra);

  const LieAlgebra& algebra() const { return g_; }
  const Matrix& gram() const { return gram_; }
  int dim() const { return g_.dim(); }

  // <u, w> under the Gram matrix.
  Scalar inner(const Vec& u, const Vec& w) const;

  // { w : <w, s> = 0 for every s in the subspace }. Complementary to the
  // input because the form is definite.
  Subspace orthogonal_complement(const Subspace& s) const;

 private:
  LieAlgebra g_;
  Matrix gram_;
};

// Whether the line through v respects its orthogonal complement: <[v,x],v>
// vanishes for every basis vector x (the component of x along v contributes
// nothing, so testing the whole basis is equivalent to testing a basis of
// the complement). Throws std::invalid_argument on the zero vector.
bool is_geodesic(const MetricLieAlgebra& m, const Vec& v);

// Whether some inner product makes y geodesic: true iff y does not lie in
// the image of x |-> [x, y]. Metric-independent, so it takes the bare
// algebra. Throws std::invalid_argument on the zero vector.
bool geodesic_admissible(const LieAlgebra& g, const Vec& y);

// Whether <[h,v1],v2> + <v1,[h,v2]> = 0 for all v1, v2 in a basis of V and
// h in a basis of the orthogonal complement of V. Throws
// std::invalid_argument unless V is a subalgebra.
bool is_totally_geodesic_subalgebra(const MetricLieAlgebra& m,
                                    const Subspace& V);

// Exact orthonormality of the given vectors plus is_geodesic for each.
// Throws std::invalid_argument unless the vectors form a basis.
bool is_orthonormal_geodesic_basis(const MetricLieAlgebra& m,
                                   const std::vector<Vec>& basis);

// Experimentation helper, NOT an existence decision: scans nonzero integer
// vectors with entries in [-height, height] in lexicographic order and
// returns the first geodesic one, or nullopt when the bounded grid holds
// none. A nullopt therefore proves nothing beyond the grid.
std::optional<Vec> find_geodesic_bounded(const MetricLieAlgebra& m,
                                         int height);

}  // namespace rk
