#include "rk/geodesic.hpp"

#include <stdexcept>
#include <utility>

namespace rk {

namespace {

Matrix leading_minor(const Matrix& m, int k) {
  Matrix out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

}  // namespace

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra, Matrix gram)
    : g_(std::move(algebra)), gram_(std::move(gram)) {
  const int n = g_.dim();
  if (gram_.rows() != n || gram_.cols() != n)
    throw std::invalid_argument("MetricLieAlgebra: gram size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gram_.at(i, j) != gram_.at(j, i))
        throw std::invalid_argument("MetricLieAlgebra: gram not symmetric");
  for (int k = 1; k <= n; ++k)
    if (determinant(leading_minor(gram_, k)) <= 0)
      throw std::invalid_argument(
          "MetricLieAlgebra: gram not positive definite");
}

MetricLieAlgebra MetricLieAlgebra::with_identity_gram(LieAlgebra algebra) {
  const int n = algebra.dim();
  return MetricLieAlgebra(std::move(algebra), Matrix::identity(n));
}

Scalar MetricLieAlgebra::inner(const Vec& u, const Vec& w) const {
  const int n = dim();
  if (static_cast<int>(u.size()) != n || static_cast<int>(w.size()) != n)
    throw std::invalid_argument("inner: dimension mismatch");
  Scalar acc(0);
  for (int i = 0; i < n; ++i) {
    if (u[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j)
      acc += u[static_cast<std::size_t>(i)] * gram_.at(i, j) *
             w[static_cast<std::size_t>(j)];
  }
  return acc;
}

Subspace MetricLieAlgebra::orthogonal_complement(const Subspace& s) const {
  // w is orthogonal to s iff (B G) w = 0 for B the basis-row matrix.
  const Matrix constraints = s.basis() * gram_;
  return kernel(constraints);
}

bool is_geodesic(const MetricLieAlgebra& m, const Vec& v) {
  if (is_zero_vec(v)) throw std::invalid_argument("is_geodesic: zero vector");
  const LieAlgebra& g = m.algebra();
  for (int i = 0; i < g.dim(); ++i)
    if (m.inner(g.bracket(v, unit_vec(g.dim(), i)), v) != 0) return false;
  return true;
}

bool geodesic_admissible(const LieAlgebra& g, const Vec& y) {
  if (is_zero_vec(y))
    throw std::invalid_argument("geodesic_admissible: zero vector");
  const int n = g.dim();
  std::vector<Vec> image_rows;
  image_rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image_rows.push_back(g.bracket(unit_vec(n, i), y));
  const Subspace image = Subspace::span(image_rows, n);
  return !image.contains(y);
}

bool is_totally_geodesic_subalgebra(const MetricLieAlgebra& m,
                                    const Subspace& V) {
  const LieAlgebra& g = m.algebra();
  if (V.ambient() != g.dim())
    throw std::invalid_argument(
        "is_totally_geodesic_subalgebra: ambient mismatch");
  for (const Vec& a : V.basis_rows())
    for (const Vec& b : V.basis_rows())
      if (!V.contains(g.bracket(a, b)))
        throw std::invalid_argument(
            "is_totally_geodesic_subalgebra: V is not a subalgebra");
  const Subspace perp = m.orthogonal_complement(V);
  for (const Vec& h : perp.basis_rows())
    for (const Vec& v1 : V.basis_rows())
      for (const Vec& v2 : V.basis_rows())
        if (m.inner(g.bracket(h, v1), v2) + m.inner(v1, g.bracket(h, v2)) != 0)
          return false;
  return true;
}

bool is_orthonormal_geodesic_basis(const MetricLieAlgebra& m,
                                   const std::vector<Vec>& basis) {
  const int n = m.dim();
  if (static_cast<int>(basis.size()) != n ||
      Subspace::span(basis, n).dim() != n)
    throw std::invalid_argument(
        "is_orthonormal_geodesic_basis: not a basis of the algebra");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Scalar want = i == j ? Scalar(1) : Scalar(0);
      if (m.inner(basis[static_cast<std::size_t>(i)],
                  basis[static_cast<std::size_t>(j)]) != want)
        return false;
    }
  for (const Vec& b : basis)
    if (!is_geodesic(m, b)) return false;
  return true;
}

std::optional<Vec> find_geodesic_bounded(const MetricLieAlgebra& m,
                                         int height) {
  if (height < 1)
    throw std::invalid_argument("find_geodesic_bounded: height must be >= 1");
  const int n = m.dim();
  const int base = 2 * height + 1;
  Vec v(static_cast<std::size_t>(n));
  // Odometer over entries -height..height, least-significant coordinate last.
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] =
          make_scalar(digits[static_cast<std::size_t>(i)] - height);
    if (!is_zero_vec(v) && is_geodesic(m, v)) return v;
    int pos = n - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == base - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return std::nullopt;
    ++digits[static_cast<std::size_t>(pos)];
  }
}

}  // namespace rk
