#include "rk/liealg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rk {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_names)
    : name_(std::move(name)), basis_names_(std::move(basis_names)) {
  std::set<std::string> seen(basis_names_.begin(), basis_names_.end());
  if (seen.size() != basis_names_.size())
    throw std::invalid_argument("LieAlgebra: duplicate basis names");
  const int n = dim();
  table_.assign(static_cast<size_t>(n) * (n - 1) / 2, Vec(n, Scalar(0)));
}

int LieAlgebra::pair_index(int i, int j) const {
  const int n = dim();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

void LieAlgebra::set_bracket(int i, int j, Vec v) {
  if (i < 0 || j >= dim() || i >= j)
    throw std::invalid_argument("set_bracket: need 0 <= i < j < dim");
  if (static_cast<int>(v.size()) != dim())
    throw std::invalid_argument("set_bracket: wrong vector size");
  table_[pair_index(i, j)] = std::move(v);
}

int LieAlgebra::basis_index(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_names_[i] == name) return i;
  return -1;
}

Vec LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return Vec(dim(), Scalar(0));
  if (i < j) return table_[pair_index(i, j)];
  Vec v = table_[pair_index(j, i)];
  for (auto& x : v) x = -x;
  return v;
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
  const int n = dim();
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    throw std::invalid_argument("bracket: dimension mismatch");
  Vec out(n, Scalar(0));
  for (int i = 0; i < n; ++i) {
    if (u[i] == 0 && v[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      Scalar coef = u[i] * v[j] - u[j] * v[i];
      if (coef == 0) continue;
      const Vec& c = table_[pair_index(i, j)];
      for (int k = 0; k < n; ++k)
        if (c[k] != 0) out[k] += coef * c[k];
    }
  }
  return out;
}

ValidationReport LieAlgebra::validate() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec r = bracket(unit_vec(n, i), bracket_basis(j, k));
        axpy(r, Scalar(1), bracket(unit_vec(n, j), bracket_basis(k, i)));
        axpy(r, Scalar(1), bracket(unit_vec(n, k), bracket_basis(i, j)));
        if (!is_zero_vec(r)) return {false, JacobiViolation{i, j, k, r}};
      }
  return {true, std::nullopt};
}

Subspace LieAlgebra::subspace_bracket(const Subspace& a, const Subspace& b) const {
  std::vector<Vec> gens;
  for (const auto& u : a.basis_rows())
    for (const auto& v : b.basis_rows()) gens.push_back(bracket(u, v));
  return Subspace::span(gens, dim());
}

Subspace LieAlgebra::derived_subalgebra() const {
  Subspace full = Subspace::full(dim());
  return subspace_bracket(full, full);
}

Subspace LieAlgebra::center() const {
  const int n = dim();
  // stack the maps x |-> [x, e_j] = -ad(e_j) x over all j
  Matrix stacked(n * n, n);
  for (int j = 0; j < n; ++j) {
    Matrix adj = ad_matrix(unit_vec(n, j));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) stacked.at(j * n + r, c) = -adj.at(r, c);
  }
  return kernel(stacked);
}

SeriesReport LieAlgebra::series() const {
  SeriesReport rep;
  Subspace full = Subspace::full(dim());

  rep.derived_series.push_back(full);
  while (true) {
    const Subspace& cur = rep.derived_series.back();
    Subspace next = subspace_bracket(cur, cur);
    if (next == cur) break;
    rep.derived_series.push_back(next);
  }

  rep.lower_central_series.push_back(full);
  while (true) {
    const Subspace& cur = rep.lower_central_series.back();
    Subspace next = subspace_bracket(full, cur);
    if (next == cur) break;
    rep.lower_central_series.push_back(next);
  }

  rep.center = center();
  if (rep.lower_central_series.back().dim() == 0)
    rep.nilpotency_class =
        static_cast<int>(rep.lower_central_series.size()) - 1;
  return rep;
}

bool LieAlgebra::is_nilpotent() const {
  Subspace full = Subspace::full(dim());
  Subspace cur = full;
  while (true) {
    Subspace next = subspace_bracket(full, cur);
    if (next == cur) return cur.dim() == 0;
    cur = next;
  }
}

bool LieAlgebra::is_abelian() const { return derived_subalgebra().dim() == 0; }

Matrix LieAlgebra::ad_matrix(const Vec& v) const {
  const int n = dim();
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    Vec col = bracket(v, unit_vec(n, j));
    for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Scalar LieAlgebra::trace_ad(const Vec& v) const {
  Matrix m = ad_matrix(v);
  Scalar t = 0;
  for (int i = 0; i < dim(); ++i) t += m.at(i, i);
  return t;
}

bool LieAlgebra::is_unimodular() const {
  for (int i = 0; i < dim(); ++i)
    if (trace_ad(unit_vec(dim(), i)) != 0) return false;
  return true;
}

bool LieAlgebra::is_filiform() const {
  SeriesReport rep = series();
  if (!rep.nilpotency_class)
    throw std::invalid_argument("is_filiform: algebra is not nilpotent");
  return *rep.nilpotency_class == dim() - 1;
}

std::optional<Vec> filiform_witness(const LieAlgebra& g) {
  const int n = g.dim();
  if (n < 2) return std::nullopt;
  auto has_max_power = [&](const Vec& x) {
    Matrix ad = g.ad_matrix(x);
    Matrix p = Matrix::identity(n);
    for (int k = 0; k < n - 2; ++k) p = ad * p;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.at(i, j) != 0) return true;
    return false;
  };
  for (int i = 0; i < n; ++i) {
    Vec x = unit_vec(n, i);
    if (has_max_power(x)) return x;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (long c : {1, -1, 2, -2}) {
        Vec x = unit_vec(n, i);
        axpy(x, Scalar(c), unit_vec(n, j));
        if (has_max_power(x)) return x;
      }
    }
  return std::nullopt;
}

namespace {

// Keeps globally unique names; renames any later duplicate with _2, _3, ...
std::vector<std::string> dedupe_names(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set<std::string> used;
  auto push = [&](const std::string& name) {
    std::string candidate = name;
    int suffix = 2;
    while (used.count(candidate))
      candidate = name + "_" + std::to_string(suffix++);
    used.insert(candidate);
    out.push_back(candidate);
  };
  for (const auto& s : a) push(s);
  for (const auto& s : b) push(s);
  return out;
}

}  // namespace

LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2) {
  const int n1 = g1.dim(), n2 = g2.dim(), n = n1 + n2;
  LieAlgebra g(g1.name() + "+" + g2.name(),
               dedupe_names(g1.basis_names(), g2.basis_names()));
  for (int i = 0; i < n1; ++i)
    for (int j = i + 1; j < n1; ++j) {
      Vec c = g1.bracket_basis(i, j);
      Vec v(n, Scalar(0));
      for (int k = 0; k < n1; ++k) v[k] = c[k];
      g.set_bracket(i, j, std::move(v));
    }
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j) {
      Vec c = g2.bracket_basis(i, j);
      Vec v(n, Scalar(0));
      for (int k = 0; k < n2; ++k) v[n1 + k] = c[k];
      g.set_bracket(n1 + i, n1 + j, std::move(v));
    }
  return g;
}

LieAlgebra heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("heisenberg: need n >= 1");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  names.push_back("z");
  LieAlgebra g("h" + std::to_string(2 * n + 1), names);
  for (int i = 0; i < n; ++i) g.set_bracket(i, n + i, unit_vec(2 * n + 1, 2 * n));
  return g;
}

LieAlgebra filiform_f4() {
  LieAlgebra g("f4", {"x1", "x2", "x3", "x4"});
  g.set_bracket(0, 1, unit_vec(4, 2));
  g.set_bracket(0, 2, unit_vec(4, 3));
  return g;
}

LieAlgebra abelian(int n) {
  if (n < 0) throw std::invalid_argument("abelian: negative dimension");
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return LieAlgebra(n == 1 ? "R" : "R" + std::to_string(n), names);
}

Vec coords_in(const Subspace& s, const Vec& v) {
  if (!s.contains(v)) throw std::invalid_argument("coords_in: vector outside subspace");
  Vec c(s.dim());
  for (int r = 0; r < s.dim(); ++r) c[r] = v[s.pivots()[r]];
  return c;
}

LieAlgebra materialize_subalgebra(const LieAlgebra& g, const Subspace& s,
                                  const std::string& name,
                                  const std::string& prefix) {
  const int k = s.dim();
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
  LieAlgebra out(name, names);
  auto rows = s.basis_rows();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Vec b = g.bracket(rows[i], rows[j]);
      if (!s.contains(b))
        throw std::invalid_argument(
            "materialize_subalgebra: subspace is not closed under the bracket");
      out.set_bracket(i, j, coords_in(s, b));
    }
  if (!out.validate().ok)
    throw std::logic_error("materialize_subalgebra: induced table fails Jacobi");
  return out;
}

LieAlgebra materialize_quotient(const LieAlgebra& g, const Subspace& ideal,
                                const std::string& name,
                                const std::string& prefix) {
  if (!ideal.contains(g.subspace_bracket(Subspace::full(g.dim()), ideal)))
    throw std::invalid_argument("materialize_quotient: subspace is not an ideal");
  Subspace comp = complement(ideal, Subspace::full(g.dim()));
  const int k = comp.dim();
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
  LieAlgebra out(name, names);

  // write x = (ideal part) + sum c_i comp_i by inverting the stacked basis
  std::vector<Vec> rows = ideal.basis_rows();
  for (const auto& r : comp.basis_rows()) rows.push_back(r);
  Matrix p = Matrix::from_rows(rows, g.dim());
  auto pinv = inverse(p);
  if (!pinv) throw std::logic_error("materialize_quotient: basis not complementary");
  Matrix coord_map = pinv->transposed();  // x -> coefficient vector over rows

  auto comp_rows = comp.basis_rows();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Vec coeffs = coord_map.apply(g.bracket(comp_rows[i], comp_rows[j]));
      Vec c(k);
      for (int t = 0; t < k; ++t) c[t] = coeffs[ideal.dim() + t];
      out.set_bracket(i, j, std::move(c));
    }
  if (!out.validate().ok)
    throw std::logic_error("materialize_quotient: induced table fails Jacobi");
  return out;
}

std::optional<std::string> nilpotent_type_dim_le4(const LieAlgebra& g) {
  if (g.dim() > 4 || !g.is_nilpotent()) return std::nullopt;
  const int n = g.dim();
  const int d = g.derived_subalgebra().dim();
  if (n == 0) return "0";
  if (d == 0) return n == 1 ? "R" : "R" + std::to_string(n);
  if (n == 3) return "h3";
  // dim 4, non-Abelian nilpotent: derived dimension separates the two types
  // (centers have dimension 2 and 1 respectively, re-checked here).
  const int z = g.center().dim();
  if (d == 1) {
    if (z != 2) throw std::logic_error("nilpotent_type_dim_le4: invariant mismatch");
    return "h3+R";
  }
  if (d == 2) {
    if (z != 1) throw std::logic_error("nilpotent_type_dim_le4: invariant mismatch");
    return "f4";
  }
  throw std::logic_error("nilpotent_type_dim_le4: impossible derived dimension");
}

}  // namespace rk
