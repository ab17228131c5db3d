#include "rk/decomp.hpp"

#include <stdexcept>
#include <utility>

namespace rk {

namespace {

// Linear combination of rows with the given coefficients.
Vec combine(const std::vector<Vec>& rows, const Vec& coeffs, int ambient) {
  Vec x(static_cast<size_t>(ambient), Scalar(0));
  for (size_t i = 0; i < rows.size(); ++i) axpy(x, coeffs[i], rows[i]);
  return x;
}

// Carries a subspace expressed in coordinates w.r.t. `s`'s canonical basis
// back to ambient coordinates.
Subspace lift(const Subspace& s, const Subspace& in_coords) {
  std::vector<Vec> gens;
  const auto rows = s.basis_rows();
  for (const Vec& c : in_coords.basis_rows())
    gens.push_back(combine(rows, c, s.ambient()));
  return Subspace::span(gens, s.ambient());
}

}  // namespace

Decomposition::Decomposition(const LieAlgebra& g, Subspace H, Subspace V)
    : g_(&g), H_(std::move(H)), V_(std::move(V)) {
  const int n = g.dim();
  if (H_.ambient() != n || V_.ambient() != n)
    throw std::invalid_argument("decomposition: ambient dimension mismatch");
  if (H_.intersect(V_).dim() != 0 || H_.dim() + V_.dim() != n)
    throw std::invalid_argument("decomposition: H and V do not split g");

  // Columns of m are the H basis vectors followed by the V basis vectors;
  // conjugating the coordinate projector by m gives the projector onto H.
  Matrix m(n, n);
  const auto hb = H_.basis_rows();
  const auto vb = V_.basis_rows();
  for (int i = 0; i < static_cast<int>(hb.size()); ++i)
    for (int k = 0; k < n; ++k) m.at(k, i) = hb[i][k];
  for (int i = 0; i < static_cast<int>(vb.size()); ++i)
    for (int k = 0; k < n; ++k) m.at(k, static_cast<int>(hb.size()) + i) = vb[i][k];
  Matrix onto_h(n, n);
  for (int i = 0; i < static_cast<int>(hb.size()); ++i) onto_h.at(i, i) = 1;
  proj_H_ = m * onto_h * *inverse(m);
  proj_V_ = Matrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      proj_V_.at(r, c) = (r == c ? Scalar(1) : Scalar(0)) - proj_H_.at(r, c);
}

Vec Decomposition::project_H(const Vec& x) const { return proj_H_.apply(x); }
Vec Decomposition::project_V(const Vec& x) const { return proj_V_.apply(x); }

DecompAnalysis analyze(const Decomposition& d) {
  const LieAlgebra& g = d.algebra();
  const int n = g.dim();
  const std::vector<Vec> hb = d.H().basis_rows();
  const std::vector<Vec> vb = d.V().basis_rows();

  DecompAnalysis a;
  const Subspace bvh = g.subspace_bracket(d.V(), d.H());
  a.respects = d.H().contains(bvh);
  a.h_is_subalgebra = d.H().contains(g.subspace_bracket(d.H(), d.H()));
  a.v_is_subalgebra = d.V().contains(g.subspace_bracket(d.V(), d.V()));
  a.open_flag = a.respects && !a.h_is_subalgebra && !a.v_is_subalgebra;
  a.mutual = a.respects && d.V().contains(bvh);

  std::vector<Vec> hv_gens;
  for (size_t i = 0; i < vb.size(); ++i)
    for (size_t j = i + 1; j < vb.size(); ++j)
      hv_gens.push_back(d.project_H(g.bracket(vb[i], vb[j])));
  a.H_V = Subspace::span(hv_gens, n);

  std::vector<Vec> vh_gens;
  for (size_t i = 0; i < hb.size(); ++i)
    for (size_t j = i + 1; j < hb.size(); ++j)
      vh_gens.push_back(d.project_V(g.bracket(hb[i], hb[j])));
  a.V_H = Subspace::span(vh_gens, n);

  // K_H: coefficient vectors c with sum_i c_i pi_V[hb[i], hb[j]] = 0 for
  // every j, lifted back to ambient coordinates.
  const int m = static_cast<int>(hb.size());
  std::vector<Vec> constraints;
  for (int j = 0; j < m; ++j) {
    std::vector<Vec> cols;
    cols.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      cols.push_back(d.project_V(g.bracket(hb[i], hb[j])));
    for (int k = 0; k < n; ++k) {
      Vec row(static_cast<size_t>(m));
      for (int i = 0; i < m; ++i) row[static_cast<size_t>(i)] = cols[i][k];
      constraints.push_back(std::move(row));
    }
  }
  std::vector<Vec> k_gens;
  for (const Vec& c : kernel(Matrix::from_rows(constraints, m)).basis_rows())
    k_gens.push_back(combine(hb, c, n));
  a.K_H = Subspace::span(k_gens, n);

  a.Vbar = d.V().sum(a.H_V);
  a.Hbar = d.H().sum(a.V_H);

  std::vector<std::string> names;
  for (size_t i = 0; i < vb.size(); ++i)
    names.push_back("v" + std::to_string(i + 1));
  LieAlgebra induced(g.name() + ":V", std::move(names));
  for (size_t i = 0; i < vb.size(); ++i)
    for (size_t j = i + 1; j < vb.size(); ++j)
      induced.set_bracket(
          static_cast<int>(i), static_cast<int>(j),
          coords_in(d.V(), d.project_V(g.bracket(vb[i], vb[j]))));
  a.induced_V_abelian = induced.is_abelian();
  a.induced_V = std::move(induced);
  return a;
}

LjiReport check_lji(const Decomposition& d) {
  const DecompAnalysis a = analyze(d);
  if (!a.respects)
    throw std::invalid_argument("check_lji: V does not respect H");
  const LieAlgebra& g = d.algebra();
  const int n = g.dim();

  LjiReport r;
  auto add = [&r](char label, const char* statement, bool applicable,
                  bool holds) {
    r.clauses.push_back({label, statement, applicable, holds});
    if (applicable && !holds) r.all_hold = false;
  };

  add('a', "K_H is closed under the bracket", true,
      a.K_H.contains(g.subspace_bracket(a.K_H, a.K_H)));
  add('b', "[V, K_H] is contained in K_H", true,
      a.K_H.contains(g.subspace_bracket(d.V(), a.K_H)));
  add('c', "H_V is contained in K_H", true, a.K_H.contains(a.H_V));

  std::vector<Vec> vh_coords;
  for (const Vec& row : a.V_H.basis_rows())
    vh_coords.push_back(coords_in(d.V(), row));
  const Subspace vh_ind = Subspace::span(vh_coords, d.V().dim());
  add('d', "V_H is an ideal of the induced algebra", true,
      vh_ind.contains(a.induced_V.subspace_bracket(
          Subspace::full(d.V().dim()), vh_ind)));
  add('e', "H + V_H is an ideal of g", true,
      a.Hbar.contains(g.subspace_bracket(Subspace::full(n), a.Hbar)));
  add('f', "open forces dim H >= 3", a.open_flag,
      !a.open_flag || d.H().dim() >= 3);
  const bool g_applies = a.open_flag && d.H().dim() == 3;
  add('g', "open with dim H = 3 forces H_V = K_H of dimension 1", g_applies,
      !g_applies || (a.H_V == a.K_H && a.H_V.dim() == 1));
  return r;
}

std::vector<Vec> adapted_basis(const Decomposition& d) {
  const LieAlgebra& g = d.algebra();
  const DecompAnalysis a = analyze(d);
  if (!a.open_flag || d.H().dim() != 3 || !g.is_nilpotent())
    throw std::invalid_argument(
        "adapted_basis: needs an open respectful decomposition of a "
        "nilpotent algebra with dim H = 3");
  if (a.H_V.dim() != 1)
    throw std::logic_error("adapted_basis: H_V is not a line");

  const int n = g.dim();
  const Vec h3 = a.H_V.basis_rows().front();
  const Vec h3c = coords_in(d.H(), h3);
  const Subspace h3_line = Subspace::span({h3c}, 3);
  const Matrix quot = h3_line.quotient_map();
  const auto hb = d.H().basis_rows();

  // Joint kernel of the maps h |-> pi_H[z,h] mod span(h3), over z in Vbar,
  // in the coordinates of H's canonical basis.
  std::vector<Vec> rows;
  for (const Vec& z : a.Vbar.basis_rows()) {
    std::vector<Vec> cols;
    for (int i = 0; i < 3; ++i)
      cols.push_back(
          quot.apply(coords_in(d.H(), d.project_H(g.bracket(z, hb[i])))));
    for (int k = 0; k < quot.rows(); ++k) {
      Vec row(3);
      for (int i = 0; i < 3; ++i) row[static_cast<size_t>(i)] = cols[i][k];
      rows.push_back(std::move(row));
    }
  }
  const Subspace joint = kernel(Matrix::from_rows(rows, 3));

  Vec h2c;
  for (const Vec& c : joint.basis_rows())
    if (!h3_line.contains(c)) {
      h2c = c;
      break;
    }
  if (h2c.empty())
    throw std::logic_error("adapted_basis: no flag vector found");
  const Vec h1c =
      complement(Subspace::span({h2c, h3c}, 3), Subspace::full(3))
          .basis_rows()
          .front();

  Vec h1 = combine(hb, h1c, n);
  Vec h2 = combine(hb, h2c, n);
  if (!is_zero_vec(g.bracket(h2, h3)))
    throw std::logic_error("adapted_basis: [h2,h3] fails to vanish");
  if (is_zero_vec(d.project_V(g.bracket(h1, h2))))
    throw std::logic_error("adapted_basis: pi_V[h1,h2] vanishes");
  const Subspace tail = Subspace::span({h2, h3}, n);
  for (const Vec& z : a.Vbar.basis_rows()) {
    if (!tail.contains(d.project_H(g.bracket(z, h1))) ||
        !a.H_V.contains(d.project_H(g.bracket(z, h2))))
      throw std::logic_error("adapted_basis: action is not triangular");
  }
  return {std::move(h1), std::move(h2), h3};
}

StructuralReport structural_conditions_dim6(const Decomposition& d) {
  const LieAlgebra& g = d.algebra();
  const DecompAnalysis a = analyze(d);
  if (g.dim() != 6 || d.H().dim() != 3 || !a.open_flag || !g.is_nilpotent())
    throw std::invalid_argument(
        "structural_conditions_dim6: needs an open respectful decomposition "
        "with dim H = 3 of a nilpotent algebra of dimension 6");

  StructuralReport r;
  r.adapted = adapted_basis(d);
  const Vec& h2 = r.adapted[1];
  const Vec& h3 = r.adapted[2];
  r.v3 = d.project_V(g.bracket(r.adapted[0], h2));
  const int n = g.dim();

  auto add = [&r](std::string label, bool holds) {
    r.conditions.push_back({std::move(label), holds});
  };

  add("V commutes with H_V", g.subspace_bracket(d.V(), a.H_V).dim() == 0);

  const bool vbar_closed = a.Vbar.contains(g.subspace_bracket(a.Vbar, a.Vbar));
  if (vbar_closed)
    r.vbar_type = nilpotent_type_dim_le4(
        materialize_subalgebra(g, a.Vbar, g.name() + ":Vbar"));
  add("V + H_V is a subalgebra of type h3+R",
      vbar_closed && r.vbar_type && *r.vbar_type == "h3+R");

  add("V_H lies in the center of V + H_V",
      a.Vbar.contains(a.V_H) &&
          g.subspace_bracket(a.V_H, a.Vbar).dim() == 0);

  const Subspace z = g.center();
  const Subspace span_h3_v3 = Subspace::span({h3, r.v3}, n);
  add("the center of g lies in span(h3, v3)", span_h3_v3.contains(z));

  const bool hbar_closed = a.Hbar.contains(g.subspace_bracket(a.Hbar, a.Hbar));
  bool hbar_center_matches = false;
  if (hbar_closed) {
    const LieAlgebra hbar =
        materialize_subalgebra(g, a.Hbar, g.name() + ":Hbar");
    r.hbar_type = nilpotent_type_dim_le4(hbar);
    hbar_center_matches = (lift(a.Hbar, hbar.center()) == z);
  }
  add("the center of H + V_H equals the center of g",
      hbar_closed && hbar_center_matches);

  const Subspace der = g.derived_subalgebra();
  add("[g,g] lies in span(h2, h3, v3)",
      Subspace::span({h2, h3, r.v3}, n).contains(der) && der.dim() <= 3);

  add("an abelian induced algebra forces h3 central",
      !a.induced_V_abelian || z.contains(h3));

  r.induced_type = nilpotent_type_dim_le4(a.induced_V);
  const bool hbar_split = r.hbar_type && *r.hbar_type == "h3+R";
  const bool center_two = z.dim() == 2;
  const bool center_is_span = (z == span_h3_v3);
  add("Hbar type h3+R, center dimension 2, and center = span(h3,v3) agree",
      hbar_split == center_two && center_two == center_is_span);

  add("v3 is nonzero", !is_zero_vec(r.v3));

  r.all_hold = true;
  for (const auto& c : r.conditions) r.all_hold = r.all_hold && c.holds;
  return r;
}

std::vector<std::string> invariant_violations(const Decomposition& d,
                                              const DecompAnalysis& a) {
  std::vector<std::string> out;
  if (!a.respects) return out;
  const LieAlgebra& g = d.algebra();
  if (!a.induced_V.validate().ok)
    out.push_back("induced bracket on V fails the Jacobi identity");
  const bool nil = g.is_nilpotent();
  if (nil && !a.induced_V.series().nilpotency_class.has_value())
    out.push_back("induced algebra of a nilpotent algebra is not nilpotent");
  if (a.open_flag && d.H().dim() < 3)
    out.push_back("open decomposition with dim H < 3");
  if (a.open_flag && d.V().dim() < 2)
    out.push_back("open decomposition with dim V < 2");
  if (a.open_flag && nil && d.V().dim() == 2 &&
      g.derived_subalgebra().dim() < 2)
    out.push_back(
        "open decomposition with dim V = 2 on a nilpotent algebra whose "
        "derived algebra has dimension < 2");
  if (a.open_flag && g.dim() == 5 && g.is_unimodular()) {
    const int dd = g.derived_subalgebra().dim();
    if (dd != 3 && dd != 4)
      out.push_back(
          "open decomposition on a 5-dimensional unimodular algebra whose "
          "derived algebra has dimension outside {3,4}");
  }
  if (a.v_is_subalgebra && nil && g.is_filiform() &&
      d.V().dim() > g.dim() / 2)
    out.push_back(
        "V a subalgebra of a filiform algebra with dim V > floor(dim g/2)");
  return out;
}

}  // namespace rk
