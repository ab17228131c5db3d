#include "rk/existence.hpp"

#include "rk/screen.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rk {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::EXISTS: return "EXISTS";
    case VerdictStatus::NOT_EXISTS: return "NOT_EXISTS";
    case VerdictStatus::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::DERIVED_DIM_LE_1: return "DERIVED_DIM_LE_1";
    case CertificateKind::CODIM1_ABELIAN_IDEAL: return "CODIM1_ABELIAN_IDEAL";
    case CertificateKind::PENCIL_ALL_RADICALS_ABELIAN:
      return "PENCIL_ALL_RADICALS_ABELIAN";
    case CertificateKind::TMAIN_CONDITION_FAIL: return "TMAIN_CONDITION_FAIL";
  }
  return "?";
}

unsigned long long search_seed(const std::optional<unsigned long long>& s) {
  if (s) return *s;
  if (const char* env = std::getenv("RESPECT_KIT_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 987654321ULL;
}

// ---------------------------------------------------------------------------
// dim V = 2 conditions

V2Conditions v2_conditions(const LieAlgebra& g, const Subspace& V) {
  if (!g.is_nilpotent())
    throw std::invalid_argument("v2_conditions: algebra must be nilpotent");
  if (V.ambient() != g.dim() || V.dim() != 2)
    throw std::invalid_argument("v2_conditions: V must be 2-dimensional");
  V2Conditions c;
  c.c1 = g.subspace_bracket(V, V).dim() > 0;
  Subspace vg = g.subspace_bracket(V, Subspace::full(g.dim()));
  c.c2 = V.intersect(vg).dim() == 0;
  c.c3 = !(vg == g.derived_subalgebra());
  return c;
}

Subspace construct_H_from_V(const LieAlgebra& g, const Subspace& V) {
  if (!v2_conditions(g, V).all())
    throw std::invalid_argument("construct_H_from_V: the three conditions must hold");
  const int n = g.dim();
  Subspace der = g.derived_subalgebra();
  Subspace vg = g.subspace_bracket(V, Subspace::full(n));

  std::vector<Vec> base = vg.basis_rows();
  std::vector<Vec> extra;
  Subspace h = vg;
  for (int i = 0; i < n && h.dim() < n - 2; ++i) {
    Vec e = unit_vec(n, i);
    if (h.contains(e)) continue;
    Subspace h2 = h.sum(Subspace::span({e}, n));
    if (h2.intersect(V).dim() == 0) {
      h = h2;
      extra.push_back(e);
    }
  }
  if (h.dim() != n - 2)
    throw std::logic_error("construct_H_from_V: completion failed");

  if (h.contains(der)) {
    auto rebuild = [&](const std::vector<Vec>& ex) {
      std::vector<Vec> gens = base;
      gens.insert(gens.end(), ex.begin(), ex.end());
      return Subspace::span(gens, n);
    };
    bool repaired = false;
    for (int ri = static_cast<int>(extra.size()) - 1; ri >= 0 && !repaired; --ri) {
      for (int wi = 0; wi < n && !repaired; ++wi) {
        for (int cnum : {1, -1, 2, -2}) {
          std::vector<Vec> ex = extra;
          ex[static_cast<std::size_t>(ri)] =
              add(extra[static_cast<std::size_t>(ri)],
                  scaled(unit_vec(n, wi), make_scalar(cnum)));
          Subspace h2 = rebuild(ex);
          if (h2.dim() == n - 2 && h2.intersect(V).dim() == 0 &&
              !h2.contains(der)) {
            h = h2;
            repaired = true;
            break;
          }
        }
      }
    }
    if (!repaired)
      throw std::logic_error("construct_H_from_V: no valid repair found");
  }

  Decomposition d(g, h, V);
  if (!analyze(d).open_flag)
    throw std::logic_error("construct_H_from_V: result failed re-verification");
  return h;
}

std::optional<Subspace> derna_witness(const LieAlgebra& g) {
  if (!g.is_nilpotent()) return std::nullopt;
  const int n = g.dim();
  Subspace der = g.derived_subalgebra();
  if (g.subspace_bracket(der, der).dim() == 0) return std::nullopt;
  Subspace lcs2 = g.subspace_bracket(Subspace::full(n), der);
  if (der.dim() - lcs2.dim() < 2) return std::nullopt;

  std::vector<Vec> cands;
  const std::vector<Vec> rows = der.basis_rows();
  for (const Vec& r : rows) cands.push_back(r);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      for (int c1 : {1, 2})
        for (int c2 : {1, -1, 2, -2}) {
          if (c1 == 2 && (c2 == 2 || c2 == -2)) continue;  // scaled duplicate
          cands.push_back(add(scaled(rows[i], make_scalar(c1)),
                              scaled(rows[j], make_scalar(c2))));
        }

  for (std::size_t a = 0; a < cands.size(); ++a)
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      Subspace v = Subspace::span({cands[a], cands[b]}, n);
      if (v.dim() != 2) continue;
      if (lcs2.sum(v).dim() != lcs2.dim() + 2) continue;
      if (is_zero_vec(g.bracket(cands[a], cands[b]))) continue;
      if (v2_conditions(g, v).all()) return v;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// codimension-1 abelian ideals

bool hyperplane_is_abelian_ideal(const LieAlgebra& g, const Vec& phi) {
  const int n = g.dim();
  if (static_cast<int>(phi.size()) != n || is_zero_vec(phi)) return false;
  Subspace w = kernel(Matrix::from_rows({phi}, n));
  if (w.dim() != n - 1) return false;
  if (!w.contains(g.derived_subalgebra())) return false;
  return g.subspace_bracket(w, w).dim() == 0;
}

HyperplaneDecision abelian_hyperplane(const LieAlgebra& g) {
  const int n = g.dim();
  Subspace der = g.derived_subalgebra();
  if (der.dim() == n)
    throw std::invalid_argument(
        "abelian_hyperplane: the derived subalgebra is everything");
  const int k = der.dim();

  HyperplaneDecision out;
  Subspace meet = der.annihilator();
  for (int l = 0; l < k; ++l) {
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
      Vec row(static_cast<std::size_t>(n), make_scalar(0));
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const Vec& b = g.bracket_basis(std::min(i, j), std::max(i, j));
        if (is_zero_vec(b)) continue;
        Vec c = coords_in(der, b);
        row[static_cast<std::size_t>(j)] =
            i < j ? c[static_cast<std::size_t>(l)] : -c[static_cast<std::size_t>(l)];
      }
      rows.push_back(std::move(row));
    }
    Matrix form = Matrix::from_rows(rows, n);
    int r = rank(form);
    if (r >= 4) {
      out.rank_witness_psi = unit_vec(k, l);
      out.rank_witness_rank = r;
      return out;
    }
    // rank 2: the form vanishes on ker(phi) iff phi annihilates its radical.
    if (r == 2) meet = meet.intersect(kernel(form).annihilator());
  }
  if (meet.dim() > 0) {
    out.yes = true;
    out.functional = meet.basis_rows().front();
    if (!hyperplane_is_abelian_ideal(g, out.functional))
      throw std::logic_error("abelian_hyperplane: functional failed replay");
    return out;
  }
  out.empty_intersection = true;
  return out;
}

// ---------------------------------------------------------------------------
// dimension-six condition screen

std::optional<char> TmainConditions::first_failure() const {
  if (!a) return 'a';
  if (!b) return 'b';
  if (!c) return 'c';
  if (!d) return 'd';
  return std::nullopt;
}

TmainConditions tmain_conditions(const LieAlgebra& g) {
  if (!g.is_nilpotent() || g.dim() != 6)
    throw std::invalid_argument(
        "tmain_conditions: algebra must be nilpotent of dimension 6");
  TmainConditions t;
  t.a = !abelian_hyperplane(g).yes;
  SeriesReport rep = g.series();
  Subspace z = rep.center;
  Subspace der = g.derived_subalgebra();
  t.b = z.dim() <= 2;
  t.c = der.sum(z).dim() <= 3;
  t.d = true;
  if (z.dim() == 1 && der.dim() == 3) {
    const auto& lcs = rep.lower_central_series;
    t.d = lcs.size() > 3 && lcs[3].dim() > 0;
  }
  return t;
}

// ---------------------------------------------------------------------------
// certificates

bool verify_certificate(const LieAlgebra& g, const Certificate& c,
                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  switch (c.kind) {
    case CertificateKind::DERIVED_DIM_LE_1: {
      int d = g.derived_subalgebra().dim();
      if (d != c.derived_dim) return fail("recorded derived dimension differs");
      if (d > 1) return fail("derived dimension exceeds 1");
      return true;
    }
    case CertificateKind::CODIM1_ABELIAN_IDEAL:
      if (!hyperplane_is_abelian_ideal(g, c.functional))
        return fail("functional does not cut out an abelian hyperplane ideal");
      return true;
    case CertificateKind::PENCIL_ALL_RADICALS_ABELIAN:
      if (!c.pencil) return fail("pencil certificate missing");
      return verify_pencil_certificate(g, *c.pencil, why);
    case CertificateKind::TMAIN_CONDITION_FAIL: {
      if (c.tmain_which < 'a' || c.tmain_which > 'd')
        return fail("unknown condition label");
      TmainConditions t = tmain_conditions(g);
      bool holds = c.tmain_which == 'a'   ? t.a
                   : c.tmain_which == 'b' ? t.b
                   : c.tmain_which == 'c' ? t.c
                                          : t.d;
      if (holds) return fail("the named condition actually holds");
      return true;
    }
  }
  return fail("unknown certificate kind");
}

// ---------------------------------------------------------------------------
// searches

namespace {

using screen::IVec;

Vec to_vec(const IVec& v) {
  Vec out;
  out.reserve(v.size());
  for (long long x : v) out.push_back(make_scalar(x));
  return out;
}

bool ivec_zero(const IVec& v) {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

IVec int_unit(int n, int i) {
  IVec e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

// Candidate verdict from 64-bit screening: nullopt = screening unavailable
// (overflow or no integer model), otherwise promising / rejected.
struct SearchState {
  const LieAlgebra& g;
  const SearchOptions& options;
  int dim_h, dim_v;
  std::optional<screen::IntModel> model;
  long trials = 0;
  std::optional<Decomposition> found;

  SearchState(const LieAlgebra& alg, int dh, int dv, const SearchOptions& opt)
      : g(alg), options(opt), dim_h(dh), dim_v(dv),
        model(screen::IntModel::build(alg)) {}

  std::optional<bool> screen_candidate(const std::vector<IVec>& h,
                                       const std::vector<IVec>& v) {
    if (!model) return std::nullopt;
    auto he = screen::IntEchelon::reduce(h);
    if (!he) return std::nullopt;
    if (he->rank() != dim_h) return false;

    for (const IVec& vv : v)
      for (const IVec& hh : h) {
        auto b = model->bracket(vv, hh);
        if (!b) return std::nullopt;
        if (options.mutual) {
          if (!ivec_zero(*b)) return false;
        } else {
          auto in = he->contains(*b);
          if (!in) return std::nullopt;
          if (!*in) return false;
        }
      }

    auto ve = screen::IntEchelon::reduce(v);
    if (!ve) return std::nullopt;
    if (ve->rank() != dim_v) return false;
    std::vector<IVec> all = h;
    all.insert(all.end(), v.begin(), v.end());
    auto total = screen::int_rank(std::move(all));
    if (!total) return std::nullopt;
    if (*total != g.dim()) return false;

    auto closed_under_bracket = [&](const std::vector<IVec>& gens,
                                    const screen::IntEchelon& ech)
        -> std::optional<bool> {
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
          auto b = model->bracket(gens[i], gens[j]);
          if (!b) return std::nullopt;
          auto in = ech.contains(*b);
          if (!in) return std::nullopt;
          if (!*in) return false;
        }
      return true;
    };
    auto v_closed = closed_under_bracket(v, *ve);
    if (!v_closed) return std::nullopt;
    if (options.v_subalgebra) return *v_closed;
    if (*v_closed) return false;  // openness: V must not be a subalgebra
    auto h_closed = closed_under_bracket(h, *he);
    if (!h_closed) return std::nullopt;
    return !*h_closed;  // openness: H must not be a subalgebra
  }

  // Exact verdict; fills `found` on success.
  bool verify_candidate(const std::vector<IVec>& h, const std::vector<IVec>& v) {
    const int n = g.dim();
    std::vector<Vec> hr, vr;
    for (const IVec& r : h) hr.push_back(to_vec(r));
    for (const IVec& r : v) vr.push_back(to_vec(r));
    Subspace hs = Subspace::span(hr, n);
    Subspace vs = Subspace::span(vr, n);
    if (hs.dim() != dim_h || vs.dim() != dim_v || hs.sum(vs).dim() != n)
      return false;
    Decomposition d(g, hs, vs);
    DecompAnalysis a = analyze(d);
    if (!a.respects) return false;
    if (options.mutual && !a.mutual) return false;
    if (options.v_subalgebra) {
      if (!a.v_is_subalgebra) return false;
    } else if (!a.open_flag) {
      return false;
    }
    found = std::move(d);
    return true;
  }

  // Returns true when the candidate is a verified witness.
  bool try_candidate(const std::vector<IVec>& h, const std::vector<IVec>& v) {
    ++trials;
    auto screened = screen_candidate(h, v);
    if (screened && !*screened) return false;
    return verify_candidate(h, v);
  }
};

// Enumerates index subsets of {0..n-1} of the given size in lexicographic
// order, invoking fn on each; fn returns true to stop.
template <typename Fn>
void for_each_subset(int n, int size, Fn&& fn) {
  if (size < 0 || size > n) return;
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (fn(idx)) return;
    int i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    if (size == 0) return;
  }
}

}  // namespace

SearchResult witness_search(const LieAlgebra& g, int dim_h, int dim_v,
                            const SearchOptions& options) {
  const int n = g.dim();
  if (dim_h < 0 || dim_v < 0 || dim_h + dim_v != n)
    throw std::invalid_argument("witness_search: dimensions must split dim g");

  SearchState st(g, dim_h, dim_v, options);

  // Structured pass: coordinate splits, with one generator on either side
  // (or both) perturbed by c * e_j, c in {1,-1,2,-2}.
  static const int kCoeffs[] = {1, -1, 2, -2};
  for_each_subset(n, dim_h, [&](const std::vector<int>& s) {
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int i : s) in_s[static_cast<std::size_t>(i)] = 1;
    std::vector<int> t;
    for (int i = 0; i < n; ++i)
      if (!in_s[static_cast<std::size_t>(i)]) t.push_back(i);

    std::vector<IVec> h_base, v_base;
    for (int i : s) h_base.push_back(int_unit(n, i));
    for (int i : t) v_base.push_back(int_unit(n, i));

    // Perturbation schedules: entry (-1,-1,0) means "leave unchanged".
    struct Pert {
      int pos, other, coeff;
    };
    auto perts_for = [&](const std::vector<int>& own,
                         const std::vector<int>& foreign) {
      std::vector<Pert> ps{{-1, -1, 0}};
      for (std::size_t p = 0; p < own.size(); ++p)
        for (int o : foreign)
          for (int c : kCoeffs) ps.push_back({static_cast<int>(p), o, c});
      return ps;
    };
    for (const Pert& hp : perts_for(s, t)) {
      std::vector<IVec> h = h_base;
      if (hp.pos >= 0)
        h[static_cast<std::size_t>(hp.pos)][static_cast<std::size_t>(hp.other)] +=
            hp.coeff;
      for (const Pert& vp : perts_for(t, s)) {
        std::vector<IVec> v = v_base;
        if (vp.pos >= 0)
          v[static_cast<std::size_t>(vp.pos)][static_cast<std::size_t>(vp.other)] +=
              vp.coeff;
        if (st.try_candidate(h, v)) return true;
      }
    }
    return false;
  });
  if (st.found) return {std::move(st.found), st.trials};

  // Randomized pass with small integer entries.
  std::mt19937_64 rng(search_seed(options.seed));
  std::uniform_int_distribution<int> entry(-3, 3);
  auto random_rows = [&](int count) {
    std::vector<IVec> rows;
    for (int r = 0; r < count; ++r) {
      IVec row(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = entry(rng);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  for (long it = 0; it < options.budget; ++it) {
    std::vector<IVec> h = random_rows(dim_h);
    std::vector<IVec> v = random_rows(dim_v);
    if (st.try_candidate(h, v)) return {std::move(st.found), st.trials};
  }
  return {std::nullopt, st.trials};
}

// ---------------------------------------------------------------------------
// the dim V = 2 decision pipeline

namespace {

// Screens the three conditions over 64-bit integers; nullopt = cannot screen.
std::optional<bool> v2_screen(const screen::IntModel& model, int der_dim,
                              const IVec& a, const IVec& b) {
  auto br = model.bracket(a, b);
  if (!br) return std::nullopt;
  if (ivec_zero(*br)) return false;  // condition (1)
  const int n = model.dim();
  std::vector<IVec> vg;
  for (int j = 0; j < n; ++j) {
    IVec e = int_unit(n, j);
    auto ba = model.bracket(a, e);
    if (!ba) return std::nullopt;
    if (!ivec_zero(*ba)) vg.push_back(std::move(*ba));
    auto bb = model.bracket(b, e);
    if (!bb) return std::nullopt;
    if (!ivec_zero(*bb)) vg.push_back(std::move(*bb));
  }
  auto vg_rank = screen::int_rank(vg);
  if (!vg_rank) return std::nullopt;
  if (*vg_rank >= der_dim) return false;  // condition (3): [V,g] = [g,g]
  std::vector<IVec> all = vg;
  all.push_back(a);
  all.push_back(b);
  auto total = screen::int_rank(std::move(all));
  if (!total) return std::nullopt;
  return *total == *vg_rank + 2;  // condition (2) plus dim V = 2
}

}  // namespace

Verdict v2_decide(const LieAlgebra& g, long budget) {
  if (!g.is_nilpotent())
    throw std::invalid_argument("v2_decide: algebra must be nilpotent");
  const int n = g.dim();
  Verdict out;
  auto model = screen::IntModel::build(g);
  const int der_dim = g.derived_subalgebra().dim();

  auto accept = [&](const Vec& va, const Vec& vb) {
    Subspace v = Subspace::span({va, vb}, n);
    if (v.dim() != 2) return false;
    if (!v2_conditions(g, v).all()) return false;
    Subspace h = construct_H_from_V(g, v);
    out.status = VerdictStatus::EXISTS;
    out.witness = Decomposition(g, h, v);
    return true;
  };
  auto try_pair = [&](const IVec& a, const IVec& b) {
    ++out.trials;
    if (model) {
      auto screened = v2_screen(*model, der_dim, a, b);
      if (screened && !*screened) return false;
    }
    return accept(to_vec(a), to_vec(b));
  };

  if (n >= 2) {
    // Structured pass: candidate vectors of support <= 2 and height <= 2,
    // spans of non-central basis vectors first.
    std::vector<char> central(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!is_zero_vec(g.bracket_basis(i, j)))
          central[static_cast<std::size_t>(i)] =
              central[static_cast<std::size_t>(j)] = 0;

    struct Cand {
      IVec v;
      bool noncentral;
    };
    std::vector<Cand> cands;
    auto add_combo = [&](int i, int j, int ci, int cj) {
      IVec v(static_cast<std::size_t>(n), 0);
      v[static_cast<std::size_t>(i)] = ci;
      if (j >= 0) v[static_cast<std::size_t>(j)] = cj;
      bool nc = !central[static_cast<std::size_t>(i)] &&
                (j < 0 || !central[static_cast<std::size_t>(j)]);
      cands.push_back({std::move(v), nc});
    };
    for (int i = 0; i < n; ++i) add_combo(i, -1, 1, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (auto [ci, cj] : {std::pair<int, int>{1, 1},
                              {1, -1},
                              {1, 2},
                              {1, -2},
                              {2, 1},
                              {2, -1}})
          add_combo(i, j, ci, cj);

    const std::size_t m = cands.size();
    for (int phase = 0; phase < 2; ++phase)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
          bool nc_pair = cands[a].noncentral && cands[b].noncentral;
          if (nc_pair != (phase == 0)) continue;
          if (try_pair(cands[a].v, cands[b].v)) return out;
        }
  }

  // Obstruction ladder.
  if (der_dim <= 1) {
    Certificate c;
    c.kind = CertificateKind::DERIVED_DIM_LE_1;
    c.derived_dim = der_dim;
    out.status = VerdictStatus::NOT_EXISTS;
    out.certificate = std::move(c);
    return out;
  }
  {
    HyperplaneDecision hd = abelian_hyperplane(g);
    if (hd.yes) {
      Certificate c;
      c.kind = CertificateKind::CODIM1_ABELIAN_IDEAL;
      c.functional = hd.functional;
      out.status = VerdictStatus::NOT_EXISTS;
      out.certificate = std::move(c);
      return out;
    }
  }
  {
    PencilResult pr = pencil_obstruction(g);
    if (pr.status == PencilStatus::OBSTRUCTED) {
      Certificate c;
      c.kind = CertificateKind::PENCIL_ALL_RADICALS_ABELIAN;
      c.pencil = std::move(pr.certificate);
      out.status = VerdictStatus::NOT_EXISTS;
      out.certificate = std::move(c);
      return out;
    }
  }

  // Randomized pass.
  if (n >= 2) {
    std::mt19937_64 rng(search_seed(std::nullopt));
    std::uniform_int_distribution<int> entry(-3, 3);
    auto random_row = [&] {
      IVec row(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = entry(rng);
      return row;
    };
    for (long it = 0; it < budget; ++it)
      if (try_pair(random_row(), random_row())) return out;
  }

  out.status = VerdictStatus::UNKNOWN;
  return out;
}

}  // namespace rk
