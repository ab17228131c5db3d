#include "rk/existence.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rk {

std::string to_string(PencilStatus s) {
  switch (s) {
    case PencilStatus::OBSTRUCTED: return "OBSTRUCTED";
    case PencilStatus::NOT_OBSTRUCTED: return "NOT_OBSTRUCTED";
    case PencilStatus::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

namespace {

std::vector<std::string> pencil_var_names(int k) {
  std::vector<std::string> names;
  for (int l = 0; l < k; ++l) {
    if (k <= 8)
      names.push_back(std::string(1, static_cast<char>('a' + l)));
    else
      names.push_back("p" + std::to_string(l + 1));
  }
  return names;
}

// [sum u_p e_p, sum w_q e_q] coordinate polynomials (ambient coordinates).
std::vector<Poly> bracket_poly(const LieAlgebra& g, const std::vector<Poly>& u,
                               const std::vector<Poly>& w) {
  const int n = g.dim();
  const Poly zero = Poly::constant(u.front().vars(), make_scalar(0));
  std::vector<Poly> out(static_cast<std::size_t>(n), zero);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const Vec& c = g.bracket_basis(p, q);
      if (is_zero_vec(c)) continue;
      Poly coeff = u[static_cast<std::size_t>(p)] * w[static_cast<std::size_t>(q)] -
                   u[static_cast<std::size_t>(q)] * w[static_cast<std::size_t>(p)];
      if (coeff.is_zero()) continue;
      for (int t = 0; t < n; ++t)
        if (c[static_cast<std::size_t>(t)] != 0)
          out[static_cast<std::size_t>(t)] =
              out[static_cast<std::size_t>(t)] + coeff * c[static_cast<std::size_t>(t)];
    }
  }
  return out;
}

// Writes p = alpha*x_v + rest as x_v = -rest/alpha for its first variable.
std::pair<int, Poly> solve_linear(const Poly& p) {
  int v = p.vars_occurring().front();
  Mono m(static_cast<std::size_t>(p.nvars()), 0);
  m[static_cast<std::size_t>(v)] = 1;
  Scalar alpha = p.coeff(m);
  Poly rest = p - Poly::variable(p.vars(), v) * alpha;
  return {v, -rest * (make_scalar(1) / alpha)};
}

// Divides out every exact factor found in `known` (each has an already
// covered zero locus or is assumed nonzero on the stratum), leaving the part
// of the zero locus that still needs a branch.
Poly reduce_by_known(Poly p, const std::vector<Poly>& known) {
  bool again = true;
  while (again && !p.is_constant()) {
    again = false;
    for (const Poly& q : known) {
      if (q.is_constant()) continue;
      try {
        p = divide_exact(p, q);
        again = true;
        break;
      } catch (const std::domain_error&) {
      }
    }
  }
  return p;
}

struct PencilEngine {
  const LieAlgebra& g;
  SymMatrix root;
  int k;

  PencilCertificate cert;
  std::optional<PencilWitness> witness;
  bool unknown = false;
  std::mt19937_64 rng{0x70656e63696cULL};
  int nodes = 0;

  explicit PencilEngine(const LieAlgebra& alg)
      : g(alg), root(pencil_matrix(alg)), k(static_cast<int>(root.vars().size())) {
    cert.vars = root.vars();
  }

  bool done() const { return witness.has_value() || unknown; }

  // Deterministic rational point with every listed polynomial nonzero.
  std::optional<std::vector<Scalar>> find_sample(const std::vector<Poly>& nonzero) {
    std::uniform_int_distribution<int> mag(1, 97);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<Scalar> point;
      for (int l = 0; l < k; ++l)
        point.push_back(make_scalar(sign(rng) ? mag(rng) : -mag(rng)));
      bool ok = true;
      for (const Poly& p : nonzero)
        if (p.evaluate(point) == 0) {
          ok = false;
          break;
        }
      if (ok) return point;
    }
    return std::nullopt;
  }

  void fail(const std::string&) { unknown = true; }

  // Covers the real zero locus of `pivot` (already reduced by known factors)
  // with recursive strata. Returns the factors whose loci are now covered.
  std::vector<Poly> branch_zero(const SymMatrix& m, const std::vector<Poly>& psi,
                                const std::vector<PencilSubstitution>& path,
                                const Poly& pivot, int depth) {
    auto recurse_with = [&](std::vector<std::pair<int, Poly>> subs,
                            const std::string& reason) {
      SymMatrix m2 = m;
      std::vector<Poly> psi2 = psi;
      std::vector<PencilSubstitution> path2 = path;
      for (auto& [var, value] : subs) {
        m2 = m2.substitute(var, value);
        for (Poly& f : psi2) f = f.substitute(var, value);
        path2.push_back({var, value, reason});
      }
      analyze(std::move(m2), std::move(psi2), std::move(path2), depth + 1);
    };

    const Poly zero = Poly::constant(pivot.vars(), make_scalar(0));
    if (pivot.degree() == 1) {
      auto [var, value] = solve_linear(pivot);
      recurse_with({{var, value}}, "linear pivot zero");
      return {pivot};
    }
    if (pivot.term_count() == 1) {
      // Real zero locus of a monomial: union of coordinate hyperplanes.
      for (int v : pivot.vars_occurring()) {
        recurse_with({{v, zero}}, "monomial pivot factor zero");
        if (done()) return {};
      }
      return {pivot};
    }
    if (pivot.degree() == 2 && pivot.is_homogeneous(2)) {
      Definiteness d = quadratic_definiteness(pivot);
      if (d != Definiteness::INDEFINITE_OR_SEMI) {
        // Real zero locus: all occurring variables vanish.
        cert.definite_loci.push_back({path, pivot, d});
        std::vector<std::pair<int, Poly>> subs;
        for (int v : pivot.vars_occurring()) subs.emplace_back(v, zero);
        recurse_with(std::move(subs), "definite pivot zero locus");
        return {pivot};
      }
      // c*L^2 with L linear: same zero locus as L.
      std::vector<int> gram_vars;
      Matrix gram = quadratic_gram(pivot, &gram_vars);
      if (rank(gram) == 1) {
        int r0 = 0;
        while (is_zero_vec(gram.row(r0))) ++r0;
        Poly lin = Poly::constant(pivot.vars(), make_scalar(0));
        for (std::size_t j = 0; j < gram_vars.size(); ++j)
          if (gram.at(r0, static_cast<int>(j)) != 0)
            lin = lin + Poly::variable(pivot.vars(), gram_vars[j]) *
                            gram.at(r0, static_cast<int>(j));
        Poly sq = lin * lin;
        Scalar c = pivot.leading_coeff() / sq.leading_coeff();
        if (pivot == sq * c) {
          auto [var, value] = solve_linear(lin);
          recurse_with({{var, value}}, "square pivot factor zero");
          return {pivot, lin};
        }
      }
      fail("indefinite quadratic pivot locus");
      return {};
    }
    fail("pivot zero locus beyond linear/definite handling");
    return {};
  }

  void analyze(SymMatrix m, std::vector<Poly> psi,
               std::vector<PencilSubstitution> path, int depth) {
    if (done()) return;
    if (depth > 64 || ++nodes > 4096 ||
        cert.strata.size() + cert.excluded.size() > 10000) {
      fail("stratification budget exhausted");
      return;
    }
    if (m.is_zero()) {
      // The bracket images span [g,g], so a vanishing pencil forces psi = 0:
      // the branch is projectively excluded.
      for (const Poly& f : psi)
        if (!f.is_zero()) {
          fail("zero pencil with nonzero functional");
          return;
        }
      cert.excluded.push_back({path});
      return;
    }

    const int nn = m.size();
    const std::vector<std::string>& vars = m.vars();
    SymMatrix w = m;
    Poly prev = Poly::constant(vars, make_scalar(1));
    std::vector<char> used_row(static_cast<std::size_t>(nn), 0);
    std::vector<char> used_col(static_cast<std::size_t>(nn), 0);
    std::vector<Poly> pivots;
    std::vector<Poly> covered;  // zero loci already handled by a branch
    std::vector<std::pair<int, int>> pivot_pos;

    while (true) {
      int br = -1, bc = -1;
      std::tuple<int, int, int> best{0, 0, 0};
      for (int i = 0; i < nn; ++i) {
        if (used_row[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < nn; ++j) {
          if (used_col[static_cast<std::size_t>(j)]) continue;
          const Poly& e = w.at(i, j);
          if (e.is_zero()) continue;
          std::tuple<int, int, int> score{e.degree(), e.term_count(), i * nn + j};
          if (br < 0 || score < best) {
            best = score;
            br = i;
            bc = j;
          }
        }
      }
      if (br < 0) break;

      Poly p = w.at(br, bc);
      if (!p.is_constant()) {
        std::vector<Poly> known = pivots;
        known.insert(known.end(), covered.begin(), covered.end());
        Poly red = reduce_by_known(p, known);
        // A constant residue means the whole zero locus was already covered
        // by earlier branches; nothing new to recurse into.
        if (!red.is_constant()) {
          std::vector<Poly> handled = branch_zero(m, psi, path, red, depth);
          if (done()) return;
          covered.insert(covered.end(), handled.begin(), handled.end());
        }
      }

      // Fraction-free Gauss-Jordan step on the stratum where p != 0.
      SymMatrix next = w;
      for (int i = 0; i < nn; ++i) {
        if (i == br) continue;
        for (int j = 0; j < nn; ++j)
          next.at(i, j) =
              divide_exact(p * w.at(i, j) - w.at(i, bc) * w.at(br, j), prev);
      }
      w = next;
      prev = p;
      pivots.push_back(p);
      pivot_pos.emplace_back(br, bc);
      used_row[static_cast<std::size_t>(br)] = 1;
      used_col[static_cast<std::size_t>(bc)] = 1;
    }

    const int rank_here = static_cast<int>(pivots.size());
    const Poly& d = pivots.back();  // nonempty: m is not the zero matrix

    // Kernel of m on the stratum: one vector per non-pivot column.
    std::vector<std::vector<Poly>> radical;
    for (int j = 0; j < nn; ++j) {
      if (used_col[static_cast<std::size_t>(j)]) continue;
      std::vector<Poly> v(static_cast<std::size_t>(nn),
                          Poly::constant(vars, make_scalar(0)));
      v[static_cast<std::size_t>(j)] = d;
      for (int t = 0; t < rank_here; ++t) {
        const auto& [pr, pc] = pivot_pos[static_cast<std::size_t>(t)];
        v[static_cast<std::size_t>(pc)] = -w.at(pr, j);
      }
      radical.push_back(std::move(v));
    }
    for (const auto& v : radical)
      for (int i = 0; i < nn; ++i) {
        Poly acc = Poly::constant(vars, make_scalar(0));
        for (int j = 0; j < nn; ++j)
          acc = acc + m.at(i, j) * v[static_cast<std::size_t>(j)];
        if (!acc.is_zero()) {
          fail("kernel identity failed");
          return;
        }
      }

    // Is the radical abelian identically on this stratum?
    std::optional<Poly> nonabelian;
    std::optional<std::pair<std::size_t, std::size_t>> pair_idx;
    for (std::size_t a = 0; a < radical.size() && !nonabelian; ++a)
      for (std::size_t b = a + 1; b < radical.size() && !nonabelian; ++b)
        for (Poly& coord : bracket_poly(g, radical[a], radical[b]))
          if (!coord.is_zero()) {
            nonabelian = coord;
            pair_idx = {a, b};
            break;
          }

    std::vector<Poly> constraints;
    for (const Poly& p : pivots)
      if (!p.is_constant()) constraints.push_back(p);

    if (!nonabelian) {
      auto sample = find_sample(constraints);
      if (!sample) {
        fail("no sample point for stratum");
        return;
      }
      cert.strata.push_back(
          {std::move(path), std::move(pivots), rank_here, std::move(radical), *sample});
      return;
    }

    // A radical bracket survives symbolically: pick a rational point on the
    // stratum where it is nonzero and extract a concrete witness.
    constraints.push_back(*nonabelian);
    auto sample = find_sample(constraints);
    if (!sample) {
      fail("no sample point for witness");
      return;
    }
    Vec psi0;
    for (const Poly& f : psi) psi0.push_back(f.evaluate(*sample));
    auto eval_vec = [&](const std::vector<Poly>& v) {
      Vec out;
      for (const Poly& c : v) out.push_back(c.evaluate(*sample));
      return out;
    };
    Vec v1 = eval_vec(radical[pair_idx->first]);
    Vec v2 = eval_vec(radical[pair_idx->second]);
    Matrix at_psi0 = root.evaluate(psi0);
    if (is_zero_vec(psi0) || !is_zero_vec(at_psi0.apply(v1)) ||
        !is_zero_vec(at_psi0.apply(v2)) || is_zero_vec(g.bracket(v1, v2))) {
      fail("witness failed re-verification");
      return;
    }
    witness = PencilWitness{psi0, v1, v2};
  }
};

}  // namespace

SymMatrix pencil_matrix(const LieAlgebra& g) {
  const int n = g.dim();
  Subspace der = g.derived_subalgebra();
  const int k = der.dim();
  std::vector<std::string> vars = pencil_var_names(k);
  SymMatrix m(vars, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec& b = g.bracket_basis(i, j);
      if (is_zero_vec(b)) continue;
      Vec c = coords_in(der, b);
      Poly e = Poly::constant(vars, make_scalar(0));
      for (int l = 0; l < k; ++l)
        if (c[static_cast<std::size_t>(l)] != 0)
          e = e + Poly::variable(vars, l) * c[static_cast<std::size_t>(l)];
      m.at(i, j) = e;
      m.at(j, i) = -e;
    }
  }
  return m;
}

PencilResult pencil_obstruction(const LieAlgebra& g) {
  if (!g.is_nilpotent())
    throw std::invalid_argument("pencil_obstruction: algebra must be nilpotent");
  if (g.derived_subalgebra().dim() < 1)
    throw std::invalid_argument("pencil_obstruction: derived subalgebra is zero");
  PencilEngine eng(g);
  std::vector<Poly> psi;
  for (int l = 0; l < eng.k; ++l) psi.push_back(Poly::variable(eng.cert.vars, l));
  eng.analyze(eng.root, psi, {}, 0);

  PencilResult res;
  if (eng.witness) {
    res.status = PencilStatus::NOT_OBSTRUCTED;
    res.witness = eng.witness;
  } else if (eng.unknown) {
    res.status = PencilStatus::UNKNOWN;
  } else {
    res.status = PencilStatus::OBSTRUCTED;
    res.certificate = std::move(eng.cert);
  }
  return res;
}

namespace {

bool fail_why(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool verify_pencil_certificate(const LieAlgebra& g, const PencilCertificate& c,
                               std::string* why) {
  SymMatrix root = pencil_matrix(g);
  if (c.vars != root.vars()) return fail_why(why, "parameter variables differ");
  const int nn = root.size();
  const int k = static_cast<int>(c.vars.size());

  auto apply_path = [&](const std::vector<PencilSubstitution>& path, SymMatrix& m,
                        std::vector<Poly>& psi) {
    m = root;
    psi.clear();
    for (int l = 0; l < k; ++l) psi.push_back(Poly::variable(c.vars, l));
    for (const PencilSubstitution& s : path) {
      if (s.var < 0 || s.var >= k) return false;
      m = m.substitute(s.var, s.value);
      for (Poly& f : psi) f = f.substitute(s.var, s.value);
    }
    return true;
  };

  for (std::size_t si = 0; si < c.strata.size(); ++si) {
    const PencilStratum& s = c.strata[si];
    const std::string tag = "stratum " + std::to_string(si) + ": ";
    SymMatrix m = root;
    std::vector<Poly> psi;
    if (!apply_path(s.substitutions, m, psi))
      return fail_why(why, tag + "bad substitution variable");
    if (s.rank < 1 || s.rank > nn) return fail_why(why, tag + "rank out of range");
    if (static_cast<int>(s.sample.size()) != k)
      return fail_why(why, tag + "sample has wrong length");
    for (const Poly& p : s.pivots)
      if (p.evaluate(s.sample) == 0)
        return fail_why(why, tag + "sample does not keep the pivots nonzero");
    Matrix at_sample = m.evaluate(s.sample);
    if (rank(at_sample) != s.rank)
      return fail_why(why, tag + "rank at the sample differs");
    if (static_cast<int>(s.radical.size()) != nn - s.rank)
      return fail_why(why, tag + "radical basis has wrong size");
    std::vector<Vec> rad_at_sample;
    for (const auto& v : s.radical) {
      if (static_cast<int>(v.size()) != nn)
        return fail_why(why, tag + "radical vector has wrong length");
      for (int i = 0; i < nn; ++i) {
        Poly acc = Poly::constant(c.vars, make_scalar(0));
        for (int j = 0; j < nn; ++j)
          acc = acc + m.at(i, j) * v[static_cast<std::size_t>(j)];
        if (!acc.is_zero())
          return fail_why(why, tag + "radical vector is not in the kernel");
      }
      Vec ev;
      for (const Poly& coord : v) ev.push_back(coord.evaluate(s.sample));
      rad_at_sample.push_back(std::move(ev));
    }
    if (!s.radical.empty()) {
      Matrix rm = Matrix::from_rows(rad_at_sample, nn);
      if (rank(rm) != static_cast<int>(s.radical.size()))
        return fail_why(why, tag + "radical basis degenerates at the sample");
    }
    for (std::size_t a = 0; a < s.radical.size(); ++a)
      for (std::size_t b = a + 1; b < s.radical.size(); ++b)
        for (const Poly& coord : bracket_poly(g, s.radical[a], s.radical[b]))
          if (!coord.is_zero())
            return fail_why(why, tag + "radical bracket does not vanish");
  }

  for (std::size_t li = 0; li < c.definite_loci.size(); ++li) {
    const DefiniteLocus& l = c.definite_loci[li];
    if (l.definiteness == Definiteness::INDEFINITE_OR_SEMI)
      return fail_why(why, "locus " + std::to_string(li) + ": not definite");
    if (!l.pivot.is_homogeneous(2) ||
        quadratic_definiteness(l.pivot) != l.definiteness)
      return fail_why(why, "locus " + std::to_string(li) + ": definiteness differs");
  }

  for (std::size_t ei = 0; ei < c.excluded.size(); ++ei) {
    SymMatrix m = root;
    std::vector<Poly> psi;
    if (!apply_path(c.excluded[ei].substitutions, m, psi))
      return fail_why(why, "excluded branch " + std::to_string(ei) +
                               ": bad substitution variable");
    for (const Poly& f : psi)
      if (!f.is_zero())
        return fail_why(why, "excluded branch " + std::to_string(ei) +
                                 ": functional does not vanish");
  }
  return true;
}

}  // namespace rk
