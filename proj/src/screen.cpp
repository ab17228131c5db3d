#include "rk/screen.hpp"

#include <cstdlib>
#include <numeric>

namespace rk::screen {
namespace {

bool mul(long long a, long long b, long long& out) {
  return !__builtin_mul_overflow(a, b, &out);
}
bool add(long long a, long long b, long long& out) {
  return !__builtin_add_overflow(a, b, &out);
}
bool sub(long long a, long long b, long long& out) {
  return !__builtin_sub_overflow(a, b, &out);
}

// a*b - c*d with overflow checks.
bool cross(long long a, long long b, long long c, long long d, long long& out) {
  long long ab, cd;
  return mul(a, b, ab) && mul(c, d, cd) && sub(ab, cd, out);
}

void normalize_row(IVec& row) {
  long long g = 0;
  for (long long x : row) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (long long& x : row) x /= g;
}

}  // namespace

std::optional<IntModel> IntModel::build(const LieAlgebra& g) {
  IntModel m;
  m.n_ = g.dim();
  mpz_class lcm = 1;
  for (int i = 0; i < m.n_; ++i)
    for (int j = i + 1; j < m.n_; ++j)
      for (const Scalar& c : g.bracket_basis(i, j))
        lcm = ::lcm(lcm, c.get_den());
  for (int i = 0; i < m.n_; ++i) {
    for (int j = i + 1; j < m.n_; ++j) {
      IVec row(m.n_);
      for (int k = 0; k < m.n_; ++k) {
        mpq_class scaled = g.bracket_basis(i, j)[k] * lcm;
        mpz_class z = scaled.get_num();  // denominator is 1 after scaling
        if (!z.fits_slong_p()) return std::nullopt;
        long long v = z.get_si();
        if (v > (1LL << 40) || v < -(1LL << 40)) return std::nullopt;
        row[k] = v;
      }
      m.table_.push_back(std::move(row));
    }
  }
  for (const IVec& row : m.table_) {
    bool nonzero = false;
    for (long long x : row) nonzero = nonzero || x != 0;
    if (nonzero) {
      IVec r = row;
      normalize_row(r);
      m.derived_gens_.push_back(std::move(r));
    }
  }
  return m;
}

std::optional<IVec> IntModel::bracket(const IVec& u, const IVec& w) const {
  IVec out(n_, 0);
  int idx = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++idx) {
      long long coeff;
      if (!cross(u[i], w[j], u[j], w[i], coeff)) return std::nullopt;
      if (coeff == 0) continue;
      const IVec& t = table_[idx];
      for (int k = 0; k < n_; ++k) {
        long long term;
        if (!mul(coeff, t[k], term) || !add(out[k], term, out[k]))
          return std::nullopt;
      }
    }
  }
  return out;
}

std::optional<IntEchelon> IntEchelon::reduce(const std::vector<IVec>& rows) {
  IntEchelon e;
  for (const IVec& r : rows) {
    IVec v = r;
    // Eliminate existing pivots, then insert if nonzero.
    for (std::size_t k = 0; k < e.rows_.size(); ++k) {
      int p = e.pivots_[k];
      if (v[p] == 0) continue;
      long long a = e.rows_[k][p], b = v[p];
      for (std::size_t c = 0; c < v.size(); ++c) {
        long long t;
        if (!cross(a, v[c], b, e.rows_[k][c], t)) return std::nullopt;
        v[c] = t;
      }
      normalize_row(v);
    }
    int pivot = -1;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) {
        pivot = static_cast<int>(c);
        break;
      }
    if (pivot < 0) continue;
    normalize_row(v);
    // Keep rows ordered by pivot column.
    std::size_t pos = 0;
    while (pos < e.pivots_.size() && e.pivots_[pos] < pivot) ++pos;
    e.rows_.insert(e.rows_.begin() + pos, std::move(v));
    e.pivots_.insert(e.pivots_.begin() + pos, pivot);
  }
  return e;
}

std::optional<bool> IntEchelon::contains(const IVec& v) const {
  IVec w = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int p = pivots_[k];
    if (w[p] == 0) continue;
    long long a = rows_[k][p], b = w[p];
    for (std::size_t c = 0; c < w.size(); ++c) {
      long long t;
      if (!cross(a, w[c], b, rows_[k][c], t)) return std::nullopt;
      w[c] = t;
    }
    normalize_row(w);
  }
  for (long long x : w)
    if (x != 0) return false;
  return true;
}

std::optional<int> int_rank(std::vector<IVec> rows) {
  auto e = IntEchelon::reduce(rows);
  if (!e) return std::nullopt;
  return e->rank();
}

}  // namespace rk::screen
