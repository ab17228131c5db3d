#include "rk/exactlin.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rk {

Scalar make_scalar(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_scalar: zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::optional<Scalar> parse_scalar(const std::string& text) {
  size_t i = 0;
  const size_t n = text.size();
  auto digits = [&](size_t start) {
    size_t j = start;
    while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
  size_t num_end = digits(i);
  if (num_end == i) return std::nullopt;
  i = num_end;
  if (i < n) {
    if (text[i] != '/') return std::nullopt;
    ++i;
    size_t den_end = digits(i);
    if (den_end == i || den_end != n) return std::nullopt;
  }
  const std::string cleaned = text[0] == '+' ? text.substr(1) : text;
  Scalar s;
  if (mpq_set_str(s.get_mpq_t(), cleaned.c_str(), 10) != 0) return std::nullopt;
  if (mpz_sgn(mpq_denref(s.get_mpq_t())) == 0) return std::nullopt;
  s.canonicalize();
  return s;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

static void check_same_size(const Vec& a, const Vec& b, const char* op) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(op) + ": size mismatch");
}

Vec add(const Vec& a, const Vec& b) {
  check_same_size(a, b, "add");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  check_same_size(a, b, "sub");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scaled(const Vec& v, const Scalar& c) {
  Vec r(v);
  for (auto& x : r) x *= c;
  return r;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  check_same_size(y, x, "axpy");
  if (a == 0) return;
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

Scalar dot(const Vec& a, const Vec& b) {
  check_same_size(a, b, "dot");
  Scalar s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec unit_vec(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("unit_vec: index out of range");
  Vec v(n, Scalar(0));
  v[i] = 1;
  return v;
}

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative size");
  e_.assign(static_cast<size_t>(rows) * cols, Scalar(0));
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (int c = 0; c < cols; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row(int r) const {
  Vec v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

std::vector<Vec> Matrix::row_vectors() const {
  std::vector<Vec> rows;
  rows.reserve(rows_);
  for (int r = 0; r < rows_; ++r) rows.push_back(row(r));
  return rows;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix::*: shape mismatch");
  Matrix p(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) p.at(i, j) += aik * rhs.at(k, j);
    }
  return p;
}

bool Matrix::operator==(const Matrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("Matrix::apply: size mismatch");
  Vec r(rows_, Scalar(0));
  for (int i = 0; i < rows_; ++i)
    for (int c = 0; c < cols_; ++c)
      if (at(i, c) != 0) r[i] += at(i, c) * x[c];
  return r;
}

Matrix rref(const Matrix& m, std::vector<int>* pivot_cols) {
  std::vector<Vec> rows = m.row_vectors();
  const int ncols = m.cols();
  std::vector<int> pivots;
  size_t pr = 0;  // next pivot row
  for (int c = 0; c < ncols && pr < rows.size(); ++c) {
    size_t sel = pr;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pr], rows[sel]);
    Scalar inv = rows[pr][c];
    for (int j = c; j < ncols; ++j) rows[pr][j] /= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pr || rows[r][c] == 0) continue;
      Scalar f = rows[r][c];
      for (int j = c; j < ncols; ++j) rows[r][j] -= f * rows[pr][j];
    }
    pivots.push_back(c);
    ++pr;
  }
  rows.resize(pr);
  if (pivot_cols) *pivot_cols = pivots;
  return Matrix::from_rows(rows, ncols);
}

int rank(const Matrix& m) { return rref(m).rows(); }

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
  const int n = m.rows();
  Scalar det = 1;
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) return Scalar(0);
    if (sel != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(c, j), m.at(sel, j));
      det = -det;
    }
    det *= m.at(c, c);
    Scalar inv = m.at(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m.at(r, c) == 0) continue;
      Scalar f = m.at(r, c) / inv;
      for (int j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  Matrix red = rref(aug);
  if (red.rows() < n) return std::nullopt;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (red.at(r, c) != (r == c ? 1 : 0)) return std::nullopt;
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = red.at(r, n + c);
  return inv;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient);
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(ambient);
  s.pivots_.resize(ambient);
  for (int i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& generators, int ambient) {
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != ambient)
      throw std::invalid_argument("Subspace::span: vector size != ambient");
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = rref(Matrix::from_rows(generators, ambient), &s.pivots_);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("Subspace::contains: size mismatch");
  Vec w(v);
  for (int r = 0; r < basis_.rows(); ++r) {
    const Scalar& f = w[pivots_[r]];
    if (f == 0) continue;
    Scalar c = f;  // pivot entries are 1
    for (int j = 0; j < ambient_; ++j)
      if (basis_.at(r, j) != 0) w[j] -= c * basis_.at(r, j);
  }
  return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("Subspace::contains: ambient mismatch");
  for (int r = 0; r < other.basis_.rows(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& rhs) const {
  return ambient_ == rhs.ambient_ && basis_ == rhs.basis_;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("Subspace::sum: ambient mismatch");
  std::vector<Vec> gens = basis_.row_vectors();
  for (auto& r : other.basis_.row_vectors()) gens.push_back(std::move(r));
  return span(gens, ambient_);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw std::invalid_argument("Subspace::intersect: ambient mismatch");
  // ann(U cap W) = ann(U) + ann(W), and ann is an involution.
  return annihilator().sum(other.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const { return kernel(basis_); }

Matrix Subspace::quotient_map() const {
  const int n = ambient_;
  const int k = dim();
  Matrix pi(n - k, n);
  int out = 0;
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots_) is_pivot[p] = true;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    pi.at(out, j) = 1;
    for (int r = 0; r < k; ++r) pi.at(out, pivots_[r]) = -basis_.at(r, j);
    ++out;
  }
  return pi;
}

Subspace kernel(const Matrix& m) {
  std::vector<int> pivots;
  Matrix red = rref(m, &pivots);
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n, Scalar(0));
    v[j] = 1;
    for (int r = 0; r < red.rows(); ++r) v[pivots[r]] = -red.at(r, j);
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, n);
}

Subspace complement(const Subspace& a, const Subspace& within) {
  if (a.ambient() != within.ambient())
    throw std::invalid_argument("complement: ambient mismatch");
  if (!within.contains(a)) throw std::invalid_argument("complement: a not inside within");
  std::vector<Vec> kept;
  Subspace grown = a;
  for (int r = 0; r < within.basis().rows(); ++r) {
    if (grown.dim() == within.dim()) break;
    Vec cand = within.basis().row(r);
    if (grown.contains(cand)) continue;
    kept.push_back(cand);
    std::vector<Vec> gens = grown.basis_rows();
    gens.push_back(kept.back());
    grown = Subspace::span(gens, a.ambient());
  }
  return Subspace::span(kept, a.ambient());
}

}  // namespace rk
