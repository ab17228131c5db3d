#include "rk/sympoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rk {

namespace {

int total_degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

void check_same_ring(const Poly& a, const Poly& b, const char* op) {
  if (a.vars() != b.vars())
    throw std::invalid_argument(std::string(op) + ": variable-name mismatch");
}

}  // namespace

bool GrlexDesc::operator()(const Mono& a, const Mono& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;  // lexicographic on exponent vectors, larger first
}

Poly::Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

Poly Poly::constant(std::vector<std::string> vars, const Scalar& c) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Mono(p.vars_.size(), 0), c);
  return p;
}

Poly Poly::variable(std::vector<std::string> vars, int index) {
  if (index < 0 || index >= static_cast<int>(vars.size()))
    throw std::invalid_argument("Poly::variable: index out of range");
  Poly p(std::move(vars));
  Mono m(p.vars_.size(), 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Scalar(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Scalar Poly::constant_value() const {
  if (!is_constant()) throw std::logic_error("Poly::constant_value: not constant");
  return terms_.empty() ? Scalar(0) : terms_.begin()->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.begin()->first);  // leading term has max degree
}

Scalar Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw std::logic_error("Poly::leading_mono: zero polynomial");
  return terms_.begin()->first;
}

const Scalar& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("Poly::leading_coeff: zero polynomial");
  return terms_.begin()->second;
}

std::vector<int> Poly::vars_occurring() const {
  std::vector<bool> seen(vars_.size(), false);
  for (const auto& [m, c] : terms_)
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) seen[i] = true;
  std::vector<int> out;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int>(i));
  return out;
}

bool Poly::is_homogeneous(int deg) const {
  for (const auto& [m, c] : terms_)
    if (total_degree(m) != deg) return false;
  return !terms_.empty();
}

void Poly::add_term(const Mono& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& rhs) const {
  check_same_ring(*this, rhs, "Poly::+");
  Poly r(*this);
  for (const auto& [m, c] : rhs.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& rhs) const {
  check_same_ring(*this, rhs, "Poly::-");
  Poly r(*this);
  for (const auto& [m, c] : rhs.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& rhs) const {
  check_same_ring(*this, rhs, "Poly::*");
  Poly r(vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : rhs.terms_) {
      Mono m(ma);
      for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

Poly Poly::operator*(const Scalar& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
  return r;
}

bool Poly::operator==(const Poly& rhs) const {
  return vars_ == rhs.vars_ &&
         std::equal(terms_.begin(), terms_.end(), rhs.terms_.begin(),
                    rhs.terms_.end());
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = constant(vars_, Scalar(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
  check_same_ring(*this, value, "Poly::substitute");
  if (var < 0 || var >= nvars())
    throw std::invalid_argument("Poly::substitute: variable index out of range");
  Poly r(vars_);
  for (const auto& [m, c] : terms_) {
    Mono rest(m);
    int e = rest[var];
    rest[var] = 0;
    Poly term(vars_);
    term.terms_.emplace(std::move(rest), c);
    r = r + term * value.pow(e);
  }
  return r;
}

Poly Poly::substitute(int var, const Scalar& value) const {
  return substitute(var, constant(vars_, value));
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != nvars())
    throw std::invalid_argument("Poly::evaluate: wrong point dimension");
  Scalar acc = 0;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool has_vars = total_degree(m) > 0;
    bool unit = (a == 1);
    if (!unit || !has_vars) os << a.get_str();
    bool need_star = !unit || !has_vars;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << vars_[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

Poly divide_exact(const Poly& a, const Poly& b) {
  check_same_ring(a, b, "divide_exact");
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  Poly rem(a);
  Poly q(a.vars());
  while (!rem.is_zero()) {
    const Mono& lm_r = rem.leading_mono();
    const Mono& lm_b = b.leading_mono();
    Mono t(lm_r);
    for (size_t i = 0; i < t.size(); ++i) {
      t[i] -= lm_b[i];
      if (t[i] < 0) throw std::domain_error("divide_exact: not divisible");
    }
    Poly term = Poly::constant(a.vars(), rem.leading_coeff() / b.leading_coeff());
    Poly mono = Poly::constant(a.vars(), Scalar(1));
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i] > 0)
        mono = mono * Poly::variable(a.vars(), static_cast<int>(i)).pow(t[i]);
    term = term * mono;
    q = q + term;
    rem = rem - term * b;
  }
  return q;
}

SymMatrix::SymMatrix(std::vector<std::string> vars, int n)
    : vars_(std::move(vars)), n_(n) {
  if (n < 0) throw std::invalid_argument("SymMatrix: negative size");
  e_.assign(static_cast<size_t>(n) * n, Poly(vars_));
}

bool SymMatrix::is_antisymmetric() const {
  for (int i = 0; i < n_; ++i) {
    if (!at(i, i).is_zero()) return false;
    for (int j = i + 1; j < n_; ++j)
      if (at(i, j) != -at(j, i)) return false;
  }
  return true;
}

Matrix SymMatrix::evaluate(const std::vector<Scalar>& point) const {
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).evaluate(point);
  return m;
}

SymMatrix SymMatrix::substitute(int var, const Poly& value) const {
  SymMatrix r(vars_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j).substitute(var, value);
  return r;
}

bool SymMatrix::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

namespace {

SymMatrix remove_rows_cols(const SymMatrix& m, int r1, int r2) {
  SymMatrix out(m.vars(), m.size() - 2);
  int oi = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (i == r1 || i == r2) continue;
    int oj = 0;
    for (int j = 0; j < m.size(); ++j) {
      if (j == r1 || j == r2) continue;
      out.at(oi, oj) = m.at(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

Poly pfaffian_rec(const SymMatrix& m) {
  const int n = m.size();
  if (n == 0) return Poly::constant(m.vars(), Scalar(1));
  Poly acc(m.vars());
  for (int j = 1; j < n; ++j) {
    const Poly& a = m.at(0, j);
    if (a.is_zero()) continue;
    Poly sub = pfaffian_rec(remove_rows_cols(m, 0, j));
    // expansion along the first row: sign (-1)^j for 1-based column j+1
    Poly term = a * sub;
    if (j % 2 == 0) term = -term;
    acc = acc + term;
  }
  return acc;
}

}  // namespace

Poly pfaffian(const SymMatrix& m) {
  if (m.size() % 2 != 0)
    throw std::invalid_argument("pfaffian: odd dimension");
  if (!m.is_antisymmetric())
    throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
  return pfaffian_rec(m);
}

namespace {

Poly det_rec(const SymMatrix& m, std::vector<int>& cols, int row) {
  const int n = m.size();
  if (row == n) return Poly::constant(m.vars(), Scalar(1));
  Poly acc(m.vars());
  for (size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    const Poly& a = m.at(row, c);
    if (a.is_zero()) continue;
    cols.erase(cols.begin() + k);
    Poly sub = det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + k, c);
    Poly term = a * sub;
    if (k % 2 == 1) term = -term;
    acc = acc + term;
  }
  return acc;
}

}  // namespace

Poly sym_determinant(const SymMatrix& m) {
  std::vector<int> cols(m.size());
  std::iota(cols.begin(), cols.end(), 0);
  return det_rec(m, cols, 0);
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::POSITIVE_DEFINITE:
      return "POSITIVE_DEFINITE";
    case Definiteness::NEGATIVE_DEFINITE:
      return "NEGATIVE_DEFINITE";
    case Definiteness::INDEFINITE_OR_SEMI:
      return "INDEFINITE_OR_SEMI";
  }
  return "?";
}

Matrix quadratic_gram(const Poly& q, std::vector<int>* vars_out) {
  if (!q.is_homogeneous(2))
    throw std::invalid_argument("quadratic_gram: not a homogeneous quadratic");
  std::vector<int> occ = q.vars_occurring();
  const int k = static_cast<int>(occ.size());
  std::vector<int> pos(q.nvars(), -1);
  for (int i = 0; i < k; ++i) pos[occ[i]] = i;
  Matrix g(k, k);
  for (const auto& [m, c] : q.terms()) {
    std::vector<int> idx;
    for (size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) idx.push_back(pos[i]);
    if (idx[0] == idx[1]) {
      g.at(idx[0], idx[0]) = c;
    } else {
      g.at(idx[0], idx[1]) = c / 2;
      g.at(idx[1], idx[0]) = c / 2;
    }
  }
  if (vars_out) *vars_out = occ;
  return g;
}

Definiteness quadratic_definiteness(const Poly& q) {
  Matrix g = quadratic_gram(q, nullptr);
  const int k = g.rows();
  // Sylvester: definite forms have all leading principal minors nonzero with
  // a fixed sign pattern; everything else is indefinite or semidefinite.
  bool pos_ok = true, neg_ok = true;
  for (int i = 1; i <= k; ++i) {
    Matrix lead(i, i);
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < i; ++c) lead.at(r, c) = g.at(r, c);
    Scalar d = determinant(lead);
    if (d <= 0) pos_ok = false;
    if ((i % 2 == 1 && d >= 0) || (i % 2 == 0 && d <= 0)) neg_ok = false;
    if (!pos_ok && !neg_ok) break;
  }
  if (pos_ok) return Definiteness::POSITIVE_DEFINITE;
  if (neg_ok) return Definiteness::NEGATIVE_DEFINITE;
  return Definiteness::INDEFINITE_OR_SEMI;
}

}  // namespace rk
