#pragma once

// Multivariate polynomials over Q with exact arithmetic, plus the small
// amount of symbolic matrix machinery the existence engine needs: Pfaffians
// of antisymmetric matrices, symbolic determinants, and exact definiteness
// classification of quadratic forms. No factorization, no Groebner bases.

#include "rk/exactlin.hpp"

#include <map>
#include <string>
#include <vector>

namespace rk {

// Exponent vector, aligned with the owning polynomial's variable list.
using Mono = std::vector<int>;

// Term order: graded lexicographic, highest first, so iteration starts at
// the leading term and serialization is deterministic.
struct GrlexDesc {
  bool operator()(const Mono& a, const Mono& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Mono, Scalar, GrlexDesc>;

  Poly() = default;  // zero polynomial in the variable-free ring
  explicit Poly(std::vector<std::string> vars);  // zero polynomial
  static Poly constant(std::vector<std::string> vars, const Scalar& c);
  static Poly variable(std::vector<std::string> vars, int index);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // 0 for the zero polynomial
  int degree() const;             // total degree; -1 for zero
  int term_count() const { return static_cast<int>(terms_.size()); }
  Scalar coeff(const Mono& m) const;
  const Mono& leading_mono() const;      // requires nonzero
  const Scalar& leading_coeff() const;   // requires nonzero

  // Indices of variables appearing with positive exponent, ascending.
  std::vector<int> vars_occurring() const;
  bool is_homogeneous(int deg) const;

  Poly operator-() const;
  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;
  Poly operator*(const Poly& rhs) const;
  Poly operator*(const Scalar& c) const;
  bool operator==(const Poly& rhs) const;
  bool operator!=(const Poly& rhs) const { return !(*this == rhs); }
  Poly pow(int e) const;

  // Replace one variable by a polynomial (same ring) or a constant. The
  // result stays in the same ring; the variable simply no longer occurs.
  Poly substitute(int var, const Poly& value) const;
  Poly substitute(int var, const Scalar& value) const;

  Scalar evaluate(const std::vector<Scalar>& point) const;

  // Deterministic rendering, leading term first: "a^2*b - 1/2*c + 3".
  std::string to_string() const;

 private:
  void add_term(const Mono& m, const Scalar& c);  // merges, drops zeros

  std::vector<std::string> vars_;
  TermMap terms_;
};

// Quotient a/b when the division is exact; throws std::domain_error with a
// nonzero remainder. Used by fraction-free elimination, where exactness is
// guaranteed by construction.
Poly divide_exact(const Poly& a, const Poly& b);

// Square matrix of polynomials in one shared ring.
class SymMatrix {
 public:
  SymMatrix(std::vector<std::string> vars, int n);
  int size() const { return n_; }
  const std::vector<std::string>& vars() const { return vars_; }
  Poly& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const Poly& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  bool is_antisymmetric() const;
  Matrix evaluate(const std::vector<Scalar>& point) const;
  SymMatrix substitute(int var, const Poly& value) const;
  bool is_zero() const;

 private:
  std::vector<std::string> vars_;
  int n_ = 0;
  std::vector<Poly> e_;
};

// Pfaffian by expansion along the first row; requires antisymmetric input of
// even size. Satisfies pfaffian(m)^2 = sym_determinant(m).
Poly pfaffian(const SymMatrix& m);

// Laplace expansion; fine for the small matrices this library handles.
Poly sym_determinant(const SymMatrix& m);

enum class Definiteness {
  POSITIVE_DEFINITE,
  NEGATIVE_DEFINITE,
  INDEFINITE_OR_SEMI,
};

std::string to_string(Definiteness d);

// Symmetric Gram matrix of a homogeneous quadratic, restricted to the
// variables that occur (returned in *vars_out, ascending). q(x) = v^T G v.
Matrix quadratic_gram(const Poly& q, std::vector<int>* vars_out);

// Exact classification of a homogeneous quadratic in its occurring
// variables, by signs of leading principal minors (Sylvester): definite
// forms have all minors nonzero with the characteristic sign pattern, and
// every other case lands in INDEFINITE_OR_SEMI.
// Throws std::invalid_argument unless q is homogeneous of degree 2.
Definiteness quadratic_definiteness(const Poly& q);

}  // namespace rk
