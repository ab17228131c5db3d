#pragma once

// Exact linear algebra over the rationals: dense matrices and canonical
// (reduced-row-echelon) subspaces of Q^n. All arithmetic is arbitrary
// precision; there is no floating point in this library. Subspaces are
// stored in a canonical form, so value equality coincides with equality
// as sets of vectors.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace rk {

// Arbitrary-precision rational. Always in lowest terms with positive
// denominator (GMP canonical form); parse_scalar canonicalizes explicitly.
using Scalar = mpq_class;
using Int = mpz_class;

Scalar make_scalar(long num, long den = 1);
std::string to_string(const Scalar& s);  // "p" or "p/q"

// Accepts an optional sign followed by digits, optionally '/' and digits.
// Returns nullopt on malformed input or zero denominator.
std::optional<Scalar> parse_scalar(const std::string& text);

// Coordinate row vector.
using Vec = std::vector<Scalar>;

bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, const Scalar& c);
void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a*x
Scalar dot(const Vec& a, const Vec& b);
Vec unit_vec(int n, int i);
std::string to_string(const Vec& v);

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const {
    return e_[static_cast<size_t>(r) * cols_ + c];
  }
  Vec row(int r) const;
  std::vector<Vec> row_vectors() const;
  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  bool operator==(const Matrix& rhs) const;

  // Column-convention application: result = M * x^T for x in Q^cols.
  Vec apply(const Vec& x) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

// Reduced row echelon form with zero rows dropped: pivots are 1, pivot
// columns are otherwise zero, rows ordered by pivot column. The result has
// exactly rank(m) rows.
Matrix rref(const Matrix& m, std::vector<int>* pivot_cols = nullptr);
int rank(const Matrix& m);
Scalar determinant(Matrix m);                 // square input
std::optional<Matrix> inverse(const Matrix& m);  // nullopt if singular

// Canonical subspace of Q^ambient: basis rows are the RREF of any spanning
// set, so two subspaces are equal as sets iff their representations are
// identical.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  static Subspace span(const std::vector<Vec>& generators, int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> basis_rows() const { return basis_.row_vectors(); }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& rhs) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  // Functionals vanishing on this subspace, as a subspace of the dual with
  // the same coordinates.
  Subspace annihilator() const;

  // Surjective (ambient-dim) x ambient matrix with kernel exactly this
  // subspace: rows are dual to the non-pivot coordinates.
  Matrix quotient_map() const;

 private:
  int ambient_ = 0;
  Matrix basis_;  // RREF, no zero rows
  std::vector<int> pivots_;
};

// Right kernel {x : M x^T = 0} as a subspace of Q^cols.
Subspace kernel(const Matrix& m);

// Deterministic complement of `a` inside `within` (requires a <= within):
// greedily keeps those canonical basis vectors of `within` that are
// independent of `a` plus the vectors already kept. Reproducible
// bit-for-bit: same inputs always give the same basis.
Subspace complement(const Subspace& a, const Subspace& within);

}  // namespace rk
