#pragma once

// Text format for Lie algebra presentations, and the linear-combination
// expression syntax shared with the command line.
//
//   # optional comments, full-line or trailing
//   name h3
//   dim 3
//   basis x1 y1 z
//   bracket x1 y1 = z
//
// Bracket lines take "bracket <bi> <bj> = <expr>" with bi before bj in basis
// order; unspecified pairs are zero. Expressions are sums of terms
// "<coeff>*<name>" with exact rational coefficients ("3", "-1", "1/2"); a
// bare name means coefficient 1. parse then serialize is the identity on
// canonical files.

#include "rk/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rk {

struct ParseError {
  int line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

struct ParseResult {
  std::optional<LieAlgebra> algebra;
  std::optional<ParseError> error;  // set iff algebra is not

  bool ok() const { return algebra.has_value(); }
};

// Parses and validates (Jacobi); a violation is reported as an error naming
// the failing basis triple.
ParseResult parse_algebra(const std::string& text);
ParseResult parse_algebra_path(const std::string& path);

// Canonical rendering: header, then one bracket line per nonzero pair in
// (i,j) order with coefficients in basis order.
std::string serialize_algebra(const LieAlgebra& g);

// The canonical payload of a file: comments, blank lines, and surrounding
// whitespace removed. serialize_algebra(parse(text)) == canonical_payload(text)
// for well-formed files whose bracket lines are already canonical.
std::string canonical_payload(const std::string& text);

// One linear combination over the basis names of g, e.g. "x2+x3" or
// "2*x1 - 1/2*x4". Whitespace is ignored.
std::optional<Vec> parse_vector_expr(const LieAlgebra& g, const std::string& expr);

// Comma-separated list of combinations, e.g. "x2+x3,x4".
std::optional<std::vector<Vec>> parse_vector_list(const LieAlgebra& g,
                                                  const std::string& exprs);

// Renders v over the basis names, inverse-compatible with parse_vector_expr.
std::string format_vector(const LieAlgebra& g, const Vec& v);

}  // namespace rk
