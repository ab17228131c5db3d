#pragma once

// Overflow-checked 64-bit pre-screening for candidate subspaces. The
// structure constants are scaled by their common denominator so integer
// row reduction decides rank and membership exactly; any overflow makes
// the caller fall back to full rational arithmetic for that candidate,
// so screening never changes results, only speed.

#include "rk/liealg.hpp"

#include <optional>
#include <vector>

namespace rk::screen {

using IVec = std::vector<long long>;

class IntModel {
 public:
  // nullopt when a scaled structure constant does not fit in int64.
  static std::optional<IntModel> build(const LieAlgebra& g);

  int dim() const { return n_; }

  // [u, w] under the scaled table; nullopt on overflow.
  std::optional<IVec> bracket(const IVec& u, const IVec& w) const;

  // Scaled spanning rows of [g,g] (brackets of basis pairs, zero rows kept
  // out), fixed at construction.
  const std::vector<IVec>& derived_gens() const { return derived_gens_; }

 private:
  int n_ = 0;
  std::vector<IVec> table_;  // row (i,j), i < j, in pair-major order
  std::vector<IVec> derived_gens_;
};

// Fraction-free row echelon rank of the span of `rows`; nullopt on overflow.
std::optional<int> int_rank(std::vector<IVec> rows);

// Reduced integer echelon form usable for repeated membership tests.
class IntEchelon {
 public:
  // nullopt on overflow.
  static std::optional<IntEchelon> reduce(const std::vector<IVec>& rows);
  int rank() const { return static_cast<int>(rows_.size()); }
  // v in the row span? nullopt on overflow.
  std::optional<bool> contains(const IVec& v) const;

 private:
  std::vector<IVec> rows_;   // echelon rows, pivot columns increasing
  std::vector<int> pivots_;  // pivot column of each row
};

}  // namespace rk::screen
