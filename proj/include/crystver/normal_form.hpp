#pragma once

#include <optional>

#include "crystver/matrix.hpp"

namespace crystver::exact {

struct HnfResult {
  IntMatrix h;  ///< row Hermite normal form of the input
  IntMatrix u;  ///< unimodular, u * a = h
};

struct SnfResult {
  IntMatrix d;       ///< diagonal with d_1 | d_2 | ... | d_rank, all positive
  IntMatrix u;       ///< unimodular
  IntMatrix v;       ///< unimodular, u * a * v = d
  std::size_t rank = 0;
};

/// Row Hermite normal form. Pivots positive, entries above each pivot
/// reduced into [0, pivot). Reduction picks the minimal-absolute-value
/// pivot candidate to limit coefficient growth.
HnfResult hnf(const IntMatrix& a);

/// Smith normal form with both transforms.
SnfResult snf(const IntMatrix& a);

/// Exact integer solution of a*x = b, or nullopt when none exists.
/// Throws InputError on a shape mismatch.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Exact inverse; throws SingularMatrix.
RatMatrix rat_inverse(const RatMatrix& a);

}  // namespace crystver::exact
