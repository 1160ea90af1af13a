#pragma once

// Exact integer matrix utilities: Smith normal form with transformation
// matrices, Hermite-style column reduction, rank, and integer system solving.
// Everything is over mpz_class; nothing here ever rounds.

#include <gmpxx.h>
#include <optional>
#include <vector>

namespace binhk {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;  // row-major

ZMat zmat_identity(std::size_t n);
ZMat zmat_mul(const ZMat &a, const ZMat &b);
ZVec zmat_apply(const ZMat &a, const ZVec &x);
bool zmat_equal(const ZMat &a, const ZMat &b);
Int zmat_det(ZMat a);  // exact determinant, fraction-free elimination

struct SmithResult {
  // u * a * v = d, with u (m x m) and v (n x n) unimodular and d diagonal
  // satisfying d[0] | d[1] | ... ; diagonal entries are nonnegative.
  ZMat u, d, v;
  std::size_t rank = 0;             // number of nonzero diagonal entries
  std::vector<Int> invariants;      // the nonzero diagonal entries, in order
};

SmithResult smith_normal_form(const ZMat &a);

// Rank of the row lattice (= rank over Q).
std::size_t zmat_rank(const ZMat &a);

// Basis of the lattice spanned by the rows of a, as rows of the result
// (column-style Hermite reduction applied to the row span). The basis has
// zmat_rank(a) rows.
ZMat lattice_row_basis(const ZMat &a);

// Solve x * basis = target over the integers, where basis has full row rank.
// Returns std::nullopt when target is not in the row lattice.
std::optional<ZVec> lattice_coordinates(const ZMat &basis, const ZVec &target);

}  // namespace binhk
