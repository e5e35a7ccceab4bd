#pragma once

#include <vector>

#include "tropcurves/rational.hpp"

namespace tropcurves {

using QMat = std::vector<QVec>;   // row-major rational matrix
using IMat = std::vector<IVec>;   // row-major integer matrix
using ZMat = std::vector<std::vector<Int>>;

enum class SolveKind { Unique, Inconsistent, Underdetermined };

struct LinSolveResult {
    SolveKind kind = SolveKind::Inconsistent;
    QVec solution;  // meaningful when kind == Unique
};

// Solves the square system A x = b by exact Gaussian elimination.
LinSolveResult solve_square(const QMat& A, const QVec& b);

// Exact determinant of a square integer matrix (fraction-free Bareiss
// elimination).
Int det_int(ZMat A);
Int det_int(const IMat& A);

// Rank over Q.
int rank_q(QMat A);

// Basis of the integer kernel {w in Z^n : A w = 0} of an m x n integer
// matrix, computed by unimodular column reduction.  The kernel of an integer
// matrix is a saturated sublattice, so any basis spans it over Z.
IMat integer_kernel(const IMat& A);

}  // namespace tropcurves
