#include "tropcurves/linalg.hpp"

#include <algorithm>

#include "tropcurves/errors.hpp"

namespace tropcurves {

LinSolveResult solve_square(const QMat& A, const QVec& b) {
    const size_t n = A.size();
    if (b.size() != n) throw DimensionMismatch("solve_square: rhs size != row count");
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("solve_square: matrix not square");

    // Augmented elimination to row echelon form.
    QMat M(n, QVec(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n] = b[i];
    }
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t p = row;
        while (p < n && M[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(M[p], M[row]);
        for (size_t i = row + 1; i < n; ++i) {
            if (M[i][col] == 0) continue;
            Rat f = M[i][col] / M[row][col];
            for (size_t j = col; j <= n; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t i = row; i < n; ++i)
        if (M[i][n] != 0) return LinSolveResult{SolveKind::Inconsistent, {}};
    if (row < n) return LinSolveResult{SolveKind::Underdetermined, {}};

    // Back substitution (full rank: pivot in every column).
    QVec x(n, Rat(0));
    for (size_t i = n; i-- > 0;) {
        const int col = pivot_col_of_row[i];
        Rat s = M[i][n];
        for (size_t j = col + 1; j < n; ++j) s -= M[i][j] * x[j];
        x[col] = s / M[i][col];
    }
    return LinSolveResult{SolveKind::Unique, std::move(x)};
}

Int det_int(ZMat A) {
    const size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("det_int: matrix not square");
    if (n == 0) return Int(1);

    // Bareiss fraction-free elimination: all divisions are exact.
    int sign = 1;
    Int prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && A[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(A[p], A[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign > 0 ? A[n - 1][n - 1] : -A[n - 1][n - 1];
}

Int det_int(const IMat& A) {
    ZMat Z(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
        Z[i].reserve(A[i].size());
        for (auto x : A[i]) Z[i].emplace_back(static_cast<long>(x));
    }
    return det_int(std::move(Z));
}

int rank_q(QMat A) {
    if (A.empty()) return 0;
    const size_t m = A.size();
    const size_t n = A[0].size();
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t p = row;
        while (p < m && A[p][col] == 0) ++p;
        if (p == m) continue;
        std::swap(A[p], A[row]);
        for (size_t i = row + 1; i < m; ++i) {
            if (A[i][col] == 0) continue;
            Rat f = A[i][col] / A[row][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
        }
        ++row;
    }
    return static_cast<int>(row);
}

IMat integer_kernel(const IMat& A) {
    if (A.empty()) throw DimensionMismatch("integer_kernel: empty matrix has no column count");
    const size_t m = A.size();
    const size_t n = A[0].size();
    for (const auto& row : A)
        if (row.size() != n) throw DimensionMismatch("integer_kernel: ragged matrix");

    // Work on exact big integers; column operations are mirrored on U.
    ZMat M(m, std::vector<Int>(n));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) M[i][j] = Int(static_cast<long>(A[i][j]));
    ZMat U(n, std::vector<Int>(n, Int(0)));
    for (size_t j = 0; j < n; ++j) U[j][j] = 1;

    auto col_swap = [&](size_t a, size_t b) {
        for (size_t i = 0; i < m; ++i) std::swap(M[i][a], M[i][b]);
        for (size_t i = 0; i < n; ++i) std::swap(U[i][a], U[i][b]);
    };
    auto col_axpy = [&](const Int& q, size_t src, size_t dst) {
        // column dst -= q * column src
        for (size_t i = 0; i < m; ++i) M[i][dst] -= q * M[i][src];
        for (size_t i = 0; i < n; ++i) U[i][dst] -= q * U[i][src];
    };

    size_t col = 0;
    for (size_t i = 0; i < m && col < n; ++i) {
        // Euclidean reduction across columns >= col on row i.
        while (true) {
            size_t best = n;
            for (size_t c = col; c < n; ++c)
                if (M[i][c] != 0 && (best == n || cmp(abs(M[i][c]), abs(M[i][best])) < 0))
                    best = c;
            if (best == n) break;  // row i already zero on the open columns
            col_swap(col, best);
            bool reduced_all = true;
            for (size_t c = col + 1; c < n; ++c) {
                if (M[i][c] == 0) continue;
                Int q = M[i][c] / M[i][col];  // truncated division
                if (q != 0) col_axpy(q, col, c);
                if (M[i][c] != 0) reduced_all = false;
            }
            if (reduced_all) {
                ++col;
                break;
            }
        }
    }

    // Columns from `col` on are zero in M; the matching columns of U span
    // the kernel lattice.
    IMat kernel;
    for (size_t c = col; c < n; ++c) {
        IVec w(n);
        for (size_t i = 0; i < n; ++i) {
            if (!U[i][c].fits_slong_p())
                throw DimensionMismatch("integer_kernel: basis entry out of range");
            w[i] = U[i][c].get_si();
        }
        kernel.push_back(std::move(w));
    }
    return kernel;
}

}  // namespace tropcurves
