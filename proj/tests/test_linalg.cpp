#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tropcurves/linalg.hpp"

using namespace tropcurves;
using testsupport::cofactor_det;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long>> rows) {
    QMat m;
    for (const auto& r : rows) {
        QVec row;
        for (long x : r) row.push_back(Rat(x));
        m.push_back(std::move(row));
    }
    return m;
}

QVec qvec(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

}  // namespace

TEST_CASE("solve_square on a regular system") {
    // 2x + y = 5, x - y = 1  =>  x = 2, y = 1.
    LinSolveResult r = solve_square(qmat({{2, 1}, {1, -1}}), qvec({5, 1}));
    REQUIRE(r.kind == SolveKind::Unique);
    CHECK(r.solution == qvec({2, 1}));

    // Fractional solution.
    LinSolveResult f = solve_square(qmat({{2, 0}, {0, 3}}), qvec({1, 1}));
    REQUIRE(f.kind == SolveKind::Unique);
    CHECK(f.solution == QVec{make_rat(1, 2), make_rat(1, 3)});
}

TEST_CASE("solve_square classifies singular systems") {
    CHECK(solve_square(qmat({{1, 1}, {2, 2}}), qvec({1, 3})).kind ==
          SolveKind::Inconsistent);
    CHECK(solve_square(qmat({{1, 1}, {2, 2}}), qvec({1, 2})).kind ==
          SolveKind::Underdetermined);
    CHECK(solve_square(qmat({{0, 0}, {0, 0}}), qvec({0, 0})).kind ==
          SolveKind::Underdetermined);
}

TEST_CASE("determinant examples") {
    CHECK(det_int(IMat{{1, 2}, {3, 4}}) == Int(-2));
    CHECK(det_int(IMat{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == Int(30));
    CHECK(det_int(IMat{{1, 1, 1}, {1, 1, 1}, {0, 2, 3}}) == Int(0));
    CHECK(det_int(IMat{}) == Int(1));
    CHECK(det_int(IMat{{-7}}) == Int(-7));
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::uniform_int_distribution<int> size(1, 4);
    for (int iter = 0; iter < 200; ++iter) {
        int n = size(rng);
        IMat a(n, IVec(n));
        std::vector<std::vector<Int>> az(n, std::vector<Int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int v = entry(rng);
                a[i][j] = v;
                az[i][j] = v;
            }
        CHECK(det_int(a) == cofactor_det(az));
    }
}

TEST_CASE("rank over the rationals") {
    CHECK(rank_q(qmat({{1, 2}, {2, 4}})) == 1);
    CHECK(rank_q(qmat({{1, 0}, {0, 1}})) == 2);
    CHECK(rank_q(qmat({{0, 0}, {0, 0}})) == 0);
    CHECK(rank_q(qmat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
    CHECK(rank_q(QMat{}) == 0);
}

TEST_CASE("integer kernel of a covector is the saturated orthogonal lattice") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(-6, 6);
    int tested = 0;
    while (tested < 100) {
        IVec v = {entry(rng), entry(rng), entry(rng)};
        if (!ivec_is_primitive(v)) continue;
        ++tested;
        IMat k = integer_kernel({v});
        REQUIRE(k.size() == 2);
        for (const auto& w : k)
            CHECK(w[0] * v[0] + w[1] * v[1] + w[2] * v[2] == 0);
        // The 2x2 minors of the kernel basis are +-v up to order, so their
        // gcd is 1 exactly when the basis spans the full orthogonal lattice.
        std::int64_t m0 = k[0][1] * k[1][2] - k[0][2] * k[1][1];
        std::int64_t m1 = k[0][2] * k[1][0] - k[0][0] * k[1][2];
        std::int64_t m2 = k[0][0] * k[1][1] - k[0][1] * k[1][0];
        std::int64_t g = std::gcd(std::gcd(std::abs(m0), std::abs(m1)), std::abs(m2));
        CHECK(g == 1);
    }
}

TEST_CASE("integer kernel spans the nullspace for random matrices") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> entry(-4, 4);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int iter = 0; iter < 100; ++iter) {
        int m = dim(rng), n = dim(rng) + 1;
        IMat a(m, IVec(n));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        IMat k = integer_kernel(a);
        // Dimension: |kernel| = n - rank(A).
        QMat aq;
        for (const auto& row : a) {
            QVec r;
            for (auto x : row) r.push_back(Rat(x));
            aq.push_back(std::move(r));
        }
        CHECK(static_cast<int>(k.size()) == n - rank_q(aq));
        // Membership: A w = 0 for every basis vector.
        for (const auto& w : k)
            for (const auto& row : a) {
                std::int64_t dot = 0;
                for (int j = 0; j < n; ++j) dot += row[j] * w[j];
                CHECK(dot == 0);
            }
        // Independence of the basis vectors.
        QMat kq;
        for (const auto& w : k) {
            QVec r;
            for (auto x : w) r.push_back(Rat(x));
            kq.push_back(std::move(r));
        }
        CHECK(rank_q(kq) == static_cast<int>(k.size()));
    }
}

TEST_CASE("vector helpers") {
    CHECK(ivec_gcd({4, -6, 8}) == 2);
    CHECK(ivec_gcd({0, 0}) == 0);
    CHECK(ivec_is_primitive({3, 5}));
    CHECK_FALSE(ivec_is_primitive({2, 4}));
    CHECK_FALSE(ivec_is_primitive({0, 0}));
    CHECK(qvec_add(qvec({1, 2}), qvec({3, -2})) == qvec({4, 0}));
    CHECK(qvec_scale(Rat(2), qvec({1, -3})) == qvec({2, -6}));
    CHECK(qvec_is_zero(qvec({0, 0})));
    CHECK_FALSE(qvec_is_zero(qvec({0, 1})));
}
