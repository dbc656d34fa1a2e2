#include <catch2/catch_amalgamated.hpp>

#include <latidx/exact.hpp>

#include "helpers.hpp"

using namespace latidx;

TEST_CASE("det_exact basics", "[exact]") {
    CHECK(det_exact(IntMatrix::identity(3)) == 1);

    IntMatrix a(2, 2);
    a(0, 0) = 2; a(0, 1) = 1;
    a(1, 0) = 1; a(1, 1) = 2;
    CHECK(det_exact(a) == 3);

    IntMatrix z(2, 3);
    CHECK_THROWS_AS(det_exact(z), dimension_error);
}

TEST_CASE("det_exact matches Laplace expansion on random 6x6", "[exact]") {
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = oracle::random_matrix(rng, 6, -9, 9);
        CHECK(det_exact(m) == oracle::det_laplace(m));
    }
}

TEST_CASE("det_exact is multiplicative", "[exact]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix a = oracle::random_matrix(rng, 4, -5, 5);
        IntMatrix b = oracle::random_matrix(rng, 4, -5, 5);
        CHECK(det_exact(a * b) == det_exact(a) * det_exact(b));
    }
}

TEST_CASE("rank_exact basics", "[exact]") {
    CHECK(rank_exact(IntMatrix(3, 3)) == 0);
    CHECK(rank_exact(IntMatrix::identity(5)) == 5);

    // projection matrices x x^T of the three minimal pairs of the hexagonal
    // Gram [[2,1],[1,2]], flattened to (x1^2, x1 x2, x2^2): rank must be the
    // full 3 = n(n+1)/2.
    IntMatrix p(3, 3);
    p(0, 0) = 1; p(0, 1) = 0; p(0, 2) = 0;  // (1,0)
    p(1, 0) = 0; p(1, 1) = 0; p(1, 2) = 1;  // (0,1)
    p(2, 0) = 1; p(2, 1) = -1; p(2, 2) = 1; // (1,-1)
    CHECK(rank_exact(p) == 3);
}

TEST_CASE("rank_exact invariant under row permutation and transposition", "[exact]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m = oracle::random_matrix(rng, 5, -3, 3);
        // kill a row to get interesting ranks sometimes
        if (trial % 3 == 0)
            for (std::size_t j = 0; j < 5; ++j) m(2, j) = m(0, j) + m(1, j);
        std::size_t r = rank_exact(m);
        CHECK(rank_exact(m.transposed()) == r);

        IntMatrix perm(5, 5);
        std::vector<std::size_t> order{4, 2, 0, 1, 3};
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) perm(i, j) = m(order[i], j);
        CHECK(rank_exact(perm) == r);
    }
}

TEST_CASE("smith_invariants basics", "[exact]") {
    auto d = smith_invariants(IntMatrix::identity(4));
    CHECK(d == std::vector<Int>{1, 1, 1, 1});

    IntMatrix diag(3, 3);
    diag(0, 0) = 1; diag(1, 1) = 1; diag(2, 2) = 2;
    CHECK(smith_invariants(diag) == std::vector<Int>{1, 1, 2});

    IntMatrix sing(2, 2);
    sing(0, 0) = 1; sing(0, 1) = 2;
    sing(1, 0) = 2; sing(1, 1) = 4;
    CHECK_THROWS_AS(smith_invariants(sing), singular_matrix_error);
}

TEST_CASE("smith_invariants divide in a chain and multiply to |det|", "[exact]") {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 30) {
        IntMatrix m = oracle::random_matrix(rng, 4, -6, 6);
        Int d = det_exact(m);
        if (d == 0) continue;
        ++done;
        auto inv = smith_invariants(m);
        Int prod(1);
        for (std::size_t i = 0; i < inv.size(); ++i) {
            CHECK(inv[i] > 0);
            if (i > 0) CHECK(inv[i] % inv[i - 1] == 0);
            prod *= inv[i];
        }
        CHECK(prod == abs(d));
    }
}

TEST_CASE("solve_rational basics", "[exact]") {
    IntVec v{3, -1, 7};
    auto x = solve_rational(IntMatrix::identity(3), v);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == Rat(v[i]));

    IntMatrix d2(2, 2);
    d2(0, 0) = 2; d2(1, 1) = 2;
    auto h = solve_rational(d2, IntVec{1, 1});
    CHECK(h[0] == Rat(1, 2));
    CHECK(h[1] == Rat(1, 2));

    IntMatrix sing(2, 2);
    sing(0, 0) = 1; sing(0, 1) = 1;
    sing(1, 0) = 2; sing(1, 1) = 2;
    CHECK_THROWS_AS(solve_rational(sing, IntVec{1, 0}), singular_matrix_error);
}

TEST_CASE("solve_rational residual is exactly zero", "[exact]") {
    std::mt19937_64 rng(31337);
    int done = 0;
    while (done < 30) {
        IntMatrix m = oracle::random_matrix(rng, 5, -8, 8);
        if (det_exact(m) == 0) continue;
        ++done;
        std::uniform_int_distribution<long> dv(-20, 20);
        IntVec v(5);
        for (auto& c : v) c = dv(rng);
        auto x = solve_rational(m, v);
        for (std::size_t i = 0; i < 5; ++i) {
            Rat acc(0);
            for (std::size_t j = 0; j < 5; ++j) acc += Rat(m(i, j)) * x[j];
            CHECK(acc == Rat(v[i]));
        }
        for (const Rat& c : x) CHECK(c.get_den() > 0);
    }
}

TEST_CASE("leading_principal_minors", "[exact]") {
    IntMatrix a3(3, 3);
    long v[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a3(i, j) = v[i][j];
    auto minors = leading_principal_minors(a3);
    REQUIRE(minors.size() == 3);
    CHECK(minors[0] == 2);
    CHECK(minors[1] == 3);
    CHECK(minors[2] == 4);
}
