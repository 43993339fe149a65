#include <doctest.h>

#include <random>
#include <set>

#include "flagtangle/gfq.hpp"

using namespace flagtangle;

TEST_CASE("field axioms hold for every supported size") {
    // FieldSpec::get runs the exhaustive axiom check at construction
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        const FieldSpec& f = FieldSpec::get(q);
        CHECK(f.q() == q);
        for (int a = 1; a < q; ++a) CHECK(f.mul(static_cast<Fq>(a), f.inv(static_cast<Fq>(a))) == 1);
    }
    CHECK_THROWS(FieldSpec::get(6));
}

TEST_CASE("mat_mul examples") {
    const FieldSpec& f2 = FieldSpec::get(2);
    FqMatrix e12 = FqMatrix::unit(2, 2, 0, 1, f2);
    FqMatrix e21 = FqMatrix::unit(2, 2, 1, 0, f2);
    CHECK(e12 * e21 == FqMatrix::unit(2, 2, 0, 0, f2));

    FqMatrix m(2, 3, f2);
    m.set(0, 0, 1);
    m.set(1, 2, 1);
    CHECK(FqMatrix::identity(2, f2) * m == m);

    FqMatrix u(2, 2, f2);
    u.set(0, 0, 1);
    u.set(0, 1, 1);
    u.set(1, 1, 1);
    CHECK(u * u == FqMatrix::identity(2, f2));
    CHECK_THROWS(m * u);
}

TEST_CASE("rank examples and rank-nullity") {
    const FieldSpec& f2 = FieldSpec::get(2);
    CHECK(FqMatrix(3, 3, f2).rank() == 0);
    CHECK(FqMatrix::identity(4, f2).rank() == 4);
    FqMatrix ones(2, 2, f2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j, 1);
    CHECK(ones.rank() == 1);

    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        int q = std::vector<int>{2, 3, 4, 5}[t % 4];
        const FieldSpec& f = FieldSpec::get(q);
        int r = 1 + t % 4, c = 1 + (t / 3) % 5;
        FqMatrix a(r, c, f);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                a.set(i, j, static_cast<Fq>(std::uniform_int_distribution<int>(0, q - 1)(rng)));
        CHECK(a.rank() + static_cast<int>(nullspace(a).size()) == c);
    }
}

TEST_CASE("solve_affine examples") {
    const FieldSpec& f2 = FieldSpec::get(2);
    // x = 0 over F_2
    FqMatrix a(1, 1, f2);
    a.set(0, 0, 1);
    auto sol = solve_affine(a, {0});
    REQUIRE(sol.has_value());
    CHECK(sol->count() == 1);
    CHECK(sol->particular == std::vector<Fq>{0});

    // 0 = 0 in one unknown over F_3
    const FieldSpec& f3 = FieldSpec::get(3);
    auto sol3 = solve_affine(FqMatrix(1, 1, f3), {0});
    REQUIRE(sol3.has_value());
    CHECK(sol3->count() == 3);

    // x + y = 1, x = y over F_2 is inconsistent (x = y forces x+y = 0)
    FqMatrix b(2, 2, f2);
    b.set(0, 0, 1);
    b.set(0, 1, 1);
    b.set(1, 0, 1);
    b.set(1, 1, 1);
    CHECK_FALSE(solve_affine(b, {1, 0}).has_value());
}

TEST_CASE("enumerate_affine yields distinct valid assignments") {
    for (int q : {2, 3, 5}) {
        const FieldSpec& f = FieldSpec::get(q);
        FqMatrix a(2, 4, f);
        a.set(0, 0, 1);
        a.set(0, 2, 1);
        a.set(1, 1, static_cast<Fq>(q - 1));
        std::vector<Fq> rhs = {1, 0};
        auto sol = solve_affine(a, rhs);
        REQUIRE(sol.has_value());
        std::set<std::vector<Fq>> seen;
        sol->enumerate([&](const std::vector<Fq>& x) {
            CHECK(seen.insert(x).second);
            for (int r = 0; r < a.rows(); ++r) {
                Fq acc = 0;
                for (int c = 0; c < a.cols(); ++c) acc = f.add(acc, f.mul(a.at(r, c), x[c]));
                CHECK(acc == rhs[r]);
            }
        });
        CHECK(seen.size() == sol->count());
    }
}

TEST_CASE("matrix inverse") {
    std::mt19937 rng(9);
    for (int q : {2, 3, 4, 9}) {
        const FieldSpec& f = FieldSpec::get(q);
        for (int t = 0; t < 20; ++t) {
            int n = 1 + t % 4;
            FqMatrix a(n, n, f);
            do {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        a.set(i, j, static_cast<Fq>(std::uniform_int_distribution<int>(0, q - 1)(rng)));
            } while (a.rank() < n);
            CHECK(a * a.inverse() == FqMatrix::identity(n, f));
        }
    }
}
