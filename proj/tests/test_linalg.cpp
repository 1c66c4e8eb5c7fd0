#include <catch2/catch_amalgamated.hpp>

#include <eds/linalg.hpp>
#include <eds/rng.hpp>

#include "oracles.hpp"

using namespace eds;

TEST_CASE("rref produces identity-led echelon form on a full-rank matrix") {
    RatMat m{{Rat(2), Rat(1)}, {Rat(4), Rat(3)}};
    std::vector<std::size_t> piv;
    CHECK(rref(m, &piv) == 2);
    CHECK(piv == std::vector<std::size_t>{0, 1});
    CHECK(m == RatMat::identity(2));
}

TEST_CASE("rank agrees with rank-nullity against kernel_basis on random matrices") {
    Rng rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t r = 1 + rng.uniform(0, 5), c = 1 + rng.uniform(0, 5);
        RatMat m = oracle::random_mat(rng, r, c);
        std::size_t rk = rank(m);
        auto ker = kernel_basis(m);
        CHECK(rk + ker.size() == c);
        for (const auto& v : ker) CHECK(oracle::is_zero_vec(m.apply(v)));
        // Kernel vectors are independent: stack them and check full rank.
        if (!ker.empty()) CHECK(rank(from_rows(ker, c)) == ker.size());
    }
}

TEST_CASE("det_bareiss matches the cofactor-expansion oracle") {
    Rng rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + rng.uniform(0, 4);
        RatMat m = oracle::random_mat(rng, n, n, -6, 6);
        // Mix in fractions to exercise the denominator clearing.
        for (std::size_t i = 0; i < n; ++i) m(i, 0) /= Rat(1 + (int)rng.uniform(1, 5));
        CHECK(det_bareiss(m) == oracle::det_cofactor(m));
    }
}

TEST_CASE("det_bareiss handles singular and permutation cases") {
    RatMat sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(det_bareiss(sing) == Rat(0));
    RatMat perm{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CHECK(det_bareiss(perm) == Rat(-1));
    RatMat zlead{{Rat(0), Rat(2), Rat(1)}, {Rat(3), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(5)}};
    CHECK(det_bareiss(zlead) == oracle::det_cofactor(zlead));
}

TEST_CASE("solve returns a particular solution exactly when consistent") {
    Rng rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t r = 1 + rng.uniform(0, 4), c = 1 + rng.uniform(0, 4);
        RatMat a = oracle::random_mat(rng, r, c);
        RatVec x0 = rng.rat_vec(c, -5, 5);
        RatVec b = a.apply(x0);  // consistent by construction
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(a.apply(*x) == b);
    }
    // An inconsistent system must be reported, not "solved".
    RatMat a{{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    CHECK_FALSE(solve(a, {Rat(1), Rat(3)}).has_value());
}

TEST_CASE("inverse round-trips and refuses singular input") {
    Rng rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        std::size_t n = 1 + rng.uniform(0, 3);
        RatMat m = oracle::random_mat(rng, n, n, -7, 7);
        if (det_bareiss(m) == 0) continue;
        auto inv = inverse(m);
        REQUIRE(inv.has_value());
        CHECK((m * *inv) == RatMat::identity(n));
        CHECK((*inv * m) == RatMat::identity(n));
    }
    RatMat sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("in_span answers membership in a row span") {
    std::vector<RatVec> rows = {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}};
    CHECK(in_span(rows, {Rat(2), Rat(3), Rat(5)}));
    CHECK_FALSE(in_span(rows, {Rat(0), Rat(0), Rat(1)}));
    CHECK(in_span({}, {Rat(0), Rat(0)}));
    CHECK_FALSE(in_span({}, {Rat(1), Rat(0)}));
}

TEST_CASE("kernel_basis is deterministic: free coordinates carry the unit") {
    RatMat m{{Rat(1), Rat(2), Rat(3)}};
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 2);
    CHECK(ker[0] == RatVec{Rat(-2), Rat(1), Rat(0)});
    CHECK(ker[1] == RatVec{Rat(-3), Rat(0), Rat(1)});
}
