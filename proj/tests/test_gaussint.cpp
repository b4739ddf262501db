#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gausscobham/gaussint.hpp"
#include "oracles.hpp"

using namespace gausscobham;

TEST_CASE("norm basics") {
    CHECK(GaussInt{}.norm() == 0);
    CHECK(GaussInt{-1, 1}.norm() == 2);
    CHECK(GaussInt{-2, 1}.norm() == 5);
    CHECK(GaussInt{3, -4}.norm() == 25);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 500; ++iter) {
        GaussInt z{static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000};
        GaussInt w{static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000};
        CHECK((z * w).norm() == z.norm() * w.norm());
    }
}

TEST_CASE("text form round trips") {
    for (const char* s : {"0", "1", "-1", "i", "-i", "2i", "-3i", "-1+i", "2-i", "-12+7i", "3-4i"}) {
        GaussInt z = parse_gauss(s);
        CHECK(z.str() == s);
        CHECK(parse_gauss(z.str()) == z);
    }
    CHECK(parse_gauss("+5") == GaussInt{5, 0});
    CHECK(parse_gauss("0+1i") == GaussInt{0, 1});
    CHECK_THROWS_AS(parse_gauss(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("1 + i"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("i2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("1+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss("abc"), std::invalid_argument);
    for (const auto& z : oracles::disk(60)) CHECK(parse_gauss(z.str()) == z);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("2") == 2);
    CHECK(parse_rat("-6/4") == Rat(-3, 2));
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}

TEST_CASE("divmod_nearest pinned values") {
    auto [q, r] = divmod_nearest(GaussInt{7, 0}, GaussInt{2, 0});
    CHECK(q == GaussInt{3, 0});  // 3.5 rounds toward -infinity
    CHECK(r == GaussInt{1, 0});

    auto [q0, r0] = divmod_nearest(GaussInt{}, GaussInt{-1, 1});
    CHECK(q0 == GaussInt{});
    CHECK(r0 == GaussInt{});

    auto [q5, r5] = divmod_nearest(GaussInt{5, 0}, GaussInt{-1, 1});
    CHECK(GaussInt{5, 0} == q5 * GaussInt{-1, 1} + r5);
    CHECK(r5.norm() < 2);

    CHECK_THROWS_AS(divmod_nearest(GaussInt{1, 0}, GaussInt{}), std::invalid_argument);
}

TEST_CASE("divmod_nearest against the scanning oracle") {
    auto zs = oracles::disk(800);  // contains the 41x41 grid
    for (const auto& g : oracles::disk(25)) {
        if (g.norm() < 2) continue;
        for (const auto& z : zs) {
            if (abs(z.re) > 20 || abs(z.im) > 20) continue;
            auto [q, r] = divmod_nearest(z, g);
            CHECK(z == q * g + r);
            CHECK(r.norm() < g.norm());
            auto [oq, orr] = oracles::divmod_scan(z, g);
            CHECK(q == oq);
            CHECK(r == orr);
        }
    }
}

TEST_CASE("root-of-integer criterion") {
    CHECK(is_root_of_integer(GaussInt{-1, 1}));
    CHECK(GaussInt{-1, 1}.pow(4) == GaussInt{-4, 0});
    CHECK_FALSE(is_root_of_integer(GaussInt{1, 2}));
    for (unsigned long j = 1; j <= 16; ++j) CHECK(GaussInt{1, 2}.pow(j).im != 0);
    CHECK(is_root_of_integer(GaussInt{3, 0}));
    CHECK(is_root_of_integer(GaussInt{0, -5}));
    CHECK(is_root_of_integer(GaussInt{2, -2}));
    CHECK_THROWS_AS(is_root_of_integer(GaussInt{}), std::invalid_argument);
}

TEST_CASE("positive criterion always has a witness power of exponent <= 4") {
    for (const auto& z : oracles::disk(100)) {
        if (z.is_zero()) continue;
        if (!is_root_of_integer(z)) continue;
        bool witness = false;
        for (unsigned long j = 1; j <= 4 && !witness; ++j) witness = z.pow(j).im == 0;
        CHECK(witness);
    }
}

TEST_CASE("canonical associates") {
    CHECK(canonical_associate(GaussInt{1, 1}) == GaussInt{1, 1});
    CHECK(canonical_associate(GaussInt{2, -1}) == GaussInt{1, 2});
    CHECK(canonical_associate(GaussInt{-3, 0}) == GaussInt{3, 0});
    CHECK(canonical_associate(GaussInt{0, 7}) == GaussInt{7, 0});
}

TEST_CASE("factor pinned examples") {
    auto f2 = factor(GaussInt{2, 0});
    CHECK(f2.unit == GaussInt{0, -1});
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0] == std::pair<GaussInt, unsigned long>{GaussInt{1, 1}, 2});
    CHECK(f2.reconstruct() == GaussInt{2, 0});

    auto f5 = factor(GaussInt{5, 0});
    REQUIRE(f5.factors.size() == 2);
    // The canonical associates of the conjugate prime pair 2+i, 2-i.
    CHECK(f5.factors[0].first == canonical_associate(GaussInt{2, -1}));
    CHECK(f5.factors[1].first == GaussInt{2, 1});
    CHECK(f5.reconstruct() == GaussInt{5, 0});

    auto fi = factor(GaussInt{0, 1});
    CHECK(fi.unit == GaussInt{0, 1});
    CHECK(fi.factors.empty());

    CHECK_THROWS_AS(factor(GaussInt{}), std::invalid_argument);
}

TEST_CASE("factor reconstructs every z with norm up to 10^4") {
    for (const auto& z : oracles::disk(10000)) {
        if (z.is_zero()) continue;
        auto f = factor(z);
        CHECK(f.unit.is_unit());
        CHECK(f.reconstruct() == z);
        for (const auto& [p, e] : f.factors) {
            CHECK(p.re > 0);
            CHECK(p.im >= 0);
            CHECK(e >= 1);
        }
    }
}

TEST_CASE("multiplicative independence pinned examples") {
    auto r1 = multiplicatively_independent(GaussInt{-1, 1}, GaussInt{-2, 1});
    CHECK(r1.independent);

    GaussInt a{1, 2};
    auto r2 = multiplicatively_independent(a, a.pow(3));
    CHECK_FALSE(r2.independent);
    CHECK(a.pow(r2.j) == a.pow(3).pow(r2.k));
    CHECK(r2.j == 3);
    CHECK(r2.k == 1);

    auto r3 = multiplicatively_independent(GaussInt{1, 1}, GaussInt{-1, 1});
    CHECK_FALSE(r3.independent);
    CHECK(r3.j == 4);
    CHECK(r3.k == 4);
    CHECK(GaussInt{1, 1}.pow(4) == GaussInt{-1, 1}.pow(4));

    CHECK_THROWS_AS(multiplicatively_independent(GaussInt{0, 1}, GaussInt{2, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(multiplicatively_independent(GaussInt{2, 0}, GaussInt{}), std::invalid_argument);
}

TEST_CASE("independence decision agrees with the exhaustive power scan") {
    auto pts = oracles::disk(10);
    for (const auto& a : pts) {
        if (a.norm() <= 1) continue;
        for (const auto& b : pts) {
            if (b.norm() <= 1) continue;
            auto verdict = multiplicatively_independent(a, b);
            auto scan = oracles::dependence_scan(a, b, 12);
            if (scan) {
                CHECK_FALSE(verdict.independent);
                CHECK(a.pow(verdict.j) == b.pow(verdict.k));
            } else {
                // The decision procedure may certify dependence only with a
                // verified identity; at these norms exponents stay small.
                if (!verdict.independent) CHECK(a.pow(verdict.j) == b.pow(verdict.k));
                CHECK(verdict.independent == !scan.has_value());
            }
        }
    }
}

TEST_CASE("gauss_gcd divides both arguments") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        GaussInt a{static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20};
        GaussInt b{static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20};
        if (a.is_zero() && b.is_zero()) continue;
        GaussInt g = gauss_gcd(a, b);
        CHECK_FALSE(g.is_zero());
        CHECK(divides(g, a));
        CHECK(divides(g, b));
    }
}
