#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gausscobham/periodicity.hpp"
#include "oracles.hpp"

using namespace gausscobham;

namespace {

// Step-periodic but not periodic: an 8-class coloring of the lattice
// <1+4i, 1-4i> on the points with norm <= 29, with the color at -5 flipped.
// All four step-neighbors of -5 (and of 5) fall outside the point set, so no
// step can see the flip, while -5 stays congruent to 1.
Configuration flipped_cell_config() {
    Lattice L{GaussInt{1, 4}, GaussInt{1, -4}};
    std::map<GaussInt, std::string> values;
    auto reps = fundamental_domain(L.p1, L.p2);
    for (std::size_t k = 0; k < reps.size(); ++k) values[reps[k]] = std::to_string(k);
    return Configuration::periodic(L, std::move(values), {{GaussInt{-5, 0}, "8"}});
}

Region figure_points() {
    // Rational radius 27/5 captures exactly the lattice points of norm <= 29.
    return Region::ball(GaussInt{}, Rat(27, 5));
}

Configuration checkerboard_config() {
    Lattice L{GaussInt{2, 0}, GaussInt{0, 2}};
    std::map<GaussInt, std::string> values;
    for (const auto& rep : fundamental_domain(L.p1, L.p2))
        values[rep] = mod_floor(rep.re + rep.im, 2).get_str();
    return Configuration::periodic(L, std::move(values));
}

}  // namespace

TEST_CASE("rational square root bounds") {
    CHECK(sqrt_lower(Rat(4)) == 2);
    CHECK(sqrt_upper(Rat(4)) == 2);
    CHECK(sqrt_lower(Rat(9, 4)) == Rat(3, 2));
    Rat lo = sqrt_lower(Rat(2)), hi = sqrt_upper(Rat(2));
    CHECK(lo * lo <= 2);
    CHECK(hi * hi >= 2);
    CHECK(hi - lo < Rat(1, 1000000));
}

TEST_CASE("lattice congruence pinned values") {
    Lattice fig{GaussInt{1, 4}, GaussInt{1, -4}};
    CHECK(congruent(GaussInt{3, 7}, GaussInt{3, 7}, fig));
    CHECK(congruent(GaussInt{-5, 0}, GaussInt{1, 0}, fig));
    CHECK_FALSE(congruent(GaussInt{0, 0}, GaussInt{1, 0}, Lattice{GaussInt{2, 0}, GaussInt{0, 2}}));
    CHECK_THROWS_AS(Lattice(GaussInt{1, 2}, GaussInt{2, 4}), std::invalid_argument);
}

TEST_CASE("congruence is an equivalence relation on a test disk") {
    Lattice L{GaussInt{1, 4}, GaussInt{1, -4}};
    auto pts = oracles::disk(16);
    for (const auto& a : pts) {
        CHECK(congruent(a, a, L));
        for (const auto& b : pts) {
            CHECK(congruent(a, b, L) == congruent(b, a, L));
            CHECK(congruent(a, b, L) == (L.reduce(a) == L.reduce(b)));
        }
    }
}

TEST_CASE("fundamental domains") {
    CHECK(fundamental_domain(GaussInt{1, 0}, GaussInt{0, 1}) == std::vector<GaussInt>{GaussInt{}});
    auto d4 = fundamental_domain(GaussInt{2, 0}, GaussInt{0, 2});
    CHECK(d4.size() == 4);
    auto d8 = fundamental_domain(GaussInt{1, 4}, GaussInt{1, -4});
    CHECK(d8.size() == 8);
    CHECK_THROWS_AS(fundamental_domain(GaussInt{1, 2}, GaussInt{-2, -4}), std::invalid_argument);
}

TEST_CASE("fundamental domain size equals the index for random pairs") {
    std::mt19937_64 rng(23);
    int done = 0;
    while (done < 100) {
        GaussInt p{static_cast<long>(rng() % 15) - 7, static_cast<long>(rng() % 15) - 7};
        GaussInt q{static_cast<long>(rng() % 15) - 7, static_cast<long>(rng() % 15) - 7};
        Int det = p.re * q.im - p.im * q.re;
        if (det == 0 || abs(det) > 50) continue;
        ++done;
        Lattice L{p, q};
        auto dom = fundamental_domain(p, q);
        CHECK(Int(static_cast<long>(dom.size())) == L.index());
        // Every point reduces into the domain.
        for (const auto& z : oracles::disk(20)) {
            GaussInt rep = L.reduce(z);
            CHECK(std::find(dom.begin(), dom.end(), rep) != dom.end());
            CHECK(congruent(z, rep, L));
        }
    }
}

TEST_CASE("rect_period turns a lattice into a rectangular integer period") {
    Lattice fig{GaussInt{1, 4}, GaussInt{1, -4}};
    Int p = rect_period(fig);
    CHECK(congruent(GaussInt{p, 0}, GaussInt{}, fig));
    CHECK(congruent(GaussInt{0, p}, GaussInt{}, fig));
    CHECK(rect_period(Lattice{GaussInt{2, 0}, GaussInt{0, 2}}) == 2);
    CHECK(rect_period(Lattice{GaussInt{1, 0}, GaussInt{0, 1}}) == 1);
}

TEST_CASE("regions and shrinking") {
    Region b = Region::ball(GaussInt{}, 10);
    CHECK(b.contains(GaussInt{10, 0}));
    CHECK_FALSE(b.contains(GaussInt{10, 1}));
    Region same = shrink(b, 0);
    CHECK(same.is_ball());
    CHECK(same.radius() == 10);
    CHECK(same.points() == b.points());

    // Explicit 5x5 square shrunk by 1 leaves the inner 3x3 square.
    std::vector<GaussInt> sq;
    for (long x = 0; x < 5; ++x)
        for (long y = 0; y < 5; ++y) sq.push_back({x, y});
    Region inner = shrink(Region::explicit_set(sq), 1);
    CHECK(inner.points().size() == 9);
    for (const auto& z : inner.points()) {
        CHECK(z.re >= 1);
        CHECK(z.re <= 3);
        CHECK(z.im >= 1);
        CHECK(z.im <= 3);
    }
}

TEST_CASE("figure point set matches the norm bound") {
    Region fig = figure_points();
    for (const auto& z : fig.points()) CHECK(z.norm() <= 29);
    std::size_t count = 0;
    for (const auto& z : oracles::disk(29)) {
        ++count;
        CHECK(fig.contains(z));
    }
    CHECK(fig.points().size() == count);
}

TEST_CASE("step-period without period on the flipped-cell configuration") {
    Configuration cfg = flipped_cell_config();
    Region U = figure_points();
    Lattice L{GaussInt{1, 4}, GaussInt{1, -4}};

    // All four step neighbors of +-5 leave the point set.
    for (const GaussInt z : {GaussInt{5, 0}, GaussInt{-5, 0}})
        for (const GaussInt s : {GaussInt{1, 4}, GaussInt{1, -4}, GaussInt{-1, -4}, GaussInt{-1, 4}})
            CHECK_FALSE(U.contains(z + s));

    CHECK(has_step_period(cfg, L.p1, L.p2, U).holds);

    auto period = has_period(cfg, L, U);
    REQUIRE_FALSE(period.holds);
    const auto& [z1, z2] = *period.counterexample;
    CHECK(congruent(z1, z2, L));
    CHECK(congruent(z1, GaussInt{-5, 0}, L));
    CHECK(cfg.at(z1) != cfg.at(z2));

    // The caption pair itself.
    CHECK(congruent(GaussInt{-5, 0}, GaussInt{1, 0}, L));
    CHECK(cfg.at(GaussInt{-5, 0}) != cfg.at(GaussInt{1, 0}));
}

TEST_CASE("period implies step-period on random instances") {
    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 20; ++iter) {
        long a = 1 + static_cast<long>(rng() % 3);
        long b = 1 + static_cast<long>(rng() % 3);
        Lattice L{GaussInt{a, 0}, GaussInt{0, b}};
        std::map<GaussInt, std::string> values;
        for (const auto& rep : fundamental_domain(L.p1, L.p2))
            values[rep] = std::to_string(rng() % 3);
        Configuration cfg = Configuration::periodic(L, std::move(values));
        Region U = Region::ball(GaussInt{static_cast<long>(rng() % 5) - 2, 0}, Rat(6));
        CHECK(has_period(cfg, L, U).holds);
        CHECK(has_step_period(cfg, L.p1, L.p2, U).holds);
    }
}

TEST_CASE("step-period checker matches a direct double loop") {
    Configuration cfg = flipped_cell_config();
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 10; ++iter) {
        GaussInt p{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3};
        GaussInt q{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3};
        if (p.is_zero() || q.is_zero()) continue;
        Region U = Region::ball(GaussInt{}, Rat(4));
        bool want = true;
        for (const auto& z : U.points())
            for (const GaussInt& s : {p, q}) {
                if (U.contains(z + s) && cfg.at(z) != cfg.at(z + s)) want = false;
                if (U.contains(z - s) && cfg.at(z) != cfg.at(z - s)) want = false;
            }
        CHECK(has_step_period(cfg, p, q, U).holds == want);
    }
}

TEST_CASE("step-period propagates to a period on the shrunk ball") {
    Configuration cfg = checkerboard_config();
    Region U = Region::ball(GaussInt{}, 20);
    auto res = step_to_period(cfg, GaussInt{2, 0}, GaussInt{0, 2}, U);
    CHECK(res.region.is_ball());
    CHECK(res.region.radius() == 16);  // |2| + |2i| = 4 exactly
    CHECK(res.period.holds);

    // The flipped-cell instance: both members of the violating class leave
    // the shrunk region, so the period holds vacuously there.
    Configuration fig = flipped_cell_config();
    auto res2 = step_to_period(fig, GaussInt{1, 4}, GaussInt{1, -4}, figure_points());
    CHECK(res2.period.holds);
    CHECK_FALSE(res2.region.contains(GaussInt{-5, 0}));
    CHECK_FALSE(res2.region.contains(GaussInt{1, 0}));

    CHECK_THROWS_AS(step_to_period(fig, GaussInt{1, 0}, GaussInt{0, 1}, figure_points()),
                    std::invalid_argument);
}

TEST_CASE("step-period propagation on periodic-inside, noisy-outside instances") {
    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 8; ++iter) {
        long pa = 1 + static_cast<long>(rng() % 3), pb = 1 + static_cast<long>(rng() % 3);
        Lattice L{GaussInt{pa, 0}, GaussInt{0, pb}};
        std::map<GaussInt, std::string> values;
        for (const auto& rep : fundamental_domain(L.p1, L.p2))
            values[rep] = std::to_string(rng() % 2);
        Configuration periodic = Configuration::periodic(L, std::move(values));

        Region U = Region::ball(GaussInt{}, 12);
        long half = 20;
        std::vector<std::string> cells;
        for (long r = 0; r < 2 * half + 1; ++r) {
            for (long c = 0; c < 2 * half + 1; ++c) {
                GaussInt z{-half + c, half - r};
                if (U.contains(z))
                    cells.push_back(periodic.at(z));
                else
                    cells.push_back(std::to_string(rng() % 2));
            }
        }
        Configuration cfg =
            Configuration::window(GaussInt{-half, -half}, 2 * half + 1, 2 * half + 1, cells);
        auto res = step_to_period(cfg, L.p1, L.p2, U);
        CHECK(res.period.holds);
    }
}

TEST_CASE("period transfer extends a step-period across overlapping balls") {
    Configuration cfg = checkerboard_config();
    GaussInt p{2, 0}, q{0, 2};
    Region U = Region::ball(GaussInt{}, 12);
    Region V = Region::ball(GaussInt{6, 0}, 12);
    Region merged = transfer_period(cfg, U, p, q, V, p, q);
    CHECK(merged.points().size() > U.points().size());
    CHECK(has_step_period(cfg, p, q, merged).holds);

    // Same ball, same periods: the union adds nothing and stays verified.
    Region same = transfer_period(cfg, U, p, q, U, p, q);
    CHECK(same.points() == U.points());

    Region far = Region::ball(GaussInt{100, 0}, 3);
    CHECK_THROWS_WITH_AS(transfer_period(cfg, U, p, q, far, p, q), doctest::Contains("overlap"),
                         std::invalid_argument);
}

TEST_CASE("inner radius of a ball intersection") {
    auto same = ball_intersection_radius_sq(GaussInt{}, Rat(4), GaussInt{}, Rat(4));
    REQUIRE(same.has_value());
    CHECK(*same == 4);  // identical balls: the ball itself

    auto lens = ball_intersection_radius_sq(GaussInt{}, Rat(1), GaussInt{1, 0}, Rat(1));
    REQUIRE(lens.has_value());
    CHECK(*lens == Rat(1, 4));  // (1 + 1 - 1)/2 squared

    auto tangent = ball_intersection_radius_sq(GaussInt{}, Rat(1), GaussInt{2, 0}, Rat(1));
    REQUIRE(tangent.has_value());
    CHECK(*tangent == 0);

    CHECK_FALSE(ball_intersection_radius_sq(GaussInt{}, Rat(1), GaussInt{5, 0}, Rat(1)).has_value());

    auto inside = ball_intersection_radius_sq(GaussInt{}, Rat(9), GaussInt{1, 0}, Rat(1));
    REQUIRE(inside.has_value());
    CHECK(*inside == 1);  // the smaller ball sits inside the larger
}

TEST_CASE("covering constant") {
    CHECK(covering_check(28));
    CHECK_FALSE(covering_check(27));
    CHECK_FALSE(covering_check(8));
    CHECK(covering_check(1000));
}

TEST_CASE("covering check against a sampled geometric oracle") {
    // Sample the unit cell at resolution 1/64 and compare the worst distance
    // to the nearest corner against 1 - 8/K; the exact integer inequality is
    // authoritative within 1/64 of the threshold.
    double worst = 0;
    for (int i = 0; i <= 64; ++i) {
        for (int j = 0; j <= 64; ++j) {
            double x = i / 64.0, y = j / 64.0;
            double d = 1e9;
            for (int cx = 0; cx <= 1; ++cx)
                for (int cy = 0; cy <= 1; ++cy)
                    d = std::min(d, std::hypot(x - cx, y - cy));
            worst = std::max(worst, d);
        }
    }
    for (unsigned long K = 9; K <= 40; ++K) {
        double threshold = 1.0 - 8.0 / static_cast<double>(K);
        bool sampled = worst < threshold;
        if (std::fabs(threshold - worst) > 1.0 / 64) CHECK(covering_check(K) == sampled);
    }
}

TEST_CASE("detect: checkerboard yields an exception-free lattice refining <2,2i>") {
    Configuration cfg = checkerboard_config();
    auto det = detect_eventual_periodicity(cfg, 8, 16);
    REQUIRE(det.has_value());
    CHECK(det->exceptions.empty());
    // Congruence mod <2,2i> implies congruence mod the found lattice.
    Lattice coarse{GaussInt{2, 0}, GaussInt{0, 2}};
    CHECK(congruent(GaussInt{2, 0}, GaussInt{}, det->lattice));
    CHECK(congruent(GaussInt{0, 2}, GaussInt{}, det->lattice));
    for (const auto& z : oracles::disk(40))
        if (congruent(z, GaussInt{}, coarse)) CHECK(cfg.at(z) == cfg.at(GaussInt{}));
}

TEST_CASE("detect: recovers period and exceptions of a flipped configuration") {
    Lattice L{GaussInt{3, 0}, GaussInt{0, 3}};
    std::map<GaussInt, std::string> values;
    int k = 0;
    for (const auto& rep : fundamental_domain(L.p1, L.p2)) values[rep] = std::to_string(k++);
    Configuration cfg = Configuration::periodic(L, std::move(values), {{GaussInt{1, 1}, "9"}});
    auto det = detect_eventual_periodicity(cfg, 10, 20);
    REQUIRE(det.has_value());
    CHECK(congruent(GaussInt{3, 0}, GaussInt{}, det->lattice));
    CHECK(congruent(GaussInt{0, 3}, GaussInt{}, det->lattice));
    REQUIRE(det->exceptions.size() == 1);
    CHECK(det->exceptions[0].first == GaussInt{1, 1});
    CHECK(det->exceptions[0].second == "9");
}

TEST_CASE("detect: a half-plane has no rank-2 period at any scale") {
    long half = 16;
    std::vector<std::string> cells;
    for (long r = 0; r < 2 * half + 1; ++r)
        for (long c = 0; c < 2 * half + 1; ++c) cells.push_back(-half + c >= 0 ? "1" : "0");
    Configuration cfg = Configuration::window(GaussInt{-half, -half}, 2 * half + 1, 2 * half + 1, cells);
    CHECK_FALSE(detect_eventual_periodicity(cfg, 6, 12).has_value());
}

TEST_CASE("a lattice-periodic configuration reduces to a rectangular table") {
    Configuration cfg = checkerboard_config();
    Lattice L{GaussInt{1, 1}, GaussInt{1, -1}};  // also a period lattice of the checkerboard
    PeriodicTable t = rectangular_table(cfg, L);
    CHECK(t.period == 2);
    for (const auto& z : oracles::disk(60)) CHECK(t.at(z) == cfg.at(z));

    // The flipped-cell configuration: its exception does not leak into the
    // periodic part, and passes through explicitly.
    Configuration fig = flipped_cell_config();
    Lattice L8{GaussInt{1, 4}, GaussInt{1, -4}};
    PeriodicTable t8 = rectangular_table(fig, L8, {{GaussInt{-5, 0}, fig.at(GaussInt{-5, 0})}});
    CHECK(t8.period == rect_period(L8).get_ui());
    for (const auto& z : oracles::disk(60)) CHECK(t8.at(z) == fig.at(z));
}

TEST_CASE("windows index as expected") {
    // 2x2 window: top row has the higher imaginary part.
    Configuration w = Configuration::window(GaussInt{}, 2, 2, {"a", "b", "c", "d"});
    CHECK(w.at(GaussInt{0, 1}) == "a");
    CHECK(w.at(GaussInt{1, 1}) == "b");
    CHECK(w.at(GaussInt{0, 0}) == "c");
    CHECK(w.at(GaussInt{1, 0}) == "d");
    CHECK_THROWS_AS(w.at(GaussInt{2, 0}), std::out_of_range);
    CHECK(w.in_domain(GaussInt{1, 1}));
    CHECK_FALSE(w.in_domain(GaussInt{-1, 0}));

    Configuration m = materialize_window(checkerboard_config(), GaussInt{-2, -2}, 5, 5);
    for (const auto& z : m.window_cells()) CHECK((z == "0" || z == "1"));
    CHECK(m.at(GaussInt{}) == "0");
    CHECK(m.at(GaussInt{1, 0}) == "1");
}
