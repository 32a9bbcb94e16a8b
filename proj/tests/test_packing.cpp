#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "geodisk/packing.hpp"

using namespace geodisk;

TEST_CASE("unit packing fills the 10x1 strip") {
    Polygon R = fixtures::rect(10, 1);
    PackingResult pk = greedy_unit_packing(R);

    CHECK(pk.radius == 1.0);
    CHECK(pk.centers.size() == 6);
    CHECK(verify_packing(R, pk.centers, 1.0));

    REQUIRE(pk.step_log.size() == pk.centers.size());
    for (const PackingStep& s : pk.step_log) {
        // Center is the lexicographically larger end of its diametral pair.
        Point2 smaller = lex_less(s.pair_a, s.pair_b) ? s.pair_a : s.pair_b;
        Point2 larger = lex_less(s.pair_a, s.pair_b) ? s.pair_b : s.pair_a;
        CHECK(near(s.chosen, larger, 1e-12));
        CHECK_FALSE(near(s.chosen, smaller, 1e-12));
        CHECK(s.candidates_before > 0);
    }

    // Independent optimum on the coarse grid says 6 is already best possible.
    BruteForcePacking bf = brute_force_max_packing(R, 1.0, 0.25);
    CHECK(bf.centers.size() == 6);
    CHECK(bf.candidate_count == 205);
    CHECK(verify_packing(R, bf.centers, 1.0));
}

TEST_CASE("all four corners of a 2x2 square pack at radius 1") {
    Polygon sq = fixtures::rect(2, 2);
    PackingResult pk = greedy_packing(sq, 1.0);

    // Adjacent corners sit at distance exactly 2r; boundary-tight pairs count.
    REQUIRE(pk.centers.size() == 4);
    for (Point2 c : pk.centers) {
        bool corner = (near(c, {0, 0}, 1e-9) || near(c, {2, 0}, 1e-9) ||
                       near(c, {0, 2}, 1e-9) || near(c, {2, 2}, 1e-9));
        CHECK(corner);
    }
    CHECK(verify_packing(sq, pk.centers, 1.0));
}

TEST_CASE("greedy packing beats half the grid optimum") {
    for (auto& [name, P] : fixtures::acceptance_set()) {
        if (!P.holes.empty()) continue;
        INFO(name);
        Bbox bb = P.bbox();
        double r = bb.diag() / 7;
        PackingResult pk = greedy_packing(P, r);
        CHECK(verify_packing(P, pk.centers, r));

        BruteForcePacking bf = brute_force_max_packing(P, r, bb.diag() / 18);
        CHECK(verify_packing(P, bf.centers, r));
        CHECK(bf.centers.size() <= 2 * pk.centers.size());  // greedy 2-approximation
    }
}

TEST_CASE("packing distances respect the geodesic, not the straight line") {
    // Two points hugging the reflex corner from both sides: Euclid-close,
    // geodesic-far. Packing in the comb must keep geodesic separation only.
    Polygon cb = fixtures::comb();
    GeodesicEngine eng(cb);
    PackingResult pk = greedy_packing(cb, 1.4);
    CHECK(verify_packing(cb, pk.centers, 1.4));
    for (size_t i = 0; i < pk.centers.size(); ++i)
        for (size_t j = i + 1; j < pk.centers.size(); ++j)
            CHECK(eng.distance(pk.centers[i], pk.centers[j]) >= 2 * 1.4 - 1e-9);
    // Teeth 2 apart across the gap: centers in adjacent teeth are legal even
    // when their straight-line gap is < 2r.
    bool some_euclid_close = false;
    for (size_t i = 0; i < pk.centers.size(); ++i)
        for (size_t j = i + 1; j < pk.centers.size(); ++j)
            if (dist(pk.centers[i], pk.centers[j]) < 2 * 1.4 - 1e-9) some_euclid_close = true;
    CHECK(some_euclid_close);
}

TEST_CASE("packing rejects holes and bad radii") {
    CHECK_THROWS_AS(greedy_packing(fixtures::square_with_hole(), 1.0), GeoError);
    CHECK_THROWS_AS(greedy_packing(fixtures::unit_square(), 0.0), GeoError);
    CHECK_THROWS_AS(brute_force_max_packing(fixtures::rect(10, 1), 1.0, 1e-4), GeoError);
}

TEST_CASE("verify_packing flags close pairs") {
    Polygon R = fixtures::rect(4, 1);
    CHECK(verify_packing(R, {{0.5, 0.5}, {3.5, 0.5}}, 1.0));
    CHECK_FALSE(verify_packing(R, {{0.5, 0.5}, {2.0, 0.5}}, 1.0));
}
