#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "geodisk/spm.hpp"
#include "geodisk/triangulate.hpp"

using namespace geodisk;

namespace {

// Map must reproduce engine distances everywhere and its cells must tile the
// polygon exactly.
void check_map(const Polygon& P, Point2 src, int samples = 1000) {
    GeodesicEngine eng(P);
    ShortestPathMap M = shortest_path_map(eng, src);

    double cell_area = 0;
    for (const SpmCell& c : M.cells) cell_area += std::abs(ring_area(c.region));
    CHECK(cell_area == Catch::Approx(P.area()).epsilon(1e-6));

    Triangulation T = triangulate(P);
    InteriorSampler s(P, T);
    std::mt19937_64 rng(51);
    PointContext cs = eng.context(src);
    for (int i = 0; i < samples; ++i) {
        Point2 q = s.sample(rng);
        double want = eng.distance(cs, eng.context(q));
        CHECK(M.eval(q) == Catch::Approx(want).epsilon(1e-9).margin(1e-9));
    }
}

const SpmCell* cell_with_anchor(const ShortestPathMap& M, Point2 a) {
    for (const SpmCell& c : M.cells)
        if (near(c.anchor, a, 1e-9)) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("path map of a convex polygon is one direct cell") {
    Polygon sq = fixtures::unit_square();
    GeodesicEngine eng(sq);
    ShortestPathMap M = shortest_path_map(eng, {0.5, 0.5});
    REQUIRE(M.cells.size() == 1);
    CHECK(near(M.cells[0].anchor, {0.5, 0.5}, 1e-12));
    CHECK(M.cells[0].offset == 0.0);
    check_map(sq, {0.5, 0.5}, 300);
}

TEST_CASE("path map in the L-polygon splits at the reflex corner") {
    Polygon L = fixtures::l_polygon();
    GeodesicEngine eng(L);

    SECTION("source opposite the corner sees one shadow cell") {
        ShortestPathMap M = shortest_path_map(eng, {2, 0.5});
        REQUIRE(M.cells.size() == 2);

        const SpmCell* shadow = cell_with_anchor(M, {1, 1});
        REQUIRE(shadow != nullptr);
        CHECK(shadow->offset == Catch::Approx(std::sqrt(1.25)).epsilon(1e-12));
        // Window ray (2,0.5)->(1,1) exits at (0,1.5): shadow quad.
        CHECK(std::abs(ring_area(shadow->region)) == Catch::Approx(0.75).epsilon(1e-9));
        double far_corner = M.eval({0, 2});
        CHECK(far_corner ==
              Catch::Approx(std::sqrt(1.25) + dist({1, 1}, {0, 2})).epsilon(1e-12));

        check_map(L, {2, 0.5});
    }

    SECTION("source at the reflex corner sees everything directly") {
        ShortestPathMap M = shortest_path_map(eng, {1, 1});
        CHECK(M.cells.size() == 1);
        check_map(L, {1, 1}, 300);
    }
}

TEST_CASE("path map anchors chain through the spiral corridor") {
    Polygon sp = fixtures::spiral();
    GeodesicEngine eng(sp);
    ShortestPathMap M = shortest_path_map(eng, {0, 0});
    REQUIRE(M.cells.size() == 4);

    const SpmCell* c1 = cell_with_anchor(M, {7, 1});
    const SpmCell* c2 = cell_with_anchor(M, {7, 7});
    const SpmCell* c3 = cell_with_anchor(M, {2, 7});
    REQUIRE(c1 != nullptr);
    REQUIRE(c2 != nullptr);
    REQUIRE(c3 != nullptr);
    CHECK(c1->offset == Catch::Approx(std::sqrt(50.0)).epsilon(1e-12));
    CHECK(c2->offset == Catch::Approx(std::sqrt(50.0) + 6).epsilon(1e-12));
    CHECK(c3->offset == Catch::Approx(std::sqrt(50.0) + 11).epsilon(1e-12));

    check_map(sp, {0, 0});
}

TEST_CASE("path map gives each comb tooth its own anchor") {
    Polygon cb = fixtures::comb();
    GeodesicEngine eng(cb);
    ShortestPathMap M = shortest_path_map(eng, {0, 0});
    REQUIRE(M.cells.size() == 5);
    for (double x : {1.0, 3.0, 5.0, 7.0}) CHECK(cell_with_anchor(M, {x, 1}) != nullptr);
    check_map(cb, {0, 0});
}

TEST_CASE("path map routes around a hole with a diagonal ridge") {
    Polygon H = fixtures::square_with_hole();
    GeodesicEngine eng(H);
    ShortestPathMap M = shortest_path_map(eng, {0, 0});
    REQUIRE(M.cells.size() == 3);

    const SpmCell* below = cell_with_anchor(M, {4, 2});
    const SpmCell* above = cell_with_anchor(M, {2, 4});
    REQUIRE(below != nullptr);
    REQUIRE(above != nullptr);
    CHECK(below->offset == Catch::Approx(std::sqrt(20.0)).epsilon(1e-12));
    CHECK(above->offset == Catch::Approx(std::sqrt(20.0)).epsilon(1e-12));

    // Points mirrored across y=x land in different cells at equal distance.
    CHECK(M.eval({5.5, 4.5}) == Catch::Approx(M.eval({4.5, 5.5})).epsilon(1e-12));

    check_map(H, {0, 0});
}

TEST_CASE("path map survives competing anchors with unequal offsets") {
    // Off-axis source behind a hole: the wall between the two detour branches
    // is a hyperbola, which the map must approximate to engine accuracy.
    check_map(fixtures::square_with_hole(), {1, 0});
    check_map(fixtures::square_with_hole(), {0.5, 3});
}

TEST_CASE("path map rejects sources outside the polygon") {
    Polygon sq = fixtures::unit_square();
    GeodesicEngine eng(sq);
    CHECK_THROWS_AS(shortest_path_map(eng, {2, 2}), GeoError);
}
