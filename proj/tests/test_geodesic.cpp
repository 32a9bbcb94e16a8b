#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "geodisk/oracle.hpp"
#include "geodisk/triangulate.hpp"

using namespace geodisk;

namespace {

std::vector<Point2> sample_points(const Polygon& P, int count, uint64_t seed) {
    Triangulation T = triangulate(P);
    InteriorSampler s(P, T);
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts;
    for (int i = 0; i < count; ++i) pts.push_back(s.sample(rng));
    return pts;
}

}  // namespace

TEST_CASE("distance in the L-polygon bends at the reflex corner") {
    Polygon L = fixtures::l_polygon();
    GeodesicEngine eng(L);

    double d = eng.distance({2, 0.5}, {0.5, 2});
    CHECK(d == Catch::Approx(2.0 * std::sqrt(1.25)).epsilon(1e-12));

    GeodesicPath path = eng.shortest_path({2, 0.5}, {0.5, 2});
    REQUIRE(path.waypoints.size() == 3);
    CHECK(near(path.waypoints[0], {2, 0.5}, 1e-12));
    CHECK(near(path.waypoints[1], {1, 1}, 1e-12));
    CHECK(near(path.waypoints[2], {0.5, 2}, 1e-12));
    CHECK(path.length == Catch::Approx(d).epsilon(1e-12));

    // Visible pair stays a straight segment.
    GeodesicPath direct = eng.shortest_path({0.2, 0.2}, {1.8, 0.8});
    CHECK(direct.waypoints.size() == 2);
    CHECK(direct.length == Catch::Approx(dist({0.2, 0.2}, {1.8, 0.8})));

    CHECK(eng.distance(Point2{0.7, 0.7}, Point2{0.7, 0.7}) == 0.0);
    CHECK_THROWS_AS(eng.context({1.5, 1.5}), GeoError);
}

TEST_CASE("L-polygon diametral pair") {
    GeodesicEngine eng(fixtures::l_polygon());
    auto [a, b] = diametral_pair(eng);
    CHECK(near(a, {0, 2}, 1e-12));
    CHECK(near(b, {2, 0}, 1e-12));
    CHECK(eng.distance(a, b) == Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("unit square diametral tie breaks lexicographically") {
    GeodesicEngine eng(fixtures::unit_square());
    auto [a, b] = diametral_pair(eng);
    CHECK(near(a, {0, 0}, 1e-12));
    CHECK(near(b, {1, 1}, 1e-12));
}

TEST_CASE("convex polygon distances are Euclidean") {
    Polygon P = fixtures::convex_pentagon();
    GeodesicEngine eng(P);
    auto pts = sample_points(P, 40, 11);
    for (size_t i = 0; i + 1 < pts.size(); i += 2) {
        double g = eng.distance(pts[i], pts[i + 1]);
        double e = dist(pts[i], pts[i + 1]);
        CHECK(g == Catch::Approx(e).epsilon(1e-12));
    }
    for (size_t i = 0; i < eng.n(); ++i)
        for (size_t j = i + 1; j < eng.n(); ++j)
            CHECK(eng.vertex_distance(i, j) ==
                  Catch::Approx(dist(eng.vertices().pts[i], eng.vertices().pts[j])).epsilon(1e-12));
}

TEST_CASE("metric axioms on sampled triples") {
    for (const auto& [name, P] : fixtures::acceptance_set()) {
        INFO(name);
        GeodesicEngine eng(P);
        auto pts = sample_points(P, 30, 23);
        for (Point2 v : eng.vertices().pts) pts.push_back(v);
        std::vector<PointContext> ctxs;
        for (Point2 p : pts) ctxs.push_back(eng.context(p));

        std::mt19937_64 rng(29);
        std::uniform_int_distribution<size_t> pick(0, ctxs.size() - 1);
        for (int t = 0; t < 120; ++t) {
            size_t i = pick(rng), j = pick(rng), k = pick(rng);
            double dij = eng.distance(ctxs[i], ctxs[j]);
            double dji = eng.distance(ctxs[j], ctxs[i]);
            double dik = eng.distance(ctxs[i], ctxs[k]);
            double dkj = eng.distance(ctxs[k], ctxs[j]);
            CHECK(std::abs(dij - dji) <= 1e-9);
            CHECK(dij <= dik + dkj + 1e-9);
            CHECK(dij >= dist(ctxs[i].p, ctxs[j].p) - 1e-9);  // never below Euclid
        }
    }
}

TEST_CASE("path waypoints bend only at polygon vertices") {
    Polygon P = fixtures::spiral();
    GeodesicEngine eng(P);
    auto pts = sample_points(P, 20, 37);
    for (size_t i = 0; i + 1 < pts.size(); i += 2) {
        GeodesicPath path = eng.shortest_path(pts[i], pts[i + 1]);
        double sum = 0;
        for (size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
            CHECK(eng.mutually_visible(path.waypoints[k], path.waypoints[k + 1]));
            sum += dist(path.waypoints[k], path.waypoints[k + 1]);
        }
        CHECK(path.length == Catch::Approx(sum));
        CHECK(path.length == Catch::Approx(eng.distance(pts[i], pts[i + 1])).margin(1e-9));
        for (size_t k = 1; k + 1 < path.waypoints.size(); ++k) {
            bool at_vertex = false;
            for (Point2 v : eng.vertices().pts)
                if (near(path.waypoints[k], v, 1e-9)) at_vertex = true;
            CHECK(at_vertex);
        }
    }
}

TEST_CASE("shortest path tree structure in the L-polygon") {
    Polygon L = fixtures::l_polygon();
    GeodesicEngine eng(L);
    Point2 source{2, 0.5};
    ShortestPathTree t = eng.shortest_path_tree(source);
    PointContext cs = eng.context(source);

    const auto& pts = eng.vertices().pts;
    for (size_t i = 0; i < eng.n(); ++i) {
        CHECK(t.dist[i] == Catch::Approx(cs.vdist[i]).margin(1e-12));
        if (t.parent[i] == -1) {
            CHECK(t.dist[i] == Catch::Approx(dist(source, pts[i])));
        } else {
            REQUIRE(t.parent[i] >= 0);
            CHECK(t.dist[i] == Catch::Approx(t.dist[t.parent[i]] +
                                             dist(pts[i], pts[t.parent[i]])).margin(1e-12));
        }
    }
    // (1,2) and (0,2) are hidden; their paths route through (1,1).
    size_t reflex_id = 0, hidden1 = 0, hidden2 = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (near(pts[i], {1, 1})) reflex_id = i;
        if (near(pts[i], {1, 2})) hidden1 = i;
        if (near(pts[i], {0, 2})) hidden2 = i;
    }
    CHECK(t.parent[hidden1] == static_cast<int>(reflex_id));
    CHECK(t.parent[hidden2] == static_cast<int>(reflex_id));
}

TEST_CASE("distance field agrees with pairwise queries") {
    for (const auto& [name, P] : {std::pair<std::string, Polygon>{"spiral", fixtures::spiral()},
                                  {"square_with_hole", fixtures::square_with_hole()}}) {
        INFO(name);
        GeodesicEngine eng(P);
        auto pts = sample_points(P, 25, 41);
        Point2 source = pts.back();
        pts.pop_back();
        DistanceField f = eng.field(source);
        PointContext cs = eng.context(source);
        for (Point2 q : pts) {
            PointContext cq = eng.context(q);
            double via_field = eng.field_eval(f, cq);
            double direct = eng.distance(cs, cq);
            CHECK(via_field == Catch::Approx(direct).margin(1e-9));
        }
    }
}

TEST_CASE("grid oracle agrees with the engine") {
    Polygon L = fixtures::l_polygon();
    double d = oracle::grid_distance(L, 0.02, {2, 0.5}, {0.5, 2});
    CHECK(d == Catch::Approx(2.0 * std::sqrt(1.25)).epsilon(0.02));
    CHECK(oracle::grid_distance(L, 0.02, {0.3, 0.3}, {0.3, 0.3}) == 0.0);

    for (const auto& [name, P] : {std::pair<std::string, Polygon>{"unit_square", fixtures::unit_square()},
                                  {"l_polygon", fixtures::l_polygon()},
                                  {"spiral", fixtures::spiral()}}) {
        INFO(name);
        GeodesicEngine eng(P);
        double step = P.diameter_hint() / 60.0;
        oracle::GridGraph G = oracle::build_grid_graph(P, step);
        auto pts = sample_points(P, 16, 53);
        for (size_t i = 0; i + 1 < pts.size(); i += 2) {
            double exact = eng.distance(pts[i], pts[i + 1]);
            double approx = oracle::grid_distance(P, G, pts[i], pts[i + 1]);
            CHECK(approx >= exact - 1e-6);
            CHECK(approx <= exact * 1.02 + 0.8 * step);
        }
    }
}

TEST_CASE("inflating one visibility edge breaks the triangle inequality") {
    Polygon P = fixtures::spiral();
    GeodesicEngine eng(P);

    // Locate the edge between the reflex corners (2,7) and (7,7).
    const auto& pts = eng.vertices().pts;
    size_t va = 0, vb = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (near(pts[i], {2, 7})) va = i;
        if (near(pts[i], {7, 7})) vb = i;
    }
    size_t edge_index = 0;
    bool found = false;
    size_t k = 0;
    for (size_t i = 0; i < eng.n() && !found; ++i)
        for (size_t j = i + 1; j < eng.n() && !found; ++j)
            if (eng.graph().visible[i][j]) {
                if ((i == std::min(va, vb)) && (j == std::max(va, vb))) {
                    edge_index = k;
                    found = true;
                }
                ++k;
            }
    REQUIRE(found);

    Point2 x{0.5, 0.5}, z{1.5, 6.5};
    Point2 m = (pts[va] + pts[vb]) * 0.5;
    double before = eng.distance(x, z);
    CHECK(before <= eng.distance(x, m) + eng.distance(m, z) + 1e-9);

    eng.corrupt_edge_for_tests(edge_index, 1.1);
    double after = eng.distance(x, z);
    CHECK(after > before + 0.1);
    // The straddling midpoint exposes the corrupted hop.
    CHECK(after > eng.distance(x, m) + eng.distance(m, z) + 0.3);
}
