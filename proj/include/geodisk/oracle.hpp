#pragma once

// Grid-graph distance oracle and sampling-based checkers used to validate
// the geodesic engine. The predicates here are deliberately written from
// scratch (crossing tests plus sampled membership) and share no code with
// the exact kernel in geometry.hpp, so a bug in one side shows up as a
// disagreement instead of being self-consistent.

#include <cstdint>
#include <queue>
#include <random>
#include <unordered_map>

#include "geodesic.hpp"

namespace geodisk::oracle {

namespace gdetail {

inline double orient(Point2 a, Point2 b, Point2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline bool strict_cross(Point2 a, Point2 b, Point2 u, Point2 v, double tol) {
    double d1 = orient(a, b, u), d2 = orient(a, b, v);
    double d3 = orient(u, v, a), d4 = orient(u, v, b);
    double s1 = std::hypot(b.x - a.x, b.y - a.y);
    double s2 = std::hypot(v.x - u.x, v.y - u.y);
    double t1 = tol * s1, t2 = tol * s2;
    return ((d1 > t1 && d2 < -t1) || (d1 < -t1 && d2 > t1)) &&
           ((d3 > t2 && d4 < -t2) || (d3 < -t2 && d4 > t2));
}

inline double seg_dist(Point2 p, Point2 a, Point2 b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double l2 = vx * vx + vy * vy;
    double t = l2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

inline double boundary_dist(const Polygon& P, Point2 q) {
    double d = std::numeric_limits<double>::infinity();
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& r = P.ring(ri);
        for (size_t i = 0, n = r.size(); i < n; ++i)
            d = std::min(d, seg_dist(q, r[i], r[(i + 1) % n]));
    }
    return d;
}

inline bool inside_or_on(const Polygon& P, Point2 q, double tol) {
    if (boundary_dist(P, q) <= tol) return true;
    bool in = false;
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& r = P.ring(ri);
        for (size_t i = 0, n = r.size(); i < n; ++i) {
            Point2 u = r[i], v = r[(i + 1) % n];
            if ((u.y > q.y) != (v.y > q.y) &&
                q.x < u.x + (q.y - u.y) * (v.x - u.x) / (v.y - u.y))
                in = !in;
        }
    }
    return in;
}

// Sampled segment membership: reject strict boundary crossings, then probe
// interior sample points.
inline bool segment_ok(const Polygon& P, Point2 a, Point2 b, double tol) {
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& r = P.ring(ri);
        for (size_t i = 0, n = r.size(); i < n; ++i)
            if (strict_cross(a, b, r[i], r[(i + 1) % n], tol)) return false;
    }
    for (int k = 1; k <= 7; ++k) {
        double t = k / 8.0;
        Point2 m{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
        if (!inside_or_on(P, m, tol)) return false;
    }
    return inside_or_on(P, {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, tol);
}

}  // namespace gdetail

// Grid nodes plus polygon vertices; moves use coprime offsets up to max
// coordinate 3, keeping the worst metrication overshoot near 1.3%
// (8-connectivity alone overshoots by up to 8.2% off-axis).
struct GridGraph {
    double step = 0;
    std::vector<Point2> nodes;
    std::vector<std::vector<std::pair<int, double>>> adj;
    size_t grid_node_count = 0;  // nodes[0..grid_node_count) are lattice points
};

inline GridGraph build_grid_graph(const Polygon& P, double step) {
    if (step <= 0) throw GeoError(Errc::InvalidArgument, "grid step must be positive");
    double tol = std::max(1e-9, step * 1e-7);
    GridGraph G;
    G.step = step;
    Bbox bb = P.bbox();
    int nx = static_cast<int>(std::floor(bb.width() / step)) + 1;
    int ny = static_cast<int>(std::floor(bb.height() / step)) + 1;

    std::unordered_map<int64_t, int> at;
    auto key = [nx](int ix, int iy) { return static_cast<int64_t>(iy) * (nx + 8) + ix; };
    for (int iy = 0; iy <= ny; ++iy) {
        for (int ix = 0; ix <= nx; ++ix) {
            Point2 p{bb.xmin + ix * step, bb.ymin + iy * step};
            if (gdetail::inside_or_on(P, p, tol)) {
                at[key(ix, iy)] = static_cast<int>(G.nodes.size());
                G.nodes.push_back(p);
            }
        }
    }
    G.grid_node_count = G.nodes.size();
    for (const Point2& v : P.all_vertices()) G.nodes.push_back(v);
    G.adj.assign(G.nodes.size(), {});

    auto link = [&](int i, int j) {
        double w = std::hypot(G.nodes[i].x - G.nodes[j].x, G.nodes[i].y - G.nodes[j].y);
        G.adj[i].push_back({j, w});
        G.adj[j].push_back({i, w});
    };

    static const int moves[][2] = {{1, 0},  {0, 1},  {1, 1},  {1, -1}, {2, 1},  {1, 2},
                                   {2, -1}, {1, -2}, {3, 1},  {1, 3},  {3, -1}, {1, -3},
                                   {3, 2},  {2, 3},  {3, -2}, {2, -3}};
    for (int iy = 0; iy <= ny; ++iy) {
        for (int ix = 0; ix <= nx; ++ix) {
            auto it = at.find(key(ix, iy));
            if (it == at.end()) continue;
            for (auto [dx, dy] : moves) {
                auto jt = at.find(key(ix + dx, iy + dy));
                if (jt == at.end()) continue;
                if (gdetail::segment_ok(P, G.nodes[it->second], G.nodes[jt->second], tol))
                    link(it->second, jt->second);
            }
        }
    }

    // Vertex nodes snap to nearby lattice nodes so bend points are exact.
    double snap = 3.0 * step;
    for (size_t vi = G.grid_node_count; vi < G.nodes.size(); ++vi) {
        for (size_t gi = 0; gi < G.grid_node_count; ++gi) {
            double d = std::hypot(G.nodes[vi].x - G.nodes[gi].x, G.nodes[vi].y - G.nodes[gi].y);
            if (d <= snap && gdetail::segment_ok(P, G.nodes[vi], G.nodes[gi], tol))
                link(static_cast<int>(vi), static_cast<int>(gi));
        }
    }
    return G;
}

namespace gdetail {

inline std::vector<double> dijkstra(const GridGraph& G,
                                    const std::vector<std::pair<int, double>>& sources) {
    std::vector<double> dist(G.nodes.size() + 1, std::numeric_limits<double>::infinity());
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    for (auto [i, d0] : sources) {
        if (d0 < dist[i]) {
            dist[i] = d0;
            pq.push({d0, i});
        }
    }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u] + 1e-15) continue;
        for (auto [v, w] : G.adj[u]) {
            if (d + w < dist[v] - 1e-15) {
                dist[v] = d + w;
                pq.push({d + w, v});
            }
        }
    }
    return dist;
}

}  // namespace gdetail

// Shortest grid-graph distance between arbitrary points. Query points are
// snapped to nearby lattice nodes and to polygon vertices (any range, own
// segment test); a direct edge is used when the segment itself is clear.
inline double grid_distance(const Polygon& P, const GridGraph& G, Point2 p, Point2 q) {
    double tol = std::max(1e-9, G.step * 1e-7);
    if (!gdetail::inside_or_on(P, p, tol) || !gdetail::inside_or_on(P, q, tol))
        throw GeoError(Errc::PointOutsidePolygon, "grid query outside polygon");
    if (gdetail::segment_ok(P, p, q, tol))
        return std::hypot(p.x - q.x, p.y - q.y);

    auto attach = [&](Point2 x) {
        std::vector<std::pair<int, double>> links;
        double snap = 3.0 * G.step;
        for (size_t i = 0; i < G.grid_node_count; ++i) {
            double d = std::hypot(x.x - G.nodes[i].x, x.y - G.nodes[i].y);
            if (d <= snap && gdetail::segment_ok(P, x, G.nodes[i], tol)) links.push_back({static_cast<int>(i), d});
        }
        for (size_t i = G.grid_node_count; i < G.nodes.size(); ++i) {
            double d = std::hypot(x.x - G.nodes[i].x, x.y - G.nodes[i].y);
            if (gdetail::segment_ok(P, x, G.nodes[i], tol)) links.push_back({static_cast<int>(i), d});
        }
        return links;
    };

    auto from_p = attach(p);
    if (from_p.empty()) throw GeoError(Errc::DisconnectedSample, "query point links to no node");
    auto dist = gdetail::dijkstra(G, from_p);

    double best = std::numeric_limits<double>::infinity();
    for (auto [i, d] : attach(q)) best = std::min(best, dist[i] + d);
    if (!std::isfinite(best))
        throw GeoError(Errc::DisconnectedSample, "no grid path between query points");
    return best;
}

inline double grid_distance(const Polygon& P, double step, Point2 p, Point2 q) {
    GridGraph G = build_grid_graph(P, step);
    return grid_distance(P, G, p, q);
}

}  // namespace geodisk::oracle
