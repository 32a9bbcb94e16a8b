#pragma once

// Geodesic shortest paths inside a polygon with holes, via the visibility
// graph over polygon vertices plus per-query augmentation. Shortest paths
// bend only at reflex vertices, so the graph over vertices is exact; an
// arbitrary query point enters through its set of visible vertices.

#include <queue>

#include "geometry.hpp"

namespace geodisk {

struct VisibilityGraph {
    // visible[i][j] over the flattened vertex table; weight = Euclid, with
    // an optional test-only corruption factor on one edge.
    std::vector<std::vector<char>> visible;
    std::vector<std::vector<double>> weight;
    size_t edge_count = 0;
};

struct GeodesicPath {
    std::vector<Point2> waypoints;  // first = source, last = target
    double length = 0;
};

struct ShortestPathTree {
    Point2 source;
    std::vector<int> parent;  // per vertex-table index; -1 = source is parent
    std::vector<double> dist;
};

// Weighted anchor of a source's distance field: d(source, q) equals
// min over anchors visible from q of offset + |anchor - q|.
struct Anchor {
    Point2 p;
    double offset;
    int vid;  // vertex-table index, -1 for the source itself
};

class GeodesicEngine;

// Per-point cached visibility and vertex distances for bulk queries.
struct PointContext {
    PointContext() = default;  // non-aggregate: keeps Point2 brace-inits unambiguous
    Point2 p;
    std::vector<char> sees;      // vertex visibility flags
    std::vector<double> vdist;   // geodesic distance p -> vertex j
};

struct DistanceField {
    Point2 source;
    std::vector<Anchor> anchors;  // anchors[0] is the source
    std::vector<double> vertex_offset;  // d(source, v) for every vertex

    // Exact distance using a prebuilt context for q. source_sees_q must be
    // the visibility of the segment source->q.
    double eval(const PointContext& ctx, bool source_sees_q) const {
        double best = source_sees_q ? dist(source, ctx.p) : std::numeric_limits<double>::infinity();
        for (size_t i = 1; i < anchors.size(); ++i) {
            const Anchor& a = anchors[i];
            if (!ctx.sees[a.vid]) continue;
            best = std::min(best, a.offset + dist(a.p, ctx.p));
        }
        return best;
    }
};

class GeodesicEngine {
public:
    explicit GeodesicEngine(Polygon P) : P_(std::move(P)), table_(P_) {
        build_graph();
        all_pairs();
    }

    // Test hook: rebuilds vertex distances with one visibility edge scaled.
    void corrupt_edge_for_tests(size_t edge_index, double factor) {
        size_t seen = 0;
        for (size_t i = 0; i < n(); ++i)
            for (size_t j = i + 1; j < n(); ++j)
                if (graph_.visible[i][j]) {
                    if (seen++ == edge_index) {
                        graph_.weight[i][j] *= factor;
                        graph_.weight[j][i] *= factor;
                        all_pairs();
                        return;
                    }
                }
        throw GeoError(Errc::InvalidArgument, "edge index out of range");
    }

    const Polygon& polygon() const { return P_; }
    const VertexTable& vertices() const { return table_; }
    const VisibilityGraph& graph() const { return graph_; }
    size_t n() const { return table_.pts.size(); }
    double vertex_distance(size_t i, size_t j) const { return dv_[i][j]; }

    PointContext context(Point2 q) const {
        if (!P_.contains(q))
            throw GeoError(Errc::PointOutsidePolygon, point_str(q));
        PointContext ctx;
        ctx.p = q;
        ctx.sees.assign(n(), 0);
        ctx.vdist.assign(n(), std::numeric_limits<double>::infinity());
        for (size_t i = 0; i < n(); ++i)
            ctx.sees[i] = segment_in_polygon(P_, q, table_.pts[i]) ? 1 : 0;
        for (size_t i = 0; i < n(); ++i) {
            if (!ctx.sees[i]) continue;
            double base = dist(q, table_.pts[i]);
            for (size_t j = 0; j < n(); ++j)
                ctx.vdist[j] = std::min(ctx.vdist[j], base + dv_[i][j]);
        }
        return ctx;
    }

    bool mutually_visible(Point2 p, Point2 q) const { return segment_in_polygon(P_, p, q); }

    double distance(const PointContext& cp, const PointContext& cq) const {
        double best = std::numeric_limits<double>::infinity();
        if (mutually_visible(cp.p, cq.p)) best = dist(cp.p, cq.p);
        for (size_t j = 0; j < n(); ++j) {
            if (!cq.sees[j]) continue;
            best = std::min(best, cp.vdist[j] + dist(table_.pts[j], cq.p));
        }
        return best;
    }

    double distance(Point2 p, Point2 q) const { return distance(context(p), context(q)); }

    GeodesicPath shortest_path(Point2 p, Point2 q) const {
        GeodesicPath out;
        if (mutually_visible(p, q)) {
            double direct = dist(p, q);
            // A direct segment is always optimal when visible.
            out.waypoints = {p, q};
            out.length = direct;
            return out;
        }
        PointContext cp = context(p), cq = context(q);
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (size_t i = 0; i < n(); ++i) {
            if (!cp.sees[i]) continue;
            double di = dist(p, table_.pts[i]);
            for (size_t j = 0; j < n(); ++j) {
                if (!cq.sees[j]) continue;
                double total = di + dv_[i][j] + dist(table_.pts[j], q);
                if (total < best - 1e-15) {
                    best = total;
                    bi = static_cast<int>(i);
                    bj = static_cast<int>(j);
                }
            }
        }
        if (bi < 0)
            throw GeoError(Errc::InvariantViolation, "no geodesic path found");
        out.waypoints.push_back(p);
        for (int v : vertex_chain(bi, bj)) out.waypoints.push_back(table_.pts[v]);
        out.waypoints.push_back(q);
        shortcut(out.waypoints);
        out.length = 0;
        for (size_t i = 0; i + 1 < out.waypoints.size(); ++i)
            out.length += dist(out.waypoints[i], out.waypoints[i + 1]);
        return out;
    }

    ShortestPathTree shortest_path_tree(Point2 source) const {
        PointContext cs = context(source);
        ShortestPathTree t;
        t.source = source;
        size_t N = n();
        t.dist.assign(N, std::numeric_limits<double>::infinity());
        t.parent.assign(N, -2);
        using QE = std::pair<double, size_t>;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        for (size_t i = 0; i < N; ++i) {
            if (cs.sees[i]) {
                t.dist[i] = dist(source, table_.pts[i]);
                t.parent[i] = -1;
                pq.push({t.dist[i], i});
            }
        }
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d > t.dist[u] + 1e-15) continue;
            for (size_t v = 0; v < N; ++v) {
                if (!graph_.visible[u][v]) continue;
                double nd = d + graph_.weight[u][v];
                if (nd < t.dist[v] - 1e-15) {
                    t.dist[v] = nd;
                    t.parent[v] = static_cast<int>(u);
                    pq.push({nd, v});
                }
            }
        }
        return t;
    }

    // Weighted-anchor field of a source; anchors are the source and the
    // reflex vertices (the only possible last bends of a geodesic).
    DistanceField field(Point2 source) const {
        PointContext cs = context(source);
        DistanceField f;
        f.source = source;
        f.anchors.push_back({source, 0.0, -1});
        f.vertex_offset = cs.vdist;
        for (size_t i = 0; i < n(); ++i)
            if (table_.reflex[i]) f.anchors.push_back({table_.pts[i], cs.vdist[i], static_cast<int>(i)});
        return f;
    }

    double field_eval(const DistanceField& f, const PointContext& ctx) const {
        return f.eval(ctx, mutually_visible(f.source, ctx.p));
    }

    // Diametral pair among explicit points; ties resolved toward the
    // lexicographically smallest canonical pair.
    std::pair<size_t, size_t> diametral_pair_of(const std::vector<PointContext>& ctxs) const {
        if (ctxs.size() < 2)
            throw GeoError(Errc::InvalidArgument, "diametral pair needs >= 2 points");
        double best = -1;
        size_t bu = 0, bv = 1;
        for (size_t i = 0; i < ctxs.size(); ++i) {
            for (size_t j = i + 1; j < ctxs.size(); ++j) {
                double d = distance(ctxs[i], ctxs[j]);
                auto cur = canon(ctxs[i].p, ctxs[j].p);
                auto inc = canon(ctxs[bu].p, ctxs[bv].p);
                if (d > best + 1e-12 || (d > best - 1e-12 && pair_less(cur, inc))) {
                    best = d;
                    bu = i;
                    bv = j;
                }
            }
        }
        return {bu, bv};
    }

private:
    static std::string point_str(Point2 p) {
        return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
    }

    static std::pair<Point2, Point2> canon(Point2 a, Point2 b) {
        return lex_less(a, b) ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    static bool pair_less(const std::pair<Point2, Point2>& a, const std::pair<Point2, Point2>& b) {
        if (a.first != b.first) return lex_less(a.first, b.first);
        return lex_less(a.second, b.second);
    }

    void build_graph() {
        size_t N = n();
        graph_.visible.assign(N, std::vector<char>(N, 0));
        graph_.weight.assign(N, std::vector<double>(N, 0.0));
        for (size_t i = 0; i < N; ++i) {
            for (size_t j = i + 1; j < N; ++j) {
                if (segment_in_polygon(P_, table_.pts[i], table_.pts[j])) {
                    graph_.visible[i][j] = graph_.visible[j][i] = 1;
                    double w = dist(table_.pts[i], table_.pts[j]);
                    graph_.weight[i][j] = graph_.weight[j][i] = w;
                    ++graph_.edge_count;
                }
            }
        }
    }

    void all_pairs() {
        size_t N = n();
        const double inf = std::numeric_limits<double>::infinity();
        dv_.assign(N, std::vector<double>(N, inf));
        next_.assign(N, std::vector<int>(N, -1));
        for (size_t i = 0; i < N; ++i) {
            dv_[i][i] = 0;
            next_[i][i] = static_cast<int>(i);
            for (size_t j = 0; j < N; ++j)
                if (graph_.visible[i][j]) {
                    dv_[i][j] = graph_.weight[i][j];
                    next_[i][j] = static_cast<int>(j);
                }
        }
        for (size_t k = 0; k < N; ++k)
            for (size_t i = 0; i < N; ++i) {
                if (dv_[i][k] == inf) continue;
                for (size_t j = 0; j < N; ++j) {
                    double nd = dv_[i][k] + dv_[k][j];
                    if (nd < dv_[i][j] - 1e-15) {
                        dv_[i][j] = nd;
                        next_[i][j] = next_[i][k];
                    }
                }
            }
    }

    std::vector<int> vertex_chain(int i, int j) const {
        std::vector<int> chain{i};
        int cur = i;
        while (cur != j) {
            cur = next_[cur][j];
            if (cur < 0 || chain.size() > n())
                throw GeoError(Errc::InvariantViolation, "broken path chain");
            chain.push_back(cur);
        }
        return chain;
    }

    // Drop interior waypoints that lie on the straight segment between
    // their neighbors (keeps length, removes non-bending vertices).
    void shortcut(std::vector<Point2>& w) const {
        bool changed = true;
        while (changed && w.size() > 2) {
            changed = false;
            for (size_t k = 1; k + 1 < w.size(); ++k) {
                double through = dist(w[k - 1], w[k]) + dist(w[k], w[k + 1]);
                double straight = dist(w[k - 1], w[k + 1]);
                if (straight >= through - 1e-12 && mutually_visible(w[k - 1], w[k + 1])) {
                    w.erase(w.begin() + k);
                    changed = true;
                    break;
                }
            }
        }
    }

    Polygon P_;
    VertexTable table_;
    VisibilityGraph graph_;
    std::vector<std::vector<double>> dv_;
    std::vector<std::vector<int>> next_;
};

// Convenience one-shot wrappers.
inline double geodesic_distance(const Polygon& P, Point2 p, Point2 q) {
    return GeodesicEngine(P).distance(p, q);
}

inline GeodesicPath shortest_path(const Polygon& P, Point2 p, Point2 q) {
    return GeodesicEngine(P).shortest_path(p, q);
}

// Diametral pair over the polygon's vertices.
inline std::pair<Point2, Point2> diametral_pair(const GeodesicEngine& eng) {
    std::vector<PointContext> ctxs;
    for (Point2 v : eng.vertices().pts) ctxs.push_back(eng.context(v));
    auto [i, j] = eng.diametral_pair_of(ctxs);
    Point2 a = ctxs[i].p, b = ctxs[j].p;
    return lex_less(a, b) ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct DiametralPair {
    Point2 u, v;
    double d = 0;
};

// Diametral pair over an explicit point set; a one-point set pairs with itself.
inline DiametralPair diametral_pair(const GeodesicEngine& eng, const std::vector<Point2>& V) {
    if (V.empty()) throw GeoError(Errc::EmptySet, "diametral pair of an empty set");
    if (V.size() == 1) return {V[0], V[0], 0.0};
    std::vector<PointContext> ctxs;
    ctxs.reserve(V.size());
    for (Point2 p : V) ctxs.push_back(eng.context(p));
    auto [i, j] = eng.diametral_pair_of(ctxs);
    Point2 a = ctxs[i].p, b = ctxs[j].p;
    if (!lex_less(a, b)) std::swap(a, b);
    return {a, b, eng.distance(ctxs[i], ctxs[j])};
}

inline DiametralPair diametral_pair(const Polygon& P, const std::vector<Point2>& V) {
    return diametral_pair(GeodesicEngine(P), V);
}

}  // namespace geodisk
