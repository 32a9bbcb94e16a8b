#pragma once

// Shortest-path map: a partition of the polygon into cells on which the
// geodesic distance from a fixed source is offset + |anchor - q|, the anchor
// being the last bend vertex (or the source itself). Cells are produced by
// cutting a triangulation along window lines (anchor-to-reflex-vertex rays
// extended to the boundary) and along equal-offset bisector lines, labeling
// each convex piece by its best visible anchor, and merging same-anchor
// neighbors. Every piece is verified against the engine before merging;
// pieces that fail (curved cell walls between unequal-offset anchor branches)
// are bisected until they pass or reach a size floor.

#include "geodesic.hpp"
#include "triangulate.hpp"

namespace geodisk {

struct SpmCell {
    Ring region;
    Point2 anchor;
    double offset = 0;
    int anchor_vid = -1;  // vertex-table index, -1 = source
};

struct ShortestPathMap {
    Point2 source;
    std::vector<SpmCell> cells;

    // Index of a cell containing q, -1 if none. Points on shared cell walls
    // match the first cell in deterministic order; both formulas agree there.
    int locate(Point2 q, double eps = 1e-7) const {
        for (size_t i = 0; i < cells.size(); ++i) {
            const Ring& r = cells[i].region;
            if (detail::ring_contains_even_odd(r, q) || detail::ring_boundary_dist(r, q) <= eps)
                return static_cast<int>(i);
        }
        return -1;
    }

    double eval(Point2 q) const {
        int i = locate(q);
        if (i < 0) throw GeoError(Errc::PointOutsidePolygon, "point in no map cell");
        return cells[i].offset + dist(cells[i].anchor, q);
    }
};

namespace spmdetail {

struct Line {
    Point2 p;    // point on line
    Point2 dir;  // unit direction
};

inline bool same_line(const Line& a, const Line& b) {
    double c = std::abs(cross(a.dir, b.dir));
    if (c > 1e-9) return false;
    return std::abs(cross(b.p - a.p, a.dir)) <= 1e-9 * std::max(1.0, norm(b.p - a.p));
}

// First boundary hit of the ray w + t*d, t > eps; infinity if none.
inline double first_boundary_hit(const Polygon& P, Point2 w, Point2 d) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& r = P.ring(ri);
        for (size_t i = 0, n = r.size(); i < n; ++i) {
            Point2 u = r[i], v = r[(i + 1) % n];
            double den = cross(d, v - u);
            if (std::abs(den) <= 1e-14) continue;
            double t = cross(u - w, v - u) / den;
            double s = cross(u - w, d) / den;
            if (t > 1e-9 && s >= -1e-9 && s <= 1 + 1e-9) best = std::min(best, t);
        }
    }
    return best;
}

// Window segment of anchor a through reflex vertex w: the extension of the
// ray a->w beyond w to the first boundary hit, empty if it leaves P.
inline std::optional<std::pair<Point2, Point2>> window_segment(const Polygon& P, Point2 a,
                                                               Point2 w) {
    Point2 d = normalized(w - a);
    if (norm(w - a) <= kEpsGeom) return std::nullopt;
    double t = first_boundary_hit(P, w, d);
    if (!std::isfinite(t) || t <= 1e-7) return std::nullopt;
    Point2 end = w + d * t;
    Point2 mid = w + d * (0.5 * t);
    if (!P.contains(mid)) return std::nullopt;
    return std::make_pair(w, end);
}

// Split a convex ring by a line into the two closed half-plane parts.
inline std::vector<Ring> split_convex(const Ring& piece, const Line& L) {
    Point2 b = L.p + L.dir;
    bool pos = false, neg = false;
    std::vector<int> side(piece.size());
    for (size_t i = 0; i < piece.size(); ++i) {
        side[i] = side_of_line(L.p, b, piece[i]);
        pos |= side[i] > 0;
        neg |= side[i] < 0;
    }
    if (!pos || !neg) return {piece};

    Ring left, right;
    auto push = [](Ring& r, Point2 q) {
        if (r.empty() || dist(r.back(), q) > 1e-12) r.push_back(q);
    };
    size_t n = piece.size();
    for (size_t i = 0; i < n; ++i) {
        Point2 cur = piece[i], nxt = piece[(i + 1) % n];
        int sc = side[i], sn = side[(i + 1) % n];
        if (sc >= 0) push(left, cur);
        if (sc <= 0) push(right, cur);
        if (sc * sn < 0) {
            auto t = line_intersect_param(cur, nxt, L.p, b);
            Point2 x = cur + (nxt - cur) * std::clamp(t.value_or(0.5), 0.0, 1.0);
            push(left, x);
            push(right, x);
        }
    }
    auto close = [](Ring& r) {
        while (r.size() > 1 && dist(r.front(), r.back()) <= 1e-12) r.pop_back();
    };
    close(left);
    close(right);
    std::vector<Ring> out;
    if (left.size() >= 3 && std::abs(ring_area(left)) > 1e-14) out.push_back(std::move(left));
    if (right.size() >= 3 && std::abs(ring_area(right)) > 1e-14) out.push_back(std::move(right));
    if (out.empty()) out.push_back(piece);
    return out;
}

struct PointRegistry {
    std::vector<Point2> pts;
    double eps;

    explicit PointRegistry(double e) : eps(e) {}

    int id(Point2 q) {
        for (size_t i = 0; i < pts.size(); ++i)
            if (dist(pts[i], q) <= eps) return static_cast<int>(i);
        pts.push_back(q);
        return static_cast<int>(pts.size()) - 1;
    }
};

// Boundary loops of a union of same-label pieces: cancel opposite directed
// edges, then trace faces taking the smallest counterclockwise turn.
inline std::vector<Ring> trace_boundary(const std::vector<std::vector<int>>& piece_ids,
                                        const PointRegistry& reg) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& ids : piece_ids) {
        size_t n = ids.size();
        for (size_t i = 0; i < n; ++i) {
            int u = ids[i], v = ids[(i + 1) % n];
            if (u == v) continue;
            auto rev = std::find(edges.begin(), edges.end(), std::make_pair(v, u));
            if (rev != edges.end())
                edges.erase(rev);
            else
                edges.push_back({u, v});
        }
    }

    std::vector<Ring> loops;
    std::vector<bool> used(edges.size(), false);
    auto angle_ccw = [&](Point2 from, Point2 to) {
        double a = std::atan2(cross(from, to), dot(from, to));  // (-pi, pi]
        if (a < -1e-12) a += 2 * 3.14159265358979323846;
        return a;  // [0, 2pi)
    };
    for (size_t e0 = 0; e0 < edges.size(); ++e0) {
        if (used[e0]) continue;
        std::vector<int> loop;
        size_t cur = e0;
        for (size_t guard = 0; guard <= edges.size(); ++guard) {
            used[cur] = true;
            loop.push_back(edges[cur].first);
            int at = edges[cur].second;
            if (at == edges[e0].first) break;
            Point2 din = reg.pts[at] - reg.pts[edges[cur].first];
            double best = std::numeric_limits<double>::infinity();
            int next = -1;
            for (size_t e = 0; e < edges.size(); ++e) {
                if (used[e] || edges[e].first != at) continue;
                double a = angle_ccw(din, reg.pts[edges[e].second] - reg.pts[at]);
                if (a < best) {
                    best = a;
                    next = static_cast<int>(e);
                }
            }
            if (next < 0)
                throw GeoError(Errc::InvariantViolation, "open boundary chain in map merge");
            cur = next;
        }
        Ring r;
        for (int id : loop) r.push_back(reg.pts[id]);
        // Drop collinear pass-through vertices.
        Ring simp;
        size_t n = r.size();
        for (size_t i = 0; i < n; ++i) {
            Point2 a = r[(i + n - 1) % n], b = r[i], c = r[(i + 1) % n];
            double cr = cross(b - a, c - b);
            if (std::abs(cr) <= 1e-9 * std::max(1.0, dist(a, b) * dist(b, c)) &&
                dot(b - a, c - b) > 0)
                continue;
            simp.push_back(b);
        }
        if (simp.size() >= 3 && std::abs(ring_area(simp)) > 1e-12) loops.push_back(simp);
    }
    return loops;
}

}  // namespace spmdetail

inline ShortestPathMap shortest_path_map(const GeodesicEngine& eng, Point2 source) {
    const Polygon& P = eng.polygon();
    PointContext cs = eng.context(source);
    DistanceField field = eng.field(source);

    // Cut lines: windows from every anchor through every reflex vertex it
    // sees, plus bisectors of equal-offset anchor pairs (straight ridges).
    std::vector<spmdetail::Line> lines;
    auto add_line = [&](Point2 p, Point2 d) {
        spmdetail::Line L{p, normalized(d)};
        if (norm(L.dir) == 0) return;
        for (const auto& other : lines)
            if (spmdetail::same_line(L, other)) return;
        lines.push_back(L);
    };
    const auto& table = eng.vertices();
    for (const Anchor& a : field.anchors) {
        for (size_t w = 0; w < eng.n(); ++w) {
            if (!table.reflex[w]) continue;
            if (a.vid == static_cast<int>(w)) continue;
            bool sees = a.vid < 0 ? cs.sees[w] != 0 : eng.graph().visible[a.vid][w] != 0;
            if (!sees) continue;
            if (auto seg = spmdetail::window_segment(P, a.p, table.pts[w]))
                add_line(seg->first, seg->second - seg->first);
        }
    }
    for (size_t i = 0; i < field.anchors.size(); ++i)
        for (size_t j = i + 1; j < field.anchors.size(); ++j) {
            const Anchor &a = field.anchors[i], &b = field.anchors[j];
            if (std::abs(a.offset - b.offset) > 1e-9 || near(a.p, b.p)) continue;
            add_line((a.p + b.p) * 0.5, perp(b.p - a.p));
        }

    std::vector<Ring> pieces;
    Triangulation T = triangulate(P);
    for (size_t i = 0; i < T.triangles.size(); ++i) {
        auto [a, b, c] = T.triangle_points(i);
        pieces.push_back({a, b, c});
    }
    for (const auto& L : lines) {
        std::vector<Ring> next;
        for (const Ring& piece : pieces)
            for (Ring& part : spmdetail::split_convex(piece, L)) next.push_back(std::move(part));
        pieces = std::move(next);
    }

    // Label each piece by the best visible anchor at its centroid and verify
    // the formula at vertices, edge midpoints and centroid; bisect on failure.
    struct Labeled {
        Ring ring;
        int anchor_index;
    };
    std::vector<Labeled> labeled;
    double diam = P.diameter_hint();

    auto centroid = [](const Ring& r) {
        Point2 c{0, 0};
        for (Point2 q : r) c = c + q;
        return c / static_cast<double>(r.size());
    };
    auto best_anchor = [&](Point2 q) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < field.anchors.size(); ++i) {
            const Anchor& a = field.anchors[i];
            if (!segment_in_polygon(P, a.p, q)) continue;
            double d = a.offset + dist(a.p, q);
            if (d < bd - 1e-12 ||
                (d < bd + 1e-12 && best >= 0 && lex_less(a.p, field.anchors[best].p))) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    };
    auto verified = [&](const Ring& r, int ai) {
        if (ai < 0) return false;
        const Anchor& a = field.anchors[ai];
        std::vector<Point2> samples(r.begin(), r.end());
        size_t n = r.size();
        for (size_t i = 0; i < n; ++i) samples.push_back((r[i] + r[(i + 1) % n]) * 0.5);
        samples.push_back(centroid(r));
        for (Point2 q : samples) {
            if (!segment_in_polygon(P, a.p, q)) return false;
            double got = a.offset + dist(a.p, q);
            double want = eng.distance(cs, eng.context(q));
            if (std::abs(got - want) > 1e-9 * std::max(1.0, want)) return false;
        }
        return true;
    };

    std::vector<Ring> work = std::move(pieces);
    while (!work.empty()) {
        Ring r = std::move(work.back());
        work.pop_back();
        int ai = best_anchor(centroid(r));
        if (verified(r, ai)) {
            labeled.push_back({std::move(r), ai});
            continue;
        }
        // Longest edge below the floor: accept the centroid label as-is.
        size_t n = r.size(), li = 0;
        double lmax = 0;
        for (size_t i = 0; i < n; ++i) {
            double l = dist(r[i], r[(i + 1) % n]);
            if (l > lmax) {
                lmax = l;
                li = i;
            }
        }
        if (lmax <= 1e-4 * diam) {
            if (ai < 0)
                throw GeoError(Errc::InvariantViolation, "unreachable map piece");
            labeled.push_back({std::move(r), ai});
            continue;
        }
        Point2 m = (r[li] + r[(li + 1) % n]) * 0.5;
        Point2 far = r[(li + static_cast<size_t>(n / 2) + (n % 2 ? 1 : 0)) % n];
        // Split across the midpoint of the longest edge.
        spmdetail::Line L{m, normalized(perp(r[(li + 1) % n] - r[li]))};
        auto parts = spmdetail::split_convex(r, L);
        if (parts.size() < 2) {
            L = {m, normalized(far - m)};
            parts = spmdetail::split_convex(r, L);
        }
        if (parts.size() < 2)
            throw GeoError(Errc::InvariantViolation, "map refinement stalled");
        for (Ring& part : parts) work.push_back(std::move(part));
    }

    // Merge adjacent pieces that share an anchor.
    spmdetail::PointRegistry reg(1e-7);
    std::vector<std::vector<std::vector<int>>> groups(field.anchors.size());
    for (const Labeled& piece : labeled) {
        std::vector<int> ids;
        for (Point2 q : piece.ring) {
            int id = reg.id(q);
            if (ids.empty() || ids.back() != id) ids.push_back(id);
        }
        while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
        if (ids.size() >= 3) groups[piece.anchor_index].push_back(std::move(ids));
    }

    ShortestPathMap map;
    map.source = source;
    for (size_t ai = 0; ai < groups.size(); ++ai) {
        if (groups[ai].empty()) continue;
        for (Ring& loop : spmdetail::trace_boundary(groups[ai], reg)) {
            if (ring_area(loop) < 0)
                throw GeoError(Errc::InvariantViolation, "map cell with interior hole");
            map.cells.push_back(
                {std::move(loop), field.anchors[ai].p, field.anchors[ai].offset,
                 field.anchors[ai].vid});
        }
    }
    std::sort(map.cells.begin(), map.cells.end(), [](const SpmCell& a, const SpmCell& b) {
        if (a.offset != b.offset) return a.offset < b.offset;
        return lex_less(a.anchor, b.anchor);
    });
    return map;
}

inline ShortestPathMap shortest_path_map(const Polygon& P, Point2 source) {
    return shortest_path_map(GeodesicEngine(P), source);
}

}  // namespace geodisk
