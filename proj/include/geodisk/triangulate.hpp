#pragma once

// Polygon triangulation by ear clipping. Holes are spliced into the outer
// ring through zero-width bridges between mutually visible vertices, so a
// polygon with n vertices and h holes yields n + 2h - 2 triangles.

#include <array>
#include <cstddef>
#include <map>
#include <random>

#include "geometry.hpp"

namespace geodisk {

struct Triangulation {
    std::vector<Point2> vertices;              // VertexTable order: outer ring then holes
    std::vector<std::array<int, 3>> triangles; // CCW index triples into vertices
    std::vector<std::array<int, 3>> adjacency; // neighbor triangle per edge (i,i+1), -1 = boundary

    double total_area() const {
        double s = 0;
        for (const auto& t : triangles)
            s += 0.5 * cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
        return s;
    }

    std::array<Point2, 3> triangle_points(size_t i) const {
        const auto& t = triangles[i];
        return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
    }

    // Index of a triangle containing q (boundary inclusive), -1 if none.
    int locate(Point2 q, double eps = kEpsGeom) const {
        for (size_t i = 0; i < triangles.size(); ++i) {
            auto [a, b, c] = triangle_points(i);
            if (side_of_line(a, b, q, eps) >= 0 && side_of_line(b, c, q, eps) >= 0 &&
                side_of_line(c, a, q, eps) >= 0)
                return static_cast<int>(i);
        }
        return -1;
    }
};

namespace detail {

struct EarNode {
    Point2 p;
    int vid;
    int prev, next;
};

inline bool pt_in_tri_inclusive(Point2 q, Point2 a, Point2 b, Point2 c) {
    double d1 = cross(b - a, q - a);
    double d2 = cross(c - b, q - b);
    double d3 = cross(a - c, q - c);
    bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
    bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
    return !(has_neg && has_pos);
}

inline double tri_cross(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Ring with holes spliced in; each element is (point, vertex-table id).
inline std::vector<std::pair<Point2, int>> bridge_holes(const Polygon& P) {
    std::vector<std::pair<Point2, int>> ring;
    int vid = 0;
    for (const Point2& p : P.outer) ring.push_back({p, vid++});

    struct HoleRec {
        size_t hole_index;
        int base_vid;
        double max_x;
    };
    std::vector<HoleRec> order;
    int base = static_cast<int>(P.outer.size());
    for (size_t h = 0; h < P.holes.size(); ++h) {
        double mx = P.holes[h][0].x;
        for (const Point2& p : P.holes[h]) mx = std::max(mx, p.x);
        order.push_back({h, base, mx});
        base += static_cast<int>(P.holes[h].size());
    }
    std::sort(order.begin(), order.end(),
              [](const HoleRec& a, const HoleRec& b) { return a.max_x > b.max_x; });

    std::vector<std::pair<Point2, Point2>> bridges;
    auto bridge_clear = [&](Point2 a, Point2 b) {
        for (size_t ri = 0; ri < P.ring_count(); ++ri) {
            const Ring& r = P.ring(ri);
            for (size_t i = 0, n = r.size(); i < n; ++i) {
                Point2 u = r[i], v = r[(i + 1) % n];
                if (near(u, a) || near(v, a) || near(u, b) || near(v, b)) continue;
                if (segment_min_dist(a, b, u, v) <= kEpsGeom) return false;
            }
        }
        for (const auto& [u, v] : bridges)
            if (segment_min_dist(a, b, u, v) <= kEpsGeom) return false;
        for (double t : {0.25, 0.5, 0.75}) {
            Point2 m = a + (b - a) * t;
            if (!P.contains_interior(m)) return false;
        }
        return true;
    };

    for (const HoleRec& rec : order) {
        const Ring& hole = P.holes[rec.hole_index];
        size_t hn = hole.size();

        // Candidate bridge endpoints, closest pairs first.
        struct Cand {
            double d;
            size_t hv;
            size_t rpos;
        };
        std::vector<Cand> cands;
        for (size_t hv = 0; hv < hn; ++hv)
            for (size_t rp = 0; rp < ring.size(); ++rp)
                cands.push_back({dist(hole[hv], ring[rp].first), hv, rp});
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });

        bool spliced = false;
        for (const Cand& c : cands) {
            Point2 a = hole[c.hv], b = ring[c.rpos].first;
            if (!segment_in_polygon(P, a, b)) continue;
            if (!bridge_clear(a, b)) continue;

            std::vector<std::pair<Point2, int>> insert;
            for (size_t k = 0; k <= hn; ++k) {
                size_t idx = (c.hv + k) % hn;
                insert.push_back({hole[idx], rec.base_vid + static_cast<int>(idx)});
            }
            insert.push_back(ring[c.rpos]);  // duplicate of the ring vertex closes the bridge
            ring.insert(ring.begin() + c.rpos + 1, insert.begin(), insert.end());
            bridges.push_back({a, b});
            spliced = true;
            break;
        }
        if (!spliced)
            throw GeoError(Errc::InvariantViolation, "no visible bridge found for hole",
                           static_cast<int>(rec.hole_index) + 1);
    }
    return ring;
}

}  // namespace detail

inline Triangulation triangulate(const Polygon& P) {
    Triangulation T;
    T.vertices = P.all_vertices();
    size_t expected = P.vertex_count() + 2 * P.holes.size() - 2;

    auto ring = P.has_holes()
                    ? detail::bridge_holes(P)
                    : [&] {
                          std::vector<std::pair<Point2, int>> r;
                          for (size_t i = 0; i < P.outer.size(); ++i)
                              r.push_back({P.outer[i], static_cast<int>(i)});
                          return r;
                      }();

    // Linked list over the spliced ring.
    std::vector<detail::EarNode> nodes(ring.size());
    int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
        nodes[i] = {ring[i].first, ring[i].second, (i + n - 1) % n, (i + 1) % n};
    }

    auto is_ear = [&](int cur) {
        const auto& a = nodes[nodes[cur].prev];
        const auto& b = nodes[cur];
        const auto& c = nodes[nodes[cur].next];
        double ar = detail::tri_cross(a.p, b.p, c.p);
        double scale = std::max({dist(a.p, b.p) * dist(b.p, c.p), 1e-300});
        if (ar <= kEpsGeom * scale) return false;  // reflex or degenerate corner
        for (int q = nodes[nodes[cur].next].next; q != nodes[cur].prev; q = nodes[q].next) {
            const auto& pq = nodes[q];
            if (near(pq.p, a.p) || near(pq.p, b.p) || near(pq.p, c.p)) continue;
            if (detail::pt_in_tri_inclusive(pq.p, a.p, b.p, c.p)) {
                double par = detail::tri_cross(nodes[pq.prev].p, pq.p, nodes[pq.next].p);
                if (par <= 0) return false;  // blocking reflex vertex
            }
        }
        return true;
    };

    int remaining = n;
    int cur = 0;
    int since_clip = 0;
    while (remaining > 3) {
        if (is_ear(cur)) {
            const auto& a = nodes[nodes[cur].prev];
            const auto& b = nodes[cur];
            const auto& c = nodes[nodes[cur].next];
            T.triangles.push_back({a.vid, b.vid, c.vid});
            nodes[nodes[cur].prev].next = nodes[cur].next;
            nodes[nodes[cur].next].prev = nodes[cur].prev;
            cur = nodes[cur].next;
            --remaining;
            since_clip = 0;
        } else {
            cur = nodes[cur].next;
            if (++since_clip > remaining) {
                // Stalled (duplicate bridge corners can block every strict
                // ear); relax the blocking test to strictly-interior points.
                bool clipped = false;
                int probe = cur;
                for (int k = 0; k < remaining && !clipped; ++k, probe = nodes[probe].next) {
                    const auto& a = nodes[nodes[probe].prev];
                    const auto& b = nodes[probe];
                    const auto& c = nodes[nodes[probe].next];
                    double ar = detail::tri_cross(a.p, b.p, c.p);
                    if (ar <= 0) continue;
                    bool blocked = false;
                    for (int q = nodes[nodes[probe].next].next; q != nodes[probe].prev;
                         q = nodes[q].next) {
                        Point2 pp = nodes[q].p;
                        if (near(pp, a.p) || near(pp, b.p) || near(pp, c.p)) continue;
                        if (detail::pt_in_tri_inclusive(pp, a.p, b.p, c.p) &&
                            dist_point_segment(pp, a.p, b.p) > kEpsGeom &&
                            dist_point_segment(pp, b.p, c.p) > kEpsGeom &&
                            dist_point_segment(pp, c.p, a.p) > kEpsGeom) {
                            blocked = true;
                            break;
                        }
                    }
                    if (!blocked) {
                        T.triangles.push_back({a.vid, b.vid, c.vid});
                        nodes[nodes[probe].prev].next = nodes[probe].next;
                        nodes[nodes[probe].next].prev = nodes[probe].prev;
                        cur = nodes[probe].next;
                        --remaining;
                        since_clip = 0;
                        clipped = true;
                    }
                }
                if (!clipped)
                    throw GeoError(Errc::InvariantViolation, "ear clipping stalled");
            }
        }
    }
    {
        const auto& a = nodes[nodes[cur].prev];
        const auto& b = nodes[cur];
        const auto& c = nodes[nodes[cur].next];
        T.triangles.push_back({a.vid, b.vid, c.vid});
    }

    if (T.triangles.size() != expected)
        throw GeoError(Errc::InvariantViolation,
                       "triangle count " + std::to_string(T.triangles.size()) + " != expected " +
                           std::to_string(expected));
    double area_err = std::abs(T.total_area() - P.area());
    if (area_err > 1e-6 * std::max(1.0, std::abs(P.area())))
        throw GeoError(Errc::InvariantViolation, "triangulation area mismatch");

    // Adjacency via shared directed edges.
    std::map<std::pair<int, int>, int> edge_owner;
    T.adjacency.assign(T.triangles.size(), {-1, -1, -1});
    for (size_t ti = 0; ti < T.triangles.size(); ++ti) {
        const auto& t = T.triangles[ti];
        for (int e = 0; e < 3; ++e) {
            int u = t[e], v = t[(e + 1) % 3];
            auto it = edge_owner.find({v, u});
            if (it != edge_owner.end()) {
                int other = it->second;
                T.adjacency[ti][e] = other / 3;
                T.adjacency[other / 3][other % 3] = static_cast<int>(ti);
            }
            edge_owner[{u, v}] = static_cast<int>(ti) * 3 + e;
        }
    }
    return T;
}

// Area-weighted uniform interior point sampler.
class InteriorSampler {
public:
    InteriorSampler(const Polygon& P, const Triangulation& T) : tri_(&T) {
        double acc = 0;
        for (size_t i = 0; i < T.triangles.size(); ++i) {
            auto [a, b, c] = T.triangle_points(i);
            acc += std::abs(0.5 * detail::tri_cross(a, b, c));
            cum_.push_back(acc);
        }
        (void)P;
    }

    Point2 sample(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double target = u01(rng) * cum_.back();
        size_t i = std::lower_bound(cum_.begin(), cum_.end(), target) - cum_.begin();
        i = std::min(i, tri_->triangles.size() - 1);
        auto [a, b, c] = tri_->triangle_points(i);
        double r1 = std::sqrt(u01(rng)), r2 = u01(rng);
        return a * (1 - r1) + b * (r1 * (1 - r2)) + c * (r1 * r2);
    }

private:
    const Triangulation* tri_;
    std::vector<double> cum_;
};

}  // namespace geodisk
