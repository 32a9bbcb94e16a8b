#pragma once

// Planar geometry kernel: points, rings, polygons with holes, and the
// eps-aware predicates (containment, segment-inside-polygon) everything
// else is built on. Coordinates are absolute doubles, tolerances are
// absolute distances (kEpsGeom), coordinates assumed O(1)..O(1e3).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geodisk {

inline constexpr double kEpsGeom = 1e-9;

enum class Errc {
    SelfIntersection,
    HoleOutsideOuter,
    HolesOverlap,
    DegenerateRing,
    PointOutsidePolygon,
    NonPositiveRadius,
    PolygonHasHoles,
    InvalidArgument,
    InvalidK,
    EmptySet,
    TooManyCandidates,
    TooManyEdges,
    VerticesNotCovered,
    InvariantViolation,
    DisconnectedSample,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SelfIntersection: return "SelfIntersection";
        case Errc::HoleOutsideOuter: return "HoleOutsideOuter";
        case Errc::HolesOverlap: return "HolesOverlap";
        case Errc::DegenerateRing: return "DegenerateRing";
        case Errc::PointOutsidePolygon: return "PointOutsidePolygon";
        case Errc::NonPositiveRadius: return "NonPositiveRadius";
        case Errc::PolygonHasHoles: return "PolygonHasHoles";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::InvalidK: return "InvalidK";
        case Errc::EmptySet: return "EmptySet";
        case Errc::TooManyCandidates: return "TooManyCandidates";
        case Errc::TooManyEdges: return "TooManyEdges";
        case Errc::VerticesNotCovered: return "VerticesNotCovered";
        case Errc::InvariantViolation: return "InvariantViolation";
        case Errc::DisconnectedSample: return "DisconnectedSample";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

class GeoError : public std::runtime_error {
public:
    GeoError(Errc code, std::string detail, int index = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail +
                             (index >= 0 ? " (index " + std::to_string(index) + ")" : "")),
          code_(code), index_(index) {}
    Errc code() const { return code_; }
    int index() const { return index_; }

private:
    Errc code_;
    int index_;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
    friend Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
    friend Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Point2 a, Point2 b) { return !(a == b); }
};

// Lexicographic (x, then y); the global tie-breaking order.
inline bool lex_less(Point2 a, Point2 b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }
inline double sqdist(Point2 a, Point2 b) { Point2 d = b - a; return dot(d, d); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

inline Point2 normalized(Point2 a) {
    double n = norm(a);
    return n > 0 ? a / n : Point2{0, 0};
}

inline bool near(Point2 a, Point2 b, double eps = kEpsGeom) { return dist(a, b) <= eps; }

// Sign of the area of triangle (a,b,p), zeroed when p is within eps of line ab.
inline int side_of_line(Point2 a, Point2 b, Point2 p, double eps = kEpsGeom) {
    double s = cross(b - a, p - a);
    double len = dist(a, b);
    double tol = eps * std::max(len, 1e-300);
    if (s > tol) return 1;
    if (s < -tol) return -1;
    return 0;
}

inline double dist_point_segment(Point2 p, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double l2 = dot(ab, ab);
    if (l2 == 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

// Parameter of the closest point on segment ab (unclamped projection).
inline double project_param(Point2 p, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double l2 = dot(ab, ab);
    return l2 == 0.0 ? 0.0 : dot(p - a, ab) / l2;
}

inline bool point_on_segment(Point2 p, Point2 a, Point2 b, double eps = kEpsGeom) {
    return dist_point_segment(p, a, b) <= eps;
}

// Strict transversal crossing of open segments.
inline bool proper_crossing(Point2 a, Point2 b, Point2 u, Point2 v, double eps = kEpsGeom) {
    int s1 = side_of_line(a, b, u, eps);
    int s2 = side_of_line(a, b, v, eps);
    int s3 = side_of_line(u, v, a, eps);
    int s4 = side_of_line(u, v, b, eps);
    return s1 * s2 < 0 && s3 * s4 < 0;
}

// Line-line intersection parameter on segment ab; nullopt if near-parallel.
inline std::optional<double> line_intersect_param(Point2 a, Point2 b, Point2 u, Point2 v) {
    Point2 r = b - a, s = v - u;
    double den = cross(r, s);
    double scale = norm(r) * norm(s);
    if (std::abs(den) <= 1e-14 * std::max(scale, 1e-300)) return std::nullopt;
    return cross(u - a, s) / den;
}

inline double segment_min_dist(Point2 a, Point2 b, Point2 u, Point2 v) {
    if (proper_crossing(a, b, u, v, 0.0)) return 0.0;
    return std::min(std::min(dist_point_segment(a, u, v), dist_point_segment(b, u, v)),
                    std::min(dist_point_segment(u, a, b), dist_point_segment(v, a, b)));
}

using Ring = std::vector<Point2>;

inline double ring_area(const Ring& r) {
    double s = 0.0;
    for (size_t i = 0, n = r.size(); i < n; ++i) {
        Point2 p = r[i], q = r[(i + 1) % n];
        s += cross(p, q);
    }
    return 0.5 * s;
}

struct Bbox {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diag() const { return std::hypot(width(), height()); }
};

struct Polygon {
    Ring outer;               // CCW after validation
    std::vector<Ring> holes;  // CW after validation

    size_t vertex_count() const {
        size_t n = outer.size();
        for (const auto& h : holes) n += h.size();
        return n;
    }

    bool has_holes() const { return !holes.empty(); }

    // All rings, ring 0 is the outer.
    size_t ring_count() const { return 1 + holes.size(); }
    const Ring& ring(size_t i) const { return i == 0 ? outer : holes[i - 1]; }

    std::vector<Point2> all_vertices() const {
        std::vector<Point2> v(outer.begin(), outer.end());
        for (const auto& h : holes) v.insert(v.end(), h.begin(), h.end());
        return v;
    }

    Bbox bbox() const {
        Bbox b{outer[0].x, outer[0].y, outer[0].x, outer[0].y};
        for (const auto& p : outer) {
            b.xmin = std::min(b.xmin, p.x);
            b.ymin = std::min(b.ymin, p.y);
            b.xmax = std::max(b.xmax, p.x);
            b.ymax = std::max(b.ymax, p.y);
        }
        return b;
    }

    double diameter_hint() const { return bbox().diag(); }

    double area() const {
        double a = ring_area(outer);
        for (const auto& h : holes) a += ring_area(h);  // holes are CW: negative
        return a;
    }

    // Closed containment: boundary points count as inside.
    bool contains(Point2 q, double eps = kEpsGeom) const {
        for (size_t ri = 0; ri < ring_count(); ++ri) {
            const Ring& r = ring(ri);
            for (size_t i = 0, n = r.size(); i < n; ++i)
                if (dist_point_segment(q, r[i], r[(i + 1) % n]) <= eps) return true;
        }
        return contains_interior(q);
    }

    // Even-odd ray cast, no boundary tolerance; callers wanting the closed
    // model should use contains().
    bool contains_interior(Point2 q) const {
        bool in = false;
        for (size_t ri = 0; ri < ring_count(); ++ri) {
            const Ring& r = ring(ri);
            for (size_t i = 0, n = r.size(); i < n; ++i) {
                Point2 u = r[i], v = r[(i + 1) % n];
                if ((u.y > q.y) != (v.y > q.y)) {
                    double xi = u.x + (q.y - u.y) * (v.x - u.x) / (v.y - u.y);
                    if (xi > q.x) in = !in;
                }
            }
        }
        return in;
    }

    double distance_to_boundary(Point2 q) const {
        double d = std::numeric_limits<double>::infinity();
        for (size_t ri = 0; ri < ring_count(); ++ri) {
            const Ring& r = ring(ri);
            for (size_t i = 0, n = r.size(); i < n; ++i)
                d = std::min(d, dist_point_segment(q, r[i], r[(i + 1) % n]));
        }
        return d;
    }
};

namespace detail {

inline void check_ring_basic(const Ring& r, int ring_index) {
    if (r.size() < 3)
        throw GeoError(Errc::DegenerateRing, "ring has fewer than 3 vertices", ring_index);
    for (size_t i = 0, n = r.size(); i < n; ++i) {
        if (dist(r[i], r[(i + 1) % n]) <= kEpsGeom)
            throw GeoError(Errc::DegenerateRing, "consecutive coincident vertices", ring_index);
        if (!std::isfinite(r[i].x) || !std::isfinite(r[i].y))
            throw GeoError(Errc::DegenerateRing, "non-finite coordinate", ring_index);
    }
    bool collinear = true;
    for (size_t i = 2; i < r.size() && collinear; ++i)
        if (side_of_line(r[0], r[1], r[i]) != 0) collinear = false;
    if (collinear)
        throw GeoError(Errc::DegenerateRing, "all vertices collinear", ring_index);
}

inline void check_ring_simple(const Ring& r, int ring_index) {
    size_t n = r.size();
    for (size_t i = 0; i < n; ++i) {
        Point2 a = r[i], b = r[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            Point2 u = r[j], v = r[(j + 1) % n];
            if (adjacent) {
                // Shared endpoint is fine; reject fold-backs where the next
                // edge doubles back along the previous one.
                Point2 shared = (j == i + 1) ? b : a;
                Point2 e1 = (j == i + 1) ? a - shared : u - shared;
                Point2 e2 = (j == i + 1) ? v - shared : b - shared;
                double c = cross(e1, e2);
                if (std::abs(c) <= kEpsGeom * std::max(norm(e1) * norm(e2), 1e-300) &&
                    dot(e1, e2) > 0)
                    throw GeoError(Errc::SelfIntersection, "edge folds back on neighbor",
                                   ring_index);
                continue;
            }
            if (segment_min_dist(a, b, u, v) <= kEpsGeom)
                throw GeoError(Errc::SelfIntersection, "non-adjacent edges touch", ring_index);
        }
    }
}

inline bool ring_contains_even_odd(const Ring& r, Point2 q) {
    bool in = false;
    for (size_t i = 0, n = r.size(); i < n; ++i) {
        Point2 u = r[i], v = r[(i + 1) % n];
        if ((u.y > q.y) != (v.y > q.y)) {
            double xi = u.x + (q.y - u.y) * (v.x - u.x) / (v.y - u.y);
            if (xi > q.x) in = !in;
        }
    }
    return in;
}

inline double ring_boundary_dist(const Ring& r, Point2 q) {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0, n = r.size(); i < n; ++i)
        d = std::min(d, dist_point_segment(q, r[i], r[(i + 1) % n]));
    return d;
}

inline bool rings_edges_touch(const Ring& a, const Ring& b) {
    for (size_t i = 0, n = a.size(); i < n; ++i)
        for (size_t j = 0, m = b.size(); j < m; ++j)
            if (segment_min_dist(a[i], a[(i + 1) % n], b[j], b[(j + 1) % m]) <= kEpsGeom)
                return true;
    return false;
}

// Reverse a ring keeping vertex 0 first, so "first vertex of the outer
// ring" is orientation-independent.
inline void reverse_keep_first(Ring& r) { std::reverse(r.begin() + 1, r.end()); }

}  // namespace detail

// Validates and normalizes: outer CCW, holes CW, original first vertices kept.
inline Polygon validate_polygon(Ring outer, std::vector<Ring> holes = {}) {
    auto check_ring = [](const Ring& r, int idx) {
        detail::check_ring_basic(r, idx);
        detail::check_ring_simple(r, idx);
        if (std::abs(ring_area(r)) <= kEpsGeom)
            throw GeoError(Errc::DegenerateRing, "ring has near-zero area", idx);
    };
    check_ring(outer, 0);
    if (ring_area(outer) < 0) detail::reverse_keep_first(outer);

    for (size_t h = 0; h < holes.size(); ++h) {
        int idx = static_cast<int>(h) + 1;
        check_ring(holes[h], idx);
        if (ring_area(holes[h]) > 0) detail::reverse_keep_first(holes[h]);
    }

    for (size_t h = 0; h < holes.size(); ++h) {
        int idx = static_cast<int>(h) + 1;
        for (const Point2& v : holes[h]) {
            if (!detail::ring_contains_even_odd(outer, v) ||
                detail::ring_boundary_dist(outer, v) <= kEpsGeom)
                throw GeoError(Errc::HoleOutsideOuter, "hole vertex not strictly inside outer",
                               idx);
        }
        if (detail::rings_edges_touch(outer, holes[h]))
            throw GeoError(Errc::HoleOutsideOuter, "hole touches outer boundary", idx);
    }

    for (size_t h = 0; h < holes.size(); ++h) {
        for (size_t g = h + 1; g < holes.size(); ++g) {
            int idx = static_cast<int>(g) + 1;
            if (detail::rings_edges_touch(holes[h], holes[g]))
                throw GeoError(Errc::HolesOverlap, "hole boundaries touch", idx);
            if (detail::ring_contains_even_odd(holes[h], holes[g][0]) ||
                detail::ring_contains_even_odd(holes[g], holes[h][0]))
                throw GeoError(Errc::HolesOverlap, "hole nested in another hole", idx);
        }
    }

    Polygon p;
    p.outer = std::move(outer);
    p.holes = std::move(holes);
    return p;
}

// True when the closed segment ab stays inside the closed polygon.
// Grazing contact with the boundary (touching vertices, running along
// edges) is allowed; crossing to the exterior is not.
inline bool segment_in_polygon(const Polygon& P, Point2 a, Point2 b, double eps = kEpsGeom) {
    if (!P.contains(a, eps) || !P.contains(b, eps)) return false;
    double len = dist(a, b);
    if (len <= eps) return true;

    std::vector<double> ts{0.0, 1.0};
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& r = P.ring(ri);
        for (size_t i = 0, n = r.size(); i < n; ++i) {
            Point2 u = r[i], v = r[(i + 1) % n];
            if (proper_crossing(a, b, u, v, eps)) return false;
            if (segment_min_dist(a, b, u, v) > eps) continue;
            // Touching or collinear: record breakpoints where the contact
            // starts/ends so the in/out status is constant between them.
            if (auto t = line_intersect_param(a, b, u, v)) {
                Point2 q = a + (b - a) * (*t);
                if (*t > -eps / len && *t < 1 + eps / len && point_on_segment(q, u, v, eps))
                    ts.push_back(std::clamp(*t, 0.0, 1.0));
            }
            for (Point2 w : {u, v}) {
                if (point_on_segment(w, a, b, eps))
                    ts.push_back(std::clamp(project_param(w, a, b), 0.0, 1.0));
            }
        }
    }

    std::sort(ts.begin(), ts.end());
    double tol = eps / len;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] <= tol) continue;
        Point2 m = a + (b - a) * (0.5 * (ts[i] + ts[i + 1]));
        if (!P.contains(m, eps)) return false;
    }
    return true;
}

// Interior angle at ring vertex i exceeds pi (polygon interior side).
// Assumes normalized orientation (outer CCW, holes CW): interior is to
// the left of every directed edge, so a right turn marks a reflex vertex.
inline bool ring_vertex_reflex(const Ring& r, size_t i) {
    size_t n = r.size();
    Point2 prev = r[(i + n - 1) % n], cur = r[i], next = r[(i + 1) % n];
    return cross(cur - prev, next - cur) < -kEpsGeom * std::max(dist(prev, cur) * dist(cur, next), 1e-300);
}

struct VertexRef {
    size_t ring = 0;   // 0 = outer
    size_t index = 0;  // index within ring
};

// Flattened vertex table with reflex flags; vertex order: outer ring then
// holes, preserving ring order.
struct VertexTable {
    std::vector<Point2> pts;
    std::vector<VertexRef> refs;
    std::vector<bool> reflex;

    explicit VertexTable(const Polygon& P) {
        for (size_t ri = 0; ri < P.ring_count(); ++ri) {
            const Ring& r = P.ring(ri);
            for (size_t i = 0; i < r.size(); ++i) {
                pts.push_back(r[i]);
                refs.push_back({ri, i});
                reflex.push_back(ring_vertex_reflex(r, i));
            }
        }
    }
};

}  // namespace geodisk
