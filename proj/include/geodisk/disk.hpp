#pragma once

// Geodesic disks and their boundaries. A disk boundary is assembled from
// candidate circles — one per distance-field anchor with positive residual
// radius — split at every circle/circle and circle/edge intersection; an
// arc piece survives when its midpoint lies in the polygon, sees its anchor,
// and sits at geodesic distance exactly r from the center. The polygon-edge
// portions at distance <= r complete the closed curve. Window crossings cost
// nothing special: a parent and child circle meet at an internal tangency,
// which is already a circle/circle event.

#include "geodesic.hpp"

namespace geodisk {

inline constexpr double kTau = 6.283185307179586476925286766559;

struct GeodesicDisk {
    Point2 center;
    double radius = 0;
};

struct Arc {
    Point2 anchor;
    double residual_radius = 0;
    double start_angle = 0;  // radians; end_angle >= start_angle, sweep <= 2*pi
    double end_angle = 0;

    Point2 point_at(double theta) const {
        return anchor + Point2{std::cos(theta), std::sin(theta)} * residual_radius;
    }
    Point2 midpoint() const { return point_at(0.5 * (start_angle + end_angle)); }
};

struct BoundaryPortion {
    Point2 a, b;          // sub-segment of a polygon edge
    size_t ring = 0, edge = 0;
    double t0 = 0, t1 = 0;  // params along the edge
};

struct DiskBoundary {
    GeodesicDisk disk;
    std::vector<Arc> arcs;
    std::vector<BoundaryPortion> boundary_portions;
};

struct IntersectionPoint {
    Point2 p;
    bool tangential = false;
};

namespace diskdetail {

inline double norm_angle(double a) {
    a = std::fmod(a, kTau);
    return a < 0 ? a + kTau : a;
}

// Angle placed into [start, start + 2*pi).
inline double unwrap_from(double start, double a) {
    double d = std::fmod(a - start, kTau);
    if (d < 0) d += kTau;
    return start + d;
}

inline bool angle_in_arc(const Arc& arc, double theta, double slack = 1e-9) {
    if (arc.end_angle - arc.start_angle >= kTau - 1e-12) return true;
    double u = unwrap_from(arc.start_angle, theta);
    return u <= arc.end_angle + slack;
}

struct CirclePair {
    int count = 0;  // 0, 1 (tangential) or 2
    Point2 p[2];
    bool tangential = false;
};

inline CirclePair circle_circle(Point2 a, double ra, Point2 b, double rb) {
    CirclePair out;
    double d = dist(a, b);
    if (d <= 1e-12) return out;  // concentric: no isolated intersections
    if (d > ra + rb + 1e-9 || d < std::abs(ra - rb) - 1e-9) return out;
    double x = (d * d + ra * ra - rb * rb) / (2 * d);
    double h2 = ra * ra - x * x;
    double h = h2 > 0 ? std::sqrt(h2) : 0.0;
    Point2 u = (b - a) / d;
    Point2 m = a + u * x;
    if (h <= 1e-9 * std::max(1.0, ra)) {
        out.count = 1;
        out.p[0] = m;
        out.tangential = true;
    } else {
        out.count = 2;
        out.p[0] = m + perp(u) * h;
        out.p[1] = m - perp(u) * h;
    }
    return out;
}

// Params t of |u + t(v-u) - a| = r, clamped near [0,1].
inline std::vector<double> circle_segment(Point2 a, double r, Point2 u, Point2 v) {
    std::vector<double> out;
    Point2 d = v - u, f = u - a;
    double A = dot(d, d);
    if (A <= 1e-300) return out;
    double B = 2 * dot(f, d), C = dot(f, f) - r * r;
    double disc = B * B - 4 * A * C;
    if (disc < 0) return out;
    double s = std::sqrt(disc);
    for (double t : {(-B - s) / (2 * A), (-B + s) / (2 * A)}) {
        if (t >= -1e-9 && t <= 1 + 1e-9) out.push_back(std::clamp(t, 0.0, 1.0));
        if (disc == 0) break;
    }
    return out;
}

}  // namespace diskdetail

// Exact disk boundary of radius r about c.
inline DiskBoundary disk_boundary(const GeodesicEngine& eng, Point2 c, double r) {
    if (r <= kEpsGeom) throw GeoError(Errc::NonPositiveRadius, "disk radius too small");
    const Polygon& P = eng.polygon();
    PointContext cc = eng.context(c);  // throws PointOutsidePolygon
    DistanceField field = eng.field(c);

    DiskBoundary out;
    out.disk = {c, r};

    struct Circle {
        Point2 a;
        double rho;
    };
    std::vector<Circle> circles;
    for (const Anchor& an : field.anchors)
        if (an.offset < r - 1e-12) circles.push_back({an.p, r - an.offset});

    auto exact_distance = [&](Point2 q) { return eng.distance(cc, eng.context(q)); };

    for (size_t ci = 0; ci < circles.size(); ++ci) {
        const Circle& K = circles[ci];
        std::vector<double> cuts;
        for (size_t cj = 0; cj < circles.size(); ++cj) {
            if (cj == ci) continue;
            auto X = diskdetail::circle_circle(K.a, K.rho, circles[cj].a, circles[cj].rho);
            for (int t = 0; t < X.count; ++t) {
                Point2 d = X.p[t] - K.a;
                cuts.push_back(std::atan2(d.y, d.x));
            }
        }
        for (size_t ri = 0; ri < P.ring_count(); ++ri) {
            const Ring& ring = P.ring(ri);
            for (size_t i = 0, n = ring.size(); i < n; ++i)
                for (double t :
                     diskdetail::circle_segment(K.a, K.rho, ring[i], ring[(i + 1) % n])) {
                    Point2 q = ring[i] + (ring[(i + 1) % n] - ring[i]) * t;
                    Point2 d = q - K.a;
                    cuts.push_back(std::atan2(d.y, d.x));
                }
        }

        auto emit = [&](double a0, double a1) {
            if (a1 - a0 <= 1e-12) return;
            Arc arc{K.a, K.rho, a0, a1};
            Point2 m = arc.midpoint();
            if (!P.contains(m)) return;
            if (!segment_in_polygon(P, K.a, m)) return;
            if (exact_distance(m) < r - 1e-9 * std::max(1.0, r)) return;
            out.arcs.push_back(arc);
        };

        if (cuts.empty()) {
            bool ok = true;
            for (double th : {0.0, kTau / 4, kTau / 2, 3 * kTau / 4}) {
                Point2 q = K.a + Point2{std::cos(th), std::sin(th)} * K.rho;
                if (!P.contains(q) || exact_distance(q) < r - 1e-9) ok = false;
            }
            if (ok) out.arcs.push_back({K.a, K.rho, 0.0, kTau});
            continue;
        }
        for (double& a : cuts) a = diskdetail::norm_angle(a);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
                   cuts.end());
        for (size_t i = 0; i < cuts.size(); ++i) {
            double a0 = cuts[i];
            double a1 = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + kTau;
            emit(a0, a1);
        }
    }

    // Polygon-boundary portions at distance <= r; breakpoints are exactly the
    // circle/edge crossings, so coverage is constant between them.
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& ring = P.ring(ri);
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            Point2 u = ring[i], v = ring[(i + 1) % n];
            std::vector<double> ts{0.0, 1.0};
            for (const Circle& K : circles)
                for (double t : diskdetail::circle_segment(K.a, K.rho, u, v)) ts.push_back(t);
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end(),
                                 [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
                     ts.end());
            double run0 = -1;
            double prev_end = -1;
            for (size_t s = 0; s + 1 < ts.size(); ++s) {
                Point2 m = u + (v - u) * (0.5 * (ts[s] + ts[s + 1]));
                bool in = exact_distance(m) <= r + 1e-9 * std::max(1.0, r);
                if (in && run0 < 0) run0 = ts[s];
                if ((!in || s + 2 == ts.size()) && run0 >= 0) {
                    double end = in ? ts[s + 1] : ts[s];
                    if (end - run0 > 1e-12) {
                        out.boundary_portions.push_back(
                            {u + (v - u) * run0, u + (v - u) * end, ri, i, run0, end});
                        prev_end = end;
                    }
                    run0 = -1;
                }
            }
            (void)prev_end;
        }
    }
    return out;
}

inline DiskBoundary disk_boundary(const Polygon& P, Point2 c, double r) {
    return disk_boundary(GeodesicEngine(P), c, r);
}

inline bool disk_contains(const GeodesicEngine& eng, const PointContext& center_ctx,
                          const GeodesicDisk& D, const PointContext& q) {
    return eng.distance(center_ctx, q) <= D.radius + 1e-9 * std::max(1.0, D.radius);
}

inline bool disk_contains(const Polygon& P, const GeodesicDisk& D, Point2 q) {
    GeodesicEngine eng(P);
    return disk_contains(eng, eng.context(D.center), D, eng.context(q));
}

// All transversal (and flagged tangential) intersections of two boundaries.
inline std::vector<IntersectionPoint> boundary_intersections(const DiskBoundary& b1,
                                                             const DiskBoundary& b2) {
    std::vector<IntersectionPoint> out;
    auto add = [&](Point2 p, bool tang) {
        for (const auto& q : out)
            if (near(q.p, p, 1e-9)) return;
        out.push_back({p, tang});
    };

    for (const Arc& x : b1.arcs)
        for (const Arc& y : b2.arcs) {
            auto X = diskdetail::circle_circle(x.anchor, x.residual_radius, y.anchor,
                                               y.residual_radius);
            for (int t = 0; t < X.count; ++t) {
                Point2 dx = X.p[t] - x.anchor, dy = X.p[t] - y.anchor;
                if (diskdetail::angle_in_arc(x, std::atan2(dx.y, dx.x)) &&
                    diskdetail::angle_in_arc(y, std::atan2(dy.y, dy.x)))
                    add(X.p[t], X.tangential);
            }
        }

    auto arc_portions = [&](const std::vector<Arc>& arcs,
                            const std::vector<BoundaryPortion>& portions) {
        for (const Arc& x : arcs)
            for (const BoundaryPortion& s : portions)
                for (double t :
                     diskdetail::circle_segment(x.anchor, x.residual_radius, s.a, s.b)) {
                    Point2 q = s.a + (s.b - s.a) * t;
                    Point2 d = q - x.anchor;
                    if (diskdetail::angle_in_arc(x, std::atan2(d.y, d.x))) add(q, false);
                }
    };
    arc_portions(b1.arcs, b2.boundary_portions);
    arc_portions(b2.arcs, b1.boundary_portions);
    return out;
}

// Boundary of a union of disks, kept as an unordered set of clipped pieces.
struct ArrangementBoundary {
    struct Piece {
        size_t disk = 0;
        bool is_arc = false;
        Arc arc;
        BoundaryPortion portion;
    };
    std::vector<DiskBoundary> disks;
    std::vector<Piece> pieces;
};

namespace diskdetail {

inline bool strictly_inside_some(const GeodesicEngine& eng,
                                 const std::vector<PointContext>& centers,
                                 const std::vector<DiskBoundary>& disks, Point2 q,
                                 int skip = -1) {
    PointContext cq = eng.context(q);
    for (size_t i = 0; i < disks.size(); ++i) {
        if (static_cast<int>(i) == skip) continue;
        if (eng.distance(centers[i], cq) < disks[i].disk.radius - 1e-9) return true;
    }
    return false;
}

}  // namespace diskdetail

// Adds a disk to the union boundary; returns the candidate points Algorithm-
// style callers need: intersections of the new boundary with the old union
// boundary and with the still-uncovered part of the polygon boundary.
inline std::vector<Point2> update_arrangement(const GeodesicEngine& eng, ArrangementBoundary& A,
                                              const DiskBoundary& D) {
    std::vector<Point2> fresh;
    auto add_point = [&](Point2 p) {
        for (const auto& q : fresh)
            if (near(q, p, 1e-9)) return;
        fresh.push_back(p);
    };

    std::vector<PointContext> centers;
    for (const auto& db : A.disks) centers.push_back(eng.context(db.disk.center));
    PointContext cnew = eng.context(D.disk.center);

    for (const DiskBoundary& old : A.disks)
        for (const IntersectionPoint& ip : boundary_intersections(old, D)) {
            PointContext cq = eng.context(ip.p);
            bool interior = false;
            for (size_t i = 0; i < A.disks.size() && !interior; ++i)
                if (eng.distance(centers[i], cq) < A.disks[i].disk.radius - 1e-9)
                    interior = true;
            if (!interior) add_point(ip.p);
        }

    for (const BoundaryPortion& s : D.boundary_portions)
        for (Point2 p : {s.a, s.b}) {
            PointContext cq = eng.context(p);
            bool interior = eng.distance(cnew, cq) < D.disk.radius - 1e-9;
            for (size_t i = 0; i < A.disks.size() && !interior; ++i)
                if (eng.distance(centers[i], cq) < A.disks[i].disk.radius - 1e-9)
                    interior = true;
            if (!interior) add_point(p);
        }

    // Clip old pieces against the new disk.
    std::vector<ArrangementBoundary::Piece> kept;
    auto keep_if_outside_new = [&](const ArrangementBoundary::Piece& piece, Point2 probe) {
        if (eng.distance(cnew, eng.context(probe)) >= D.disk.radius - 1e-9)
            kept.push_back(piece);
    };
    for (const auto& piece : A.pieces) {
        if (piece.is_arc) {
            const Arc& arc = piece.arc;
            std::vector<double> cuts{arc.start_angle, arc.end_angle};
            for (const Arc& na : D.arcs) {
                auto X = diskdetail::circle_circle(arc.anchor, arc.residual_radius, na.anchor,
                                                   na.residual_radius);
                for (int t = 0; t < X.count; ++t) {
                    Point2 d = X.p[t] - arc.anchor;
                    double th = diskdetail::unwrap_from(arc.start_angle, std::atan2(d.y, d.x));
                    if (th <= arc.end_angle + 1e-12) cuts.push_back(std::min(th, arc.end_angle));
                }
            }
            std::sort(cuts.begin(), cuts.end());
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
                ArrangementBoundary::Piece sub = piece;
                sub.arc.start_angle = cuts[i];
                sub.arc.end_angle = cuts[i + 1];
                keep_if_outside_new(sub, sub.arc.midpoint());
            }
        } else {
            const BoundaryPortion& s = piece.portion;
            std::vector<double> cuts{s.t0, s.t1};
            Point2 u = s.a, v = s.b;
            double span = s.t1 - s.t0;
            for (const Arc& na : D.arcs)
                for (double t : diskdetail::circle_segment(na.anchor, na.residual_radius, u, v))
                    cuts.push_back(s.t0 + t * span);
            std::sort(cuts.begin(), cuts.end());
            for (size_t i = 0; i + 1 < cuts.size(); ++i) {
                if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
                ArrangementBoundary::Piece sub = piece;
                double lt0 = (cuts[i] - s.t0) / std::max(span, 1e-300);
                double lt1 = (cuts[i + 1] - s.t0) / std::max(span, 1e-300);
                sub.portion.a = u + (v - u) * lt0;
                sub.portion.b = u + (v - u) * lt1;
                sub.portion.t0 = cuts[i];
                sub.portion.t1 = cuts[i + 1];
                keep_if_outside_new(sub, (sub.portion.a + sub.portion.b) * 0.5);
            }
        }
    }

    // Clip the new disk's pieces against the old disks.
    auto clip_new_arc = [&](const Arc& arc) {
        std::vector<double> cuts{arc.start_angle, arc.end_angle};
        for (const DiskBoundary& old : A.disks)
            for (const Arc& oa : old.arcs) {
                auto X = diskdetail::circle_circle(arc.anchor, arc.residual_radius, oa.anchor,
                                                   oa.residual_radius);
                for (int t = 0; t < X.count; ++t) {
                    Point2 d = X.p[t] - arc.anchor;
                    double th = diskdetail::unwrap_from(arc.start_angle, std::atan2(d.y, d.x));
                    if (th <= arc.end_angle + 1e-12) cuts.push_back(std::min(th, arc.end_angle));
                }
            }
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
            Arc sub = arc;
            sub.start_angle = cuts[i];
            sub.end_angle = cuts[i + 1];
            if (!diskdetail::strictly_inside_some(eng, centers, A.disks, sub.midpoint()))
                A.pieces.push_back({A.disks.size(), true, sub, {}});
        }
    };
    auto clip_new_portion = [&](const BoundaryPortion& s) {
        std::vector<double> cuts{s.t0, s.t1};
        double span = s.t1 - s.t0;
        for (const DiskBoundary& old : A.disks)
            for (const Arc& oa : old.arcs)
                for (double t :
                     diskdetail::circle_segment(oa.anchor, oa.residual_radius, s.a, s.b))
                    cuts.push_back(s.t0 + t * span);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] <= 1e-12) continue;
            BoundaryPortion sub = s;
            double lt0 = (cuts[i] - s.t0) / std::max(span, 1e-300);
            double lt1 = (cuts[i + 1] - s.t0) / std::max(span, 1e-300);
            sub.a = s.a + (s.b - s.a) * lt0;
            sub.b = s.a + (s.b - s.a) * lt1;
            sub.t0 = cuts[i];
            sub.t1 = cuts[i + 1];
            if (!diskdetail::strictly_inside_some(eng, centers, A.disks, (sub.a + sub.b) * 0.5))
                A.pieces.push_back({A.disks.size(), false, {}, sub});
        }
    };

    A.pieces = std::move(kept);
    for (const Arc& arc : D.arcs) clip_new_arc(arc);
    for (const BoundaryPortion& s : D.boundary_portions) clip_new_portion(s);
    A.disks.push_back(D);
    return fresh;
}

}  // namespace geodisk
