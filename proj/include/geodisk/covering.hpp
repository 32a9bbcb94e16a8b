#pragma once

// Farthest-point machinery and Gonzalez-style placement. The far point of a
// center set is located on a finite candidate set: polygon vertices, boundary
// points where the lower envelope of the per-center distance fields switches
// anchors, and interior points harvested along anchor-pair bisector curves
// (triple ties and ridge peaks). Bisectors of equal-offset anchors are
// straight lines; unequal offsets give one hyperbola branch, walked in its
// exact parametrization.

#include "geodesic.hpp"

namespace geodisk {

struct CandidateSet {
    std::vector<Point2> voronoi_vertices;      // interior ties / ridge peaks
    std::vector<Point2> edge_boundary_points;  // envelope switches on the boundary
    std::vector<Point2> polygon_vertices;

    std::vector<Point2> all() const {
        std::vector<Point2> out = polygon_vertices;
        out.insert(out.end(), edge_boundary_points.begin(), edge_boundary_points.end());
        out.insert(out.end(), voronoi_vertices.begin(), voronoi_vertices.end());
        return out;
    }
};

struct PlacementResult {
    std::vector<Point2> centers;
    std::vector<double> radii_trace;  // covering radius after each center
    double covering_radius = 0;
    double certificate_delta = 0;  // min pairwise distance over centers + next farthest
    Point2 next_farthest{};
    bool saturated = false;  // stopped early because the radius hit zero
};

struct CoverResult {
    std::vector<Point2> centers;
    double radius = 0;
    PlacementResult placement;
};

struct PackResult {
    std::vector<Point2> centers;
    double radius = 0;
    PlacementResult placement;
};

struct FarthestPoint {
    Point2 p;
    double dist = 0;
};

namespace coverdetail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct FlatAnchor {
    Point2 p;
    double off = 0;
    int vid = -1;  // -1: the anchor is the center itself
    size_t center = 0;
};

// All centers' distance fields, flattened for envelope queries.
struct FieldStack {
    const GeodesicEngine* eng = nullptr;
    std::vector<Point2> centers;
    std::vector<DistanceField> fields;
    std::vector<FlatAnchor> fas;
    double diam = 1;

    explicit FieldStack(const GeodesicEngine& e) : eng(&e) {
        Bbox bb = e.polygon().bbox();
        diam = std::max(1e-12, bb.diag());
    }

    void add_center(Point2 c) {
        size_t ci = centers.size();
        centers.push_back(c);
        fields.push_back(eng->field(c));
        for (const Anchor& a : fields.back().anchors) fas.push_back({a.p, a.offset, a.vid, ci});
    }

    struct Env {
        Point2 q;
        PointContext ctx;
        std::vector<char> src_sees;
        bool valid = false;
    };

    Env env_at(Point2 q) const {
        Env e;
        e.q = q;
        if (!eng->polygon().contains(q)) return e;
        e.ctx = eng->context(q);
        e.src_sees.resize(centers.size());
        for (size_t i = 0; i < centers.size(); ++i)
            e.src_sees[i] = eng->mutually_visible(centers[i], q) ? 1 : 0;
        e.valid = true;
        return e;
    }

    double anchor_val(const Env& e, size_t a) const {
        const FlatAnchor& fa = fas[a];
        bool vis = fa.vid < 0 ? e.src_sees[fa.center] != 0 : e.ctx.sees[fa.vid] != 0;
        return vis ? fa.off + dist(fa.p, e.q) : kInf;
    }

    // Lower envelope = min-center distance. Optionally reports every anchor
    // value and the (first) minimizing anchor.
    double envelope(const Env& e, std::vector<double>* vals = nullptr,
                    size_t* argmin = nullptr) const {
        double best = kInf;
        size_t bi = 0;
        if (vals) vals->assign(fas.size(), kInf);
        for (size_t a = 0; a < fas.size(); ++a) {
            double v = anchor_val(e, a);
            if (vals) (*vals)[a] = v;
            if (v < best) {
                best = v;
                bi = a;
            }
        }
        if (argmin) *argmin = bi;
        return best;
    }
};

// One bisector curve f_a = f_b, in exact parametrization. Three shapes:
// perpendicular-bisector line (equal offsets), hyperbola branch, or the
// degenerate collinear ray.
struct BisectorWalk {
    enum class Kind { Line, Hyperbola, Ray } kind = Kind::Line;
    Point2 m, u, v;  // frame: origin, axis toward the nearer anchor, normal
    double a1 = 0, b1 = 0;
    double s_lo = 0, s_hi = 0;

    Point2 at(double s) const {
        switch (kind) {
            case Kind::Line: return m + v * s;
            case Kind::Ray: return m + u * s;
            case Kind::Hyperbola:
            default: return m + u * (a1 * std::cosh(s)) + v * (b1 * std::sinh(s));
        }
    }
};

inline bool make_walk(const FlatAnchor& A, const FlatAnchor& B, double diam, BisectorWalk& w) {
    double ab = dist(A.p, B.p);
    if (ab <= 1e-12) return false;
    double delta = B.off - A.off;  // = |q-A| - |q-B| on the locus
    if (std::abs(delta) > ab + 1e-12) return false;
    Point2 axis = (B.p - A.p) / ab;
    w.m = (A.p + B.p) * 0.5;
    w.u = axis;
    w.v = perp(axis);
    double reach = 1.25 * diam;
    if (std::abs(delta) >= ab - 1e-9) {
        w.kind = BisectorWalk::Kind::Ray;
        w.m = delta > 0 ? B.p : A.p;
        w.u = delta > 0 ? axis : axis * -1.0;
        w.s_lo = 0;
        w.s_hi = reach;
        return true;
    }
    if (std::abs(delta) <= 1e-12) {
        w.kind = BisectorWalk::Kind::Line;
        w.s_lo = -reach;
        w.s_hi = reach;
        return true;
    }
    w.kind = BisectorWalk::Kind::Hyperbola;
    w.a1 = delta / 2;  // signed: branch lies toward the anchor with larger offset
    double c1 = ab / 2;
    w.b1 = std::sqrt(std::max(0.0, c1 * c1 - w.a1 * w.a1));
    double smax = std::acosh(std::max(1.0, (c1 + reach) / std::abs(w.a1)));
    w.s_lo = -smax;
    w.s_hi = smax;
    return true;
}

inline double signed_or_big(double x) {
    return std::isinf(x) ? (x > 0 ? 1e30 : -1e30) : x;
}

}  // namespace coverdetail

namespace coverdetail {

inline void dedupe_points(std::vector<Point2>& pts, double eps) {
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<Point2> out;
    for (const Point2& p : pts) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (p.x - it->x > eps) break;
            if (near(*it, p, eps)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(p);
    }
    pts = std::move(out);
}

inline CandidateSet build_candidates(const GeodesicEngine& eng, const FieldStack& FS) {
    const Polygon& P = eng.polygon();
    CandidateSet cs;
    const double diam = FS.diam;

    for (size_t ri = 0; ri < P.ring_count(); ++ri)
        for (const Point2& v : P.ring(ri)) cs.polygon_vertices.push_back(v);

    // Boundary: walk each edge, record envelope anchor switches.
    const int ES = 48;
    std::vector<double> vals;
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& ring = P.ring(ri);
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            Point2 u = ring[i], v = ring[(i + 1) % n];
            size_t prev_arg = 0;
            bool have_prev = false;
            double prev_t = 0;
            for (int s = 0; s <= ES; ++s) {
                double t = static_cast<double>(s) / ES;
                FieldStack::Env e = FS.env_at(u + (v - u) * t);
                if (!e.valid) continue;
                size_t arg;
                FS.envelope(e, nullptr, &arg);
                if (have_prev && arg != prev_arg) {
                    size_t A = prev_arg, B = arg;
                    double lo = prev_t, hi = t;
                    for (int it = 0; it < 45; ++it) {
                        double mid = 0.5 * (lo + hi);
                        FieldStack::Env em = FS.env_at(u + (v - u) * mid);
                        double g = signed_or_big(FS.anchor_val(em, A)) -
                                   signed_or_big(FS.anchor_val(em, B));
                        (g <= 0 ? lo : hi) = mid;
                    }
                    cs.edge_boundary_points.push_back(u + (v - u) * (0.5 * (lo + hi)));
                }
                prev_arg = arg;
                prev_t = t;
                have_prev = true;
            }
        }
    }

    // Interior probes pick the anchor pairs whose bisectors matter.
    Bbox bb = P.bbox();
    const int G = 21;
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<char> live(FS.fas.size() * FS.fas.size(), 0);
    double delta_live = 0.14 * diam;
    for (int gy = 0; gy < G; ++gy)
        for (int gx = 0; gx < G; ++gx) {
            Point2 q{bb.xmin + (gx + 0.5) / G * (bb.xmax - bb.xmin),
                     bb.ymin + (gy + 0.5) / G * (bb.ymax - bb.ymin)};
            FieldStack::Env e = FS.env_at(q);
            if (!e.valid) continue;
            double D = FS.envelope(e, &vals);
            std::vector<size_t> close;
            for (size_t a = 0; a < vals.size(); ++a)
                if (vals[a] <= D + delta_live) close.push_back(a);
            for (size_t x = 0; x < close.size(); ++x)
                for (size_t y = x + 1; y < close.size(); ++y) {
                    size_t a = close[x], b = close[y];
                    if (!live[a * FS.fas.size() + b]) {
                        live[a * FS.fas.size() + b] = 1;
                        pairs.push_back({a, b});
                    }
                }
        }

    // Walk each live bisector: third-anchor crossings and ridge peaks.
    const int NW = 61;
    std::vector<std::vector<double>> wvals(NW + 1);
    std::vector<double> wD(NW + 1);
    std::vector<char> wok(NW + 1);
    for (auto [ai, bi] : pairs) {
        BisectorWalk w;
        if (!make_walk(FS.fas[ai], FS.fas[bi], diam, w)) continue;
        auto s_of = [&](int j) {
            return w.s_lo + (w.s_hi - w.s_lo) * static_cast<double>(j) / NW;
        };
        for (int j = 0; j <= NW; ++j) {
            FieldStack::Env e = FS.env_at(w.at(s_of(j)));
            wok[j] = e.valid;
            if (!e.valid) continue;
            wD[j] = FS.envelope(e, &wvals[j]);
        }
        for (int j = 1; j <= NW; ++j) {
            if (!wok[j] || !wok[j - 1]) continue;
            for (size_t c = 0; c < FS.fas.size(); ++c) {
                if (c == ai || c == bi) continue;
                double g0 = signed_or_big(wvals[j - 1][c]) - signed_or_big(wvals[j - 1][ai]);
                double g1 = signed_or_big(wvals[j][c]) - signed_or_big(wvals[j][ai]);
                if ((g0 <= 0) == (g1 <= 0)) continue;
                double lo = s_of(j - 1), hi = s_of(j);
                for (int it = 0; it < 45; ++it) {
                    double mid = 0.5 * (lo + hi);
                    FieldStack::Env em = FS.env_at(w.at(mid));
                    if (!em.valid) {  // walked out of P: shrink toward the inside end
                        (wok[j - 1] ? hi : lo) = mid;
                        continue;
                    }
                    double g = signed_or_big(FS.anchor_val(em, c)) -
                               signed_or_big(FS.anchor_val(em, ai));
                    ((g <= 0) == (g0 <= 0) ? lo : hi) = mid;
                }
                Point2 q = w.at(0.5 * (lo + hi));
                FieldStack::Env eq = FS.env_at(q);
                if (!eq.valid) continue;
                double D = FS.envelope(eq);
                double fa = FS.anchor_val(eq, ai), fb = FS.anchor_val(eq, bi),
                       fc = FS.anchor_val(eq, c);
                if (std::max({fa, fb, fc}) <= D + 1e-5 * diam) cs.voronoi_vertices.push_back(q);
            }
            // Ridge peak between j-1 and j+1.
            if (j < NW && wok[j + 1] && wD[j] >= wD[j - 1] && wD[j] >= wD[j + 1]) {
                double lo = s_of(j - 1), hi = s_of(j + 1);
                for (int it = 0; it < 40; ++it) {
                    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                    FieldStack::Env e1 = FS.env_at(w.at(m1)), e2 = FS.env_at(w.at(m2));
                    double d1 = e1.valid ? FS.envelope(e1) : -kInf;
                    double d2 = e2.valid ? FS.envelope(e2) : -kInf;
                    (d1 < d2 ? lo : hi) = d1 < d2 ? m1 : m2;
                }
                Point2 q = w.at(0.5 * (lo + hi));
                FieldStack::Env eq = FS.env_at(q);
                if (eq.valid) {
                    double D = FS.envelope(eq);
                    double fa = FS.anchor_val(eq, ai), fb = FS.anchor_val(eq, bi);
                    if (std::max(fa, fb) <= D + 1e-3 * diam) cs.voronoi_vertices.push_back(q);
                }
            }
        }
    }

    dedupe_points(cs.voronoi_vertices, 1e-7 * std::max(1.0, diam));
    dedupe_points(cs.edge_boundary_points, 1e-7 * std::max(1.0, diam));
    return cs;
}

inline CandidateSet grid_candidates(const GeodesicEngine& eng, double h) {
    if (!(h > kEpsGeom)) throw GeoError(Errc::InvalidArgument, "grid step must be positive");
    const Polygon& P = eng.polygon();
    Bbox bb = P.bbox();
    CandidateSet cs;
    for (size_t ri = 0; ri < P.ring_count(); ++ri)
        for (const Point2& v : P.ring(ri)) cs.polygon_vertices.push_back(v);
    for (double y = bb.ymin; y <= bb.ymax + 1e-12; y += h)
        for (double x = bb.xmin; x <= bb.xmax + 1e-12; x += h)
            if (P.contains({x, y})) cs.voronoi_vertices.push_back({x, y});
    return cs;
}

inline FarthestPoint scan_candidates(const FieldStack& FS, const CandidateSet& cs) {
    FarthestPoint best{{0, 0}, -1};
    for (const Point2& q : cs.all()) {
        FieldStack::Env e = FS.env_at(q);
        if (!e.valid) continue;
        double D = FS.envelope(e);
        if (D > best.dist + 1e-12 ||
            (D > best.dist - 1e-12 && lex_less(q, best.p)))
            best = {q, std::max(D, best.dist)};
    }
    return best;
}

}  // namespace coverdetail

inline CandidateSet candidate_set(const GeodesicEngine& eng, const std::vector<Point2>& C) {
    if (C.empty()) throw GeoError(Errc::EmptySet, "candidate set needs at least one center");
    coverdetail::FieldStack FS(eng);
    for (Point2 c : C) FS.add_center(c);  // context inside field() throws if outside
    return coverdetail::build_candidates(eng, FS);
}

inline CandidateSet candidate_set(const Polygon& P, const std::vector<Point2>& C) {
    return candidate_set(GeodesicEngine(P), C);
}

inline FarthestPoint farthest_point_from_set(const GeodesicEngine& eng,
                                             const std::vector<Point2>& C) {
    if (C.empty()) throw GeoError(Errc::EmptySet, "farthest point needs at least one center");
    coverdetail::FieldStack FS(eng);
    for (Point2 c : C) FS.add_center(c);
    return coverdetail::scan_candidates(FS, coverdetail::build_candidates(eng, FS));
}

inline FarthestPoint farthest_point_from_set(const Polygon& P, const std::vector<Point2>& C) {
    return farthest_point_from_set(GeodesicEngine(P), C);
}

inline double covering_radius(const GeodesicEngine& eng, const std::vector<Point2>& C) {
    return farthest_point_from_set(eng, C).dist;
}

inline double covering_radius(const Polygon& P, const std::vector<Point2>& C) {
    return covering_radius(GeodesicEngine(P), C);
}

// Gonzalez farthest-first placement; approx_grid > 0 swaps the exact
// candidate machinery for an approx_grid-spaced lattice.
inline PlacementResult gonzalez_placement(const GeodesicEngine& eng, int k,
                                          double approx_grid = 0) {
    if (k < 1) throw GeoError(Errc::InvalidK, "need k >= 1 centers");
    PlacementResult R;
    coverdetail::FieldStack FS(eng);
    Point2 c1 = eng.polygon().outer.front();
    R.centers.push_back(c1);
    FS.add_center(c1);

    while (true) {
        CandidateSet cs = approx_grid > 0 ? coverdetail::grid_candidates(eng, approx_grid)
                                          : coverdetail::build_candidates(eng, FS);
        FarthestPoint fp = coverdetail::scan_candidates(FS, cs);
        R.radii_trace.push_back(fp.dist);
        if (static_cast<int>(R.centers.size()) == k || fp.dist <= 1e-12) {
            R.covering_radius = fp.dist;
            R.next_farthest = fp.p;
            R.saturated = static_cast<int>(R.centers.size()) < k;
            break;
        }
        R.centers.push_back(fp.p);
        FS.add_center(fp.p);
    }

    std::vector<Point2> pts = R.centers;
    pts.push_back(R.next_farthest);
    std::vector<PointContext> ctxs;
    for (Point2 p : pts) ctxs.push_back(eng.context(p));
    double delta = coverdetail::kInf;
    for (size_t i = 0; i < ctxs.size(); ++i)
        for (size_t j = i + 1; j < ctxs.size(); ++j)
            delta = std::min(delta, eng.distance(ctxs[i], ctxs[j]));
    R.certificate_delta = ctxs.size() > 1 ? delta : 0;
    return R;
}

inline PlacementResult gonzalez_placement(const Polygon& P, int k, double approx_grid = 0) {
    return gonzalez_placement(GeodesicEngine(P), k, approx_grid);
}

inline CoverResult k_cover(const GeodesicEngine& eng, int k, double approx_grid = 0) {
    PlacementResult pr = gonzalez_placement(eng, k, approx_grid);
    return {pr.centers, pr.covering_radius, pr};
}

inline CoverResult k_cover(const Polygon& P, int k, double approx_grid = 0) {
    return k_cover(GeodesicEngine(P), k, approx_grid);
}

inline PackResult k_pack(const GeodesicEngine& eng, int k, double approx_grid = 0) {
    if (k < 2) throw GeoError(Errc::InvalidK, "packing needs k >= 2 centers");
    PlacementResult pr = gonzalez_placement(eng, k, approx_grid);
    if (pr.centers.size() < 2)
        throw GeoError(Errc::InvariantViolation, "placement saturated below two centers");
    std::vector<PointContext> ctxs;
    for (Point2 p : pr.centers) ctxs.push_back(eng.context(p));
    double dmin = coverdetail::kInf;
    for (size_t i = 0; i < ctxs.size(); ++i)
        for (size_t j = i + 1; j < ctxs.size(); ++j)
            dmin = std::min(dmin, eng.distance(ctxs[i], ctxs[j]));
    return {pr.centers, dmin / 2, pr};
}

inline PackResult k_pack(const Polygon& P, int k, double approx_grid = 0) {
    return k_pack(GeodesicEngine(P), k, approx_grid);
}

}  // namespace geodisk
