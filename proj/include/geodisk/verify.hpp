#pragma once

// Brute-force references and the property suites. Everything here prefers
// independence over speed: coverage is judged by sampling, optima by
// exhaustive search over grids, and the metric by re-deriving distances in
// ways that share as little code with the engine as possible.

#include "covering.hpp"
#include "oracle.hpp"
#include "packing.hpp"
#include "spm.hpp"
#include "two_cover.hpp"

#include <sstream>

namespace geodisk::oracle {

// Worst coverage margin over stratified samples, vertices and edge midpoints:
// max over samples of min_i (d(center_i, q) - r_i). <= 0 means no
// counterexample to coverage was found.
inline double sampled_coverage_gap(const GeodesicEngine& eng,
                                   const std::vector<GeodesicDisk>& disks, int samples) {
    if (samples < 1) throw GeoError(Errc::InvalidArgument, "need at least one sample");
    const Polygon& P = eng.polygon();
    std::vector<DistanceField> fields;
    for (const GeodesicDisk& d : disks) fields.push_back(eng.field(d.center));

    auto margin = [&](Point2 q) {
        PointContext cq = eng.context(q);
        double m = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < disks.size(); ++i)
            m = std::min(m, eng.field_eval(fields[i], cq) - disks[i].radius);
        return m;
    };

    double gap = -std::numeric_limits<double>::infinity();
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& ring = P.ring(ri);
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            gap = std::max(gap, margin(ring[i]));
            gap = std::max(gap, margin((ring[i] + ring[(i + 1) % n]) * 0.5));
        }
    }
    Triangulation T = triangulate(P);
    InteriorSampler sampler(P, T);
    std::mt19937_64 rng(777);
    for (int i = 0; i < samples; ++i) gap = std::max(gap, margin(sampler.sample(rng)));
    return gap;
}

inline double sampled_coverage_gap(const Polygon& P, const std::vector<GeodesicDisk>& disks,
                                   int samples) {
    return sampled_coverage_gap(GeodesicEngine(P), disks, samples);
}

// Minimum over k-subsets of grid candidate centers of the covering radius,
// scored against a fixed dense evaluation set (grid at half step, vertices,
// edge midpoints). Upper-converges to the continuous optimum as the grid
// refines.
inline double brute_force_k_cover(const GeodesicEngine& eng, int k, double grid_step) {
    if (k < 1) throw GeoError(Errc::InvalidK, "need k >= 1 centers");
    if (!(grid_step > kEpsGeom))
        throw GeoError(Errc::InvalidArgument, "grid step must be positive");
    const Polygon& P = eng.polygon();
    Bbox bb = P.bbox();

    std::vector<Point2> cands;
    for (double y = bb.ymin; y <= bb.ymax + 1e-12; y += grid_step)
        for (double x = bb.xmin; x <= bb.xmax + 1e-12; x += grid_step)
            if (P.contains({x, y})) cands.push_back({x, y});
    if (cands.empty()) throw GeoError(Errc::EmptySet, "no grid candidates inside polygon");

    double combos = 1;
    for (int i = 0; i < k; ++i) combos *= static_cast<double>(cands.size() - i) / (i + 1);
    if (combos > 1e6)
        throw GeoError(Errc::TooManyCandidates, "too many center combinations");

    std::vector<Point2> evals;
    for (double y = bb.ymin; y <= bb.ymax + 1e-12; y += grid_step / 2)
        for (double x = bb.xmin; x <= bb.xmax + 1e-12; x += grid_step / 2)
            if (P.contains({x, y})) evals.push_back({x, y});
    for (size_t ri = 0; ri < P.ring_count(); ++ri) {
        const Ring& ring = P.ring(ri);
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            evals.push_back(ring[i]);
            evals.push_back((ring[i] + ring[(i + 1) % n]) * 0.5);
        }
    }

    std::vector<std::vector<double>> d(cands.size(), std::vector<double>(evals.size()));
    {
        std::vector<PointContext> cctx, ectx;
        for (Point2 c : cands) cctx.push_back(eng.context(c));
        for (Point2 e : evals) ectx.push_back(eng.context(e));
        for (size_t i = 0; i < cands.size(); ++i)
            for (size_t j = 0; j < evals.size(); ++j) d[i][j] = eng.distance(cctx[i], ectx[j]);
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<size_t> pick(k);
    auto radius_of = [&](int chosen) {
        double r = 0;
        for (size_t j = 0; j < evals.size(); ++j) {
            double m = std::numeric_limits<double>::infinity();
            for (int t = 0; t < chosen; ++t) m = std::min(m, d[pick[t]][j]);
            r = std::max(r, m);
            if (r >= best) return r;  // cannot beat the incumbent
        }
        return r;
    };
    auto rec = [&](auto&& self, int depth, size_t from) -> void {
        if (depth == k) {
            best = std::min(best, radius_of(k));
            return;
        }
        for (size_t i = from; i < cands.size(); ++i) {
            pick[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline double brute_force_k_cover(const Polygon& P, int k, double grid_step) {
    return brute_force_k_cover(GeodesicEngine(P), k, grid_step);
}

struct PropertyEntry {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct PropertyReport {
    std::vector<PropertyEntry> entries;

    bool all_pass() const {
        for (const PropertyEntry& e : entries)
            if (!e.pass) return false;
        return true;
    }
    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        for (const PropertyEntry& e : entries)
            out.push_back("PROPERTY " + e.name + (e.pass ? " PASS " : " FAIL ") + e.witness);
        return out;
    }
};

namespace pdetail {

inline std::string pt(Point2 p) {
    std::ostringstream os;
    os.precision(12);
    os << "(" << p.x << "," << p.y << ")";
    return os.str();
}

inline bool polyline_cross(const GeodesicPath& a, const GeodesicPath& b) {
    for (size_t i = 0; i + 1 < a.waypoints.size(); ++i)
        for (size_t j = 0; j + 1 < b.waypoints.size(); ++j) {
            Point2 p = a.waypoints[i], q = a.waypoints[i + 1];
            Point2 u = b.waypoints[j], v = b.waypoints[j + 1];
            if (proper_crossing(p, q, u, v)) return true;
            for (Point2 w : {u, v})
                if (point_on_segment(w, p, q, 1e-12)) return true;
            for (Point2 w : {p, q})
                if (point_on_segment(w, u, v, 1e-12)) return true;
        }
    return false;
}

}  // namespace pdetail

// Runs the cross-module invariants on randomized samples. suite selects
// "metric", "lemmas", "ratios" or "all". Failures carry a witness string.
inline PropertyReport property_suites(const GeodesicEngine& eng, int sample_budget,
                                      const std::string& suite = "all",
                                      uint64_t seed = 424242) {
    PropertyReport rep;
    const Polygon& P = eng.polygon();
    const bool simple = P.holes.empty();
    Bbox bb = P.bbox();
    const double diam = bb.diag();
    const bool want_metric = suite == "all" || suite == "metric";
    const bool want_lemmas = suite == "all" || suite == "lemmas";
    const bool want_ratios = suite == "all" || suite == "ratios";
    if (!want_metric && !want_lemmas && !want_ratios)
        throw GeoError(Errc::InvalidArgument, "unknown property suite: " + suite);

    Triangulation T = triangulate(P);
    InteriorSampler sampler(P, T);
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts;
    int npts = std::max(8, sample_budget);
    for (int i = 0; i < npts; ++i) pts.push_back(sampler.sample(rng));
    for (Point2 v : eng.vertices().pts) pts.push_back(v);
    std::vector<PointContext> ctx;
    for (Point2 p : pts) ctx.push_back(eng.context(p));

    auto add = [&](const std::string& name, bool pass, const std::string& witness) {
        rep.entries.push_back({name, pass, witness});
    };

    if (want_metric) {
        {
            bool ok = true;
            std::string w = "all sampled pairs symmetric";
            for (size_t i = 0; i < pts.size() && ok; i += 3)
                for (size_t j = i + 1; j < pts.size() && ok; j += 3) {
                    double a = eng.distance(ctx[i], ctx[j]);
                    double b = eng.distance(ctx[j], ctx[i]);
                    if (std::abs(a - b) > 1e-9) {
                        ok = false;
                        w = "pair " + pdetail::pt(pts[i]) + " " + pdetail::pt(pts[j]);
                    }
                }
            add("metric.symmetry", ok, w);
        }
        {
            bool ok = true;
            std::string w = "d(p,p)=0 on all samples";
            for (size_t i = 0; i < pts.size() && ok; ++i)
                if (eng.distance(ctx[i], ctx[i]) > 1e-12) {
                    ok = false;
                    w = "point " + pdetail::pt(pts[i]);
                }
            add("metric.identity", ok, w);
        }
        {
            bool ok = true;
            std::string w;
            int triples = std::max(50, sample_budget * 4);
            std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
            for (int t = 0; t < triples && ok; ++t) {
                size_t i = pick(rng), j = pick(rng), k = pick(rng);
                double dij = eng.distance(ctx[i], ctx[j]);
                double djk = eng.distance(ctx[j], ctx[k]);
                double dik = eng.distance(ctx[i], ctx[k]);
                if (dik > dij + djk + 1e-9) {
                    ok = false;
                    w = "triple " + pdetail::pt(pts[i]) + " " + pdetail::pt(pts[j]) + " " +
                        pdetail::pt(pts[k]);
                }
                if (dij + 1e-9 < dist(pts[i], pts[j])) {
                    ok = false;
                    w = "below-euclid pair " + pdetail::pt(pts[i]) + " " + pdetail::pt(pts[j]);
                }
            }
            add("metric.triangle_and_floor", ok, ok ? "sampled triples hold" : w);
        }
        {
            // Vertex-table distances must agree with fresh two-point queries;
            // visible pairs must not beat the straight segment.
            bool ok = true;
            std::string w = "vertex matrix consistent";
            size_t n = eng.n();
            for (size_t i = 0; i < n && ok; ++i)
                for (size_t j = i + 1; j < n && ok; ++j) {
                    double dm = eng.vertex_distance(i, j);
                    double dq = eng.distance(eng.vertices().pts[i], eng.vertices().pts[j]);
                    if (std::abs(dm - dq) > 1e-9) {
                        ok = false;
                        w = "vertex pair " + std::to_string(i) + "," + std::to_string(j);
                    }
                    if (eng.graph().visible[i][j] &&
                        dm > dist(eng.vertices().pts[i], eng.vertices().pts[j]) + 1e-9) {
                        ok = false;
                        w = "visible pair above euclid " + std::to_string(i) + "," +
                            std::to_string(j);
                    }
                }
            add("metric.vertex_matrix", ok, w);
        }
        {
            bool convex = simple;
            for (size_t i = 0; i < P.outer.size() && convex; ++i)
                if (eng.vertices().reflex[i]) convex = false;
            if (convex) {
                bool ok = true;
                std::string w = "geodesic == euclidean on convex polygon";
                for (size_t i = 0; i < pts.size() && ok; i += 2)
                    for (size_t j = i + 1; j < pts.size() && ok; j += 2) {
                        double g = eng.distance(ctx[i], ctx[j]);
                        double e = dist(pts[i], pts[j]);
                        if (std::abs(g - e) > 1e-12 * std::max(1.0, e)) {
                            ok = false;
                            w = "pair " + pdetail::pt(pts[i]) + " " + pdetail::pt(pts[j]);
                        }
                    }
                add("metric.convex_euclidean", ok, w);
            }
        }
        {
            bool ok = true;
            std::string w;
            double step = diam / 100;
            GridGraph G = build_grid_graph(P, step);
            int pairs = std::min(12, npts / 2);
            for (int t = 0; t < pairs && ok; ++t) {
                Point2 a = pts[2 * t], b = pts[2 * t + 1];
                double g = eng.distance(ctx[2 * t], ctx[2 * t + 1]);
                double og = grid_distance(P, G, a, b);
                if (og < g - 1e-6 || og > 1.02 * g + 0.8 * step) {
                    ok = false;
                    w = "pair " + pdetail::pt(a) + " " + pdetail::pt(b) + " geo " +
                        std::to_string(g) + " grid " + std::to_string(og);
                }
            }
            add("metric.grid_agreement", ok, ok ? "grid oracle within 2% + step slack" : w);
        }
    }

    if (want_lemmas) {
        {
            // Crossing-diagonal inequality on sampled 4-tuples.
            bool ok = true;
            std::string w = "no violated crossing 4-tuple";
            int found = 0;
            std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
            for (int t = 0; t < sample_budget * 6 && found < sample_budget; ++t) {
                size_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
                GeodesicPath pac = eng.shortest_path(pts[a], pts[c]);
                GeodesicPath pbd = eng.shortest_path(pts[b], pts[d]);
                if (!pdetail::polyline_cross(pac, pbd)) continue;
                ++found;
                double lhs = pac.length + pbd.length;
                double ab = eng.distance(ctx[a], ctx[b]), cd = eng.distance(ctx[c], ctx[d]);
                double bc = eng.distance(ctx[b], ctx[c]), ad = eng.distance(ctx[a], ctx[d]);
                if (lhs + 1e-9 < ab + cd || lhs + 1e-9 < bc + ad) {
                    ok = false;
                    w = "tuple " + pdetail::pt(pts[a]) + " " + pdetail::pt(pts[b]) + " " +
                        pdetail::pt(pts[c]) + " " + pdetail::pt(pts[d]);
                    break;
                }
            }
            add("lemmas.crossing_diagonals", ok,
                ok ? "checked " + std::to_string(found) + " crossing tuples" : w);
        }
        if (simple) {
            bool ok = true;
            std::string w = "farthest-point max-min holds";
            size_t m = std::min<size_t>(pts.size(), 14);
            for (size_t v = 0; v < m && ok; ++v) {
                size_t u = 0;
                double du = -1;
                for (size_t i = 0; i < m; ++i) {
                    double d = eng.distance(ctx[v], ctx[i]);
                    if (d > du) {
                        du = d;
                        u = i;
                    }
                }
                for (size_t x = 0; x < m && ok; ++x)
                    for (size_t y = x + 1; y < m && ok; ++y)
                        for (size_t z = y + 1; z < m && ok; ++z) {
                            double mx = std::max({eng.distance(ctx[u], ctx[x]),
                                                  eng.distance(ctx[u], ctx[y]),
                                                  eng.distance(ctx[u], ctx[z])});
                            double mn = std::min({eng.distance(ctx[x], ctx[y]),
                                                  eng.distance(ctx[x], ctx[z]),
                                                  eng.distance(ctx[y], ctx[z])});
                            if (mx + 1e-9 < mn) {
                                ok = false;
                                w = "anchor " + pdetail::pt(pts[v]);
                            }
                        }
            }
            add("lemmas.farthest_point_spread", ok, w);
        }
        {
            // Shortest-path map agrees with direct queries.
            bool ok = true;
            std::string w = "map distances agree";
            Point2 src = P.outer.front();
            try {
                ShortestPathMap M = shortest_path_map(eng, src);
                PointContext cs = eng.context(src);
                for (int i = 0; i < std::min(npts, 60) && ok; ++i) {
                    double got = M.eval(pts[i]);
                    double want = eng.distance(cs, ctx[i]);
                    if (std::abs(got - want) > 1e-9 * std::max(1.0, want)) {
                        ok = false;
                        w = "point " + pdetail::pt(pts[i]);
                    }
                }
            } catch (const GeoError& e) {
                ok = false;
                w = e.what();
            }
            add("lemmas.path_map_consistency", ok, w);
        }
        {
            // Disk boundary: arc points at distance exactly r, portions within r.
            bool ok = true;
            std::string w = "disk boundary at exact distance";
            Point2 c = pts.front();
            double r = 0.3 * diam;
            DiskBoundary D = disk_boundary(eng, c, r);
            PointContext cc = eng.context(c);
            for (const Arc& a : D.arcs) {
                for (double f : {0.25, 0.5, 0.75}) {
                    Point2 q = a.point_at(a.start_angle + f * (a.end_angle - a.start_angle));
                    double d = eng.distance(cc, eng.context(q));
                    if (std::abs(d - r) > 1e-9 * std::max(1.0, r)) {
                        ok = false;
                        w = "arc point " + pdetail::pt(q) + " dist " + std::to_string(d);
                    }
                }
            }
            for (const BoundaryPortion& s : D.boundary_portions) {
                Point2 q = (s.a + s.b) * 0.5;
                double d = eng.distance(cc, eng.context(q));
                if (d > r + 1e-9 * std::max(1.0, r)) {
                    ok = false;
                    w = "portion point " + pdetail::pt(q);
                }
            }
            add("lemmas.disk_boundary_distance", ok, w);
        }
        if (simple) {
            // Boundary-implies-interior soundness and the uncovered-edge bound,
            // exercised through the decision procedure at two radii.
            bool ok = true;
            std::string w = "decision clean at probe radii";
            double r2 = k_cover(eng, 2).radius;
            try {
                std::optional<TwoCoverWitness> wit = test_two_disk_cover(eng, r2 * 1.05);
                if (wit) {
                    TwoCoverCheck chk = verify_two_cover_parts(eng, wit->c1, wit->c2, wit->r);
                    if (chk.boundary_ok && !chk.interior_ok) {
                        ok = false;
                        w = "boundary covered but an interior sample escaped";
                    }
                    if (!chk.ok()) {
                        ok = false;
                        w = "witness failed verification";
                    }
                }
                test_two_disk_cover(eng, r2 * 0.55);
            } catch (const GeoError& e) {
                ok = false;
                w = e.what();
            }
            add("lemmas.two_cover_soundness", ok, w);
        }
    }

    if (want_ratios) {
        {
            bool ok = true;
            std::string w;
            PlacementResult pr = gonzalez_placement(eng, 3);
            for (size_t i = 1; i < pr.radii_trace.size() && ok; ++i)
                if (pr.radii_trace[i] > pr.radii_trace[i - 1] + 1e-9) {
                    ok = false;
                    w = "radii trace increased at step " + std::to_string(i);
                }
            if (ok && pr.certificate_delta + 1e-9 < pr.covering_radius) {
                ok = false;
                w = "certificate " + std::to_string(pr.certificate_delta) + " below radius " +
                    std::to_string(pr.covering_radius);
            }
            add("ratios.gonzalez_certificate", ok,
                ok ? "certificate >= covering radius" : w);
        }
        {
            bool ok = true;
            std::string w;
            for (int k = 2; k <= 3 && ok; ++k) {
                CoverResult cov = k_cover(eng, k);
                PackResult pack = k_pack(eng, k);
                if (pack.radius > 2 * cov.radius + 1e-9) {
                    ok = false;
                    w = "k=" + std::to_string(k) + " pack " + std::to_string(pack.radius) +
                        " cover " + std::to_string(cov.radius);
                }
                std::vector<GeodesicDisk> disks;
                for (Point2 c : cov.centers) disks.push_back({c, cov.radius});
                double gap = sampled_coverage_gap(eng, disks, std::max(200, sample_budget * 8));
                if (gap > 1e-9 * std::max(1.0, diam)) {
                    ok = false;
                    w = "k=" + std::to_string(k) + " coverage gap " + std::to_string(gap);
                }
            }
            add("ratios.pack_cover_consistency", ok,
                ok ? "s <= 2r and covers verified for k=2,3" : w);
        }
        if (simple) {
            bool ok = true;
            std::string w = "greedy packing pairwise sound";
            double r = diam / 6;
            PackingResult pk = greedy_packing(P, r);
            if (!verify_packing(P, pk.centers, r)) {
                ok = false;
                w = "pairwise distance below 2r";
            }
            add("ratios.greedy_packing_soundness", ok, w);
        }
    }

    return rep;
}

inline PropertyReport property_suites(const Polygon& P, int sample_budget,
                                      const std::string& suite = "all", uint64_t seed = 424242) {
    return property_suites(GeodesicEngine(P), sample_budget, suite, seed);
}

}  // namespace geodisk::oracle
