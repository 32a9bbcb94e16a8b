#pragma once

// Greedy disk packing. Each round takes the candidate set's geodesic
// diametral pair, centers a radius-2r disk at its lexicographically larger
// endpoint, deletes candidates strictly inside that disk, and refreshes the
// candidate set with the new disk's boundary intersections against the union
// boundary and against the still-uncovered polygon boundary. Candidates
// landing exactly on a disk boundary stay eligible.

#include "disk.hpp"

namespace geodisk {

struct PackingStep {
    Point2 pair_a, pair_b;   // diametral pair examined this round
    Point2 chosen;           // center actually placed
    size_t candidates_before = 0;
    size_t candidates_after = 0;
};

struct PackingResult {
    std::vector<Point2> centers;
    double radius = 0;
    std::vector<PackingStep> step_log;
};

inline PackingResult greedy_packing(const Polygon& P, double r) {
    if (!P.holes.empty())
        throw GeoError(Errc::PolygonHasHoles, "packing requires a simple polygon");
    if (!(r > kEpsGeom)) throw GeoError(Errc::NonPositiveRadius, "packing radius too small");

    GeodesicEngine eng(P);
    const double R = 2 * r;

    struct Cand {
        Point2 p;
        PointContext ctx;
    };
    std::vector<Cand> V;
    auto push_cand = [&](Point2 p) {
        for (const Cand& c : V)
            if (near(c.p, p, 1e-9)) return;
        V.push_back({p, eng.context(p)});
    };
    for (const Point2& p : P.outer) push_cand(p);

    PackingResult out;
    out.radius = r;
    ArrangementBoundary A;
    std::vector<PointContext> placed_ctx;

    for (int guard = 0; !V.empty(); ++guard) {
        if (guard > 4096) throw GeoError(Errc::InvariantViolation, "packing failed to converge");

        size_t ia = 0, ib = 0;
        if (V.size() > 1) {
            std::vector<PointContext> ctxs;
            ctxs.reserve(V.size());
            for (const Cand& c : V) ctxs.push_back(c.ctx);
            auto [i, j] = eng.diametral_pair_of(ctxs);
            ia = i;
            ib = j;
        }
        Point2 a = V[ia].p, b = V[ib].p;
        Point2 center = lex_less(a, b) ? b : a;

        PackingStep step;
        step.pair_a = a;
        step.pair_b = b;
        step.chosen = center;
        step.candidates_before = V.size();

        out.centers.push_back(center);
        PointContext cctx = eng.context(center);
        placed_ctx.push_back(cctx);

        DiskBoundary D = disk_boundary(eng, center, R);
        std::vector<Point2> fresh = update_arrangement(eng, A, D);

        std::vector<Cand> kept;
        for (Cand& c : V)
            if (eng.distance(cctx, c.ctx) >= R - 1e-9) kept.push_back(std::move(c));
        V = std::move(kept);

        for (Point2 p : fresh) {
            bool dup = false;
            for (const Point2& s : out.centers)
                if (near(s, p, 1e-9)) dup = true;
            if (dup) continue;
            PointContext pc = eng.context(p);
            bool interior = false;
            for (const PointContext& sc : placed_ctx)
                if (eng.distance(sc, pc) < R - 1e-9) interior = true;
            if (interior) continue;
            bool have = false;
            for (const Cand& c : V)
                if (near(c.p, p, 1e-9)) have = true;
            if (!have) V.push_back({p, std::move(pc)});
        }

        step.candidates_after = V.size();
        out.step_log.push_back(step);
    }
    return out;
}

inline PackingResult greedy_unit_packing(const Polygon& P) { return greedy_packing(P, 1.0); }

inline bool verify_packing(const Polygon& P, const std::vector<Point2>& centers, double r) {
    GeodesicEngine eng(P);
    std::vector<PointContext> ctxs;
    for (const Point2& c : centers) ctxs.push_back(eng.context(c));  // throws if outside
    for (size_t i = 0; i < ctxs.size(); ++i)
        for (size_t j = i + 1; j < ctxs.size(); ++j)
            if (eng.distance(ctxs[i], ctxs[j]) < 2 * r - 1e-9) return false;
    return true;
}

namespace packdetail {

// Max clique on the compatibility graph via greedy-coloring branch and bound.
struct CliqueSolver {
    size_t n = 0;
    std::vector<std::vector<char>> adj;
    std::vector<size_t> best;
    long long nodes = 0, node_budget = 5'000'000;

    void expand(std::vector<size_t>& cur, std::vector<size_t>& cand) {
        if (++nodes > node_budget)
            throw GeoError(Errc::TooManyCandidates, "packing oracle search budget exceeded");
        if (cand.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        // Greedy coloring upper bound; vertices ordered by color.
        std::vector<int> color(cand.size(), 0);
        std::vector<std::vector<size_t>> classes;
        for (size_t i = 0; i < cand.size(); ++i) {
            size_t v = cand[i];
            size_t k = 0;
            for (; k < classes.size(); ++k) {
                bool ok = true;
                for (size_t u : classes[k])
                    if (adj[v][u]) ok = false;
                if (ok) break;
            }
            if (k == classes.size()) classes.emplace_back();
            classes[k].push_back(v);
            color[i] = static_cast<int>(k) + 1;
        }
        std::vector<size_t> order(cand.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t x, size_t y) { return color[x] < color[y]; });

        std::vector<size_t> live = cand;
        for (size_t oi = order.size(); oi-- > 0;) {
            size_t v = cand[order[oi]];
            if (cur.size() + color[order[oi]] <= best.size()) return;
            std::vector<size_t> next;
            for (size_t u : live)
                if (u != v && adj[v][u]) next.push_back(u);
            cur.push_back(v);
            expand(cur, next);
            cur.pop_back();
            live.erase(std::find(live.begin(), live.end(), v));
        }
    }
};

}  // namespace packdetail

struct BruteForcePacking {
    std::vector<Point2> centers;
    size_t candidate_count = 0;
};

// Exact maximum packing restricted to grid candidate centers: a maximum set
// of grid points inside P at pairwise geodesic distance >= 2r.
inline BruteForcePacking brute_force_max_packing(const Polygon& P, double r, double grid_step) {
    if (!(r > kEpsGeom)) throw GeoError(Errc::NonPositiveRadius, "packing radius too small");
    if (!(grid_step > kEpsGeom))
        throw GeoError(Errc::InvalidArgument, "grid step must be positive");
    GeodesicEngine eng(P);
    Bbox bb = P.bbox();

    std::vector<Point2> pts;
    std::vector<PointContext> ctxs;
    for (double y = bb.ymin; y <= bb.ymax + 1e-12; y += grid_step)
        for (double x = bb.xmin; x <= bb.xmax + 1e-12; x += grid_step) {
            Point2 p{x, y};
            if (!P.contains(p)) continue;
            if (pts.size() >= 4096)
                throw GeoError(Errc::TooManyCandidates,
                               "grid too fine for exact packing search");
            pts.push_back(p);
            ctxs.push_back(eng.context(p));
        }

    size_t n = pts.size();
    packdetail::CliqueSolver solver;
    solver.n = n;
    solver.adj.assign(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            bool compatible = eng.distance(ctxs[i], ctxs[j]) >= 2 * r - 1e-9;
            solver.adj[i][j] = solver.adj[j][i] = compatible ? 1 : 0;
        }

    // Dominance pruning: drop u when some incompatible v is compatible with
    // everything u is compatible with — v can always replace u in a packing.
    std::vector<char> dead(n, 0);
    for (size_t u = 0; u < n; ++u) {
        if (dead[u]) continue;
        for (size_t v = 0; v < n && !dead[u]; ++v) {
            if (v == u || dead[v] || solver.adj[u][v]) continue;
            bool dominates = true;
            for (size_t w = 0; w < n && dominates; ++w)
                if (w != u && w != v && solver.adj[u][w] && !solver.adj[v][w]) dominates = false;
            if (dominates && v < u) dead[u] = 1;
        }
    }
    std::vector<size_t> alive;
    for (size_t i = 0; i < n; ++i)
        if (!dead[i]) alive.push_back(i);

    std::vector<size_t> cur;
    std::vector<size_t> cand = alive;
    solver.expand(cur, cand);

    BruteForcePacking out;
    out.candidate_count = n;
    for (size_t idx : solver.best) out.centers.push_back(pts[idx]);
    std::sort(out.centers.begin(), out.centers.end(), lex_less);
    return out;
}

}  // namespace geodisk
