#pragma once

// SVG 1.1 rendering of polygons, geodesic disks, centers and paths, limited
// to path/circle/line/rect elements. Disk regions are filled from a
// tessellation with 256 segments per full turn; disk outlines use exact
// elliptical-arc commands. All coordinates go through fmt_double, so the
// bytes are a pure function of the scene.

#include "disk.hpp"
#include "geodesic.hpp"
#include "io.hpp"

namespace geodisk {

struct SvgScene {
    Polygon polygon;
    std::vector<DiskBoundary> disks;
    std::vector<Point2> centers;
    std::vector<GeodesicPath> paths;
};

namespace svgdetail {

inline const char* kDiskFills[4] = {"#4f81bd", "#c0504d", "#9bbb59", "#8064a2"};

// Model coordinates are y-up; SVG is y-down. Emission negates y so the
// document needs no transform wrapper.
inline std::string xy(Point2 p) { return fmt_double(p.x) + " " + fmt_double(-p.y); }

inline std::vector<Point2> tessellate(const Arc& a) {
    double sweep = a.end_angle - a.start_angle;
    int n = std::max(2, static_cast<int>(std::ceil(256.0 * sweep / kTau)));
    std::vector<Point2> out;
    for (int i = 0; i <= n; ++i) out.push_back(a.point_at(a.start_angle + sweep * i / n));
    return out;
}

// Chains the boundary pieces of a disk into closed loops by endpoint
// matching; each loop becomes one subpath of the filled region.
inline std::vector<std::vector<Point2>> region_loops(const DiskBoundary& b, double tol) {
    std::vector<std::vector<Point2>> pieces;
    for (const Arc& a : b.arcs) pieces.push_back(tessellate(a));
    for (const BoundaryPortion& s : b.boundary_portions)
        pieces.push_back({s.a, s.b});

    std::vector<bool> used(pieces.size(), false);
    std::vector<std::vector<Point2>> loops;
    for (size_t s = 0; s < pieces.size(); ++s) {
        if (used[s]) continue;
        used[s] = true;
        std::vector<Point2> loop = pieces[s];
        bool grew = true;
        while (grew && dist(loop.front(), loop.back()) > tol) {
            grew = false;
            for (size_t i = 0; i < pieces.size(); ++i) {
                if (used[i]) continue;
                const std::vector<Point2>& c = pieces[i];
                if (dist(loop.back(), c.front()) <= tol) {
                    loop.insert(loop.end(), c.begin() + 1, c.end());
                } else if (dist(loop.back(), c.back()) <= tol) {
                    loop.insert(loop.end(), c.rbegin() + 1, c.rend());
                } else {
                    continue;
                }
                used[i] = true;
                grew = true;
                break;
            }
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

inline std::string loop_path(const std::vector<std::vector<Point2>>& loops) {
    std::string d;
    for (const std::vector<Point2>& loop : loops) {
        d += "M " + xy(loop.front());
        for (size_t i = 1; i < loop.size(); ++i) d += " L " + xy(loop[i]);
        d += " Z ";
    }
    if (!d.empty()) d.pop_back();
    return d;
}

inline std::string ring_path(const Ring& r) {
    std::string d = "M " + xy(r.front());
    for (size_t i = 1; i < r.size(); ++i) d += " L " + xy(r[i]);
    return d + " Z";
}

inline std::string arc_outline(const DiskBoundary& b) {
    std::string d;
    for (const Arc& a : b.arcs) {
        double sweep = a.end_angle - a.start_angle;
        std::string r = fmt_double(a.residual_radius);
        d += "M " + xy(a.point_at(a.start_angle));
        if (sweep >= kTau - 1e-12) {
            // Full circle: two half-turn arcs (a single A cannot close on itself).
            d += " A " + r + " " + r + " 0 1 0 " + xy(a.point_at(a.start_angle + kTau / 2));
            d += " A " + r + " " + r + " 0 1 0 " + xy(a.point_at(a.start_angle)) + " ";
        } else {
            d += " A " + r + " " + r + " 0 " + (sweep > kTau / 2 ? "1" : "0") + " 0 " +
                 xy(a.point_at(a.end_angle)) + " ";
        }
    }
    if (!d.empty()) d.pop_back();
    return d;
}

}  // namespace svgdetail

inline std::string render_svg(const SvgScene& scene) {
    const Polygon& P = scene.polygon;
    Bbox bb = P.bbox();
    double m = 0.05 * std::max(bb.width(), bb.height());
    double sw = 0.004 * std::max(bb.width(), bb.height());
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
           fmt_double(bb.xmin - m) + " " + fmt_double(-(bb.ymax + m)) + " " +
           fmt_double(bb.width() + 2 * m) + " " + fmt_double(bb.height() + 2 * m) + "\">\n";

    std::string rings = svgdetail::ring_path(P.outer);
    for (const Ring& h : P.holes) rings += " " + svgdetail::ring_path(h);
    out += "<path d=\"" + rings + "\" fill=\"#e8e8e8\" fill-rule=\"evenodd\" stroke=\"#333333\" stroke-width=\"" +
           fmt_double(sw) + "\"/>\n";

    double tol = 1e-7 * std::max(1.0, bb.diag());
    for (size_t i = 0; i < scene.disks.size(); ++i) {
        const char* fill = svgdetail::kDiskFills[i % 4];
        std::string region = svgdetail::loop_path(svgdetail::region_loops(scene.disks[i], tol));
        if (!region.empty())
            out += "<path d=\"" + region + "\" fill=\"" + fill +
                   "\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
        std::string outline = svgdetail::arc_outline(scene.disks[i]);
        if (!outline.empty())
            out += "<path d=\"" + outline + "\" fill=\"none\" stroke=\"" + fill +
                   "\" stroke-width=\"" + fmt_double(sw) + "\"/>\n";
    }

    for (const GeodesicPath& gp : scene.paths) {
        if (gp.waypoints.size() < 2) continue;
        std::string d = "M " + svgdetail::xy(gp.waypoints[0]);
        for (size_t i = 1; i < gp.waypoints.size(); ++i)
            d += " L " + svgdetail::xy(gp.waypoints[i]);
        out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#1a6e1a\" stroke-width=\"" +
               fmt_double(1.5 * sw) + "\"/>\n";
    }

    for (Point2 c : scene.centers)
        out += "<circle cx=\"" + fmt_double(c.x) + "\" cy=\"" + fmt_double(-c.y) + "\" r=\"" +
               fmt_double(2.5 * sw) + "\" fill=\"#b3261e\"/>\n";

    out += "</svg>\n";
    return out;
}

}  // namespace geodisk
