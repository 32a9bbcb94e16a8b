#pragma once

// Command-line surface. Every subcommand loads a polygon file, runs one
// library routine and reports through a RunRecord: human-readable lines by
// default, the serialized record with --json. Exit codes: 0 success, 1
// infeasible cover-2 decision, 2 input/usage errors.

#include <chrono>
#include <cstdio>

#include <CLI11.hpp>

#include "io.hpp"
#include "svg.hpp"
#include "verify.hpp"

namespace geodisk {

namespace clidetail {

class PhaseTimer {
public:
    double take() {
        auto now = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - t0_).count();
        t0_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline std::string pt_str(Point2 p) {
    return "(" + fmt_double(p.x) + ", " + fmt_double(p.y) + ")";
}

struct Emitter {
    bool json = false;
    bool quiet = false;

    int finish(const RunRecord& rec, const std::vector<std::string>& lines,
               int code = 0) const {
        if (json) {
            std::fputs(rec.to_string().c_str(), stdout);
        } else if (!quiet) {
            for (const std::string& l : lines) std::puts(l.c_str());
            if (!rec.timings_ms.empty()) {
                std::string t = "timings:";
                for (const auto& [name, v] : rec.timings_ms)
                    t += " " + name + "=" + fmt_double(v) + "ms";
                std::puts(t.c_str());
            }
        }
        return code;
    }
};

inline void center_lines(std::vector<std::string>& lines, const std::vector<Point2>& centers) {
    for (size_t i = 0; i < centers.size(); ++i)
        lines.push_back("center[" + std::to_string(i) + "]=" + pt_str(centers[i]));
}

inline SvgScene disk_scene(const GeodesicEngine& eng, const std::vector<Point2>& centers,
                           double r) {
    SvgScene s;
    s.polygon = eng.polygon();
    s.centers = centers;
    if (r > kEpsGeom)
        for (Point2 c : centers) s.disks.push_back(disk_boundary(eng, c, r));
    return s;
}

inline void write_svg_file(const std::string& path, const SvgScene& scene, RunRecord& rec) {
    std::string svg = render_svg(scene);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GeoError(Errc::ParseError, "cannot write file: " + path);
    out << svg;
    rec.output["svg_file"] = path;
    rec.output["svg_bytes"] = svg.size();
    rec.output["svg_digest"] = digest_hex(svg);
}

// Rebuilds the drawable part of a previous run from its serialized record.
inline SvgScene scene_from_record(const GeodesicEngine& eng, const RunRecord& rec) {
    const ojson& o = rec.output;
    if (o.contains("c1") && o.contains("c2") && o.contains("r")) {
        std::vector<Point2> cs = {point_from_json(o["c1"]), point_from_json(o["c2"])};
        return disk_scene(eng, cs, o["r"].get<double>());
    }
    if (o.contains("centers")) {
        std::vector<Point2> cs;
        for (const ojson& c : o["centers"]) cs.push_back(point_from_json(c));
        return disk_scene(eng, cs, o.value("radius", 0.0));
    }
    throw GeoError(Errc::ParseError, "result file has no drawable output (centers or c1/c2)");
}

}  // namespace clidetail

inline int run_cli(int argc, char** argv) {
    using clidetail::Emitter;
    using clidetail::PhaseTimer;
    using clidetail::pt_str;

    CLI::App app{"geodesic disk packing and covering in polygons"};
    app.require_subcommand(1);
    app.fallthrough();

    double approx_grid = 0;
    uint64_t seed = 424242;
    Emitter emit;
    app.add_option("--approx-grid", approx_grid,
                   "replace exact candidate search by a lattice of this spacing")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "seed for sampled verification");
    app.add_flag("--json", emit.json, "print the run record as JSON");
    app.add_flag("--quiet", emit.quiet, "suppress human-readable output");

    int code = 0;

    auto add_poly = [](CLI::App* sub, std::string& path) {
        sub->add_option("poly", path, "polygon JSON file")->required();
    };

    // ---- pack-unit / pack ----
    std::string pu_poly, pu_svg;
    CLI::App* pack_unit = app.add_subcommand("pack-unit", "greedy unit-disk packing");
    add_poly(pack_unit, pu_poly);
    pack_unit->add_option("--svg", pu_svg, "write a rendering to this file");

    std::string pk_poly, pk_svg;
    double pk_radius = 0;
    CLI::App* pack = app.add_subcommand("pack", "greedy disk packing at a given radius");
    add_poly(pack, pk_poly);
    pack->add_option("--radius", pk_radius, "disk radius")->required();
    pack->add_option("--svg", pk_svg, "write a rendering to this file");

    auto run_pack = [&](const std::string& poly, double r, const std::string& svg,
                        const char* name) {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(poly);
        RunRecord rec;
        rec.command = name;
        rec.params["poly"] = poly;
        rec.params["radius"] = r;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());

        PackingResult res = greedy_packing(lp.polygon, r);
        rec.timings_ms.emplace_back("solve", timer.take());
        rec.output["k"] = res.centers.size();
        rec.output["radius"] = res.radius;
        rec.output["centers"] = points_json(res.centers);
        ojson steps = ojson::array();
        for (const PackingStep& s : res.step_log)
            steps.push_back({{"chosen", point_json(s.chosen)},
                             {"candidates_before", s.candidates_before},
                             {"candidates_after", s.candidates_after}});
        rec.output["steps"] = steps;

        std::vector<std::string> lines = {"K=" + std::to_string(res.centers.size()),
                                          "radius=" + fmt_double(res.radius)};
        clidetail::center_lines(lines, res.centers);
        if (!svg.empty()) {
            GeodesicEngine eng(lp.polygon);
            clidetail::write_svg_file(svg, clidetail::disk_scene(eng, res.centers, res.radius),
                                      rec);
            rec.timings_ms.emplace_back("render", timer.take());
        }
        code = emit.finish(rec, lines);
    };
    pack_unit->callback([&] { run_pack(pu_poly, 1.0, pu_svg, "pack-unit"); });
    pack->callback([&] { run_pack(pk_poly, pk_radius, pk_svg, "pack"); });

    // ---- cover-k ----
    std::string ck_poly, ck_svg;
    int ck_k = 0;
    CLI::App* cover_k = app.add_subcommand("cover-k", "farthest-first k-center covering");
    add_poly(cover_k, ck_poly);
    cover_k->add_option("--k", ck_k, "number of centers")->required();
    cover_k->add_option("--svg", ck_svg, "write a rendering to this file");
    cover_k->callback([&] {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(ck_poly);
        RunRecord rec;
        rec.command = "cover-k";
        rec.params["poly"] = ck_poly;
        rec.params["k"] = ck_k;
        if (approx_grid > 0) rec.params["approx_grid"] = approx_grid;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());

        GeodesicEngine eng(lp.polygon);
        CoverResult res = k_cover(eng, ck_k, approx_grid);
        rec.timings_ms.emplace_back("solve", timer.take());
        rec.output["k"] = ck_k;
        rec.output["radius"] = res.radius;
        rec.output["certificate_delta"] = res.placement.certificate_delta;
        rec.output["saturated"] = res.placement.saturated;
        rec.output["radii_trace"] = res.placement.radii_trace;
        rec.output["centers"] = points_json(res.centers);

        std::vector<std::string> lines = {
            "k=" + std::to_string(ck_k), "radius=" + fmt_double(res.radius),
            "certificate_delta=" + fmt_double(res.placement.certificate_delta)};
        clidetail::center_lines(lines, res.centers);
        if (!ck_svg.empty()) {
            clidetail::write_svg_file(ck_svg, clidetail::disk_scene(eng, res.centers, res.radius),
                                      rec);
            rec.timings_ms.emplace_back("render", timer.take());
        }
        code = emit.finish(rec, lines);
    });

    // ---- pack-k ----
    std::string kk_poly, kk_svg;
    int kk_k = 0;
    CLI::App* pack_k = app.add_subcommand("pack-k", "k-disk packing via farthest-first centers");
    add_poly(pack_k, kk_poly);
    pack_k->add_option("--k", kk_k, "number of disks")->required();
    pack_k->add_option("--svg", kk_svg, "write a rendering to this file");
    pack_k->callback([&] {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(kk_poly);
        RunRecord rec;
        rec.command = "pack-k";
        rec.params["poly"] = kk_poly;
        rec.params["k"] = kk_k;
        if (approx_grid > 0) rec.params["approx_grid"] = approx_grid;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());

        GeodesicEngine eng(lp.polygon);
        PackResult res = k_pack(eng, kk_k, approx_grid);
        rec.timings_ms.emplace_back("solve", timer.take());
        rec.output["k"] = kk_k;
        rec.output["radius"] = res.radius;
        rec.output["centers"] = points_json(res.centers);

        std::vector<std::string> lines = {"k=" + std::to_string(kk_k),
                                          "radius=" + fmt_double(res.radius)};
        clidetail::center_lines(lines, res.centers);
        if (!kk_svg.empty()) {
            clidetail::write_svg_file(kk_svg, clidetail::disk_scene(eng, res.centers, res.radius),
                                      rec);
            rec.timings_ms.emplace_back("render", timer.take());
        }
        code = emit.finish(rec, lines);
    });

    // ---- cover-2 ----
    std::string c2_poly, c2_svg;
    double c2_radius = -1, c2_eps = -1;
    CLI::App* cover_2 = app.add_subcommand("cover-2", "two-disk cover: decision or minimization");
    add_poly(cover_2, c2_poly);
    CLI::Option* c2r = cover_2->add_option("--radius", c2_radius, "decide at this radius");
    CLI::Option* c2e = cover_2->add_option("--eps", c2_eps, "minimize to this tolerance");
    c2r->excludes(c2e);
    cover_2->add_option("--svg", c2_svg, "write a rendering to this file");
    cover_2->callback([&] {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(c2_poly);
        RunRecord rec;
        rec.command = "cover-2";
        rec.params["poly"] = c2_poly;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());
        GeodesicEngine eng(lp.polygon);

        std::vector<std::string> lines;
        int rc = 0;
        std::optional<TwoCoverWitness> wit;
        if (*c2r) {
            rec.params["radius"] = c2_radius;
            rec.output["mode"] = "decision";
            wit = test_two_disk_cover(eng, c2_radius);
            rec.timings_ms.emplace_back("solve", timer.take());
            rec.output["feasible"] = wit.has_value();
            rec.output["r"] = c2_radius;
            if (!wit) {
                lines.push_back("no two-disk cover at r=" + fmt_double(c2_radius));
                rc = 1;
            }
        } else {
            if (*c2e) rec.params["eps"] = c2_eps;
            rec.output["mode"] = "minimize";
            wit = min_two_cover(eng, *c2e ? c2_eps : -1);
            rec.timings_ms.emplace_back("solve", timer.take());
            rec.output["feasible"] = true;
            rec.output["r"] = wit->r;
        }
        if (wit) {
            rec.output["c1"] = point_json(wit->c1);
            rec.output["c2"] = point_json(wit->c2);
            rec.output["covered_check"] = wit->covered_check;
            lines.push_back("r=" + fmt_double(wit->r));
            lines.push_back("c1=" + pt_str(wit->c1));
            lines.push_back("c2=" + pt_str(wit->c2));
            lines.push_back("check=" + wit->covered_check);
            if (!c2_svg.empty()) {
                clidetail::write_svg_file(
                    c2_svg, clidetail::disk_scene(eng, {wit->c1, wit->c2}, wit->r), rec);
                rec.timings_ms.emplace_back("render", timer.take());
            }
        }
        code = emit.finish(rec, lines, rc);
    });

    // ---- verify ----
    std::string vf_poly, vf_suite = "all";
    int vf_budget = 12;
    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    add_poly(verify, vf_poly);
    verify->add_option("--suite", vf_suite, "all, metric, lemmas or ratios")
        ->check(CLI::IsMember({"all", "metric", "lemmas", "ratios"}));
    verify->add_option("--budget", vf_budget, "sample budget per property")
        ->check(CLI::PositiveNumber);
    verify->callback([&] {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(vf_poly);
        RunRecord rec;
        rec.command = "verify";
        rec.params["poly"] = vf_poly;
        rec.params["suite"] = vf_suite;
        rec.params["seed"] = seed;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());

        oracle::PropertyReport rep = oracle::property_suites(lp.polygon, vf_budget, vf_suite, seed);
        rec.timings_ms.emplace_back("solve", timer.take());
        rec.output["suite"] = vf_suite;
        rec.output["all_pass"] = rep.all_pass();
        ojson props = ojson::array();
        for (const oracle::PropertyEntry& e : rep.entries)
            props.push_back({{"name", e.name}, {"pass", e.pass}, {"witness", e.witness}});
        rec.output["properties"] = props;

        std::vector<std::string> lines = rep.lines();
        lines.push_back(rep.all_pass() ? "ALL PASS" : "FAILURES PRESENT");
        code = emit.finish(rec, lines);
    });

    // ---- render ----
    std::string rd_poly, rd_result, rd_svg;
    CLI::App* render = app.add_subcommand("render", "draw a polygon, optionally with a result");
    add_poly(render, rd_poly);
    render->add_option("result", rd_result, "run record JSON from a previous --json run");
    render->add_option("--svg", rd_svg, "output SVG file")->required();
    render->callback([&] {
        PhaseTimer timer;
        LoadedPolygon lp = load_polygon(rd_poly);
        RunRecord rec;
        rec.command = "render";
        rec.params["poly"] = rd_poly;
        if (!rd_result.empty()) rec.params["result"] = rd_result;
        rec.input_digest = lp.digest;
        rec.timings_ms.emplace_back("load", timer.take());

        SvgScene scene;
        if (rd_result.empty()) {
            scene.polygon = lp.polygon;
        } else {
            GeodesicEngine eng(lp.polygon);
            scene = clidetail::scene_from_record(eng, RunRecord::from_string(read_file(rd_result)));
        }
        clidetail::write_svg_file(rd_svg, scene, rec);
        rec.timings_ms.emplace_back("render", timer.take());
        code = emit.finish(rec, {"wrote " + rd_svg});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const GeoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return code;
}

}  // namespace geodisk
