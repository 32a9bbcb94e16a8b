#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "geodisk/cli.hpp"

using namespace geodisk;

namespace {

std::string data_file(const std::string& name) {
    return std::string(GEODISK_DATA) + "/" + name;
}

int run_cli_process(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(GEODISK_CLI) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("pack-unit on the unit square reports one disk") {
    int rc = run_cli_process("pack-unit " + data_file("unit_square.json"), "/tmp/cli_pu.txt");
    CHECK(rc == 0);
    std::string out = slurp("/tmp/cli_pu.txt");
    CHECK(out.find("K=1") != std::string::npos);
}

TEST_CASE("cover-2 decision exit codes bracket the rectangle optimum") {
    std::string poly = data_file("rect_2x1.json");
    CHECK(run_cli_process("cover-2 " + poly + " --radius 0.72", "/tmp/cli_c2a.txt") == 0);

    CHECK(run_cli_process("cover-2 " + poly + " --radius 0.70", "/tmp/cli_c2b.txt") == 1);
    CHECK(slurp("/tmp/cli_c2b.txt").find("no two-disk cover") != std::string::npos);
}

TEST_CASE("usage and input errors exit with code 2") {
    std::string poly = data_file("rect_2x1.json");
    CHECK(run_cli_process("cover-k " + poly, "/tmp/cli_e1.txt") == 2);  // --k missing
    CHECK(run_cli_process("cover-k /tmp/no_such_file.json --k 2", "/tmp/cli_e2.txt") == 2);
    CHECK(run_cli_process("cover-2 " + poly + " --radius 0.7 --eps 0.1", "/tmp/cli_e3.txt") == 2);
    CHECK(run_cli_process("verify " + poly + " --suite bogus", "/tmp/cli_e4.txt") == 2);
    CHECK(run_cli_process("frobnicate " + poly, "/tmp/cli_e5.txt") == 2);

    spit("/tmp/cli_bad.json", "{\"inner\": []}");
    CHECK(run_cli_process("pack-unit /tmp/cli_bad.json", "/tmp/cli_e6.txt") == 2);
    CHECK(slurp("/tmp/cli_e6.txt").find("outer") != std::string::npos);

    spit("/tmp/cli_selfx.json", "{\"outer\": [[0,0],[1,1],[1,0],[0,1]]}");
    CHECK(run_cli_process("pack-unit /tmp/cli_selfx.json", "/tmp/cli_e7.txt") == 2);
}

TEST_CASE("json output is byte-identical across runs") {
    std::string args = "cover-k " + data_file("l_polygon.json") + " --k 2 --json";
    CHECK(run_cli_process(args, "/tmp/cli_j1.json") == 0);
    CHECK(run_cli_process(args, "/tmp/cli_j2.json") == 0);
    CHECK(slurp("/tmp/cli_j1.json") == slurp("/tmp/cli_j2.json"));

    RunRecord rec = RunRecord::from_string(slurp("/tmp/cli_j1.json"));
    CHECK(rec.command == "cover-k");
    CHECK(rec.output["k"].get<int>() == 2);
    CHECK(rec.output["centers"].size() == 2);
}

TEST_CASE("rendering a result file is deterministic") {
    std::string poly = data_file("rect_2x1.json");
    REQUIRE(run_cli_process("cover-2 " + poly + " --radius 0.75 --json", "/tmp/cli_w.json") == 0);

    REQUIRE(run_cli_process("render " + poly + " /tmp/cli_w.json --svg /tmp/cli_a.svg --quiet",
                            "/tmp/cli_r1.txt") == 0);
    REQUIRE(run_cli_process("render " + poly + " /tmp/cli_w.json --svg /tmp/cli_b.svg --quiet",
                            "/tmp/cli_r2.txt") == 0);
    std::string svg = slurp("/tmp/cli_a.svg");
    CHECK(svg == slurp("/tmp/cli_b.svg"));

    // Restricted element set: nothing but svg/path/circle/line/rect tags.
    size_t pos = 0;
    while ((pos = svg.find('<', pos)) != std::string::npos) {
        if (svg[pos + 1] == '/') {
            ++pos;
            continue;
        }
        std::string tag = svg.substr(pos + 1, svg.find_first_of(" >", pos) - pos - 1);
        bool allowed = tag == "svg" || tag == "path" || tag == "circle" || tag == "line" ||
                       tag == "rect";
        INFO(tag);
        CHECK(allowed);
        ++pos;
    }
    CHECK(svg.find("viewBox=\"-0.1 -1.1 2.2 1.2\"") != std::string::npos);  // 5% margin
}

TEST_CASE("verify subcommand prints property lines") {
    int rc = run_cli_process(
        "verify " + data_file("convex_pentagon.json") + " --suite metric --budget 8",
        "/tmp/cli_v.txt");
    CHECK(rc == 0);
    std::string out = slurp("/tmp/cli_v.txt");
    CHECK(out.find("PROPERTY metric.symmetry PASS") != std::string::npos);
    CHECK(out.find("ALL PASS") != std::string::npos);
}

TEST_CASE("run records survive a serialize/parse round trip") {
    RunRecord rec;
    rec.command = "cover-2";
    rec.params["radius"] = 0.72;
    rec.input_digest = digest_hex("example");
    rec.output["r"] = std::sqrt(0.5);
    rec.output["c1"] = point_json({0.5000000000000001, 0.5});
    rec.timings_ms.emplace_back("solve", 12.5);  // dropped by serialization

    RunRecord back = RunRecord::from_string(rec.to_string());
    CHECK(back.command == rec.command);
    CHECK(back.input_digest == rec.input_digest);
    CHECK(back.output["r"].get<double>() == std::sqrt(0.5));
    CHECK(point_from_json(back.output["c1"]).x == 0.5000000000000001);
    CHECK(back.to_string() == rec.to_string());
}

TEST_CASE("polygon files parse strictly") {
    Polygon P = parse_polygon_json(R"({"outer": [[0,0],[2,0],[2,1],[0,1]]})");
    CHECK(P.outer.size() == 4);

    Polygon H = parse_polygon_json(
        R"({"outer": [[0,0],[6,0],[6,6],[0,6]], "holes": [[[2,2],[2,4],[4,4],[4,2]]]})");
    CHECK(H.holes.size() == 1);

    CHECK_THROWS_AS(parse_polygon_json("{}"), GeoError);
    CHECK_THROWS_AS(parse_polygon_json("not json"), GeoError);
    CHECK_THROWS_AS(parse_polygon_json(R"({"outer": [[0,0],[1,0]]})"), GeoError);
    CHECK_THROWS_AS(parse_polygon_json(R"({"outer": [[0,0],[1,0],["x",1]]})"), GeoError);
}

TEST_CASE("number formatting is shortest round-trip") {
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(1.0) == "1");
    CHECK(fmt_double(std::sqrt(0.5)) == "0.7071067811865476");
    for (double v : {0.1, 1.0 / 3, std::sqrt(2.0), 1e-9, 123456.789}) {
        double back = std::strtod(fmt_double(v).c_str(), nullptr);
        CHECK(back == v);
    }
}

TEST_CASE("digest is a pure function of content") {
    CHECK(digest_hex("abc") == digest_hex("abc"));
    CHECK(digest_hex("abc") != digest_hex("abd"));
    CHECK(digest_hex("").rfind("fnv1a:", 0) == 0);
}
