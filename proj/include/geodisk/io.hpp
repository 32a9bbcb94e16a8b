#pragma once

// Polygon file loading, run records and their JSON form. Output is built on
// nlohmann::ordered_json so field order, and therefore the emitted bytes,
// are fixed for identical inputs.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "geometry.hpp"

namespace geodisk {

using ojson = nlohmann::ordered_json;

// Shortest round-trip decimal form.
inline std::string fmt_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

inline uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_hex(const std::string& bytes) {
    std::ostringstream os;
    os << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
    return os.str();
}

namespace iodetail {

inline Ring ring_from_json(const ojson& arr, const char* field) {
    if (!arr.is_array())
        throw GeoError(Errc::ParseError, std::string(field) + " must be an array of [x,y]");
    Ring r;
    for (const ojson& pt : arr) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
            throw GeoError(Errc::ParseError,
                           std::string(field) + " entries must be [x,y] number pairs");
        r.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return r;
}

}  // namespace iodetail

// {"outer": [[x,y],...], "holes": [[[x,y],...], ...]} ("holes" optional).
inline Polygon parse_polygon_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        throw GeoError(Errc::ParseError, std::string("polygon file is not JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("outer"))
        throw GeoError(Errc::ParseError, "missing required field: outer");
    Ring outer = iodetail::ring_from_json(j["outer"], "outer");
    std::vector<Ring> holes;
    if (j.contains("holes")) {
        if (!j["holes"].is_array())
            throw GeoError(Errc::ParseError, "holes must be an array of rings");
        for (const ojson& h : j["holes"])
            holes.push_back(iodetail::ring_from_json(h, "holes"));
    }
    return validate_polygon(std::move(outer), std::move(holes));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GeoError(Errc::ParseError, "cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct LoadedPolygon {
    Polygon polygon;
    std::string digest;
};

inline LoadedPolygon load_polygon(const std::string& path) {
    std::string text = read_file(path);
    return {parse_polygon_json(text), digest_hex(text)};
}

inline ojson point_json(Point2 p) { return ojson::array({p.x, p.y}); }

inline ojson points_json(const std::vector<Point2>& pts) {
    ojson a = ojson::array();
    for (Point2 p : pts) a.push_back(point_json(p));
    return a;
}

inline Point2 point_from_json(const ojson& j) {
    if (!j.is_array() || j.size() != 2)
        throw GeoError(Errc::ParseError, "expected [x,y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

// One invocation's worth of reproducible state. Timings are tracked but kept
// out of the serialized form so identical inputs give identical bytes.
struct RunRecord {
    std::string command;
    ojson params = ojson::object();
    std::string input_digest;
    ojson output = ojson::object();
    std::vector<std::pair<std::string, double>> timings_ms;

    ojson to_json() const {
        ojson j = ojson::object();
        j["command"] = command;
        j["params"] = params;
        j["input_digest"] = input_digest;
        j["output"] = output;
        return j;
    }
    std::string to_string() const { return to_json().dump(2) + "\n"; }

    static RunRecord from_json(const ojson& j) {
        RunRecord r;
        if (!j.is_object() || !j.contains("command") || !j.contains("output"))
            throw GeoError(Errc::ParseError, "missing required field: command/output");
        r.command = j["command"].get<std::string>();
        if (j.contains("params")) r.params = j["params"];
        if (j.contains("input_digest")) r.input_digest = j["input_digest"].get<std::string>();
        r.output = j["output"];
        return r;
    }
    static RunRecord from_string(const std::string& text) {
        try {
            return from_json(ojson::parse(text));
        } catch (const GeoError&) {
            throw;
        } catch (const std::exception& e) {
            throw GeoError(Errc::ParseError, std::string("result file is not JSON: ") + e.what());
        }
    }
};

}  // namespace geodisk
