#include "knotbeta/knot_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace knotbeta {

namespace {

using nlohmann::json;

FourierCoord parse_coord(const json& j) {
    FourierCoord c;
    if (j.contains("a")) c.a = j.at("a").get<std::vector<double>>();
    if (j.contains("b")) c.b = j.at("b").get<std::vector<double>>();
    for (double v : c.a)
        if (!std::isfinite(v)) throw std::invalid_argument("knot file: non-finite coefficient");
    for (double v : c.b)
        if (!std::isfinite(v)) throw std::invalid_argument("knot file: non-finite coefficient");
    return c;
}

} // namespace

LoadedKnot parse_knot_json(const std::string& text) {
    const json j = json::parse(text);
    const std::string type = j.at("type").get<std::string>();
    LoadedKnot out;
    out.type = type;
    if (type == "fourier") {
        FourierSpec spec;
        spec.x = parse_coord(j.at("x"));
        spec.y = parse_coord(j.at("y"));
        if (j.contains("z")) spec.z = parse_coord(j.at("z"));
        out.knot = make_knot(spec);
    } else if (type == "torus") {
        TorusSpec spec;
        spec.p = j.at("p").get<int>();
        spec.q = j.at("q").get<int>();
        spec.R = j.at("R").get<double>();
        spec.r = j.at("r").get<double>();
        if (!std::isfinite(spec.R) || !std::isfinite(spec.r))
            throw std::invalid_argument("knot file: non-finite torus radii");
        out.knot = make_knot(spec);
    } else if (type == "polygon") {
        PolygonSpec spec;
        for (const auto& row : j.at("vertices")) {
            if (!row.is_array() || row.size() != 3)
                throw std::invalid_argument("knot file: polygon vertices must be [x,y,z]");
            const Vec3 v{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
            if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
                throw std::invalid_argument("knot file: non-finite vertex");
            spec.vertices.push_back(v);
        }
        out.knot = make_knot(spec);
    } else if (type == "circle") {
        const double radius = j.at("radius").get<double>();
        if (!std::isfinite(radius)) throw std::invalid_argument("knot file: non-finite radius");
        out.knot = make_circle(radius);
        out.circle_radius = radius;
    } else {
        throw std::invalid_argument("knot file: unknown type '" + type + "'");
    }
    if (j.contains("name")) out.knot.name = j.at("name").get<std::string>();
    return out;
}

LoadedKnot load_knot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open knot file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_knot_json(ss.str());
}

RunConfig load_run_config(const std::string& path, const RunConfig& defaults) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    RunConfig cfg = defaults;
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("order")) cfg.order = j.at("order").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("guard_radius")) cfg.guard_radius = j.at("guard_radius").get<double>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    return cfg;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace knotbeta
