#pragma once

#include <optional>
#include <string>

#include "knotbeta/continuation.hpp"
#include "knotbeta/knot.hpp"

namespace knotbeta {

/// Parsed knot file plus the information the CLI needs for method selection.
struct LoadedKnot {
    Knot knot;
    std::string type;                  // fourier | torus | polygon | circle
    std::optional<double> circle_radius; // set for type == circle
};

/// Knot file schema (JSON):
///   {"name": str, "type": "fourier"|"torus"|"polygon"|"circle", ...}
///   fourier: {"x": {"a": [...], "b": [...]}, "y": ..., "z": ...}
///   torus:   {"p": int, "q": int, "R": num, "r": num}
///   polygon: {"vertices": [[x,y,z], ...]}
///   circle:  {"radius": num}
LoadedKnot load_knot_file(const std::string& path);
LoadedKnot parse_knot_json(const std::string& text);

struct RunConfig {
    double epsilon = 0.0;  // 0: mandatory margin scan
    int order = 8;
    int samples = 256;
    double guard_radius = kDefaultGuardRadius;
    std::string format = "csv"; // csv | json
    std::string out;            // empty: stdout

    ContinuationConfig continuation() const {
        ContinuationConfig c;
        c.epsilon = epsilon;
        c.order = order;
        c.guard_radius = guard_radius;
        return c;
    }
};

/// Config file values, overridden by any explicitly-set CLI flags.
RunConfig load_run_config(const std::string& path, const RunConfig& defaults);

/// Number formatting for tables: 17 significant digits, C locale.
std::string format_g17(double v);

} // namespace knotbeta
