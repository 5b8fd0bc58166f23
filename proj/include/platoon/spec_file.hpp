#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "platoon/graph.hpp"
#include "platoon/open_loop.hpp"
#include "platoon/platoon_system.hpp"

namespace platoon {

/// Tuning knobs a spec file may override. Defaults match the library-wide
/// defaults, so an empty options object changes nothing.
struct SpecOptions {
    int hinf_grid = 2000;
    int extra_grid = 64;    // extra points for the formation stability sweep
    int scaling_grid = 256; // lambda grid of the scaling certificate
    double norm_tolerance = 1e-3;
    LeaderMode leader_mode = LeaderMode::exogenous;
    std::optional<double> dt;
};

struct PlatoonSpec {
    PlatoonGraph graph;
    OpenLoop loop;
    SpecOptions options;
};

/// Malformed input file, as opposed to a well-formed file describing an
/// invalid model. The CLI maps the two to different exit codes.
struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PlatoonSpec parse_spec(const std::string& text);
PlatoonSpec load_spec(const std::string& path);

} // namespace platoon
