#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "platoon/platoon_system.hpp"

namespace platoon {

/// What drives the platoon. Steps are already switched on at t = 0.
enum class InputKind {
    zero,
    input_step,        // step of height amplitude on r_vehicle
    leader_step,       // position step in exogenous mode, r_1 step in driven
    leader_ramp,       // constant-velocity leader, slope = amplitude
    reference_offsets, // constant spacing references, d_ref = amplitude
};

struct InputSpec {
    InputKind kind = InputKind::leader_step;
    double amplitude = 1.0;
    int vehicle = 2; // input_step target
};

struct SimulateConfig {
    double duration = 0.0;
    std::optional<double> dt; // default 0.02 / |fastest closed-loop eigenvalue|
    InputSpec input;
    int max_samples = 2001; // stored rows are thinned to about this many
};

/// Uniformly sampled closed-loop response. Rows are samples; the final
/// integration step is always kept, so terminal values sit in the last row.
struct Trajectory {
    std::vector<double> t;
    Eigen::MatrixXd positions; // n columns
    Eigen::MatrixXd deltas;    // n-1 columns
    Eigen::MatrixXd efforts;   // n columns
    double dt = 0.0;           // integration step actually used
    bool marginal_warning = false;
    Eigen::VectorXd terminal_positions;
    Eigen::VectorXd terminal_deltas;
    Eigen::VectorXd terminal_efforts;
};

/// Fixed-step fourth-order Runge-Kutta integration of the assembled system.
/// Rejects an unstable system and a step above the 0.1/|fastest eigenvalue|
/// heuristic; a marginally stable system integrates with a warning.
Trajectory simulate_step(const PlatoonSystem& p, const SimulateConfig& cfg);

/// Plot-ready dump, header t,x_1..x_N,delta_2..delta_N,u_1..u_N, twelve
/// significant digits.
std::string trajectory_csv(const Trajectory& tr);

} // namespace platoon
