#pragma once

#include <Eigen/Dense>

#include <vector>

#include "platoon/open_loop.hpp"

namespace platoon {

/// Controllable canonical state-space form of one vehicle's loop M = P*C,
/// input e, output x. When the controller is proper it keeps its own state
/// block ahead of the plant, so the control effort stays available as the
/// static tap u = Cu*x + Du*e. An improper controller over a plant of high
/// enough relative degree (M still proper) is realized from the combined
/// quotient instead; u is then recovered from derivatives of the input,
/// u = sum_k effort_chain_q[k] * e^(k). That path needs a constant
/// controller denominator, otherwise no causal effort signal exists.
struct AgentRealization {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;

    bool has_effort_tap = false;
    Eigen::RowVectorXd Cu;
    double Du = 0.0;
    std::vector<double> effort_chain_q;

    int states() const { return static_cast<int>(A.rows()); }
};

AgentRealization realize(const OpenLoop& m);

} // namespace platoon
