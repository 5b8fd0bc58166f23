#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "platoon/graph.hpp"
#include "platoon/realization.hpp"

namespace platoon {

/// Who owns the leader. Driven keeps vehicle 1 as a dynamic agent fed by its
/// own reference r_1, which preserves the transfer-function algebra exactly
/// and is what the frequency-response oracle uses. Exogenous removes the
/// leader's states and injects its position as an external signal, which is
/// how the step responses are produced.
enum class LeaderMode { driven, exogenous };

/// Static output map y = C*X + D*v over the closed-loop state and the
/// external input vector.
struct OutputMap {
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;
};

/// The platoon as one LTI system. External inputs v are the references
/// r_1..r_N in driven mode; in exogenous mode they are r_2..r_N followed by
/// the leader position as the last column.
struct PlatoonSystem {
    LeaderMode mode = LeaderMode::driven;
    int n = 0;            // vehicles
    int agents = 0;       // dynamic agents: n, or n-1 in exogenous mode
    int agent_states = 0; // states per agent
    Eigen::MatrixXd A;    // closed loop, agents*agent_states square
    Eigen::MatrixXd B;

    OutputMap positions; // n rows, x_1..x_N
    OutputMap deltas;    // n-1 rows, x_{i-1} - x_i
    OutputMap efforts;   // n rows; zero when effort_via_chain is set

    // Agent regulation errors e = chain_E*X + chain_F*v, one row per agent.
    // Without a static effort tap the control signal is reconstructed during
    // simulation as u = sum_k chain_q[k] * e^(k).
    Eigen::MatrixXd chain_E;
    Eigen::MatrixXd chain_F;
    std::vector<double> chain_q;
    bool effort_via_chain = false;

    // External input direction produced by one unit of reference spacing,
    // r_i = -1 + eps_i for the interior, r_N = -1, nothing for the leader.
    Eigen::VectorXd reference_offset;

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
};

PlatoonSystem assemble_platoon(const PlatoonGraph& g, const AgentRealization& a, LeaderMode mode);

/// One resolvent solve: the response x_o/r_c at s = j*omega. In exogenous
/// mode c = 1 addresses the leader position input.
std::complex<double> freq_response_direct(const PlatoonSystem& p, int c, int o, double omega);

} // namespace platoon
