#pragma once

#include <vector>

#include "platoon/open_loop.hpp"
#include "platoon/transfer.hpp"

namespace platoon {

/// Two independent views of string stability for an input at vehicle c:
/// the sufficient condition (closed-loop norm at the spectral upper bound equal
/// to one within tolerance) and a direct sweep of every adjacent response ratio,
/// rearward pairs behind c and frontward pairs ahead of it.
struct StringStabilityReport {
    double lambda_upper_bound = 0.0;
    bool bound_block_stable = false;
    double norm_at_bound = 0.0; // meaningful only when the bound block is stable
    double tolerance = 0.0;
    bool condition_holds = false;

    struct RatioNorm {
        int output_vehicle = 0;
        bool rearward = false;
        double norm = 0.0;
    };
    std::vector<RatioNorm> checked_ratios;
    bool verdict = false; // every checked norm <= 1 + tolerance
};

/// Certifies formation stability first (InstabilityError on failure). The ratio
/// sweep covers each adjacent pair once: x_o/x_{o-1} for o behind c, x_{o-1}/x_o
/// for o up to c. The pair straddling the leader is skipped (vehicle 1 does not
/// respond to follower inputs, its ratio is identically zero).
StringStabilityReport string_stability_check(const PlatoonGraph& g, const OpenLoop& m, int c,
                                             double tol = 1e-3);

/// Predecessor-following design check of the unit closed loop T = M/(1+M):
/// unit_norm asks the norm to sit at one within 1e-3; positivity_necessary holds
/// when the dominant closed-loop pole is real, separated from every other pole,
/// and no real zero lies to its right. Requires the closed loop stable.
struct PfReport {
    double norm = 0.0;
    bool unit_norm = false;
    double dominant_pole = 0.0; // real part
    bool dominant_pole_real = false;
    bool dominant_pole_separated = false;
    bool no_real_zero_right_of_pole = false;
    bool positivity_necessary = false;
};

PfReport pf_check(const OpenLoop& m);

} // namespace platoon
