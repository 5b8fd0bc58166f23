#pragma once

#include <optional>

#include "platoon/open_loop.hpp"

namespace platoon {

/// Case analysis of the closed-loop factor T_lambda and the zero block Z_{gamma,lambda}
/// at one frequency, driven entirely by the real part of lambda*M(j*omega0).
/// The magnitude comparisons against 1 and against the block's DC value follow from
/// the sign tests; the numeric magnitudes are carried along for verification.
struct PointClassification {
    double alpha = 0.0; // Re lambda*M(j*omega0)
    double beta = 0.0;  // Im lambda*M(j*omega0)

    double t_magnitude = 0.0;
    bool t_exceeds_one = false; // alpha < -1/2
    bool t_below_one = false;   // alpha > -1/2
    bool on_boundary = false;   // alpha = -1/2 within 1e-12: |T| = 1, neither strict

    bool has_zero_block = false; // the rest only when gamma was supplied
    double z_magnitude = 0.0;
    double z_dc = 0.0;
    bool z_rises_far = false;  // alpha <= -1 and gamma >= lambda: |Z| >= |Z(0)|
    bool z_rises_near = false; // -1 < alpha <= -1/2 and gamma <= lambda: |Z| >= |Z(0)|
    bool z_falls = false;      // alpha > -1/2 and gamma >= lambda: |Z| <= |Z(0)|
};

// Requires omega0 > 0 and lambda > 0; gamma, when given, must be >= 0.
PointClassification classify_frequency_point(const OpenLoop& m, double lambda,
                                             std::optional<double> gamma, double omega0);

} // namespace platoon
