#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "platoon/open_loop.hpp"
#include "platoon/transfer.hpp"

namespace platoon {

/// Exponential-growth certificate for an eigenvalue interval. Anchored at omega0,
/// the peak frequency of the closed-loop factor at lambda_min; valid only when that
/// peak exceeds one. zeta lower-bounds every closed-loop factor magnitude at omega0
/// and xi lower-bounds the zero-block magnitude ratio |Z(j omega0)| / |Z(0)| over
/// the whole (gamma, lambda) box, so the exposed transfer bound is conservative.
struct ScalingCertificate {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double omega0 = 0.0;    // peak frequency of the closed loop at lambda_min
    double peak_norm = 0.0; // its norm
    bool valid = false;     // peak_norm > 1
    std::optional<double> zeta;
    std::optional<double> xi;
    std::vector<std::pair<double, double>> t_samples; // (lambda, |T_lambda(j omega0)|)

    // xi^2 * dc_gain * zeta^distance; requires a valid certificate.
    double predicted_lower_bound(double dc_gain, int distance) const;
};

/// Requires 0 < lambda_min <= lambda_max and a formation-stable interval (checked on
/// the endpoints plus the sweep grid; failure raises InstabilityError). grid sets
/// the lambda sweep resolution for zeta (refined afterwards) and each axis of the
/// (gamma, lambda) box for xi (grid only).
ScalingCertificate scaling_certificate(const OpenLoop& m, double lambda_min, double lambda_max,
                                       int grid = 256);

/// Walks the factor pairing behind the certificate for one transfer: each zero
/// gamma_i is matched with an eigenvalue of the full spectrum so that its block
/// does not shrink at omega0, the leftover closed-loop factors carry the zeta
/// power, and the unmatched blocks fall back to the xi bound. Narrative output
/// for the CLI; the numeric bound never depends on this pairing.
std::string pairing_explanation(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                const ScalingCertificate& cert);

} // namespace platoon
