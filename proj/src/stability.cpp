#include "platoon/stability.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

namespace {
constexpr double kLeaderMode = 1e-12;
}

InstabilityError::InstabilityError(StabilityCertificate cert)
    : NumericalError(cert.first_failure
                         ? "formation unstable at lambda = " + std::to_string(cert.first_failure->lambda)
                         : "formation unstable"),
      certificate(std::move(cert)) {}

StabilityCertificate formation_stability(const OpenLoop& m, std::span<const double> spectrum,
                                         int extra_grid) {
    if (spectrum.empty()) throw ValidationError("formation_stability: empty spectrum");
    if (extra_grid < 0) throw ValidationError("formation_stability: negative grid size");

    StabilityCertificate cert;
    cert.open_loop = m;

    double lo = spectrum[0], hi = spectrum[0];
    for (double v : spectrum) {
        if (v < 0.0) throw ValidationError("formation_stability: negative eigenvalue");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v <= kLeaderMode)
            cert.skipped.push_back(v);
        else
            cert.lambda_values_checked.push_back(v);
    }
    for (int k = 0; k < extra_grid; ++k) {
        const double t = extra_grid == 1 ? 0.5 : static_cast<double>(k) / (extra_grid - 1);
        const double v = lo + t * (hi - lo);
        if (v > kLeaderMode) cert.lambda_values_checked.push_back(v);
    }
    std::sort(cert.lambda_values_checked.begin(), cert.lambda_values_checked.end());

    cert.all_stable = true;
    for (double lambda : cert.lambda_values_checked) {
        Polynomial cl = add_scaled(m.denominator, lambda, m.numerator);
        if (!hurwitz(cl)) {
            cert.all_stable = false;
            cert.first_failure = StabilityCertificate::Failure{lambda, std::move(cl)};
            break;
        }
    }
    return cert;
}

} // namespace platoon
