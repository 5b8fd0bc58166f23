#pragma once

#include <optional>
#include <span>
#include <vector>

#include "platoon/errors.hpp"
#include "platoon/open_loop.hpp"
#include "platoon/routh.hpp"

namespace platoon {

/// Record of a formation stability sweep: which lambda values were tested, the
/// first closed-loop polynomial that failed the Hurwitz test, and which entries
/// were skipped as leader modes (lambda numerically zero).
struct StabilityCertificate {
    OpenLoop open_loop;
    std::vector<double> lambda_values_checked; // ascending
    std::vector<double> skipped;               // entries at or below the zero threshold
    bool all_stable = false;
    struct Failure {
        double lambda = 0.0;
        Polynomial polynomial;
    };
    std::optional<Failure> first_failure; // smallest failing lambda
};

struct InstabilityError : NumericalError {
    explicit InstabilityError(StabilityCertificate cert);
    StabilityCertificate certificate;
};

/// Hurwitz test of d*c_d + lambda*n*c_n at every given eigenvalue plus extra_grid
/// uniformly spaced values spanning [min, max] of the spectrum. Zero eigenvalues
/// (the leader mode) are recorded as skipped.
StabilityCertificate formation_stability(const OpenLoop& m, std::span<const double> spectrum,
                                         int extra_grid = 64);

} // namespace platoon
