#pragma once

#include <complex>

#include "platoon/rational.hpp"

namespace platoon {

/// Plant and controller of one vehicle together with their product M = P*C.
/// numerator and denominator hold the raw coefficient products; every closed-loop
/// block is assembled from them without cancellation, so a plant/controller pair
/// that happens to share factors keeps its full-order dynamics.
struct OpenLoop {
    RationalFunction plant;
    RationalFunction controller;
    RationalFunction combined;  // raw numerator/denominator, uncancelled
    Polynomial numerator;       // plant.num * controller.num
    Polynomial denominator;     // plant.den * controller.den
    int type_number = 0;        // net integrators of M at s = 0
    RationalFunction residual;  // s-free part of M, finite and nonzero at s = 0

    // M(j*omega) from the raw products, guarded against on-axis open-loop poles.
    std::complex<double> at(double omega) const;
};

OpenLoop compose_open_loop(const RationalFunction& plant, const RationalFunction& controller);

// Number of poles of m at the origin net of zeros there, clamped below at 0.
int type_number(const RationalFunction& m);

// T_lambda = lambda*M / (1 + lambda*M), built from the raw products. Requires lambda > 0.
RationalFunction closed_loop_block(const OpenLoop& m, double lambda);

// Z = (1 + gamma*M) / (1 + lambda*M), built from the raw products.
// Requires lambda > 0 and gamma >= 0.
RationalFunction zero_block(const OpenLoop& m, double gamma, double lambda);

} // namespace platoon
