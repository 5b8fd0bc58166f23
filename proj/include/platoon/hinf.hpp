#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "platoon/rational.hpp"
#include "platoon/transfer.hpp"

namespace platoon {

/// Frequency response wrapper consumed by the peak search. The limits at omega = 0
/// and omega -> infinity are supplied analytically so the grid never chases them,
/// and corner_frequencies anchor the search band.
struct TransferEvaluator {
    std::function<std::complex<double>(double)> at;
    double dc_magnitude = 0.0;
    double hf_magnitude = 0.0;
    std::vector<double> corner_frequencies; // nonzero pole and zero magnitudes
};

TransferEvaluator evaluator(const RationalFunction& r);
TransferEvaluator evaluator(const AssembledTransfer& t);
TransferEvaluator evaluator(const NeighborRatio& r);

struct HinfResult {
    double norm = 0.0;
    double peak_frequency = 0.0; // 0 at DC; +infinity when the high-frequency limit peaks
    bool refined = false;
    std::vector<std::pair<double, double>> samples; // (omega, magnitude), the DC pair first
};

/// Peak magnitude along the imaginary axis: the analytic limits plus a log-spaced
/// grid over three decades either side of the corner geometric mean, then golden
/// section refinement around the best grid point to 1e-9 relative in omega.
/// Ties prefer the smaller frequency. A non-finite limit or sample raises
/// NumericalError; grid evaluation runs on the thread budget.
HinfResult hinf(const TransferEvaluator& ev, int grid_points = 2000);

} // namespace platoon
