#pragma once

#include <complex>
#include <vector>

#include "platoon/graph.hpp"
#include "platoon/open_loop.hpp"
#include "platoon/spectrum.hpp"

namespace platoon {

/// Transfer function from input r_c to position x_o in factored spectral form:
///   weight * (n c_n)^{d+1} * prod_i (d c_d + gamma_i n c_n) / prod_j (d c_d + lambda_j n c_n)
/// with the leader mode cancelled out of both spectra. leader_included composes one
/// extra M(s) factor, which reintroduces the leader integrators.
struct AssembledTransfer {
    OpenLoop open_loop;
    double weight = 1.0;
    std::vector<double> pole_lambdas; // reduced Laplacian spectrum, ascending
    std::vector<double> zero_gammas;  // path-deleted spectrum without the leader zero
    int extra_numerator_power = 0;    // d_co + 1
    int distance = 0;                 // |c - o|
    bool leader_included = false;

    // Value at s = j*omega. Factor products are accumulated with exponent tracking
    // so long platoons cannot overflow the intermediate products.
    std::complex<double> value(double omega) const;

    // weight * prod gamma / prod lambda; requires type_number >= 1.
    double dc_gain() const;
};

/// Builds the factored transfer for 2 <= c, o <= n. Certifies formation stability
/// first and throws InstabilityError carrying the certificate when it fails.
AssembledTransfer assemble_transfer(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                    bool include_leader = false);

// Steady-state gain r_c -> x_o three ways. Spectral multiplies computed eigenvalue
// ratios; closed evaluates the weighted nested sum in the edge weights; distance is
// the gain to the spacing error x_{o-1} - x_o, the difference of two closed gains.
double dc_gain_spectral(const PlatoonGraph& g, int c, int o);
double dc_gain_closed(const PlatoonGraph& g, int c, int o);
double dc_gain_distance(const PlatoonGraph& g, int c, int o);

/// Ratio of the responses of two neighbouring vehicles to the same input r_c,
/// with the common pole factors cancelled by construction: one n*c_n factor,
/// the two gamma factor sets of the neighbouring deletion paths and the edge
/// weight quotient remain.
struct NeighborRatio {
    OpenLoop open_loop;
    double weight = 1.0;                    // 1 behind c, eps_{o-1} ahead, 1/eps_{c-1} across
    std::vector<double> numerator_gammas;
    std::vector<double> denominator_gammas;
    int numerator_ncn_power = 1;            // -1 only for o == c, where the pair spans the input
    bool forward = true;                    // x_o / x_{o-1} when o >= c
    int output_vehicle = 0;
    int control_vehicle = 0;

    std::complex<double> value(double omega) const;
    double dc_gain() const; // requires type_number >= 1
};

// Ratio x_o/x_{o-1} for o >= c, x_{o-1}/x_o for o < c. Both vehicles of the
// pair must be followers, so o >= 3.
NeighborRatio neighbor_ratio(const PlatoonGraph& g, const OpenLoop& m, int c, int o);

// Same quotient with the propagation direction chosen by the caller: rearward
// gives x_o/x_{o-1} and needs o >= c, frontward gives x_{o-1}/x_o and needs
// o <= c. At o == c the two are reciprocals; only the frontward one stays
// bounded for strictly proper open loops.
NeighborRatio propagation_ratio(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                bool rearward);

} // namespace platoon
