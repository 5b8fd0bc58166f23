#pragma once

#include <optional>
#include <vector>

#include "platoon/graph.hpp"

namespace platoon {

struct SpectralData {
    std::vector<double> eigenvalues; // ascending, multiplicities kept
    std::optional<double> lower_bound;
    double upper_bound = 0.0;
};

/// All eigenvalues of a tridiagonal matrix whose off-diagonal products are
/// nonnegative. Each irreducible block is symmetrized (off-diagonal sqrt(sub*sup))
/// and solved by Sturm-count bisection driven to relative precision, so products
/// of eigenvalues keep about twelve digits. Zero products split blocks exactly.
SpectralData spectrum(const Tridiagonal& t);

// (lower, upper) eigenvalue bounds for the nonzero Laplacian spectrum. The lower
// bound exists only for eps_max < 1; the upper bound 2*(1+eps_max) always holds.
std::pair<std::optional<double>, double> spectral_bounds(const PlatoonGraph& g);

// Spectrum of the leader-reduced Laplacian with the graph-level bounds attached.
SpectralData reduced_spectrum(const PlatoonGraph& g);

/// True when inner could be the spectrum of a principal submatrix of outer with
/// k = |outer| - |inner| rows deleted: mu_j >= lambda_j while that chain is valid
/// and mu_j <= lambda_{j+2k} while the shifted index exists.
bool check_interlacing(const SpectralData& outer, const SpectralData& inner, double tol = 1e-9);

} // namespace platoon
