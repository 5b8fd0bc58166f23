#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace platoon {

/// Path platoon of n vehicles. Vehicle 1 is the leader; vehicles 2..n-1 carry a
/// nonnegative bidirectionality weight epsilon_i for their rear coupling, stored
/// as epsilon[i-2]. The trailing vehicle has no rear neighbour.
struct PlatoonGraph {
    int n = 0;
    std::vector<double> epsilon;

    PlatoonGraph(int n, std::vector<double> epsilon);

    // Weight of vehicle i, 1-based, 2 <= i <= n-1.
    double eps(int i) const;
    double eps_max() const; // 0 for n == 2

    static PlatoonGraph uniform(int n, double value);
    static PlatoonGraph random_range(int n, double low, double high, std::uint64_t seed);
};

/// Square tridiagonal matrix stored by bands. sub(k) couples row k+1 to column k,
/// sup(k) row k to column k+1 (0-based). A zero sub*sup product decouples the
/// matrix into independent blocks, which the spectral code exploits.
class Tridiagonal {
public:
    Tridiagonal() = default;
    Tridiagonal(std::vector<double> diag, std::vector<double> sub, std::vector<double> sup);

    int size() const { return static_cast<int>(diag_.size()); }
    const std::vector<double>& diag() const { return diag_; }
    const std::vector<double>& sub() const { return sub_; }
    const std::vector<double>& sup() const { return sup_; }

    // Half-open index ranges separated by exactly-zero off-diagonal products.
    std::vector<std::pair<int, int>> blocks() const;

    Eigen::MatrixXd dense() const;

private:
    std::vector<double> diag_, sub_, sup_;
};

// Coupling Laplacian of the platoon: leader row zero, interior rows
// [-1, 1+eps_i, -eps_i], last row [-1, 1].
Tridiagonal build_laplacian(const PlatoonGraph& g);

// Principal submatrix keeping 0-based rows [i0, i1).
Tridiagonal slice(const Tridiagonal& t, int i0, int i1);

// Laplacian with the leader row and column removed. Same nonzero spectrum.
Tridiagonal reduce_leader(const Tridiagonal& l);

// Removes the vehicles on the path between nodes c and o inclusive (1-based).
// The surviving front and rear sections stay in one matrix, decoupled by a zero seam.
Tridiagonal delete_path(const Tridiagonal& l, int c, int o);

// Product of the edge weights from o up to c-1 when c > o, otherwise 1.
double path_weight(const PlatoonGraph& g, int c, int o);

// Determinant by the three-term recursion with fused products and power-of-two
// rescaling, so long platoons neither overflow nor lose the leading digits.
double determinant(const Tridiagonal& t);

} // namespace platoon
