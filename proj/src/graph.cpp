#include "platoon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "platoon/errors.hpp"
#include "platoon/rng.hpp"

namespace platoon {

PlatoonGraph::PlatoonGraph(int n_, std::vector<double> epsilon_) : n(n_), epsilon(std::move(epsilon_)) {
    if (n < 2) throw ValidationError("platoon needs at least a leader and one follower");
    if (static_cast<int>(epsilon.size()) != n - 2)
        throw ValidationError("epsilon list must have n-2 entries, got " + std::to_string(epsilon.size()));
    for (double e : epsilon)
        if (!(e >= 0.0) || !std::isfinite(e)) throw ValidationError("epsilon entries must be finite and >= 0");
}

double PlatoonGraph::eps(int i) const {
    if (i < 2 || i > n - 1) throw ValidationError("eps: vehicle index out of range");
    return epsilon[static_cast<std::size_t>(i - 2)];
}

double PlatoonGraph::eps_max() const {
    double m = 0.0;
    for (double e : epsilon) m = std::max(m, e);
    return m;
}

PlatoonGraph PlatoonGraph::uniform(int n, double value) {
    return PlatoonGraph(n, std::vector<double>(n >= 2 ? static_cast<std::size_t>(n - 2) : 0, value));
}

PlatoonGraph PlatoonGraph::random_range(int n, double low, double high, std::uint64_t seed) {
    if (!(low >= 0.0) || !(high >= low)) throw ValidationError("random_range: need 0 <= low <= high");
    SplitMix64 rng(seed);
    std::vector<double> eps;
    for (int i = 0; i < n - 2; ++i) eps.push_back(rng.uniform(low, high));
    return PlatoonGraph(n, std::move(eps));
}

Tridiagonal::Tridiagonal(std::vector<double> diag, std::vector<double> sub, std::vector<double> sup)
    : diag_(std::move(diag)), sub_(std::move(sub)), sup_(std::move(sup)) {
    const std::size_t m = diag_.size();
    const std::size_t off = m == 0 ? 0 : m - 1;
    if (sub_.size() != off || sup_.size() != off)
        throw ValidationError("tridiagonal band lengths must be size-1");
}

std::vector<std::pair<int, int>> Tridiagonal::blocks() const {
    std::vector<std::pair<int, int>> out;
    const int m = size();
    int start = 0;
    for (int k = 0; k + 1 < m; ++k) {
        if (sub_[static_cast<std::size_t>(k)] * sup_[static_cast<std::size_t>(k)] == 0.0) {
            out.emplace_back(start, k + 1);
            start = k + 1;
        }
    }
    if (m > 0) out.emplace_back(start, m);
    return out;
}

Eigen::MatrixXd Tridiagonal::dense() const {
    const int m = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        a(i, i) = diag_[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
            a(i + 1, i) = sub_[static_cast<std::size_t>(i)];
            a(i, i + 1) = sup_[static_cast<std::size_t>(i)];
        }
    }
    return a;
}

Tridiagonal build_laplacian(const PlatoonGraph& g) {
    const int n = g.n;
    std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sub(static_cast<std::size_t>(n - 1), -1.0);
    std::vector<double> sup(static_cast<std::size_t>(n - 1), 0.0);
    diag[0] = 0.0; // leader follows nobody
    for (int i = 2; i <= n - 1; ++i) {
        diag[static_cast<std::size_t>(i - 1)] = 1.0 + g.eps(i);
        sup[static_cast<std::size_t>(i - 1)] = -g.eps(i);
    }
    diag[static_cast<std::size_t>(n - 1)] = 1.0;
    return Tridiagonal(std::move(diag), std::move(sub), std::move(sup));
}

Tridiagonal slice(const Tridiagonal& t, int i0, int i1) {
    if (i0 < 0 || i1 > t.size() || i0 > i1) throw ValidationError("slice: bad index range");
    std::vector<double> d(t.diag().begin() + i0, t.diag().begin() + i1);
    std::vector<double> sb, sp;
    for (int k = i0; k + 1 < i1; ++k) {
        sb.push_back(t.sub()[static_cast<std::size_t>(k)]);
        sp.push_back(t.sup()[static_cast<std::size_t>(k)]);
    }
    return Tridiagonal(std::move(d), std::move(sb), std::move(sp));
}

Tridiagonal reduce_leader(const Tridiagonal& l) {
    if (l.size() < 2) throw ValidationError("reduce_leader: matrix too small");
    return slice(l, 1, l.size());
}

Tridiagonal delete_path(const Tridiagonal& l, int c, int o) {
    const int n = l.size();
    if (c < 1 || c > n || o < 1 || o > n) throw ValidationError("delete_path: node index out of range");
    const int lo = std::min(c, o), hi = std::max(c, o);
    Tridiagonal front = slice(l, 0, lo - 1);
    Tridiagonal rear = slice(l, hi, n);
    if (front.size() == 0) return rear;
    if (rear.size() == 0) return front;
    std::vector<double> d(front.diag());
    d.insert(d.end(), rear.diag().begin(), rear.diag().end());
    std::vector<double> sb(front.sub()), sp(front.sup());
    sb.push_back(0.0); // removed band decouples the sections
    sp.push_back(0.0);
    sb.insert(sb.end(), rear.sub().begin(), rear.sub().end());
    sp.insert(sp.end(), rear.sup().begin(), rear.sup().end());
    return Tridiagonal(std::move(d), std::move(sb), std::move(sp));
}

double path_weight(const PlatoonGraph& g, int c, int o) {
    if (c < 1 || c > g.n || o < 1 || o > g.n) throw ValidationError("path_weight: node index out of range");
    if (c <= o) return 1.0;
    if (o < 2) throw ValidationError("path_weight: path to the leader references an undefined weight");
    double w = 1.0;
    for (int i = o; i <= c - 1; ++i) w *= g.eps(i);
    return w;
}

double determinant(const Tridiagonal& t) {
    double dkm2 = 1.0, dkm1 = 1.0; // D_{k-2}, D_{k-1}
    long exponent = 0;
    const int m = t.size();
    for (int k = 0; k < m; ++k) {
        const double p = k > 0 ? t.sub()[static_cast<std::size_t>(k - 1)] * t.sup()[static_cast<std::size_t>(k - 1)]
                               : 0.0;
        const double dk = std::fma(t.diag()[static_cast<std::size_t>(k)], dkm1, -(p * dkm2));
        dkm2 = dkm1;
        dkm1 = dk;
        if (dkm1 != 0.0) {
            const int e = std::ilogb(dkm1);
            if (e > 500 || e < -500) {
                dkm1 = std::scalbn(dkm1, -e);
                dkm2 = std::scalbn(dkm2, -e);
                exponent += e;
            }
        }
    }
    return std::scalbn(dkm1, static_cast<int>(std::clamp(exponent, -200000L, 200000L)));
}

} // namespace platoon
