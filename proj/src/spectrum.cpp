#include "platoon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

// Eigenvalues of d with squared off-diagonals e2 strictly below x (Sturm count).
int count_below(const std::vector<double>& d, const std::vector<double>& e2, double x, double pivmin) {
    int cnt = 0;
    double q = 1.0;
    const std::size_t m = d.size();
    for (std::size_t i = 0; i < m; ++i) {
        q = d[i] - x - (i > 0 ? e2[i - 1] / q : 0.0);
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++cnt;
    }
    return cnt;
}

void block_eigenvalues(const std::vector<double>& d, const std::vector<double>& e,
                       const std::vector<double>& e2, std::vector<double>& out) {
    const std::size_t m = d.size();
    double glo = std::numeric_limits<double>::infinity();
    double ghi = -glo;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = (i > 0 ? e[i - 1] : 0.0) + (i + 1 < m ? e[i] : 0.0);
        glo = std::min(glo, d[i] - r);
        ghi = std::max(ghi, d[i] + r);
    }
    const double scale = std::max({std::fabs(glo), std::fabs(ghi), 1e-30});
    const double pad = 1e-12 * scale + std::numeric_limits<double>::min();
    glo -= pad;
    ghi += pad;
    double maxe2 = 1.0;
    for (double v : e2) maxe2 = std::max(maxe2, v);
    const double pivmin = std::numeric_limits<double>::min() * maxe2;

    double prev = glo;
    for (std::size_t k = 0; k < m; ++k) {
        // Eigenvalues come out ascending, so the previous one seeds the bracket.
        double a = k == 0 ? glo : std::max(glo, prev - (1e-8 * scale + 1e-12 * std::fabs(prev)));
        double b = ghi;
        while (b - a > 1e-14 * std::max(std::fabs(a), std::fabs(b)) + 1e-280) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break; // interval at floating point resolution
            if (count_below(d, e2, mid, pivmin) <= static_cast<int>(k))
                a = mid;
            else
                b = mid;
        }
        prev = 0.5 * (a + b);
        out.push_back(prev);
    }
}

} // namespace

SpectralData spectrum(const Tridiagonal& t) {
    const auto& sub = t.sub();
    const auto& sup = t.sup();
    for (std::size_t k = 0; k < sub.size(); ++k)
        if (sub[k] * sup[k] < 0.0)
            throw ValidationError("spectrum: negative off-diagonal product, eigenvalues not real");

    SpectralData sd;
    double ub = 0.0;
    for (auto [i0, i1] : t.blocks()) {
        if (i1 - i0 == 1) {
            const double v = t.diag()[static_cast<std::size_t>(i0)];
            sd.eigenvalues.push_back(v);
            ub = std::max(ub, v);
            continue;
        }
        std::vector<double> d(t.diag().begin() + i0, t.diag().begin() + i1);
        std::vector<double> e, e2;
        for (int k = i0; k + 1 < i1; ++k) {
            const double p = sub[static_cast<std::size_t>(k)] * sup[static_cast<std::size_t>(k)];
            e2.push_back(p);
            e.push_back(std::sqrt(p));
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double r = (i > 0 ? e[i - 1] : 0.0) + (i + 1 < d.size() ? e[i] : 0.0);
            ub = std::max(ub, d[i] + r);
        }
        block_eigenvalues(d, e, e2, sd.eigenvalues);
    }
    std::sort(sd.eigenvalues.begin(), sd.eigenvalues.end());
    sd.upper_bound = ub;
    return sd;
}

std::pair<std::optional<double>, double> spectral_bounds(const PlatoonGraph& g) {
    const double em = g.eps_max();
    const double upper = 2.0 * (1.0 + em);
    if (em < 1.0) return {0.5 * (1.0 - em) * (1.0 - em) / (1.0 + em), upper};
    return {std::nullopt, upper};
}

SpectralData reduced_spectrum(const PlatoonGraph& g) {
    SpectralData sd = spectrum(reduce_leader(build_laplacian(g)));
    auto [lo, hi] = spectral_bounds(g);
    sd.lower_bound = lo;
    sd.upper_bound = hi;
    return sd;
}

bool check_interlacing(const SpectralData& outer, const SpectralData& inner, double tol) {
    const int n = static_cast<int>(outer.eigenvalues.size());
    const int m = static_cast<int>(inner.eigenvalues.size());
    if (m > n) throw ValidationError("check_interlacing: inner spectrum larger than outer");
    const int k = n - m;
    if (k == 0) {
        for (int j = 0; j < m; ++j)
            if (std::fabs(inner.eigenvalues[j] - outer.eigenvalues[j]) > tol) return false;
        return true;
    }
    // One deletion constrains lambda_j <= mu_j <= lambda_{j+2} for j <= n-2 (1-based);
    // k deletions compose to the index windows below.
    for (int j = 1; j <= m; ++j) {
        const double mu = inner.eigenvalues[static_cast<std::size_t>(j - 1)];
        if (j <= n - k - 1 && mu < outer.eigenvalues[static_cast<std::size_t>(j - 1)] - tol) return false;
        if (j + 2 * k <= n && mu > outer.eigenvalues[static_cast<std::size_t>(j + 2 * k - 1)] + tol) return false;
    }
    return true;
}

} // namespace platoon
