#include "platoon/routh.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "platoon/errors.hpp"

namespace platoon {

namespace {
constexpr double kSignMargin = 1e-9;

double row_scale(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    for (double v : b) m = std::max(m, std::fabs(v));
    return m;
}
} // namespace

bool hurwitz(const Polynomial& p) {
    if (p.is_zero()) throw ValidationError("hurwitz: zero polynomial");
    const int n = p.degree();
    if (n == 0) return true;

    // Descending coefficients, normalized so the leading one is positive.
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    const double sign = p.leading() > 0.0 ? 1.0 : -1.0;
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(n - k)] = sign * p.coeff(static_cast<std::size_t>(k));

    std::vector<double> upper, lower;
    for (std::size_t k = 0; k < c.size(); k += 2) upper.push_back(c[k]);
    for (std::size_t k = 1; k < c.size(); k += 2) lower.push_back(c[k]);

    // First column must stay strictly positive, never inside the sign margin.
    double scale = row_scale(upper, lower);
    if (upper[0] <= kSignMargin * scale) return false;
    while (!lower.empty()) {
        scale = row_scale(upper, lower);
        const double pivot = lower[0];
        if (std::fabs(pivot) <= kSignMargin * scale || pivot < 0.0) return false;
        std::vector<double> next;
        const std::size_t len = std::max(upper.size(), lower.size() + 1) - 1;
        for (std::size_t i = 0; i + 1 <= len; ++i) {
            const double a = i + 1 < upper.size() ? upper[i + 1] : 0.0;
            const double b = i + 1 < lower.size() ? lower[i + 1] : 0.0;
            next.push_back((pivot * a - upper[0] * b) / pivot);
        }
        while (!next.empty() && next.back() == 0.0) next.pop_back();
        upper = std::move(lower);
        lower = std::move(next);
    }
    return true;
}

} // namespace platoon
