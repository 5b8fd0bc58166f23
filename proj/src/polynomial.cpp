#include "platoon/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

namespace {
double max_abs(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    return m;
}
} // namespace

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }
Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    const double thresh = kCoeffZeroRel * max_abs(coeffs_);
    while (!coeffs_.empty() && std::fabs(coeffs_.back()) <= thresh) coeffs_.pop_back();
}

int Polynomial::low_order() const {
    if (coeffs_.empty()) return 0;
    const double thresh = kCoeffZeroRel * max_abs(coeffs_);
    int k = 0;
    while (k < static_cast<int>(coeffs_.size()) && std::fabs(coeffs_[k]) <= thresh) ++k;
    return k;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::magnitude_bound(double abs_s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * abs_s + std::fabs(*it);
    return acc;
}

Polynomial Polynomial::shifted_up(int k) const {
    if (k < 0) throw ValidationError("shifted_up: negative shift");
    if (coeffs_.empty()) return {};
    std::vector<double> c(coeffs_.size() + static_cast<std::size_t>(k), 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + k);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted_down(int k) const {
    if (k < 0) throw ValidationError("shifted_down: negative shift");
    if (k == 0) return *this;
    if (low_order() < k) throw ValidationError("shifted_down: polynomial has no s^k factor");
    std::vector<double> c(coeffs_.begin() + k, coeffs_.end());
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) { return add_scaled(a, 1.0, b); }
Polynomial operator-(const Polynomial& a, const Polynomial& b) { return add_scaled(a, -1.0, b); }

Polynomial add_scaled(const Polynomial& a, double s, const Polynomial& b) {
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    std::vector<double> c(std::max(ca.size(), cb.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        double va = k < ca.size() ? ca[k] : 0.0;
        double vb = k < cb.size() ? cb[k] : 0.0;
        c[k] = std::fma(s, vb, va);
    }
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    std::vector<double> c(ca.size() + cb.size() - 1, 0.0);
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j) c[i + j] += ca[i] * cb[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> c = p.coefficients();
    for (double& v : c) v *= s;
    return Polynomial(std::move(c));
}

std::vector<std::complex<double>> roots(const Polynomial& p) {
    if (p.is_zero()) throw ValidationError("roots: zero polynomial");
    const int zeros_at_origin = p.low_order();
    Polynomial q = p.shifted_down(zeros_at_origin);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(zeros_at_origin),
                                          std::complex<double>(0.0, 0.0));
    const int n = q.degree();
    if (n >= 1) {
        const auto& c = q.coefficients();
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        if (es.info() != Eigen::Success) throw NumericalError("roots: eigensolver failed");
        for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    }
    return out;
}

} // namespace platoon
