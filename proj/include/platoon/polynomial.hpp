#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace platoon {

/// Real polynomial in s, stored by ascending powers: coefficients()[k] multiplies s^k.
/// Construction trims high-order coefficients that are zero relative to the largest
/// coefficient magnitude, so degree() reflects the leading nonzero term.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coefficients() const { return coeffs_; }
    // Coefficient of s^k, zero beyond the stored degree.
    double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for the zero polynomial
    bool is_zero() const { return coeffs_.empty(); }
    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

    // Multiplicity of the root at s = 0; 0 for the zero polynomial.
    int low_order() const;

    std::complex<double> operator()(std::complex<double> s) const;
    double operator()(double s) const;

    // Sum of |c_k| |s|^k, used to judge whether an evaluation is effectively zero.
    double magnitude_bound(double abs_s) const;

    Polynomial shifted_up(int k) const;   // multiply by s^k
    Polynomial shifted_down(int k) const; // divide by s^k; requires low_order() >= k

private:
    void trim();
    std::vector<double> coeffs_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(double s, const Polynomial& p);

// a + s*b without forming the intermediate scaled polynomial.
Polynomial add_scaled(const Polynomial& a, double s, const Polynomial& b);

// All complex roots via the companion matrix. Roots at the origin are split off
// exactly first so they do not pick up rounding noise.
std::vector<std::complex<double>> roots(const Polynomial& p);

// Relative threshold below which a coefficient counts as an exact zero.
inline constexpr double kCoeffZeroRel = 1e-12;

} // namespace platoon
