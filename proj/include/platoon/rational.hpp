#pragma once

#include <complex>

#include "platoon/polynomial.hpp"

namespace platoon {

/// Ratio of two real polynomials. The regular constructor cancels a common s^k
/// factor shared by numerator and denominator; nothing else is cancelled (no
/// polynomial GCD). raw() keeps the operands exactly as given, which is what the
/// product-form algebra relies on.
class RationalFunction {
public:
    RationalFunction() : num_{}, den_{1.0} {}
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction raw(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    // Unchecked pointwise evaluation; divides by zero at poles.
    std::complex<double> operator()(std::complex<double> s) const { return num_(s) / den_(s); }

private:
    RationalFunction(Polynomial num, Polynomial den, int) : num_(std::move(num)), den_(std::move(den)) {}
    Polynomial num_, den_;
};

// Value at s = j*omega with a guard: a denominator that vanishes relative to its
// coefficient scale means a pole on the imaginary axis, reported as NumericalError.
std::complex<double> eval_freq(const RationalFunction& r, double omega);

} // namespace platoon
