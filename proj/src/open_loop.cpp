#include "platoon/open_loop.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

std::complex<double> OpenLoop::at(double omega) const {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> dv = denominator(s);
    if (std::abs(dv) <= 1e-12 * denominator.magnitude_bound(std::fabs(omega)))
        throw NumericalError("open loop evaluated at one of its imaginary-axis poles");
    return numerator(s) / dv;
}

int type_number(const RationalFunction& m) {
    if (m.num().is_zero()) throw ValidationError("type number of an identically zero transfer function");
    return std::max(0, m.den().low_order() - m.num().low_order());
}

OpenLoop compose_open_loop(const RationalFunction& plant, const RationalFunction& controller) {
    OpenLoop m;
    m.plant = plant;
    m.controller = controller;
    m.numerator = plant.num() * controller.num();
    m.denominator = plant.den() * controller.den();
    if (m.numerator.is_zero()) throw ValidationError("open loop is identically zero");
    m.combined = RationalFunction::raw(m.numerator, m.denominator);
    const int a = m.numerator.low_order();
    const int b = m.denominator.low_order();
    m.type_number = std::max(0, b - a);
    m.residual = RationalFunction::raw(m.numerator.shifted_down(a), m.denominator.shifted_down(b));
    return m;
}

RationalFunction closed_loop_block(const OpenLoop& m, double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("closed_loop_block: lambda must be positive");
    return RationalFunction::raw(lambda * m.numerator, add_scaled(m.denominator, lambda, m.numerator));
}

RationalFunction zero_block(const OpenLoop& m, double gamma, double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("zero_block: lambda must be positive");
    if (gamma < 0.0) throw ValidationError("zero_block: gamma must be nonnegative");
    return RationalFunction::raw(add_scaled(m.denominator, gamma, m.numerator),
                                 add_scaled(m.denominator, lambda, m.numerator));
}

} // namespace platoon
