#include "platoon/rational.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"

namespace platoon {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("rational function with zero denominator");
    if (!num_.is_zero()) {
        int k = std::min(num_.low_order(), den_.low_order());
        if (k > 0) {
            num_ = num_.shifted_down(k);
            den_ = den_.shifted_down(k);
        }
    }
}

RationalFunction RationalFunction::raw(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw ValidationError("rational function with zero denominator");
    return RationalFunction(std::move(num), std::move(den), 0);
}

std::complex<double> eval_freq(const RationalFunction& r, double omega) {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> dv = r.den()(s);
    const double scale = r.den().magnitude_bound(std::fabs(omega));
    if (std::abs(dv) <= 1e-12 * scale)
        throw NumericalError("eval_freq: marginal evaluation, pole on the imaginary axis");
    return r.num()(s) / dv;
}

} // namespace platoon
