#include "platoon/classify.hpp"

#include <cmath>
#include <complex>

#include "platoon/errors.hpp"

namespace platoon {

PointClassification classify_frequency_point(const OpenLoop& m, double lambda,
                                             std::optional<double> gamma, double omega0) {
    if (!(omega0 > 0.0)) throw ValidationError("classification needs omega0 > 0");
    if (!(lambda > 0.0)) throw ValidationError("classification needs lambda > 0");
    if (gamma && !(*gamma >= 0.0)) throw ValidationError("gamma must be nonnegative");

    const std::complex<double> lm = lambda * m.at(omega0);
    PointClassification pc;
    pc.alpha = lm.real();
    pc.beta = lm.imag();
    pc.t_magnitude = std::abs(lm / (1.0 + lm));
    pc.on_boundary = std::fabs(pc.alpha + 0.5) <= 1e-12;
    pc.t_exceeds_one = !pc.on_boundary && pc.alpha < -0.5;
    pc.t_below_one = !pc.on_boundary && pc.alpha > -0.5;

    if (gamma) {
        pc.has_zero_block = true;
        const std::complex<double> gm = (*gamma / lambda) * lm;
        pc.z_magnitude = std::abs((1.0 + gm) / (1.0 + lm));
        // DC of the block: gamma/lambda with open-loop integrators, else the plain
        // ratio at s = 0 taken from the raw products.
        if (m.type_number >= 1) {
            pc.z_dc = *gamma / lambda;
        } else {
            const double n0 = m.numerator(0.0), d0 = m.denominator(0.0);
            pc.z_dc = std::fabs((d0 + *gamma * n0) / (d0 + lambda * n0));
        }
        pc.z_rises_far = pc.alpha <= -1.0 && *gamma >= lambda;
        pc.z_rises_near = pc.alpha > -1.0 && pc.alpha <= -0.5 && *gamma <= lambda;
        pc.z_falls = pc.alpha > -0.5 && *gamma >= lambda;
    }
    return pc;
}

} // namespace platoon
