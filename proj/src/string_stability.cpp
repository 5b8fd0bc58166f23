#include "platoon/string_stability.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"
#include "platoon/hinf.hpp"
#include "platoon/spectrum.hpp"
#include "platoon/stability.hpp"

namespace platoon {

StringStabilityReport string_stability_check(const PlatoonGraph& g, const OpenLoop& m, int c,
                                             double tol) {
    if (c < 2 || c > g.n) throw ValidationError("input vehicle index must be in [2, n]");
    if (!(tol >= 0.0)) throw ValidationError("tolerance must be nonnegative");

    SpectralData sd = reduced_spectrum(g);
    {
        StabilityCertificate sc = formation_stability(m, sd.eigenvalues);
        if (!sc.all_stable) throw InstabilityError(std::move(sc));
    }

    StringStabilityReport rep;
    rep.tolerance = tol;
    rep.lambda_upper_bound = sd.upper_bound;
    rep.bound_block_stable = hurwitz(add_scaled(m.denominator, sd.upper_bound, m.numerator));
    if (rep.bound_block_stable) {
        rep.norm_at_bound = hinf(evaluator(closed_loop_block(m, sd.upper_bound))).norm;
        rep.condition_holds = std::fabs(rep.norm_at_bound - 1.0) <= tol;
    }

    rep.verdict = true;
    auto check = [&](int o, bool rearward) {
        const NeighborRatio r = propagation_ratio(g, m, c, o, rearward);
        const double norm = hinf(evaluator(r)).norm;
        rep.checked_ratios.push_back({o, rearward, norm});
        if (!(norm <= 1.0 + tol)) rep.verdict = false;
    };
    for (int o = 3; o <= c; ++o) check(o, false);
    for (int o = std::max(3, c + 1); o <= g.n; ++o) check(o, true);
    return rep;
}

PfReport pf_check(const OpenLoop& m) {
    const Polynomial closed_den = add_scaled(m.denominator, 1.0, m.numerator);
    {
        StabilityCertificate sc = formation_stability(m, std::vector<double>{1.0}, 1);
        if (!sc.all_stable) throw InstabilityError(std::move(sc));
    }

    PfReport rep;
    rep.norm = hinf(evaluator(closed_loop_block(m, 1.0))).norm;
    rep.unit_norm = std::fabs(rep.norm - 1.0) <= 1e-3;

    const auto poles = roots(closed_den);
    if (poles.empty()) {
        rep.positivity_necessary = true; // static loop, impulse response is an impulse
        rep.dominant_pole_real = rep.dominant_pole_separated = rep.no_real_zero_right_of_pole = true;
        return rep;
    }
    std::size_t di = 0;
    for (std::size_t i = 1; i < poles.size(); ++i)
        if (poles[i].real() > poles[di].real()) di = i;
    const double dom = poles[di].real();
    const double scale = std::max(1.0, std::fabs(dom));
    rep.dominant_pole = dom;
    rep.dominant_pole_real = std::fabs(poles[di].imag()) <= 1e-9 * scale;
    rep.dominant_pole_separated = true;
    for (std::size_t i = 0; i < poles.size(); ++i)
        if (i != di && poles[i].real() > dom - 1e-9 * scale) rep.dominant_pole_separated = false;

    rep.no_real_zero_right_of_pole = true;
    if (!m.numerator.is_zero() && m.numerator.degree() > 0)
        for (const auto& z : roots(m.numerator))
            if (std::fabs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)) && z.real() > dom)
                rep.no_real_zero_right_of_pole = false;

    rep.positivity_necessary =
        rep.dominant_pole_real && rep.dominant_pole_separated && rep.no_real_zero_right_of_pole;
    return rep;
}

} // namespace platoon
