#include "platoon/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "platoon/errors.hpp"
#include "platoon/hinf.hpp"
#include "platoon/stability.hpp"

namespace platoon {

namespace {

// |T_lambda(j omega0)| with M(j omega0) precomputed.
double t_mag(std::complex<double> mw, double lambda) {
    const std::complex<double> lm = lambda * mw;
    return std::abs(lm / (1.0 + lm));
}

} // namespace

double ScalingCertificate::predicted_lower_bound(double dc_gain, int distance) const {
    if (!valid) throw ValidationError("scaling certificate invalid: no exponential bound");
    return (*xi) * (*xi) * std::fabs(dc_gain) * std::pow(*zeta, distance);
}

ScalingCertificate scaling_certificate(const OpenLoop& m, double lambda_min, double lambda_max,
                                       int grid) {
    if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
        throw ValidationError("scaling certificate needs 0 < lambda_min <= lambda_max");
    if (grid < 2) throw ValidationError("scaling certificate needs a grid of at least 2");

    ScalingCertificate cert;
    cert.lambda_min = lambda_min;
    cert.lambda_max = lambda_max;

    const double span = lambda_max - lambda_min;
    std::vector<double> lambdas(grid);
    for (int i = 0; i < grid; ++i)
        lambdas[i] = span == 0.0 ? lambda_min : lambda_min + span * i / (grid - 1);

    {
        StabilityCertificate sc = formation_stability(m, lambdas, 1);
        if (!sc.all_stable) throw InstabilityError(std::move(sc));
    }

    HinfResult peak = hinf(evaluator(closed_loop_block(m, lambda_min)));
    cert.peak_norm = peak.norm;
    cert.omega0 = peak.peak_frequency;
    cert.valid = peak.norm > 1.0;
    if (!cert.valid) return cert;
    if (!(cert.omega0 > 0.0) || !std::isfinite(cert.omega0))
        throw NumericalError("scaling certificate: peak not at an interior frequency");

    const std::complex<double> mw = m.at(cert.omega0);

    // zeta: sweep |T_lambda| over the interval, then shrink the bracket around the
    // smallest sample. The function of lambda is smooth, so golden section on the
    // two neighbouring cells converges fast.
    double zeta = std::numeric_limits<double>::infinity();
    int zi = 0;
    cert.t_samples.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double v = t_mag(mw, lambdas[i]);
        cert.t_samples.emplace_back(lambdas[i], v);
        if (v < zeta) {
            zeta = v;
            zi = static_cast<int>(i);
        }
    }
    if (span > 0.0) {
        constexpr double kInvPhi = 0.6180339887498949;
        double a = lambdas[std::max(zi - 1, 0)];
        double b = lambdas[std::min<std::size_t>(zi + 1, lambdas.size() - 1)];
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = t_mag(mw, c), fd = t_mag(mw, d);
        while (b - a > 1e-12 * lambda_max) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = t_mag(mw, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = t_mag(mw, d);
            }
            zeta = std::min(zeta, std::min(fc, fd));
        }
    }
    cert.zeta = zeta;

    // xi: box minimum of |Z_{gamma,lambda}(j omega0)| / |Z_{gamma,lambda}(0)|,
    // clamped into (0, 1]. Grid only; conservative by construction.
    const double n0 = m.numerator(0.0), d0 = m.denominator(0.0);
    const std::complex<double> nw = m.numerator(std::complex<double>(0.0, cert.omega0));
    const std::complex<double> dw = m.denominator(std::complex<double>(0.0, cert.omega0));
    double xi = std::numeric_limits<double>::infinity();
    for (double gm : lambdas) {
        const std::complex<double> znum = dw + gm * nw;
        for (double lm : lambdas) {
            const double zmag = std::abs(znum) / std::abs(dw + lm * nw);
            const double zdc = m.type_number >= 1 ? gm / lm
                                                  : std::fabs((d0 + gm * n0) / (d0 + lm * n0));
            const double ratio = zmag / zdc;
            if (std::isfinite(ratio) && ratio < xi) xi = ratio;
        }
    }
    if (!std::isfinite(xi) || xi <= 0.0)
        throw NumericalError("scaling certificate: zero-block ratio degenerate on the grid");
    cert.xi = std::min(xi, 1.0);
    return cert;
}

std::string pairing_explanation(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                const ScalingCertificate& cert) {
    if (!cert.valid)
        return "certificate invalid: the closed loop at lambda_min does not amplify, "
               "no pairing applies\n";
    const AssembledTransfer t = assemble_transfer(g, m, c, o);
    const std::complex<double> mw = m.at(cert.omega0);

    std::string out;
    char line[256];
    std::snprintf(line, sizeof line,
                  "factor pairing at omega0 = %.6g (alpha_j = lambda_j * Re M = %.6g * lambda_j)\n",
                  cert.omega0, mw.real());
    out += line;

    std::vector<bool> used(t.pole_lambdas.size(), false);
    int guaranteed = 0;
    for (std::size_t i = 0; i < t.zero_gammas.size(); ++i) {
        const double gm = t.zero_gammas[i];
        // Interlacing gives gamma_i >= lambda_i and gamma_i <= lambda_{i+2} per
        // deleted row, so the natural partners are lambda_i (rising, far case)
        // and a lambda two slots up (rising, near case).
        bool paired = false;
        if (i < t.pole_lambdas.size() && !used[i]) {
            const double lm = t.pole_lambdas[i];
            const double alpha = lm * mw.real();
            if (alpha <= -1.0 && gm >= lm) {
                std::snprintf(line, sizeof line,
                              "  gamma[%zu] = %.6g paired with lambda[%zu] = %.6g  "
                              "(alpha = %.4g <= -1, gamma >= lambda: |Z| rises)\n",
                              i + 1, gm, i + 1, lm, alpha);
                out += line;
                used[i] = true;
                paired = true;
                ++guaranteed;
            }
        }
        if (!paired && i + 2 < t.pole_lambdas.size() && !used[i + 2]) {
            const double lm = t.pole_lambdas[i + 2];
            const double alpha = lm * mw.real();
            if (alpha > -1.0 && alpha <= -0.5 && gm <= lm) {
                std::snprintf(line, sizeof line,
                              "  gamma[%zu] = %.6g paired with lambda[%zu] = %.6g  "
                              "(-1 < alpha = %.4g <= -1/2, gamma <= lambda: |Z| rises)\n",
                              i + 1, gm, i + 3, lm, alpha);
                out += line;
                used[i + 2] = true;
                paired = true;
                ++guaranteed;
            }
        }
        if (!paired) {
            std::snprintf(line, sizeof line,
                          "  gamma[%zu] = %.6g left unmatched (covered by the xi bound)\n",
                          i + 1, gm);
            out += line;
        }
    }
    int closed_loop_factors = 0;
    for (std::size_t j = 0; j < t.pole_lambdas.size(); ++j) {
        if (used[j]) continue;
        ++closed_loop_factors;
        const double lm = t.pole_lambdas[j];
        std::snprintf(line, sizeof line,
                      "  lambda[%zu] = %.6g stays a closed-loop factor, |T| at omega0 = %.6g\n",
                      j + 1, lm, std::abs(lm * mw / (1.0 + lm * mw)));
        out += line;
    }
    std::snprintf(line, sizeof line,
                  "%d rising pairs, %d closed-loop factors (>= zeta = %.6g each), "
                  "unmatched blocks bounded below by xi = %.6g\n",
                  guaranteed, closed_loop_factors, *cert.zeta, *cert.xi);
    out += line;
    std::snprintf(line, sizeof line, "bound: xi^2 * dc * zeta^d = %.6g  (dc = %.6g, d = %d)\n",
                  cert.predicted_lower_bound(t.dc_gain(), t.distance), t.dc_gain(), t.distance);
    out += line;
    return out;
}

} // namespace platoon
