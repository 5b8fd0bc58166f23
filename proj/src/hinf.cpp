#include "platoon/hinf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "platoon/errors.hpp"
#include "platoon/parallel.hpp"

namespace platoon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double m) { return std::isfinite(m) ? m : kInf; }

void push_root_magnitudes(const Polynomial& p, std::vector<double>& out) {
    if (p.is_zero() || p.degree() == 0) return;
    for (const auto& z : roots(p)) {
        const double a = std::abs(z);
        if (a > 0.0 && std::isfinite(a)) out.push_back(a);
    }
}

// Degree and log-magnitude of the leading coefficient, accumulated over a product
// of polynomial factors. Enough to read off the omega -> infinity limit.
struct LeadAccum {
    long deg = 0;
    double log_mag = 0.0;

    void mul(const Polynomial& p) {
        if (p.is_zero()) throw NumericalError("degenerate zero factor in a transfer product");
        deg += p.degree();
        log_mag += std::log(std::fabs(p.leading()));
    }
};

double hf_from_leads(double weight, const LeadAccum& num, const LeadAccum& den) {
    if (num.deg < den.deg) return 0.0;
    if (num.deg > den.deg) return kInf;
    return std::fabs(weight) * std::exp(num.log_mag - den.log_mag);
}

} // namespace

TransferEvaluator evaluator(const RationalFunction& r) {
    TransferEvaluator ev;
    ev.at = [r](double omega) { return eval_freq(r, omega); };
    if (r.num().is_zero()) {
        ev.at = [](double) { return std::complex<double>{0.0, 0.0}; };
        return ev;
    }
    const int nl = r.num().low_order(), dl = r.den().low_order();
    if (nl > dl)
        ev.dc_magnitude = 0.0;
    else if (nl < dl)
        ev.dc_magnitude = kInf;
    else
        ev.dc_magnitude = std::fabs(r.num().coeff(nl) / r.den().coeff(dl));
    const int nd = r.num().degree(), dd = r.den().degree();
    if (nd < dd)
        ev.hf_magnitude = 0.0;
    else if (nd > dd)
        ev.hf_magnitude = kInf;
    else
        ev.hf_magnitude = std::fabs(r.num().leading() / r.den().leading());
    push_root_magnitudes(r.num(), ev.corner_frequencies);
    push_root_magnitudes(r.den(), ev.corner_frequencies);
    return ev;
}

TransferEvaluator evaluator(const AssembledTransfer& t) {
    TransferEvaluator ev;
    ev.at = [t](double omega) { return t.value(omega); };
    ev.dc_magnitude = finite_or_inf(std::abs(t.value(0.0)));

    const Polynomial& nn = t.open_loop.numerator;
    const Polynomial& dd = t.open_loop.denominator;
    LeadAccum num, den;
    for (int k = 0; k < t.extra_numerator_power; ++k) num.mul(nn);
    push_root_magnitudes(nn, ev.corner_frequencies);
    push_root_magnitudes(dd, ev.corner_frequencies);
    for (double gm : t.zero_gammas) {
        const Polynomial b = add_scaled(dd, gm, nn);
        num.mul(b);
        push_root_magnitudes(b, ev.corner_frequencies);
    }
    for (double lm : t.pole_lambdas) {
        const Polynomial b = add_scaled(dd, lm, nn);
        den.mul(b);
        push_root_magnitudes(b, ev.corner_frequencies);
    }
    if (t.leader_included) {
        num.mul(nn);
        den.mul(dd);
    }
    ev.hf_magnitude = hf_from_leads(t.weight, num, den);
    return ev;
}

TransferEvaluator evaluator(const NeighborRatio& r) {
    TransferEvaluator ev;
    ev.at = [r](double omega) { return r.value(omega); };
    ev.dc_magnitude = finite_or_inf(std::abs(r.value(0.0)));

    const Polynomial& nn = r.open_loop.numerator;
    const Polynomial& dd = r.open_loop.denominator;
    LeadAccum num, den;
    (r.numerator_ncn_power >= 0 ? num : den).mul(nn);
    push_root_magnitudes(nn, ev.corner_frequencies);
    push_root_magnitudes(dd, ev.corner_frequencies);
    for (double gm : r.numerator_gammas) {
        const Polynomial b = add_scaled(dd, gm, nn);
        num.mul(b);
        push_root_magnitudes(b, ev.corner_frequencies);
    }
    for (double gm : r.denominator_gammas) {
        const Polynomial b = add_scaled(dd, gm, nn);
        den.mul(b);
        push_root_magnitudes(b, ev.corner_frequencies);
    }
    ev.hf_magnitude = hf_from_leads(r.weight, num, den);
    return ev;
}

HinfResult hinf(const TransferEvaluator& ev, int grid_points) {
    if (grid_points < 2) throw ValidationError("hinf: grid needs at least two points");
    if (!ev.at) throw ValidationError("hinf: evaluator has no response function");
    if (!std::isfinite(ev.dc_magnitude) || !std::isfinite(ev.hf_magnitude))
        throw NumericalError("hinf: response unbounded at a band edge (origin pole or improper growth)");

    double wref = 1.0;
    {
        double sum = 0.0;
        int cnt = 0;
        for (double c : ev.corner_frequencies)
            if (c > 0.0 && std::isfinite(c)) {
                sum += std::log(c);
                ++cnt;
            }
        if (cnt > 0) wref = std::exp(sum / cnt);
    }
    const double la = std::log(wref) - 3.0 * std::log(10.0);
    const double lb = std::log(wref) + 3.0 * std::log(10.0);
    const double lstep = (lb - la) / (grid_points - 1);

    std::vector<double> ws(grid_points), mags(grid_points);
    for (int i = 0; i < grid_points; ++i) ws[i] = std::exp(la + lstep * i);
    parallel_for(grid_points, [&](int i) { mags[i] = std::abs(ev.at(ws[i])); });
    for (double m : mags)
        if (!std::isfinite(m)) throw NumericalError("hinf: non-finite response on the grid");

    double best_m = ev.dc_magnitude, best_w = 0.0;
    int best_i = -1;
    for (int i = 0; i < grid_points; ++i)
        if (mags[i] > best_m) {
            best_m = mags[i];
            best_w = ws[i];
            best_i = i;
        }
    if (ev.hf_magnitude > best_m) {
        best_m = ev.hf_magnitude;
        best_w = kInf;
        best_i = -1;
    }

    HinfResult res;
    res.samples.reserve(grid_points + 1);
    res.samples.emplace_back(0.0, ev.dc_magnitude);
    for (int i = 0; i < grid_points; ++i) res.samples.emplace_back(ws[i], mags[i]);

    // Golden section around every local grid maximum, in log-omega. Keeping the
    // left interval on ties biases the reported peak toward smaller omega.
    auto refine_around = [&](int i) {
        constexpr double kInvPhi = 0.6180339887498949;
        double a = (i > 0) ? la + lstep * (i - 1) : la - lstep;
        double b = (i < grid_points - 1) ? la + lstep * (i + 1) : lb + lstep;
        auto g = [&](double t) {
            const double m = std::abs(ev.at(std::exp(t)));
            if (!std::isfinite(m)) throw NumericalError("hinf: non-finite response while refining");
            const double w = std::exp(t);
            if (m > best_m || (m == best_m && w < best_w)) {
                best_m = m;
                best_w = w;
            }
            return m;
        };
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = g(c), fd = g(d);
        while (b - a > 1e-9) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = g(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = g(d);
            }
        }
        res.refined = true;
    };
    for (int i = 0; i < grid_points; ++i) {
        const bool left_ok = (i == 0) || mags[i] >= mags[i - 1];
        const bool right_ok = (i == grid_points - 1) || mags[i] >= mags[i + 1];
        const bool strict = (i > 0 && mags[i] > mags[i - 1]) ||
                            (i < grid_points - 1 && mags[i] > mags[i + 1]) || grid_points == 1;
        if (left_ok && right_ok && (strict || i == best_i)) refine_around(i);
    }
    res.norm = best_m;
    res.peak_frequency = best_w;
    return res;
}

} // namespace platoon
