#include "platoon/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"
#include "platoon/stability.hpp"

namespace platoon {

namespace {

// Complex product with a power-of-two exponent carried separately.
struct ScaledProduct {
    std::complex<double> m{1.0, 0.0};
    long e = 0;

    void mul(std::complex<double> f) {
        m *= f;
        const double a = std::max(std::fabs(m.real()), std::fabs(m.imag()));
        if (a == 0.0) return;
        const int k = std::ilogb(a);
        if (k > 200 || k < -200) {
            m = {std::scalbn(m.real(), -k), std::scalbn(m.imag(), -k)};
            e += k;
        }
    }

    std::complex<double> over(const ScaledProduct& o) const {
        std::complex<double> r = m / o.m;
        const int k = static_cast<int>(std::clamp(e - o.e, -4000L, 4000L));
        return {std::scalbn(r.real(), k), std::scalbn(r.imag(), k)};
    }
};

void check_follower_pair(const PlatoonGraph& g, int c, int o) {
    if (c < 2 || c > g.n) throw ValidationError("control vehicle index must be in [2, n]");
    if (o < 2 || o > g.n) throw ValidationError("output vehicle index must be in [2, n]");
}

// Nonzero eigenvalues of the path-deleted Laplacian. The leader splits off as a
// 1x1 block and contributes one exact zero; drop the entry closest to zero and
// insist it really is the leader mode.
std::vector<double> leader_free_path_spectrum(const Tridiagonal& l, int c, int o) {
    SpectralData sd = spectrum(delete_path(l, c, o));
    if (sd.eigenvalues.empty()) throw NumericalError("path spectrum: empty");
    size_t zi = 0;
    for (size_t i = 1; i < sd.eigenvalues.size(); ++i)
        if (std::fabs(sd.eigenvalues[i]) < std::fabs(sd.eigenvalues[zi])) zi = i;
    if (std::fabs(sd.eigenvalues[zi]) > 1e-9)
        throw NumericalError("path spectrum: leader mode not found");
    std::vector<double> out;
    for (size_t i = 0; i < sd.eigenvalues.size(); ++i)
        if (i != zi) out.push_back(sd.eigenvalues[i]);
    return out;
}

} // namespace

std::complex<double> AssembledTransfer::value(double omega) const {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> nv = open_loop.numerator(s);
    const std::complex<double> dv = open_loop.denominator(s);
    ScaledProduct num, den;
    for (int k = 0; k < extra_numerator_power; ++k) num.mul(nv);
    for (double gm : zero_gammas) num.mul(dv + gm * nv);
    for (double lm : pole_lambdas) den.mul(dv + lm * nv);
    if (leader_included) {
        num.mul(nv);
        den.mul(dv);
    }
    return weight * num.over(den);
}

double AssembledTransfer::dc_gain() const {
    double num = 1.0, den = 1.0;
    for (double gm : zero_gammas) num *= gm;
    for (double lm : pole_lambdas) den *= lm;
    return weight * num / den;
}

AssembledTransfer assemble_transfer(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                    bool include_leader) {
    check_follower_pair(g, c, o);
    const Tridiagonal l = build_laplacian(g);
    SpectralData reduced = spectrum(reduce_leader(l));

    StabilityCertificate cert = formation_stability(m, reduced.eigenvalues);
    if (!cert.all_stable) throw InstabilityError(std::move(cert));

    AssembledTransfer t;
    t.open_loop = m;
    t.weight = path_weight(g, c, o);
    t.pole_lambdas = std::move(reduced.eigenvalues);
    t.zero_gammas = leader_free_path_spectrum(l, c, o);
    t.distance = std::abs(c - o);
    t.extra_numerator_power = t.distance + 1;
    t.leader_included = include_leader;

    if (static_cast<int>(t.zero_gammas.size()) != g.n - t.distance - 2)
        throw NumericalError("assemble_transfer: unexpected zero count");
    return t;
}

double dc_gain_spectral(const PlatoonGraph& g, int c, int o) {
    check_follower_pair(g, c, o);
    const Tridiagonal l = build_laplacian(g);
    double num = 1.0, den = 1.0;
    for (double gm : leader_free_path_spectrum(l, c, o)) num *= gm;
    for (double lm : spectrum(reduce_leader(l)).eigenvalues) den *= lm;
    return path_weight(g, c, o) * num / den;
}

double dc_gain_closed(const PlatoonGraph& g, int c, int o) {
    check_follower_pair(g, c, o);
    const int k = std::min(c, o);
    double sum = 1.0, prod = 1.0;
    for (int i = 1; i <= k - 2; ++i) {
        prod *= g.eps(k - i);
        sum += prod;
    }
    return path_weight(g, c, o) * sum;
}

double dc_gain_distance(const PlatoonGraph& g, int c, int o) {
    check_follower_pair(g, c, o);
    // x_1 does not respond to follower inputs, so the o = 2 error reads -x_2.
    const double ahead = o == 2 ? 0.0 : dc_gain_closed(g, c, o - 1);
    return ahead - dc_gain_closed(g, c, o);
}

std::complex<double> NeighborRatio::value(double omega) const {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> nv = open_loop.numerator(s);
    const std::complex<double> dv = open_loop.denominator(s);
    ScaledProduct num, den;
    (numerator_ncn_power >= 0 ? num : den).mul(nv);
    for (double gm : numerator_gammas) num.mul(dv + gm * nv);
    for (double gm : denominator_gammas) den.mul(dv + gm * nv);
    return weight * num.over(den);
}

double NeighborRatio::dc_gain() const {
    double num = 1.0, den = 1.0;
    for (double gm : numerator_gammas) num *= gm;
    for (double gm : denominator_gammas) den *= gm;
    return weight * num / den;
}

NeighborRatio neighbor_ratio(const PlatoonGraph& g, const OpenLoop& m, int c, int o) {
    return propagation_ratio(g, m, c, o, o >= c);
}

NeighborRatio propagation_ratio(const PlatoonGraph& g, const OpenLoop& m, int c, int o,
                                bool rearward) {
    check_follower_pair(g, c, o);
    if (o < 3) throw ValidationError("neighbor ratio: vehicle ahead of o must be a follower");
    if (rearward && o < c) throw ValidationError("rearward ratio needs o >= c");
    if (!rearward && o > c) throw ValidationError("frontward ratio needs o <= c");
    const Tridiagonal l = build_laplacian(g);
    NeighborRatio r;
    r.open_loop = m;
    r.forward = rearward;
    r.output_vehicle = o;
    r.control_vehicle = c;
    // Weight quotients cancel by index too, so a zero edge weight inside the
    // common stretch never turns into 0/0.
    const int nveh = rearward ? o : o - 1;
    const int dveh = rearward ? o - 1 : o;
    if (!rearward) {
        r.weight = g.eps(o - 1);
    } else if (o > c) {
        r.weight = 1.0;
    } else {
        if (g.eps(c - 1) == 0.0)
            throw ValidationError("neighbor ratio: x_c/x_{c-1} is unbounded when eps_{c-1} = 0");
        r.weight = 1.0 / g.eps(c - 1);
    }
    r.numerator_ncn_power = std::abs(nveh - c) - std::abs(dveh - c); // +1, or -1 at o == c rearward
    r.numerator_gammas = leader_free_path_spectrum(l, c, nveh);
    r.denominator_gammas = leader_free_path_spectrum(l, c, dveh);
    return r;
}

} // namespace platoon
