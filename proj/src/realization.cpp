#include "platoon/realization.hpp"

#include <algorithm>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

struct Canon {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;
};

// Controllable canonical form of num/den with den normalized monic.
// Caller guarantees num.degree() <= den.degree() and den nonzero.
Canon canonical(const Polynomial& num, const Polynomial& den) {
    const int n = den.degree();
    const double scale = den.leading();
    Canon c;
    if (n <= 0) {
        c.A.resize(0, 0);
        c.B.resize(0);
        c.C.resize(0);
        c.D = num.coeff(0) / scale;
        return c;
    }
    c.D = num.degree() == n ? num.coeff(n) / scale : 0.0;
    c.A.setZero(n, n);
    for (int i = 0; i + 1 < n; ++i) c.A(i, i + 1) = 1.0;
    for (int k = 0; k < n; ++k) c.A(n - 1, k) = -den.coeff(k) / scale;
    c.B.setZero(n);
    c.B(n - 1) = 1.0;
    // With B = e_n the state transfers are s^k / (den/scale); matching
    // num/den = D + C (sI-A)^{-1} B fixes C_k = (num_k - D*den_k)/scale.
    c.C.resize(n);
    for (int k = 0; k < n; ++k) c.C(k) = (num.coeff(k) - c.D * den.coeff(k)) / scale;
    return c;
}

} // namespace

AgentRealization realize(const OpenLoop& m) {
    if (m.numerator.degree() > m.denominator.degree())
        throw ValidationError("controller makes open loop improper; not simulatable as state space");

    const Polynomial& cn = m.controller.num();
    const Polynomial& cd = m.controller.den();
    AgentRealization r;

    if (cn.degree() <= cd.degree()) {
        const Polynomial& pn = m.plant.num();
        const Polynomial& pd = m.plant.den();
        if (pn.degree() > pd.degree())
            throw ValidationError("improper plant; not simulatable as state space");
        const Canon cc = canonical(cn, cd);
        const Canon cp = canonical(pn, pd);
        const int a = static_cast<int>(cc.A.rows());
        const int b = static_cast<int>(cp.A.rows());
        r.A.setZero(a + b, a + b);
        r.A.topLeftCorner(a, a) = cc.A;
        r.A.bottomRightCorner(b, b) = cp.A;
        r.A.bottomLeftCorner(b, a) = cp.B * cc.C;
        r.B.resize(a + b);
        r.B.head(a) = cc.B;
        r.B.tail(b) = cp.B * cc.D;
        r.C.resize(a + b);
        r.C.head(a) = cp.D * cc.C;
        r.C.tail(b) = cp.C;
        r.D = cp.D * cc.D;
        r.Cu.setZero(a + b);
        r.Cu.head(a) = cc.C;
        r.Du = cc.D;
        r.has_effort_tap = true;
        return r;
    }

    // Improper controller, e.g. a pure PD law. The loop itself is still
    // proper (checked above), so realize the combined quotient and keep the
    // controller coefficients for reconstructing u from input derivatives.
    if (cd.degree() > 0)
        throw ValidationError(
            "improper controller with a dynamic denominator has no causal control effort");
    const double d0 = cd.coeff(0);
    const Canon cm = canonical(m.numerator, m.denominator);
    r.A = cm.A;
    r.B = cm.B;
    r.C = cm.C;
    r.D = cm.D;
    r.effort_chain_q.resize(static_cast<std::size_t>(cn.degree()) + 1);
    for (int k = 0; k <= cn.degree(); ++k)
        r.effort_chain_q[static_cast<std::size_t>(k)] = cn.coeff(k) / d0;
    return r;
}

} // namespace platoon
