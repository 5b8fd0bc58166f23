#include "platoon/platoon_system.hpp"

#include "platoon/errors.hpp"

namespace platoon {

PlatoonSystem assemble_platoon(const PlatoonGraph& g, const AgentRealization& a, LeaderMode mode) {
    const int n = g.n;
    const int na = mode == LeaderMode::driven ? n : n - 1;
    const int ns = a.states();
    const int nx = na * ns;
    const int ni = n; // r_1..r_N, or r_2..r_N plus the leader position

    const Eigen::MatrixXd L = build_laplacian(g).dense();

    Eigen::MatrixXd Lc; // couples agent positions into agent errors
    Eigen::VectorXd lw; // exogenous only: couples the leader position in
    if (mode == LeaderMode::driven) {
        Lc = L;
    } else {
        Lc = L.block(1, 1, na, na);
        lw = L.block(1, 0, na, 1);
    }

    // Feedthrough algebraic loop: e = -Lc*x - lw*w + r with x = C*X + D*e
    // resolves to e = K*(-Lc*C_blk*X - lw*w + r).
    Eigen::MatrixXd K;
    {
        const Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(na, na) + a.D * Lc;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(loop);
        if (!lu.isInvertible())
            throw NumericalError("feedthrough algebraic loop (I + L*D) is singular");
        K = lu.inverse();
    }

    Eigen::MatrixXd A_blk = Eigen::MatrixXd::Zero(nx, nx);
    Eigen::MatrixXd B_blk = Eigen::MatrixXd::Zero(nx, na);
    Eigen::MatrixXd C_blk = Eigen::MatrixXd::Zero(na, nx);
    Eigen::MatrixXd Cu_blk = Eigen::MatrixXd::Zero(na, nx);
    for (int i = 0; i < na; ++i) {
        A_blk.block(i * ns, i * ns, ns, ns) = a.A;
        B_blk.block(i * ns, i, ns, 1) = a.B;
        C_blk.block(i, i * ns, 1, ns) = a.C;
        if (a.has_effort_tap) Cu_blk.block(i, i * ns, 1, ns) = a.Cu;
    }

    PlatoonSystem p;
    p.mode = mode;
    p.n = n;
    p.agents = na;
    p.agent_states = ns;

    Eigen::MatrixXd E = -K * Lc * C_blk;
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(na, ni);
    if (mode == LeaderMode::driven) {
        F = K;
    } else {
        F.leftCols(na) = K;
        F.col(ni - 1) = -K * lw;
    }

    p.A = A_blk + B_blk * E;
    p.B = B_blk * F;

    const Eigen::MatrixXd Cx = C_blk + a.D * E;
    const Eigen::MatrixXd Dx = a.D * F;
    p.positions.C = Eigen::MatrixXd::Zero(n, nx);
    p.positions.D = Eigen::MatrixXd::Zero(n, ni);
    if (mode == LeaderMode::driven) {
        p.positions.C = Cx;
        p.positions.D = Dx;
    } else {
        p.positions.C.bottomRows(na) = Cx;
        p.positions.D.bottomRows(na) = Dx;
        p.positions.D(0, ni - 1) = 1.0; // x_1 is the exogenous signal itself
    }

    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n - 1, n);
    for (int i = 0; i + 1 < n; ++i) {
        S(i, i) = 1.0;
        S(i, i + 1) = -1.0;
    }
    p.deltas.C = S * p.positions.C;
    p.deltas.D = S * p.positions.D;

    p.efforts.C = Eigen::MatrixXd::Zero(n, nx);
    p.efforts.D = Eigen::MatrixXd::Zero(n, ni);
    if (a.has_effort_tap) {
        const Eigen::MatrixXd Cu = Cu_blk + a.Du * E;
        const Eigen::MatrixXd Du = a.Du * F;
        if (mode == LeaderMode::driven) {
            p.efforts.C = Cu;
            p.efforts.D = Du;
        } else {
            p.efforts.C.bottomRows(na) = Cu; // the leader row stays zero
            p.efforts.D.bottomRows(na) = Du;
        }
    } else {
        p.effort_via_chain = true;
    }
    p.chain_E = E;
    p.chain_F = F;
    p.chain_q = a.effort_chain_q;

    p.reference_offset = Eigen::VectorXd::Zero(ni);
    for (int i = 2; i <= n; ++i) {
        const double r = i < n ? -1.0 + g.eps(i) : -1.0;
        p.reference_offset(mode == LeaderMode::driven ? i - 1 : i - 2) = r;
    }
    return p;
}

std::complex<double> freq_response_direct(const PlatoonSystem& p, int c, int o, double omega) {
    if (o < 1 || o > p.n) throw ValidationError("output vehicle out of range");
    if (c < 1 || c > p.n) throw ValidationError("input vehicle out of range");
    const int col = p.mode == LeaderMode::driven ? c - 1
                    : c == 1                     ? p.inputs() - 1
                                                 : c - 2;
    const int nx = p.states();
    const std::complex<double> jw(0.0, omega);
    Eigen::MatrixXcd R = jw * Eigen::MatrixXcd::Identity(nx, nx) - p.A.cast<std::complex<double>>();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(R);
    if (!lu.isInvertible())
        throw NumericalError("resolvent singular: j*omega is an eigenvalue of the assembled system");
    const Eigen::VectorXcd z = lu.solve(p.B.col(col).cast<std::complex<double>>());
    std::complex<double> val = p.positions.D(o - 1, col);
    val += (p.positions.C.row(o - 1).cast<std::complex<double>>() * z).value();
    return val;
}

} // namespace platoon
