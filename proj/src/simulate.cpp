#include "platoon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

int leader_column(const PlatoonSystem& p) {
    return p.mode == LeaderMode::driven ? 0 : p.inputs() - 1;
}

// Every supported excitation is affine in time, v(t) = v0 + t*v1, which is
// what lets the effort chain differentiate it exactly.
void build_input(const PlatoonSystem& p, const InputSpec& in, Eigen::VectorXd& v0,
                 Eigen::VectorXd& v1) {
    v0 = Eigen::VectorXd::Zero(p.inputs());
    v1 = Eigen::VectorXd::Zero(p.inputs());
    switch (in.kind) {
    case InputKind::zero:
        break;
    case InputKind::input_step:
        if (in.vehicle < 1 || in.vehicle > p.n)
            throw ValidationError("input vehicle out of range");
        if (p.mode == LeaderMode::exogenous && in.vehicle == 1)
            throw ValidationError(
                "vehicle 1 has no reference input when the leader position is exogenous");
        v0(p.mode == LeaderMode::driven ? in.vehicle - 1 : in.vehicle - 2) = in.amplitude;
        break;
    case InputKind::leader_step:
        v0(leader_column(p)) = in.amplitude;
        break;
    case InputKind::leader_ramp:
        v1(leader_column(p)) = in.amplitude;
        break;
    case InputKind::reference_offsets:
        v0 = in.amplitude * p.reference_offset;
        break;
    }
}

Eigen::VectorXd chain_efforts(const PlatoonSystem& p, const Eigen::VectorXd& X,
                              const Eigen::VectorXd& vt, const Eigen::VectorXd& v1) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(p.agents);
    Eigen::VectorXd Xk = X;
    Eigen::VectorXd vk = vt;
    for (std::size_t k = 0; k < p.chain_q.size(); ++k) {
        u += p.chain_q[k] * (p.chain_E * Xk + p.chain_F * vk);
        if (k + 1 < p.chain_q.size()) {
            Xk = (p.A * Xk + p.B * vk).eval();
            vk = k == 0 ? v1 : Eigen::VectorXd::Zero(p.inputs()).eval();
        }
    }
    return u;
}

} // namespace

Trajectory simulate_step(const PlatoonSystem& p, const SimulateConfig& cfg) {
    if (!(cfg.duration > 0.0)) throw ValidationError("duration must be positive");
    if (cfg.max_samples < 2) throw ValidationError("need at least two samples");

    Eigen::VectorXd v0, v1;
    build_input(p, cfg.input, v0, v1);

    double fastest = 0.0;
    bool marginal = false;
    if (p.states() > 0) {
        const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(p.A, false).eigenvalues();
        fastest = eig.cwiseAbs().maxCoeff();
        // A driven leader with a type-2 loop carries a defective origin pair
        // whose computed real parts scatter by about sqrt(machine epsilon).
        const double tol = 1e-7 * std::max(1.0, fastest);
        for (Eigen::Index i = 0; i < eig.size(); ++i) {
            if (eig(i).real() > tol)
                throw NumericalError("assembled system is unstable; refusing to integrate");
            if (eig(i).real() > -tol) marginal = true;
        }
    }

    double dt = fastest > 1e-12 ? 0.02 / fastest : cfg.duration / 1000.0;
    if (cfg.dt) {
        if (!(*cfg.dt > 0.0)) throw ValidationError("dt must be positive");
        if (fastest > 1e-12 && *cfg.dt > 0.1 / fastest)
            throw ValidationError("dt exceeds 0.1/|fastest eigenvalue|; use a smaller step");
        dt = *cfg.dt;
    }
    const long nsteps = std::max(1L, static_cast<long>(std::ceil(cfg.duration / dt - 1e-12)));
    dt = cfg.duration / static_cast<double>(nsteps); // land exactly on the horizon

    const long stride = std::max(1L, (nsteps + cfg.max_samples) / cfg.max_samples);
    std::vector<long> keep;
    for (long k = 0; k <= nsteps; k += stride) keep.push_back(k);
    if (keep.back() != nsteps) keep.push_back(nsteps);

    Trajectory tr;
    tr.dt = dt;
    tr.marginal_warning = marginal;
    const int rows = static_cast<int>(keep.size());
    tr.t.resize(keep.size());
    tr.positions.resize(rows, p.n);
    tr.deltas.resize(rows, p.n - 1);
    tr.efforts.resize(rows, p.n);

    Eigen::VectorXd X = Eigen::VectorXd::Zero(p.states());
    const auto deriv = [&](double t, const Eigen::VectorXd& x) {
        return (p.A * x + p.B * (v0 + t * v1)).eval();
    };
    const auto record = [&](int row, long k) {
        const double t = static_cast<double>(k) * dt;
        const Eigen::VectorXd v = v0 + t * v1;
        tr.t[static_cast<std::size_t>(row)] = t;
        tr.positions.row(row) = (p.positions.C * X + p.positions.D * v).transpose();
        tr.deltas.row(row) = (p.deltas.C * X + p.deltas.D * v).transpose();
        if (p.effort_via_chain) {
            Eigen::VectorXd full = Eigen::VectorXd::Zero(p.n);
            full.tail(p.agents) = chain_efforts(p, X, v, v1);
            tr.efforts.row(row) = full.transpose();
        } else {
            tr.efforts.row(row) = (p.efforts.C * X + p.efforts.D * v).transpose();
        }
    };

    int row = 0;
    std::size_t next = 0;
    for (long k = 0; k <= nsteps; ++k) {
        if (next < keep.size() && keep[next] == k) record(row++, keep[next++]);
        if (k == nsteps) break;
        const double t = static_cast<double>(k) * dt;
        const Eigen::VectorXd k1 = deriv(t, X);
        const Eigen::VectorXd k2 = deriv(t + 0.5 * dt, X + 0.5 * dt * k1);
        const Eigen::VectorXd k3 = deriv(t + 0.5 * dt, X + 0.5 * dt * k2);
        const Eigen::VectorXd k4 = deriv(t + dt, X + dt * k3);
        X += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    tr.terminal_positions = tr.positions.row(rows - 1).transpose();
    tr.terminal_deltas = tr.deltas.row(rows - 1).transpose();
    tr.terminal_efforts = tr.efforts.row(rows - 1).transpose();
    return tr;
}

std::string trajectory_csv(const Trajectory& tr) {
    const int n = static_cast<int>(tr.positions.cols());
    std::string out = "t";
    char buf[48];
    for (int i = 1; i <= n; ++i) {
        std::snprintf(buf, sizeof buf, ",x_%d", i);
        out += buf;
    }
    for (int i = 2; i <= n; ++i) {
        std::snprintf(buf, sizeof buf, ",delta_%d", i);
        out += buf;
    }
    for (int i = 1; i <= n; ++i) {
        std::snprintf(buf, sizeof buf, ",u_%d", i);
        out += buf;
    }
    out += '\n';
    const auto cell = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out += buf;
    };
    for (std::size_t r = 0; r < tr.t.size(); ++r) {
        const int ri = static_cast<int>(r);
        cell(tr.t[r]);
        for (int j = 0; j < n; ++j) {
            out += ',';
            cell(tr.positions(ri, j));
        }
        for (int j = 0; j + 1 < n; ++j) {
            out += ',';
            cell(tr.deltas(ri, j));
        }
        for (int j = 0; j < n; ++j) {
            out += ',';
            cell(tr.efforts(ri, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace platoon
