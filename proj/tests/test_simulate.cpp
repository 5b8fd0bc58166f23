#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "platoon/errors.hpp"
#include "platoon/graph.hpp"
#include "platoon/open_loop.hpp"
#include "platoon/platoon_system.hpp"
#include "platoon/realization.hpp"
#include "platoon/simulate.hpp"
#include "platoon/spectrum.hpp"
#include "platoon/transfer.hpp"

using namespace platoon;
using cplx = std::complex<double>;

namespace {

OpenLoop pi_loop() {
    return compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{0.0, 5.0, 1.0}),
                             RationalFunction(Polynomial{1.0, 1.0}, Polynomial{0.0, 1.0}));
}

OpenLoop pf_design() {
    return compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{0.0, 0.5, 1.0}),
                             RationalFunction(Polynomial{1.0, 2.4}, Polynomial{1.0, 0.125}));
}

OpenLoop integrator_loop() {
    return compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{0.0, 1.0}),
                             RationalFunction(Polynomial{1.0}, Polynomial{1.0}));
}

// e -> x frequency response of a realization.
cplx realization_response(const AgentRealization& a, double omega) {
    const int n = a.states();
    if (n == 0) return cplx(a.D, 0.0);
    Eigen::MatrixXcd m = cplx(0.0, omega) * Eigen::MatrixXcd::Identity(n, n) - a.A.cast<cplx>();
    Eigen::VectorXcd x = m.fullPivLu().solve(a.B.cast<cplx>());
    return (a.C.cast<cplx>() * x)(0) + a.D;
}

// e -> u frequency response through the static effort tap.
cplx tap_response(const AgentRealization& a, double omega) {
    const int n = a.states();
    Eigen::MatrixXcd m = cplx(0.0, omega) * Eigen::MatrixXcd::Identity(n, n) - a.A.cast<cplx>();
    Eigen::VectorXcd x = m.fullPivLu().solve(a.B.cast<cplx>());
    return (a.Cu.cast<cplx>() * x)(0) + a.Du;
}

std::vector<double> sorted_real_eigs(const Eigen::MatrixXd& a, std::vector<double>& imag) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    std::vector<double> re;
    for (int i = 0; i < a.rows(); ++i) {
        re.push_back(es.eigenvalues()(i).real());
        imag.push_back(es.eigenvalues()(i).imag());
    }
    return re;
}

} // namespace

TEST_CASE("agent realization") {
    SUBCASE("the PI loop needs three states") {
        AgentRealization a = realize(pi_loop());
        CHECK(a.states() == 3);
        CHECK(a.has_effort_tap);
        CHECK(a.D == 0.0);
    }
    SUBCASE("transfer reconstruction") {
        std::mt19937_64 rng(17u);
        std::uniform_real_distribution<double> logw(-2.0, 2.0);
        for (const OpenLoop& m : {pi_loop(), pf_design(), integrator_loop()}) {
            AgentRealization a = realize(m);
            for (int k = 0; k < 20; ++k) {
                const double w = std::pow(10.0, logw(rng));
                const cplx expect = m.at(w);
                const cplx got = realization_response(a, w);
                CHECK(std::abs(got - expect) <= 1e-9 * (1.0 + std::abs(expect)));
            }
        }
    }
    SUBCASE("effort tap reproduces the controller") {
        OpenLoop m = pf_design();
        AgentRealization a = realize(m);
        REQUIRE(a.has_effort_tap);
        for (double w : {0.05, 0.4, 2.0, 30.0}) {
            const cplx expect = eval_freq(m.controller, w);
            const cplx got = tap_response(a, w);
            CHECK(std::abs(got - expect) <= 1e-9 * (1.0 + std::abs(expect)));
        }
    }
    SUBCASE("biproper loop keeps a feedthrough") {
        OpenLoop m = compose_open_loop(RationalFunction(Polynomial{1.0, 1.0}, Polynomial{2.0, 1.0}),
                                       RationalFunction(Polynomial{3.0}, Polynomial{1.0}));
        AgentRealization a = realize(m);
        CHECK(a.D == doctest::Approx(3.0));
        for (double w : {0.1, 1.0, 10.0})
            CHECK(std::abs(realization_response(a, w) - m.at(w)) <= 1e-9);
    }
    SUBCASE("derivative controller over a slow plant uses the effort chain") {
        OpenLoop m = compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{0.0, 5.0, 1.0}),
                                       RationalFunction(Polynomial{3.0, 2.0}, Polynomial{2.0}));
        AgentRealization a = realize(m);
        CHECK_FALSE(a.has_effort_tap);
        REQUIRE(a.effort_chain_q.size() == 2);
        CHECK(a.effort_chain_q[0] == doctest::Approx(1.5));
        CHECK(a.effort_chain_q[1] == doctest::Approx(1.0));
        for (double w : {0.1, 1.0, 10.0})
            CHECK(std::abs(realization_response(a, w) - m.at(w)) <= 1e-9 * (1.0 + std::abs(m.at(w))));
    }
    SUBCASE("improper open loop is rejected verbatim") {
        OpenLoop m = compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{1.0, 1.0}),
                                       RationalFunction(Polynomial{1.0, 0.0, 1.0}, Polynomial{1.0}));
        CHECK_THROWS_WITH_AS((void)realize(m),
                             "controller makes open loop improper; not simulatable as state space",
                             ValidationError);
    }
    SUBCASE("improper controller with controller dynamics has no causal effort") {
        OpenLoop m = compose_open_loop(
            RationalFunction(Polynomial{1.0}, Polynomial{0.0, 1.0, 1.0, 1.0}),
            RationalFunction(Polynomial{1.0, 0.0, 1.0}, Polynomial{1.0, 1.0}));
        CHECK_THROWS_AS((void)realize(m), ValidationError);
    }
}

TEST_CASE("assembled platoon") {
    SUBCASE("two vehicles, pure integrator, driven leader") {
        PlatoonGraph g(2, {});
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::driven);
        CHECK(p.agents == 2);
        CHECK(p.states() == 2);
        CHECK(p.inputs() == 2);
        // xdot_1 = r_1, xdot_2 = x_1 - x_2 + r_2
        Eigen::MatrixXd a_expect(2, 2);
        a_expect << 0.0, 0.0, 1.0, -1.0;
        CHECK((p.A - a_expect).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        CHECK((p.B - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
    SUBCASE("two vehicles, exogenous leader") {
        PlatoonGraph g(2, {});
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::exogenous);
        CHECK(p.agents == 1);
        CHECK(p.states() == 1);
        CHECK(p.inputs() == 2); // r_2 and the leader position
        CHECK(p.A(0, 0) == doctest::Approx(-1.0));
        CHECK(p.B(0, 0) == doctest::Approx(1.0));
        CHECK(p.B(0, 1) == doctest::Approx(1.0));
        // leader position row is pure feedthrough of the last input
        CHECK(p.positions.C.row(0).cwiseAbs().maxCoeff() == 0.0);
        CHECK(p.positions.D(0, 1) == 1.0);
        CHECK(p.efforts.C.row(0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("reference offsets per mode") {
        PlatoonGraph g(4, {0.3, 0.7});
        PlatoonSystem drv = assemble_platoon(g, realize(integrator_loop()), LeaderMode::driven);
        REQUIRE(drv.reference_offset.size() == 4);
        CHECK(drv.reference_offset(0) == 0.0);
        CHECK(drv.reference_offset(1) == doctest::Approx(-0.7));
        CHECK(drv.reference_offset(2) == doctest::Approx(-0.3));
        CHECK(drv.reference_offset(3) == doctest::Approx(-1.0));
        PlatoonSystem exo = assemble_platoon(g, realize(integrator_loop()), LeaderMode::exogenous);
        REQUIRE(exo.reference_offset.size() == 4);
        CHECK(exo.reference_offset(0) == doctest::Approx(-0.7));
        CHECK(exo.reference_offset(1) == doctest::Approx(-0.3));
        CHECK(exo.reference_offset(2) == doctest::Approx(-1.0));
        CHECK(exo.reference_offset(3) == 0.0); // leader position carries no offset
    }
    SUBCASE("driven spectrum factors over the reduced eigenvalues") {
        std::mt19937_64 rng(23u);
        for (const OpenLoop& m : {pi_loop(), pf_design()}) {
            for (int n = 2; n <= 8; n += 2) {
                PlatoonGraph g = PlatoonGraph::random_range(n, 0.2, 0.9, 400u + n);
                PlatoonSystem p = assemble_platoon(g, realize(m), LeaderMode::driven);
                std::vector<double> im;
                std::vector<double> re = sorted_real_eigs(p.A, im);
                // predicted: open-loop poles for the leader plus the factor roots
                std::vector<cplx> predict;
                for (const auto& z : roots(m.denominator)) predict.push_back(z);
                for (double lambda : reduced_spectrum(g).eigenvalues) {
                    Polynomial cl = add_scaled(m.denominator, lambda, m.numerator);
                    for (const auto& z : roots(cl)) predict.push_back(z);
                }
                REQUIRE(predict.size() == re.size());
                std::vector<bool> used(predict.size(), false);
                for (std::size_t i = 0; i < re.size(); ++i) {
                    const cplx z(re[i], im[i]);
                    double best = 1e300;
                    std::size_t bi = 0;
                    for (std::size_t j = 0; j < predict.size(); ++j) {
                        if (used[j]) continue;
                        if (std::abs(z - predict[j]) < best) {
                            best = std::abs(z - predict[j]);
                            bi = j;
                        }
                    }
                    used[bi] = true;
                    CHECK(best < 1e-6);
                }
            }
        }
    }
    SUBCASE("feedthrough loop is resolved, not rejected") {
        OpenLoop m = compose_open_loop(RationalFunction(Polynomial{1.0, 1.0}, Polynomial{2.0, 1.0}),
                                       RationalFunction(Polynomial{0.5}, Polynomial{1.0}));
        PlatoonGraph g(3, {0.5});
        PlatoonSystem p = assemble_platoon(g, realize(m), LeaderMode::driven);
        CHECK(p.states() == 3);
        // closed-loop eigenvalues shifted away from the open-loop pole
        std::vector<double> im;
        std::vector<double> re = sorted_real_eigs(p.A, im);
        CHECK(re.size() == 3);
    }
}

TEST_CASE("direct frequency response") {
    SUBCASE("single follower closed loop") {
        PlatoonGraph g(2, {});
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::driven);
        for (double w : {0.1, 1.0, 7.0}) {
            const cplx expect = 1.0 / cplx(1.0, w);
            CHECK(std::abs(freq_response_direct(p, 2, 2, w) - expect) <= 1e-12);
        }
    }
    SUBCASE("matches the product form across random pairs") {
        std::mt19937_64 rng(29u);
        std::uniform_real_distribution<double> logw(-2.0, 2.0);
        OpenLoop m = pi_loop();
        for (int n : {4, 7, 10}) {
            PlatoonGraph g = PlatoonGraph::random_range(n, 0.3, 0.8, 600u + n);
            PlatoonSystem p = assemble_platoon(g, realize(m), LeaderMode::driven);
            std::uniform_int_distribution<int> node(2, n);
            for (int rep = 0; rep < 5; ++rep) {
                const int c = node(rng), o = node(rng);
                AssembledTransfer t = assemble_transfer(g, m, c, o);
                for (int k = 0; k < 10; ++k) {
                    const double w = std::pow(10.0, logw(rng));
                    const cplx direct = freq_response_direct(p, c, o, w);
                    const cplx product = t.value(w);
                    CHECK(std::abs(direct - product) <= 1e-6 * (1e-12 + std::abs(product)));
                }
            }
        }
    }
    SUBCASE("low frequency approaches the steady-state gain") {
        PlatoonGraph g = PlatoonGraph::uniform(6, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::driven);
        for (int o = 2; o <= 6; ++o) {
            const cplx v = freq_response_direct(p, 3, o, 1e-8);
            CHECK(std::abs(v) == doctest::Approx(std::fabs(dc_gain_closed(g, 3, o))).epsilon(1e-5));
        }
    }
    SUBCASE("exogenous leader input column") {
        PlatoonGraph g(2, {});
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::exogenous);
        for (double w : {0.2, 2.0}) {
            const cplx expect = 1.0 / cplx(1.0, w);
            CHECK(std::abs(freq_response_direct(p, 1, 2, w) - expect) <= 1e-12);
            CHECK(std::abs(freq_response_direct(p, 1, 1, w) - cplx(1.0, 0.0)) <= 1e-12);
        }
    }
}

TEST_CASE("time simulation") {
    SUBCASE("zero input stays at rest") {
        PlatoonGraph g = PlatoonGraph::uniform(5, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 10.0;
        cfg.input.kind = InputKind::zero;
        Trajectory tr = simulate_step(p, cfg);
        CHECK(tr.positions.cwiseAbs().maxCoeff() == 0.0);
        CHECK(tr.deltas.cwiseAbs().maxCoeff() == 0.0);
        CHECK(tr.efforts.cwiseAbs().maxCoeff() == 0.0);
        CHECK_FALSE(tr.marginal_warning);
    }
    SUBCASE("driven reference step settles at the steady-state gains") {
        PlatoonGraph g = PlatoonGraph::uniform(5, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::driven);
        SimulateConfig cfg;
        cfg.duration = 600.0;
        cfg.input.kind = InputKind::input_step;
        cfg.input.vehicle = 3;
        Trajectory tr = simulate_step(p, cfg);
        CHECK(tr.marginal_warning); // leader integrators sit on the axis, unexcited
        CHECK(tr.terminal_positions(0) == doctest::Approx(0.0));
        for (int o = 2; o <= 5; ++o)
            CHECK(tr.terminal_positions(o - 1) ==
                  doctest::Approx(dc_gain_closed(g, 3, o)).epsilon(1e-3));
    }
    SUBCASE("exogenous leader step is followed without residual spacing") {
        PlatoonGraph g = PlatoonGraph::uniform(6, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 700.0;
        cfg.input.kind = InputKind::leader_step;
        Trajectory tr = simulate_step(p, cfg);
        CHECK_FALSE(tr.marginal_warning);
        for (int i = 0; i < 6; ++i)
            CHECK(tr.terminal_positions(i) == doctest::Approx(1.0).epsilon(1e-3));
        for (int i = 0; i < 5; ++i)
            CHECK(tr.terminal_deltas(i) == doctest::Approx(0.0).scale(1.0).epsilon(1e-3));
        CHECK(tr.terminal_efforts.cwiseAbs().maxCoeff() < 1e-3);
    }
    SUBCASE("predecessor following never overshoots the leader") {
        PlatoonGraph g = PlatoonGraph::uniform(8, 0.0);
        PlatoonSystem p = assemble_platoon(g, realize(pf_design()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 80.0;
        cfg.input.kind = InputKind::leader_step;
        Trajectory tr = simulate_step(p, cfg);
        CHECK(tr.positions.maxCoeff() <= 1.0 + 1e-2);
        for (int i = 0; i < 8; ++i)
            CHECK(tr.terminal_positions(i) == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("constant spacing references settle into formation") {
        PlatoonGraph g(5, {0.4, 0.6, 0.8});
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 900.0;
        cfg.input.kind = InputKind::reference_offsets;
        cfg.input.amplitude = 0.8;
        Trajectory tr = simulate_step(p, cfg);
        for (int i = 1; i < 5; ++i)
            CHECK(tr.terminal_positions(i) == doctest::Approx(-0.8 * i).epsilon(1e-3));
        for (int i = 0; i < 4; ++i)
            CHECK(tr.terminal_deltas(i) == doctest::Approx(0.8).epsilon(1e-3));
    }
    SUBCASE("constant-velocity leader, two integrators: spacing goes flat") {
        PlatoonGraph g = PlatoonGraph::uniform(5, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 1200.0;
        cfg.input.kind = InputKind::leader_ramp;
        cfg.input.amplitude = 0.3;
        Trajectory tr = simulate_step(p, cfg);
        const std::size_t rows = tr.t.size();
        const std::size_t tail = rows - rows / 10;
        for (int col = 0; col < 4; ++col) {
            const double dv = tr.deltas(rows - 1, col) - tr.deltas(tail, col);
            const double dt = tr.t[rows - 1] - tr.t[tail];
            CHECK(std::fabs(dv / dt) <= 1e-6);
            // two net integrators also wipe the velocity-tracking offset out
            CHECK(std::fabs(tr.deltas(rows - 1, col)) < 1e-4);
        }
    }
    SUBCASE("constant-velocity leader, one integrator: constant offset remains") {
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(integrator_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 200.0;
        cfg.input.kind = InputKind::leader_ramp;
        cfg.input.amplitude = 0.3;
        Trajectory tr = simulate_step(p, cfg);
        const std::size_t rows = tr.t.size();
        const std::size_t tail = rows - rows / 10;
        for (int col = 0; col < 3; ++col) {
            const double dv = tr.deltas(rows - 1, col) - tr.deltas(tail, col);
            const double dt = tr.t[rows - 1] - tr.t[tail];
            CHECK(std::fabs(dv / dt) <= 1e-6);
        }
        // the first spacing carries the full velocity error of a type-1 loop
        CHECK(std::fabs(tr.terminal_deltas(0)) > 1e-2);
    }
    SUBCASE("halving the step leaves terminals in place") {
        PlatoonGraph g = PlatoonGraph::uniform(5, 0.6);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 40.0;
        cfg.input.kind = InputKind::leader_step;
        cfg.dt = 0.004;
        Trajectory coarse = simulate_step(p, cfg);
        cfg.dt = 0.002;
        Trajectory fine = simulate_step(p, cfg);
        for (int i = 0; i < 5; ++i)
            CHECK(std::fabs(coarse.terminal_positions(i) - fine.terminal_positions(i)) <= 1e-8);
    }
    SUBCASE("identical runs are bitwise identical") {
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 25.0;
        cfg.input.kind = InputKind::leader_step;
        Trajectory a = simulate_step(p, cfg);
        Trajectory b = simulate_step(p, cfg);
        CHECK(a.t == b.t);
        CHECK((a.positions - b.positions).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a.efforts - b.efforts).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("step size safeguards") {
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 10.0;
        cfg.dt = 10.0; // far beyond 0.1/|fastest|
        CHECK_THROWS_AS((void)simulate_step(p, cfg), ValidationError);
        cfg.dt.reset();
        cfg.duration = -1.0;
        CHECK_THROWS_AS((void)simulate_step(p, cfg), ValidationError);
    }
    SUBCASE("unstable assembly is refused") {
        // negative plant damping puts every closed-loop factor in the right half plane
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        OpenLoop bad = compose_open_loop(
            RationalFunction(Polynomial{1.0}, Polynomial{0.0, -0.2, 1.0}),
            RationalFunction(Polynomial{1.0}, Polynomial{1.0}));
        PlatoonSystem p = assemble_platoon(g, realize(bad), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 5.0;
        CHECK_THROWS_WITH_AS((void)simulate_step(p, cfg),
                             "assembled system is unstable; refusing to integrate", NumericalError);
    }
    SUBCASE("input vehicle validation") {
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 5.0;
        cfg.input.kind = InputKind::input_step;
        cfg.input.vehicle = 1; // the leader has no reference input here
        CHECK_THROWS_AS((void)simulate_step(p, cfg), ValidationError);
        cfg.input.vehicle = 5;
        CHECK_THROWS_AS((void)simulate_step(p, cfg), ValidationError);
    }
    SUBCASE("sample thinning keeps the endpoints") {
        PlatoonGraph g = PlatoonGraph::uniform(4, 0.5);
        PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
        SimulateConfig cfg;
        cfg.duration = 50.0;
        cfg.input.kind = InputKind::leader_step;
        cfg.max_samples = 101;
        Trajectory tr = simulate_step(p, cfg);
        CHECK(tr.t.size() <= 102);
        CHECK(tr.t.front() == 0.0);
        CHECK(tr.t.back() == doctest::Approx(50.0).epsilon(1e-12));
        CHECK(tr.positions.rows() == static_cast<Eigen::Index>(tr.t.size()));
    }
    SUBCASE("effort chain reconstruction for a derivative controller") {
        // PD over the slow plant: u = 1.5 e + edot. The loop has relative
        // degree one, so positions pick up speed instantly and the two t = 0
        // terms cancel for the vehicle behind the leader: e_2 = 1 while
        // edot_2 = -(1+eps_2) * (C B) e_2 = -1.5. Vehicle 3 sees only the
        // rate term +eps-free coupling, u_3(0) = edot_3 = 1.
        OpenLoop m = compose_open_loop(RationalFunction(Polynomial{1.0}, Polynomial{0.0, 5.0, 1.0}),
                                       RationalFunction(Polynomial{3.0, 2.0}, Polynomial{2.0}));
        PlatoonGraph g(3, {0.5});
        PlatoonSystem p = assemble_platoon(g, realize(m), LeaderMode::exogenous);
        REQUIRE(p.effort_via_chain);
        SimulateConfig cfg;
        cfg.duration = 150.0;
        cfg.input.kind = InputKind::leader_step;
        Trajectory tr = simulate_step(p, cfg);
        // leader column of the effort map is identically zero
        for (std::size_t row = 0; row < tr.t.size(); ++row)
            CHECK(tr.efforts(row, 0) == 0.0);
        CHECK(tr.efforts(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
        CHECK(tr.efforts(0, 2) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(tr.terminal_efforts.cwiseAbs().maxCoeff() < 1e-4);
    }
}

TEST_CASE("trajectory csv") {
    PlatoonGraph g(3, {0.5});
    PlatoonSystem p = assemble_platoon(g, realize(pi_loop()), LeaderMode::exogenous);
    SimulateConfig cfg;
    cfg.duration = 5.0;
    cfg.input.kind = InputKind::leader_step;
    cfg.max_samples = 11;
    Trajectory tr = simulate_step(p, cfg);
    const std::string csv = trajectory_csv(tr);

    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header == "t,x_1,x_2,x_3,delta_2,delta_3,u_1,u_2,u_3");

    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == tr.t.size() + 1);

    // leader position column is exactly the input step
    const std::size_t second = csv.find('\n') + 1;
    const std::string first_row = csv.substr(second, csv.find('\n', second) - second);
    CHECK(first_row.substr(0, 2) == "0,");
    CHECK(first_row.find(",1,") != std::string::npos);
}
