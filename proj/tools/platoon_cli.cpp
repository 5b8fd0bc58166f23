// Batch front end. One command per invocation; results land as JSON/CSV files
// in --out and every JSON artifact is mirrored to stdout. Exit codes: 0 ok,
// 2 malformed input, 3 invalid model, 4 formation instability, 5 numerical
// failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "platoon/errors.hpp"
#include "platoon/format.hpp"
#include "platoon/hinf.hpp"
#include "platoon/realization.hpp"
#include "platoon/scaling.hpp"
#include "platoon/simulate.hpp"
#include "platoon/spec_file.hpp"
#include "platoon/spectrum.hpp"
#include "platoon/stability.hpp"
#include "platoon/string_stability.hpp"
#include "platoon/transfer.hpp"

namespace {

using namespace platoon;

struct Common {
    std::string spec;
    std::string out = "./out";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("spec", c.spec, "platoon spec file (JSON)")->required();
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
}

// JSON artifacts go to the output directory and to stdout.
void emit(const JsonWriter& w, const Common& c, const std::string& name) {
    std::string text = w.str();
    text += '\n';
    write_file(c.out, name, text);
    std::cout << text;
}

void require_integrator(const PlatoonSpec& sp) {
    if (sp.loop.type_number < 1)
        throw ValidationError("steady-state gains need an open-loop integrator (type number >= 1)");
}

void run_gain(const Common& c, int from, int to) {
    const PlatoonSpec sp = load_spec(c.spec);
    require_integrator(sp);
    const AssembledTransfer t = assemble_transfer(sp.graph, sp.loop, from, to);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("gain");
    w.key("from").value(from);
    w.key("to").value(to);
    w.key("distance").value(t.distance);
    w.key("path_weight").value(t.weight);
    w.key("dc_gain_spectral").value(dc_gain_spectral(sp.graph, from, to));
    w.key("dc_gain_closed").value(dc_gain_closed(sp.graph, from, to));
    w.key("dc_gain_distance").value(dc_gain_distance(sp.graph, from, to));
    w.key("product_form_dc").value(t.dc_gain());
    w.end_object();
    emit(w, c, "gain.json");
}

void run_hinf(const Common& c, int from, int to) {
    const PlatoonSpec sp = load_spec(c.spec);
    const AssembledTransfer t = assemble_transfer(sp.graph, sp.loop, from, to);
    const HinfResult r = hinf(evaluator(t), sp.options.hinf_grid);

    JsonWriter w;
    w.begin_object();
    w.key("command").value("hinf");
    w.key("from").value(from);
    w.key("to").value(to);
    w.key("distance").value(t.distance);
    w.key("norm").value(r.norm);
    w.key("peak_frequency").value(r.peak_frequency);
    w.key("refined").value(r.refined);
    w.end_object();
    emit(w, c, "hinf.json");

    std::string csv = "omega,magnitude\n";
    for (const auto& [omega, mag] : r.samples)
        csv += csv_number(omega) + "," + csv_number(mag) + "\n";
    write_file(c.out, "frequency_response.csv", csv);
}

std::pair<int, int> parse_sweep(const std::string& s) {
    const auto pos = s.find("..");
    std::size_t a = 0, b = 0;
    int o1 = 0, o2 = 0;
    if (pos != std::string::npos) {
        try {
            o1 = std::stoi(s.substr(0, pos), &a);
            o2 = std::stoi(s.substr(pos + 2), &b);
        } catch (const std::exception&) {
            a = 0; // fall through to the format error
        }
    }
    if (pos == std::string::npos || a != pos || b != s.size() - pos - 2)
        throw SpecParseError("--sweep-to must look like o1..o2, e.g. 4..40");
    return {o1, o2};
}

void run_scaling(const Common& c, int from, const std::string& sweep) {
    const auto [o1, o2] = parse_sweep(sweep);
    if (o1 > o2) throw ValidationError("--sweep-to range is empty");
    const PlatoonSpec sp = load_spec(c.spec);
    require_integrator(sp);

    const SpectralData sd = reduced_spectrum(sp.graph);
    const ScalingCertificate cert = scaling_certificate(
        sp.loop, sd.eigenvalues.front(), sd.eigenvalues.back(), sp.options.scaling_grid);

    std::string csv = "o,distance,hinf_norm,certified_lower_bound\n";
    for (int o = o1; o <= o2; ++o) {
        const AssembledTransfer t = assemble_transfer(sp.graph, sp.loop, from, o);
        const HinfResult r = hinf(evaluator(t), sp.options.hinf_grid);
        const double bound = cert.valid ? cert.predicted_lower_bound(t.dc_gain(), t.distance)
                                        : std::numeric_limits<double>::quiet_NaN();
        csv += std::to_string(o) + "," + std::to_string(t.distance) + "," + csv_number(r.norm) +
               "," + csv_number(bound) + "\n";
    }
    write_file(c.out, "scaling_norms.csv", csv);

    JsonWriter w;
    w.begin_object();
    w.key("command").value("scaling");
    w.key("from").value(from);
    w.key("sweep_from").value(o1);
    w.key("sweep_to").value(o2);
    w.key("lambda_min").value(cert.lambda_min);
    w.key("lambda_max").value(cert.lambda_max);
    w.key("peak_norm").value(cert.peak_norm);
    w.key("omega0").value(cert.omega0);
    w.key("valid").value(cert.valid);
    if (cert.zeta) w.key("zeta").value(*cert.zeta);
    if (cert.xi) w.key("xi").value(*cert.xi);
    w.key("t_samples");
    w.begin_array();
    for (const auto& [lambda, mag] : cert.t_samples)
        w.begin_array().value(lambda).value(mag).end_array();
    w.end_array();
    w.key("pairing_explanation").value(pairing_explanation(sp.graph, sp.loop, from, o2, cert));
    w.end_object();
    emit(w, c, "scaling_certificate.json");
}

void run_stability(const Common& c, int from) {
    const PlatoonSpec sp = load_spec(c.spec);
    const StringStabilityReport r =
        string_stability_check(sp.graph, sp.loop, from, sp.options.norm_tolerance);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("stability");
    w.key("from").value(from);
    w.key("lambda_upper_bound").value(r.lambda_upper_bound);
    w.key("bound_block_stable").value(r.bound_block_stable);
    w.key("norm_at_bound").value(r.norm_at_bound);
    w.key("tolerance").value(r.tolerance);
    w.key("condition_holds").value(r.condition_holds);
    w.key("ratios");
    w.begin_array();
    for (const auto& q : r.checked_ratios) {
        w.begin_object();
        w.key("output_vehicle").value(q.output_vehicle);
        w.key("rearward").value(q.rearward);
        w.key("norm").value(q.norm);
        w.end_object();
    }
    w.end_array();
    w.key("verdict").value(r.verdict);
    w.end_object();
    emit(w, c, "string_stability.json");
}

void run_spectrum(const Common& c) {
    const PlatoonSpec sp = load_spec(c.spec);
    const SpectralData sd = reduced_spectrum(sp.graph);
    double product = 1.0;
    for (double v : sd.eigenvalues) product *= v;
    JsonWriter w;
    w.begin_object();
    w.key("command").value("spectrum");
    w.key("n").value(sp.graph.n);
    w.key("eigenvalues");
    w.begin_array();
    for (double v : sd.eigenvalues) w.value(v);
    w.end_array();
    w.key("eigenvalue_product").value(product);
    if (sd.lower_bound) w.key("lower_bound").value(*sd.lower_bound);
    w.key("upper_bound").value(sd.upper_bound);
    w.end_object();
    emit(w, c, "spectrum.json");
}

void run_simulate(const Common& c, const std::string& mode, double duration, int vehicle,
                  double amplitude, std::optional<double> dt) {
    const PlatoonSpec sp = load_spec(c.spec);

    StabilityCertificate cert =
        formation_stability(sp.loop, reduced_spectrum(sp.graph).eigenvalues, sp.options.extra_grid);
    if (!cert.all_stable) throw InstabilityError(std::move(cert));

    const AgentRealization a = realize(sp.loop);
    const PlatoonSystem p = assemble_platoon(sp.graph, a, sp.options.leader_mode);

    SimulateConfig cfg;
    cfg.duration = duration;
    cfg.dt = dt ? dt : sp.options.dt;
    cfg.input.kind = mode == "leader-step" ? InputKind::leader_step : InputKind::input_step;
    cfg.input.vehicle = vehicle;
    cfg.input.amplitude = amplitude;
    const Trajectory tr = simulate_step(p, cfg);

    write_file(c.out, "trajectory.csv", trajectory_csv(tr));

    JsonWriter w;
    w.begin_object();
    w.key("command").value("simulate");
    w.key("mode").value(mode);
    w.key("leader_mode")
        .value(sp.options.leader_mode == LeaderMode::exogenous ? "exogenous" : "driven");
    w.key("duration").value(duration);
    w.key("dt").value(tr.dt);
    w.key("samples").value(static_cast<long>(tr.t.size()));
    w.key("marginal_warning").value(tr.marginal_warning);
    w.key("trajectory").value("trajectory.csv"); // sibling file in the same output directory
    w.key("terminal_positions");
    w.begin_array();
    for (int i = 0; i < tr.terminal_positions.size(); ++i) w.value(tr.terminal_positions(i));
    w.end_array();
    w.end_object();
    emit(w, c, "simulate.json");
}

void run_pf_check(const Common& c) {
    const PlatoonSpec sp = load_spec(c.spec);
    const PfReport r = pf_check(sp.loop);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("pf-check");
    w.key("norm").value(r.norm);
    w.key("unit_norm").value(r.unit_norm);
    w.key("dominant_pole").value(r.dominant_pole);
    w.key("dominant_pole_real").value(r.dominant_pole_real);
    w.key("dominant_pole_separated").value(r.dominant_pole_separated);
    w.key("no_real_zero_right_of_pole").value(r.no_real_zero_right_of_pole);
    w.key("positivity_necessary").value(r.positivity_necessary);
    w.end_object();
    emit(w, c, "pf_check.json");
}

int run(int argc, char** argv) {
    CLI::App app{"asymmetric bidirectional platoon analysis"};
    app.require_subcommand(1);

    Common common[7];
    int from = 0, to = 0, vehicle = 2;
    std::string sweep, mode;
    double duration = 0.0, amplitude = 1.0;
    std::optional<double> dt;

    CLI::App* gain = app.add_subcommand("gain", "steady-state gains r_c -> x_o");
    add_common(gain, common[0]);
    gain->add_option("--from", from, "input vehicle c")->required();
    gain->add_option("--to", to, "output vehicle o")->required();

    CLI::App* hinf_cmd = app.add_subcommand("hinf", "H-infinity norm of the transfer r_c -> x_o");
    add_common(hinf_cmd, common[1]);
    hinf_cmd->add_option("--from", from, "input vehicle c")->required();
    hinf_cmd->add_option("--to", to, "output vehicle o")->required();

    CLI::App* scaling = app.add_subcommand("scaling", "norm growth sweep and its certificate");
    add_common(scaling, common[2]);
    scaling->add_option("--from", from, "input vehicle c")->required();
    scaling->add_option("--sweep-to", sweep, "output vehicle range o1..o2")->required();

    CLI::App* stability = app.add_subcommand("stability", "bidirectional string stability report");
    add_common(stability, common[3]);
    stability->add_option("--from", from, "input vehicle c")->required();

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "reduced Laplacian spectrum and bounds");
    add_common(spectrum_cmd, common[4]);

    CLI::App* simulate = app.add_subcommand("simulate", "step-response trajectory");
    add_common(simulate, common[5]);
    simulate->add_option("--mode", mode, "leader-step or input-step")
        ->required()
        ->check(CLI::IsMember({"leader-step", "input-step"}));
    simulate->add_option("--duration", duration, "horizon in seconds")->required();
    simulate->add_option("--vehicle", vehicle, "input-step target vehicle")->capture_default_str();
    simulate->add_option("--amplitude", amplitude, "step height or d_ref")->capture_default_str();
    simulate->add_option("--dt", dt, "integration step override");

    CLI::App* pf = app.add_subcommand("pf-check", "predecessor-following design checks");
    add_common(pf, common[6]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gain->parsed()) run_gain(common[0], from, to);
    if (hinf_cmd->parsed()) run_hinf(common[1], from, to);
    if (scaling->parsed()) run_scaling(common[2], from, sweep);
    if (stability->parsed()) run_stability(common[3], from);
    if (spectrum_cmd->parsed()) run_spectrum(common[4]);
    if (simulate->parsed()) run_simulate(common[5], mode, duration, vehicle, amplitude, dt);
    if (pf->parsed()) run_pf_check(common[6]);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SpecParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InstabilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    }
}
