#include "platoon/spec_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "platoon/errors.hpp"

namespace platoon {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw SpecParseError(what); }

const json& need(const json& o, const char* k) {
    const auto it = o.find(k);
    if (it == o.end()) bad(std::string("missing required field \"") + k + "\"");
    return *it;
}

double number(const json& v, const char* what) {
    if (!v.is_number()) bad(std::string(what) + " must be a number");
    return v.get<double>();
}

int integer(const json& v, const char* what) {
    if (!v.is_number_integer()) bad(std::string(what) + " must be an integer");
    return v.get<int>();
}

std::vector<double> number_list(const json& v, const char* what) {
    if (!v.is_array()) bad(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(number(e, what));
    return out;
}

void reject_unknown(const json& o, std::initializer_list<const char*> known, const char* where) {
    for (const auto& item : o.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) bad(std::string("unknown field \"") + item.key() + "\" in " + where);
    }
}

RationalFunction rational(const json& v, const char* what) {
    if (!v.is_object()) bad(std::string(what) + " must be an object with num and den");
    reject_unknown(v, {"num", "den"}, what);
    std::vector<double> num = number_list(need(v, "num"), what);
    std::vector<double> den = number_list(need(v, "den"), what);
    if (num.empty() || den.empty()) bad(std::string(what) + ": num and den must be nonempty");
    return RationalFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

PlatoonGraph graph_from(const json& root) {
    const int n = integer(need(root, "n"), "n");
    const json& eps = need(root, "epsilon");
    if (eps.is_number()) return PlatoonGraph::uniform(n, eps.get<double>());
    if (eps.is_array()) return PlatoonGraph(n, number_list(eps, "epsilon"));
    if (eps.is_object()) {
        reject_unknown(eps, {"low", "high", "seed"}, "epsilon");
        const double low = number(need(eps, "low"), "epsilon.low");
        const double high = number(need(eps, "high"), "epsilon.high");
        const json& seed = need(eps, "seed");
        if (!seed.is_number_integer()) bad("epsilon.seed must be an integer");
        return PlatoonGraph::random_range(n, low, high, seed.get<std::uint64_t>());
    }
    bad("epsilon must be a number, a list, or {low, high, seed}");
}

SpecOptions options_from(const json& root) {
    SpecOptions o;
    const auto it = root.find("options");
    if (it == root.end()) return o;
    const json& v = *it;
    if (!v.is_object()) bad("options must be an object");
    reject_unknown(v,
                   {"hinf_grid", "extra_grid", "scaling_grid", "norm_tolerance", "leader_mode",
                    "dt"},
                   "options");
    if (v.contains("hinf_grid")) o.hinf_grid = integer(v["hinf_grid"], "options.hinf_grid");
    if (v.contains("extra_grid")) o.extra_grid = integer(v["extra_grid"], "options.extra_grid");
    if (v.contains("scaling_grid"))
        o.scaling_grid = integer(v["scaling_grid"], "options.scaling_grid");
    if (v.contains("norm_tolerance"))
        o.norm_tolerance = number(v["norm_tolerance"], "options.norm_tolerance");
    if (v.contains("leader_mode")) {
        const json& m = v["leader_mode"];
        if (m == "driven")
            o.leader_mode = LeaderMode::driven;
        else if (m == "exogenous")
            o.leader_mode = LeaderMode::exogenous;
        else
            bad("options.leader_mode must be \"driven\" or \"exogenous\"");
    }
    if (v.contains("dt")) o.dt = number(v["dt"], "options.dt");
    return o;
}

} // namespace

PlatoonSpec parse_spec(const std::string& text) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded()) bad("spec file is not valid JSON");
    if (!root.is_object()) bad("spec file must be a JSON object");
    reject_unknown(root, {"schema", "n", "epsilon", "plant", "controller", "options"},
                   "the spec file");
    if (need(root, "schema") != 1) bad("unsupported schema version, expected 1");

    PlatoonGraph g = graph_from(root);
    RationalFunction plant = rational(need(root, "plant"), "plant");
    RationalFunction controller = rational(need(root, "controller"), "controller");
    return PlatoonSpec{std::move(g), compose_open_loop(plant, controller), options_from(root)};
}

PlatoonSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecParseError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

} // namespace platoon
