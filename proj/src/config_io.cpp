#include "coopdef/config_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "coopdef/errors.hpp"

namespace coopdef {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
void read(const json& obj, const char* key, T& into, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        into = it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

void read_number(const json& obj, const char* key, double& into, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    into = it->get<double>();
}

GainSet gains_from_json(const json& j, GainSet g, const std::string& where) {
    reject_unknown(j, {"zeta", "xi", "alpha", "beta", "kappa", "epsilon"}, where);
    read_number(j, "zeta", g.zeta, where);
    read_number(j, "xi", g.xi, where);
    read_number(j, "alpha", g.alpha, where);
    read_number(j, "beta", g.beta, where);
    read_number(j, "kappa", g.kappa, where);
    read_number(j, "epsilon", g.epsilon, where);
    return g;
}

json gains_to_json(const GainSet& g) {
    return json{{"zeta", g.zeta}, {"xi", g.xi},       {"alpha", g.alpha},
                {"beta", g.beta}, {"kappa", g.kappa}, {"epsilon", g.epsilon}};
}

template <typename E, typename Parse>
void read_enum(const json& obj, const char* key, E& into, Parse parse, const std::string& where) {
    std::string s;
    bool present = obj.contains(key);
    read(obj, key, s, where);
    if (present) into = parse(s);
}

std::string integrator_name(Integrator i) { return i == Integrator::Rk4 ? "rk4" : "euler"; }

Integrator parse_integrator(const std::string& s) {
    if (s == "rk4") return Integrator::Rk4;
    if (s == "euler") return Integrator::Euler;
    throw ConfigError("unknown integrator '" + s + "'");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

ScenarioConfig scenario_from_json(const json& doc) {
    reject_unknown(doc, {"name", "preset", "scenario", "guidance", "sim"}, "config");
    ScenarioConfig sc;
    if (doc.contains("preset")) {
        std::string name;
        read(doc, "preset", name, "config");
        sc = preset(name);
    }
    read(doc, "name", sc.name, "config");

    if (doc.contains("scenario")) {
        const json& s = doc["scenario"];
        const std::string w = "scenario";
        reject_unknown(s, {"r_EP", "lambda_EP_deg", "r_DE", "lambda_DE_deg", "gamma_E_deg",
                           "gamma_P_deg", "gamma_D_deg", "v_E", "v_P", "v_D"},
                       w);
        read_number(s, "r_EP", sc.r_EP, w);
        read_number(s, "lambda_EP_deg", sc.lambda_EP_deg, w);
        read_number(s, "r_DE", sc.r_DE, w);
        read_number(s, "lambda_DE_deg", sc.lambda_DE_deg, w);
        read_number(s, "gamma_E_deg", sc.gamma_E_deg, w);
        read_number(s, "gamma_P_deg", sc.gamma_P_deg, w);
        read_number(s, "gamma_D_deg", sc.gamma_D_deg, w);
        read_number(s, "v_E", sc.v_E, w);
        read_number(s, "v_P", sc.v_P, w);
        read_number(s, "v_D", sc.v_D, w);
    }

    bool explicit_c = false;
    if (doc.contains("guidance")) {
        const json& g = doc["guidance"];
        const std::string w = "guidance";
        GuidanceConfig& gc = sc.guidance;
        reject_unknown(g, {"evader_gains", "defender_gains", "evader_epsilon", "defender_epsilon",
                           "epsilon_safety", "epsilon_range_floor", "c", "tau", "N", "k_P",
                           "apn_sign", "a_E_max", "a_P_max", "a_D_max", "sign_boundary_layer",
                           "lambda_dot_floor", "cos_floor", "v_D_min", "v_D_max",
                           "defender_mode", "pursuer_strategy"},
                       w);
        if (g.contains("evader_gains"))
            gc.evader_gains = gains_from_json(g["evader_gains"], gc.evader_gains, w + ".evader_gains");
        if (g.contains("defender_gains"))
            gc.defender_gains =
                gains_from_json(g["defender_gains"], gc.defender_gains, w + ".defender_gains");
        read_enum(g, "evader_epsilon", gc.evader_epsilon, parse_epsilon_policy, w);
        read_enum(g, "defender_epsilon", gc.defender_epsilon, parse_epsilon_policy, w);
        read_enum(g, "apn_sign", gc.apn_sign, parse_apn_sign, w);
        read_enum(g, "defender_mode", gc.defender_mode, parse_defender_mode, w);
        read_enum(g, "pursuer_strategy", gc.pursuer_strategy, parse_pursuer_strategy, w);
        read_number(g, "epsilon_safety", gc.epsilon_safety, w);
        read_number(g, "epsilon_range_floor", gc.epsilon_range_floor, w);
        explicit_c = g.contains("c");
        read_number(g, "c", gc.c, w);
        read_number(g, "tau", gc.tau, w);
        read_number(g, "N", gc.N, w);
        read_number(g, "k_P", gc.k_P, w);
        read_number(g, "a_E_max", gc.a_E_max, w);
        read_number(g, "a_P_max", gc.a_P_max, w);
        read_number(g, "a_D_max", gc.a_D_max, w);
        read_number(g, "sign_boundary_layer", gc.sign_boundary_layer, w);
        read_number(g, "lambda_dot_floor", gc.lambda_dot_floor, w);
        read_number(g, "cos_floor", gc.cos_floor, w);
        read_number(g, "v_D_min", gc.v_D_min, w);
        read_number(g, "v_D_max", gc.v_D_max, w);
    }
    if (!explicit_c) sc.guidance.c = default_tpn_c(sc.v_D, sc.v_P);

    if (doc.contains("sim")) {
        const json& s = doc["sim"];
        const std::string w = "sim";
        reject_unknown(s, {"dt", "t_max", "capture_radius", "integrator", "record_stride"}, w);
        read_number(s, "dt", sc.sim.dt, w);
        read_number(s, "t_max", sc.sim.t_max, w);
        read_number(s, "capture_radius", sc.sim.capture_radius, w);
        read_enum(s, "integrator", sc.sim.integrator, parse_integrator, w);
        read(s, "record_stride", sc.sim.record_stride, w);
    }
    sc.validate();
    return sc;
}

json scenario_to_json(const ScenarioConfig& sc) {
    const GuidanceConfig& g = sc.guidance;
    return json{
        {"name", sc.name},
        {"scenario",
         {{"r_EP", sc.r_EP},
          {"lambda_EP_deg", sc.lambda_EP_deg},
          {"r_DE", sc.r_DE},
          {"lambda_DE_deg", sc.lambda_DE_deg},
          {"gamma_E_deg", sc.gamma_E_deg},
          {"gamma_P_deg", sc.gamma_P_deg},
          {"gamma_D_deg", sc.gamma_D_deg},
          {"v_E", sc.v_E},
          {"v_P", sc.v_P},
          {"v_D", sc.v_D}}},
        {"guidance",
         {{"evader_gains", gains_to_json(g.evader_gains)},
          {"defender_gains", gains_to_json(g.defender_gains)},
          {"evader_epsilon", to_string(g.evader_epsilon)},
          {"defender_epsilon", to_string(g.defender_epsilon)},
          {"epsilon_safety", g.epsilon_safety},
          {"epsilon_range_floor", g.epsilon_range_floor},
          {"c", g.c},
          {"tau", g.tau},
          {"N", g.N},
          {"k_P", g.k_P},
          {"apn_sign", to_string(g.apn_sign)},
          {"a_E_max", g.a_E_max},
          {"a_P_max", g.a_P_max},
          {"a_D_max", g.a_D_max},
          {"sign_boundary_layer", g.sign_boundary_layer},
          {"lambda_dot_floor", g.lambda_dot_floor},
          {"cos_floor", g.cos_floor},
          {"v_D_min", g.v_D_min},
          {"v_D_max", g.v_D_max},
          {"defender_mode", to_string(g.defender_mode)},
          {"pursuer_strategy", to_string(g.pursuer_strategy)}}},
        {"sim",
         {{"dt", sc.sim.dt},
          {"t_max", sc.sim.t_max},
          {"capture_radius", sc.sim.capture_radius},
          {"integrator", integrator_name(sc.sim.integrator)},
          {"record_stride", sc.sim.record_stride}}}};
}

McSpec mc_spec_from_json(const json& doc) {
    reject_unknown(doc, {"name", "preset", "n_runs", "seed", "sample", "base", "assumptions"},
                   "mc");
    McSpec spec;
    if (doc.contains("preset")) {
        std::string name;
        read(doc, "preset", name, "mc");
        spec = mc_preset(name);
    }
    read(doc, "name", spec.name, "mc");
    read(doc, "n_runs", spec.n_runs, "mc");
    read(doc, "seed", spec.seed, "mc");
    read(doc, "assumptions", spec.assumptions, "mc");
    if (doc.contains("sample")) {
        const json& arr = doc["sample"];
        if (!arr.is_array()) throw ConfigError("mc.sample: expected an array");
        spec.params.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = "mc.sample[" + std::to_string(i) + "]";
            reject_unknown(arr[i], {"name", "lo", "hi"}, w);
            SampledParam p;
            read(arr[i], "name", p.name, w);
            read_number(arr[i], "lo", p.lo, w);
            read_number(arr[i], "hi", p.hi, w);
            spec.params.push_back(p);
        }
    }
    if (doc.contains("base")) spec.base = scenario_from_json(doc["base"]);
    spec.validate();
    return spec;
}

json mc_spec_to_json(const McSpec& spec) {
    json params = json::array();
    for (const auto& p : spec.params) params.push_back({{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}});
    return json{{"name", spec.name},         {"n_runs", spec.n_runs},
                {"seed", spec.seed},         {"sample", params},
                {"base", scenario_to_json(spec.base)}, {"assumptions", spec.assumptions}};
}

json outcome_to_json(const Outcome& o) {
    return json{{"verdict", to_string(o.verdict)},
                {"t_intercept", optional_number(o.t_intercept)},
                {"achieved_margin", optional_number(o.achieved_margin)},
                {"t_end", o.t_end},
                {"min_r_DP", o.min_r_DP},
                {"min_r_EP", o.min_r_EP},
                {"steps", o.steps},
                {"fallback_steps", o.fallback_steps},
                {"eps_evader_always_held", o.eps_evader_always_held},
                {"eps_defender_always_held", o.eps_defender_always_held},
                {"diagnostic", o.diagnostic}};
}

json report_to_json(const McReport& rep) {
    std::map<std::string, long> counts;
    for (const auto& r : rep.runs) ++counts[to_string(r.verdict)];
    return json{{"name", rep.name},
                {"n_runs", rep.n_runs},
                {"seed", rep.seed},
                {"sampled_params", rep.param_names},
                {"wins", rep.wins},
                {"win_rate", rep.win_rate},
                {"wilson_95", {rep.wilson_lo, rep.wilson_hi}},
                {"verdict_counts", counts},
                {"assumptions", rep.assumptions}};
}

json load_json_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw std::filesystem::filesystem_error("file not found", path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace coopdef
