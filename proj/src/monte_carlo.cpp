#include "coopdef/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "coopdef/errors.hpp"

namespace coopdef {

namespace {

struct ParamSlot {
    const char* name;
    double ScenarioConfig::*field;
};

constexpr ParamSlot kScenarioFields[] = {
    {"r_EP", &ScenarioConfig::r_EP},
    {"lambda_EP_deg", &ScenarioConfig::lambda_EP_deg},
    {"r_DE", &ScenarioConfig::r_DE},
    {"lambda_DE_deg", &ScenarioConfig::lambda_DE_deg},
    {"gamma_E_deg", &ScenarioConfig::gamma_E_deg},
    {"gamma_P_deg", &ScenarioConfig::gamma_P_deg},
    {"gamma_D_deg", &ScenarioConfig::gamma_D_deg},
    {"v_E", &ScenarioConfig::v_E},
    {"v_P", &ScenarioConfig::v_P},
    {"v_D", &ScenarioConfig::v_D},
};

McRun run_one(const McSpec& spec, long index) {
    McRun run;
    run.index = index;
    run.sampled = draw_run(spec, index);
    ScenarioConfig sc = spec.base;
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        set_param(sc, spec.params[i].name, run.sampled[i]);
    }
    sc.sim.record_trace = false;
    try {
        const Outcome o = simulate(sc).outcome;
        run.verdict = o.verdict;
        run.t_intercept = o.t_intercept;
        run.achieved_margin = o.achieved_margin;
        run.min_r_DP = o.min_r_DP;
        run.min_r_EP = o.min_r_EP;
        run.diagnostic = o.diagnostic;
    } catch (const std::exception& e) {
        run.verdict = Verdict::Degenerate;
        run.diagnostic = e.what();
    }
    return run;
}

}  // namespace

std::vector<std::string> sampleable_params() {
    std::vector<std::string> names;
    for (const auto& slot : kScenarioFields) names.emplace_back(slot.name);
    names.emplace_back("tau");
    return names;
}

void set_param(ScenarioConfig& sc, const std::string& name, double value) {
    if (name == "tau") {
        sc.guidance.tau = value;
        return;
    }
    for (const auto& slot : kScenarioFields) {
        if (name == slot.name) {
            sc.*(slot.field) = value;
            return;
        }
    }
    throw ConfigError("unknown sampled parameter '" + name + "'");
}

void McSpec::validate() const {
    if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
    const auto known = sampleable_params();
    for (const auto& p : params) {
        if (std::find(known.begin(), known.end(), p.name) == known.end()) {
            throw ConfigError("unknown sampled parameter '" + p.name + "'");
        }
        if (!(p.lo < p.hi)) throw ConfigError("parameter '" + p.name + "' needs lo < hi");
    }
    base.validate();
}

std::vector<double> draw_run(const McSpec& spec, long run_index) {
    const auto idx = static_cast<std::uint64_t>(run_index);
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    std::mt19937_64 gen(seq);
    std::vector<double> values;
    values.reserve(spec.params.size());
    for (const auto& p : spec.params) {
        // 53-bit mantissa draw; std::uniform_real_distribution is not
        // specified bit-exactly across standard libraries.
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        values.push_back(p.lo + u * (p.hi - p.lo));
    }
    return values;
}

std::vector<ScenarioConfig> sample(const McSpec& spec) {
    spec.validate();
    std::vector<ScenarioConfig> out;
    out.reserve(static_cast<std::size_t>(spec.n_runs));
    for (long i = 0; i < spec.n_runs; ++i) {
        ScenarioConfig sc = spec.base;
        const auto v = draw_run(spec, i);
        for (std::size_t k = 0; k < spec.params.size(); ++k) set_param(sc, spec.params[k].name, v[k]);
        out.push_back(std::move(sc));
    }
    return out;
}

std::pair<double, double> wilson_interval(long k, long n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

McReport run_batch(const McSpec& spec, unsigned jobs) {
    spec.validate();
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto n = static_cast<std::size_t>(spec.n_runs);
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));

    std::vector<McRun> runs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            runs[i] = run_one(spec, static_cast<long>(i));
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    McReport rep;
    rep.name = spec.name;
    rep.n_runs = spec.n_runs;
    rep.seed = spec.seed;
    for (const auto& p : spec.params) rep.param_names.push_back(p.name);
    rep.assumptions = spec.assumptions;
    rep.wins = std::count_if(runs.begin(), runs.end(),
                             [](const McRun& r) { return r.verdict == Verdict::DefenderWins; });
    rep.win_rate = static_cast<double>(rep.wins) / static_cast<double>(rep.n_runs);
    std::tie(rep.wilson_lo, rep.wilson_hi) = wilson_interval(rep.wins, rep.n_runs);
    rep.runs = std::move(runs);
    return rep;
}

std::vector<std::string> mc_preset_names() { return {"mc1", "mc2", "mc3"}; }

McSpec mc_preset(const std::string& name) {
    McSpec spec;
    spec.name = name;
    spec.n_runs = 1100;
    spec.seed = 20240601;

    // Settings the studies leave open are inherited from the last case
    // study (APN pursuer, defender without evader access).
    ScenarioConfig& b = spec.base;
    b = preset("apn-without-access");
    b.name = name;
    b.r_EP = 15000.0;
    b.lambda_EP_deg = -45.0;
    b.gamma_E_deg = -5.0;
    b.gamma_P_deg = 165.0;

    spec.assumptions = {
        "pursuer strategy: augmented PN (N = 5, k_P = 1)",
        "defender law without evader access, v_D(0) = 400 m/s, c = v_D + v_P",
        "defender gains: zeta 0.01, xi 0.06, alpha 0.3, beta 2, kappa 1, epsilon 0.3",
        "lambda_DE = 45 deg",
    };

    if (name == "mc1") {
        spec.params = {{"r_DE", 0.0, 3300.0}, {"gamma_D_deg", -120.0, 15.0}};
    } else if (name == "mc2") {
        spec.params = {{"r_EP", 7000.0, 15000.0}, {"gamma_P_deg", 120.0, 220.0}};
        spec.assumptions.emplace_back("r_DE = 500 m, gamma_D = -15 deg");
    } else if (name == "mc3") {
        spec.params = {{"r_DE", 0.0, 3000.0}, {"tau", 3.0, 6.0}};
        spec.assumptions.emplace_back("gamma_D = -15 deg");
    } else {
        throw ConfigError("unknown Monte-Carlo preset '" + name + "'");
    }
    return spec;
}

}  // namespace coopdef
