// coopdef: run engagements, Monte-Carlo batches and config checks.
//
//   coopdef run [config.json] [--preset NAME] [--out DIR] [--dt S] [--tmax S] [--format csv|json]
//   coopdef mc [spec.json] [--preset mc1|mc2|mc3] [--jobs N] [--seed S] [--out DIR] [--format csv|json]
//   coopdef validate [config.json] [--preset NAME]
//
// Exit codes: 0 ok, 1 simulation failure, 2 usage or configuration error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopdef/angles.hpp"
#include "coopdef/config_io.hpp"
#include "coopdef/errors.hpp"
#include "coopdef/monte_carlo.hpp"
#include "coopdef/scenario.hpp"
#include "coopdef/svg_plot.hpp"
#include "coopdef/trace_io.hpp"

namespace fs = std::filesystem;
using namespace coopdef;

namespace {

constexpr int kOk = 0, kSimFailure = 1, kUsage = 2;

struct Common {
    std::string config;
    std::string preset;
    std::string out = ".";
    std::optional<double> dt, tmax;
    std::string format = "csv";
};

ScenarioConfig load_scenario(const Common& c) {
    if (!c.config.empty() && !c.preset.empty()) throw ConfigError("give a config file or --preset, not both");
    ScenarioConfig sc;
    if (!c.preset.empty())
        sc = preset(c.preset);
    else if (!c.config.empty())
        sc = scenario_from_json(load_json_file(c.config));
    else
        throw ConfigError("a config file or --preset is required");
    if (c.dt) sc.sim.dt = *c.dt;
    if (c.tmax) sc.sim.t_max = *c.tmax;
    sc.validate();
    return sc;
}

void write_meta(const fs::path& dir, const std::string& command, const nlohmann::json& extra) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    nlohmann::json meta = extra;
    meta["command"] = command;
    meta["generated_at"] = stamp;
    write_text_file(dir / "meta.json", meta.dump(2) + "\n");
}

std::vector<double> column(const SimTrace& tr, double (*get)(const TraceRow&)) {
    std::vector<double> v;
    v.reserve(tr.rows.size());
    for (const auto& r : tr.rows) v.push_back(get(r));
    return v;
}

void write_plots(const fs::path& dir, const SimTrace& tr) {
    using svg::Panel;
    using svg::Series;
    const auto t = column(tr, [](const TraceRow& r) { return r.t; });
    auto km = [](double m) { return m / 1000.0; };
    std::vector<double> ex, ey, px, py, dx, dy;
    for (const auto& r : tr.rows) {
        ex.push_back(km(r.state.evader.x));
        ey.push_back(km(r.state.evader.y));
        px.push_back(km(r.state.pursuer.x));
        py.push_back(km(r.state.pursuer.y));
        dx.push_back(km(r.state.defender.x));
        dy.push_back(km(r.state.defender.y));
    }
    const std::string cE = "#1f77b4", cP = "#d62728", cD = "#2ca02c";

    Panel traj{"Trajectories", "x [km]", "y [km]",
               {{"evader", ex, ey, cE}, {"pursuer", px, py, cP}, {"defender", dx, dy, cD}}, true};
    write_text_file(dir / "trajectories.svg", svg::line_plot({traj}, 820, 560));

    Panel tgo{"Time-to-go", "t [s]", "[s]",
              {{"tgo_EP", t, column(tr, [](const TraceRow& r) { return r.manifold.tgo_EP; }), cP},
               {"tgo_DP", t, column(tr, [](const TraceRow& r) { return r.manifold.tgo_DP; }), cD}}};
    write_text_file(dir / "time_to_go.svg", svg::line_plot({tgo}));

    auto g = [](double a) { return a / kGravity; };
    std::vector<double> aE, aP, aD;
    for (const auto& r : tr.rows) {
        aE.push_back(g(r.commands.evader.a_lateral));
        aP.push_back(g(r.commands.pursuer.a_lateral));
        aD.push_back(g(r.commands.defender.a_total));
    }
    write_text_file(dir / "accelerations.svg",
                    svg::line_plot({Panel{"Evader", "t [s]", "a_E [g]", {{"a_E", t, aE, cE}}},
                                    Panel{"Pursuer", "t [s]", "a_P [g]", {{"a_P", t, aP, cP}}},
                                    Panel{"Defender", "t [s]", "|a_D| [g]", {{"a_D", t, aD, cD}}}}));

    write_text_file(
        dir / "errors.svg",
        svg::line_plot(
            {Panel{"Defender speed", "t [s]", "v_D [m/s]",
                   {{"v_D", t, column(tr, [](const TraceRow& r) { return r.state.defender.v; }), cD}}},
             Panel{"Evader sliding variable", "t [s]", "s1 [rad/s]",
                   {{"s1", t, column(tr, [](const TraceRow& r) { return r.manifold.s1; }), cE}}},
             Panel{"Defender sliding variable", "t [s]", "s2 [s]",
                   {{"s2", t, column(tr, [](const TraceRow& r) { return r.manifold.s2; }), cD}}}}));
}

void print_outcome(const ScenarioConfig& sc, const Outcome& o) {
    std::cout << sc.name << ": " << to_string(o.verdict);
    if (o.t_intercept) std::cout << " at t = " << format_number(*o.t_intercept) << " s";
    if (o.achieved_margin) std::cout << ", margin " << format_number(*o.achieved_margin) << " s";
    std::cout << "\n  min r_DP " << format_number(o.min_r_DP) << " m, min r_EP " << format_number(o.min_r_EP)
              << " m, " << o.steps << " steps";
    if (o.fallback_steps) std::cout << ", " << o.fallback_steps << " fallback steps";
    std::cout << "\n";
    if (!o.diagnostic.empty()) std::cout << "  " << o.diagnostic << "\n";
}

int cmd_run(const Common& c) {
    const ScenarioConfig sc = load_scenario(c);
    SimResult res;
    try {
        res = simulate(sc);
    } catch (const PropagationError& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kSimFailure;
    }
    const fs::path dir = c.out;
    fs::create_directories(dir);
    if (c.format == "json")
        write_text_file(dir / "trace.json", trace_to_json(res.trace).dump() + "\n");
    else
        write_text_file(dir / "trace.csv", trace_to_csv(res.trace));
    nlohmann::json out = outcome_to_json(res.outcome);
    out["scenario"] = sc.name;
    write_text_file(dir / "outcome.json", out.dump(2) + "\n");
    write_text_file(dir / "config.json", scenario_to_json(sc).dump(2) + "\n");
    write_plots(dir, res.trace);
    write_meta(dir, "run", {{"scenario", sc.name}});
    print_outcome(sc, res.outcome);
    return res.outcome.verdict == Verdict::Degenerate ? kSimFailure : kOk;
}

unsigned jobs_from_env() {
    if (const char* env = std::getenv("AD_SIM_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("AD_SIM_THREADS must be a non-negative integer, got '") + env + "'");
    }
    return 0;
}

int cmd_mc(const Common& c, std::optional<unsigned> jobs, std::optional<std::uint64_t> seed) {
    if (!c.config.empty() && !c.preset.empty()) throw ConfigError("give a spec file or --preset, not both");
    McSpec spec;
    if (!c.preset.empty())
        spec = mc_preset(c.preset);
    else if (!c.config.empty())
        spec = mc_spec_from_json(load_json_file(c.config));
    else
        throw ConfigError("a spec file or --preset is required");
    if (seed) spec.seed = *seed;
    if (c.dt) spec.base.sim.dt = *c.dt;
    if (c.tmax) spec.base.sim.t_max = *c.tmax;
    spec.validate();

    const unsigned n_jobs = jobs ? *jobs : jobs_from_env();
    const McReport rep = run_batch(spec, n_jobs);

    const fs::path dir = c.out;
    fs::create_directories(dir);
    write_text_file(dir / "report.json", report_to_json(rep).dump(2) + "\n");
    write_text_file(dir / "spec.json", mc_spec_to_json(spec).dump(2) + "\n");
    if (c.format == "json") {
        nlohmann::json runs = nlohmann::json::array();
        for (const auto& r : rep.runs) {
            nlohmann::json j{{"index", r.index}, {"verdict", to_string(r.verdict)},
                             {"min_r_DP", r.min_r_DP}, {"min_r_EP", r.min_r_EP}};
            for (std::size_t k = 0; k < rep.param_names.size(); ++k) j[rep.param_names[k]] = r.sampled[k];
            j["t_intercept"] = r.t_intercept ? nlohmann::json(*r.t_intercept) : nlohmann::json(nullptr);
            j["achieved_margin"] =
                r.achieved_margin ? nlohmann::json(*r.achieved_margin) : nlohmann::json(nullptr);
            runs.push_back(std::move(j));
        }
        write_text_file(dir / "runs.json", runs.dump() + "\n");
    } else {
        write_text_file(dir / "runs.csv", runs_to_csv(rep));
    }

    if (rep.param_names.size() >= 2) {
        std::map<Verdict, svg::ScatterGroup> groups{
            {Verdict::DefenderWins, {"defender wins", "#2ca02c", {}, {}}},
            {Verdict::PursuerWins, {"pursuer wins", "#d62728", {}, {}}},
            {Verdict::Timeout, {"timeout", "#ff7f0e", {}, {}}},
            {Verdict::Degenerate, {"degenerate", "#7f7f7f", {}, {}}}};
        for (const auto& r : rep.runs) {
            groups[r.verdict].x.push_back(r.sampled[0]);
            groups[r.verdict].y.push_back(r.sampled[1]);
        }
        std::vector<svg::ScatterGroup> gs;
        for (auto& [v, g] : groups)
            if (!g.x.empty()) gs.push_back(std::move(g));
        write_text_file(dir / "scatter.svg",
                        svg::scatter_plot(rep.name + " outcomes", rep.param_names[0], rep.param_names[1], gs));
    }
    write_meta(dir, "mc", {{"spec", rep.name}, {"jobs", n_jobs}});

    std::cout << rep.name << ": " << rep.wins << "/" << rep.n_runs << " defender wins, win rate "
              << format_number(rep.win_rate) << " (95% Wilson interval [" << format_number(rep.wilson_lo) << ", "
              << format_number(rep.wilson_hi) << "])\n";
    for (const auto& a : rep.assumptions) std::cout << "  assumption: " << a << "\n";
    return kOk;
}

int cmd_validate(const Common& c) {
    const ScenarioConfig sc = load_scenario(c);
    const auto findings = check_scenario(sc);
    if (findings.empty()) {
        std::cout << "OK\n";
        return kOk;
    }
    int errors = 0;
    for (const auto& f : findings) {
        std::cout << to_string(f.severity) << ": " << f.message << "\n";
        if (f.severity == Severity::Error) ++errors;
    }
    return errors ? kUsage : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative evader-defender engagement simulator"};
    app.require_subcommand(1);

    Common run_opts, mc_opts, val_opts;
    std::optional<unsigned> jobs;
    std::optional<std::uint64_t> seed;
    const std::vector<std::string> formats{"csv", "json"};

    auto* run = app.add_subcommand("run", "Simulate one engagement");
    run->add_option("config", run_opts.config, "Scenario JSON file");
    run->add_option("--preset", run_opts.preset, "Named case study");
    run->add_option("--out", run_opts.out, "Output directory");
    run->add_option("--dt", run_opts.dt, "Integration step [s]");
    run->add_option("--tmax", run_opts.tmax, "Horizon [s]");
    run->add_option("--format", run_opts.format, "Trace format")->check(CLI::IsMember(formats));

    auto* mc = app.add_subcommand("mc", "Run a Monte-Carlo batch");
    mc->add_option("spec", mc_opts.config, "Monte-Carlo spec JSON file");
    mc->add_option("--preset", mc_opts.preset, "mc1, mc2 or mc3");
    mc->add_option("--out", mc_opts.out, "Output directory");
    mc->add_option("--jobs", jobs, "Worker threads (0 = all cores; default $AD_SIM_THREADS)");
    mc->add_option("--seed", seed, "Override the spec seed");
    mc->add_option("--dt", mc_opts.dt, "Integration step [s]");
    mc->add_option("--tmax", mc_opts.tmax, "Horizon [s]");
    mc->add_option("--format", mc_opts.format, "Per-run table format")->check(CLI::IsMember(formats));

    auto* val = app.add_subcommand("validate", "Check a configuration");
    val->add_option("config", val_opts.config, "Scenario JSON file");
    val->add_option("--preset", val_opts.preset, "Named case study");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*run) return cmd_run(run_opts);
        if (*mc) return cmd_mc(mc_opts, jobs, seed);
        if (*val) return cmd_validate(val_opts);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.path1().string() << ": " << e.code().message() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const PropagationError& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return kSimFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSimFailure;
    }
    return kUsage;
}
