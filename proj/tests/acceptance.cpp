// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "coopdef/monte_carlo.hpp"
#include "coopdef/scenario.hpp"
#include "coopdef/trace_io.hpp"

using namespace coopdef;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(bool ok, const char* id, const std::string& what, const std::string& detail) {
    std::printf("%s %-4s %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Last instant at which |value| was at or above the threshold; 0 if never.
template <typename Get>
double settle_time(const SimTrace& tr, Get get, double threshold) {
    double last = 0.0;
    for (const auto& r : tr.rows) {
        const double v = get(r);
        if (!std::isfinite(v) || std::abs(v) >= threshold) last = r.t;
    }
    return last;
}

void criterion1() {
    const auto t0 = Clock::now();
    const SimResult r = simulate(preset("ppn-with-access"));
    const double wall = seconds_since(t0);
    const bool win = r.outcome.verdict == Verdict::DefenderWins && r.outcome.achieved_margin;
    const double m = win ? *r.outcome.achieved_margin : NAN;
    report(win && std::abs(m - 5.0) <= 0.5, "1a", "case 1 defender wins with margin 5 +- 0.5 s",
           to_string(r.outcome.verdict) + ", margin " + fmt("%.4f s", m));
    report(wall < 5.0, "1b", "case 1 runtime below 5 s at dt = 1 ms", fmt("%.3f s", wall));
}

void criterion2() {
    const SimResult r = simulate(preset("ppn-with-access"));
    const double t1 = settle_time(r.trace, [](const TraceRow& x) { return x.ep.lambda_dot; }, 1e-3);
    const double t2 = settle_time(r.trace, [](const TraceRow& x) { return x.manifold.s2; }, 0.1);
    report(std::abs(t1 - 15.0) <= 3.0, "2a", "|lambda_dot_EP| < 1e-3 rad/s from t = 15 +- 3 s",
           fmt("settles at %.3f s", t1));
    report(std::abs(t2 - 18.0) <= 4.0, "2b", "|s2| < 0.1 s from t = 18 +- 4 s", fmt("settles at %.3f s", t2));
}

void criterion3() {
    const SimResult r = simulate(preset("rtpn-without-access"));
    const bool win = r.outcome.verdict == Verdict::DefenderWins && r.outcome.t_intercept;
    const double t = win ? *r.outcome.t_intercept : NAN;
    report(win && std::abs(t - 32.0) <= 3.0, "3", "RTPN without access intercepts at 32 +- 3 s",
           to_string(r.outcome.verdict) + fmt(" at %.3f s", t));
}

void criterion4() {
    const auto t0 = Clock::now();
    struct Case {
        const char* name;
        const char* id;
        double need;
    };
    for (const Case c : {Case{"mc1", "4a", 0.95}, Case{"mc2", "4b", 0.90}, Case{"mc3", "4c", 1.0}}) {
        const McReport rep = run_batch(mc_preset(c.name), 0);
        report(rep.win_rate >= c.need, c.id,
               std::string(c.name) + fmt(" win rate >= %.2f over %.0f runs", c.need, rep.n_runs),
               fmt("%.4f", rep.win_rate) + fmt(", Wilson 95%% [%.4f, %.4f]", rep.wilson_lo, rep.wilson_hi));
    }
    const double wall = seconds_since(t0);
    report(wall < 600.0, "4d", "three Monte-Carlo batches finish within 10 min", fmt("%.1f s", wall));
}

// Runs the scenario and reports whether s1 and s2 enter and keep their bands
// before the engagement ends and before their settling bounds.
bool settles(const ScenarioConfig& sc, double bound1, double bound2, double& t1, double& t2) {
    const SimResult r = simulate(sc);
    t1 = settle_time(r.trace, [](const TraceRow& x) { return x.manifold.s1; }, 1e-3);
    t2 = settle_time(r.trace, [](const TraceRow& x) { return x.manifold.s2; }, 0.1);
    const bool ended = r.outcome.verdict == Verdict::DefenderWins;
    return ended && t1 < r.outcome.t_end && t2 < r.outcome.t_end && t1 < bound1 && t2 < bound2;
}

void criterion5() {
    std::mt19937_64 gen(5150);
    auto U = [&gen](double lo, double hi) {
        return lo + static_cast<double>(gen() >> 11) * 0x1.0p-53 * (hi - lo);
    };
    GuidanceConfig g;  // compliant gains on both sides
    const double bound1 = settling_bound(g.evader_gains);
    const double bound2 = settling_bound(g.defender_gains);

    int runs = 0, ok = 0, drawn = 0;
    double worst1 = 0, worst2 = 0;
    while (runs < 100 && drawn < 10000) {
        ++drawn;
        ScenarioConfig sc;
        sc.guidance = g;
        sc.r_EP = U(12000, 16000);
        sc.lambda_EP_deg = U(-60, -30);
        sc.gamma_P_deg = sc.lambda_EP_deg + 180 + U(-10, 10);
        sc.gamma_E_deg = U(-10, 35);
        sc.r_DE = U(500, 2000);
        sc.lambda_DE_deg = U(30, 60);
        sc.gamma_D_deg = U(-30, 10);
        sc.guidance.c = default_tpn_c(sc.v_D, sc.v_P);

        // feasible: both time-to-go estimates exist and tau respects the range part of the bound
        const EngagementState s0 = initial_state(sc);
        const PairState ep = relative_state(s0.evader, s0.pursuer);
        const PairState dp = relative_state(s0.defender, s0.pursuer);
        const auto t_ep = tgo_EP(ep, sc.v_E, sc.v_P);
        const auto t_dp = tgo_DP(dp, sc.v_D, sc.v_P, sc.guidance.c);
        if (!t_ep || !t_dp || *t_dp <= 0) continue;
        if (!tau_feasible(dp.r, sc.guidance.v_D_max, sc.v_P, *t_ep, 0.0, sc.guidance.tau)) continue;

        ++runs;
        double t1 = 0, t2 = 0;
        if (settles(sc, bound1, bound2, t1, t2)) ++ok;
        worst1 = std::max(worst1, t1);
        worst2 = std::max(worst2, t2);
    }
    report(runs >= 100 && ok == runs, "5", "s1 and s2 settle within their fixed-time bounds on random feasible runs",
           std::to_string(ok) + "/" + std::to_string(runs) + " runs; worst " + fmt("%.2f s / %.2f s", worst1, worst2) +
               fmt(" vs bounds %.1f s / %.1f s", bound1, bound2));
}

void criterion6() {
    // (a) head-on TPN time-to-go
    double worst = 0;
    for (double r : {500.0, 10000.0, 40000.0}) {
        for (double c = 1e-2; c <= 1e2 * 1.0001; c *= std::pow(10.0, 0.125)) {
            const PairState p = relative_state(AgentState{0, 0, 0, 400}, AgentState{r, 0, kPi, 375});
            const auto t = tgo_DP(p, 400, 375, c);
            const double rel = t ? std::abs(*t - r / 775.0) / (r / 775.0) : 1.0;
            worst = std::max(worst, rel);
        }
    }
    report(worst <= 1e-9, "6a", "head-on tgo_DP = r/(v_P + v_D) for c in [1e-2, 1e2]", fmt("max rel err %.2e", worst));

    // (b) LOS acceleration closed forms against centered differences under held commands
    double worst_dp = 0, worst_ep = 0;
    for (const auto& name : preset_names()) {
        const ScenarioConfig sc = preset(name);
        const SimResult r = simulate(sc);
        SimConfig sim = sc.sim;
        for (double t : {1.0, 5.0, 10.0, 15.0, 20.0}) {
            const auto& row = r.trace.rows.at(static_cast<std::size_t>(std::lround(t / sim.dt)));
            const GuidanceStep gs = evaluate_guidance(row.state, sc.guidance);
            auto prop = [&](double h) {
                SimConfig s = sim;
                s.dt = h;
                return step(row.state, gs.commands, s, 0.0, 1e9);
            };
            const EngagementState f = prop(sim.dt), b = prop(-sim.dt);
            const double fd_dp = (relative_state(f.defender, f.pursuer).lambda_dot -
                                  relative_state(b.defender, b.pursuer).lambda_dot) / (2 * sim.dt);
            const double fd_ep = (relative_state(f.evader, f.pursuer).lambda_dot -
                                  relative_state(b.evader, b.pursuer).lambda_dot) / (2 * sim.dt);
            const double a_P = gs.commands.pursuer.a_lateral;
            const double cf_dp = los_accel_DP(gs.dp, gs.a_D, a_P, gs.dp.delta_ji);
            const double cf_ep =
                los_accel_EP(gs.ep, gs.commands.evader.a_lateral, a_P, gs.ep.delta_ij, gs.ep.delta_ji);
            worst_dp = std::max(worst_dp, std::abs(fd_dp - cf_dp));
            worst_ep = std::max(worst_ep, std::abs(fd_ep - cf_ep));
        }
    }
    report(worst_dp <= 1e-4 && worst_ep <= 1e-4, "6b",
           "LOS acceleration closed forms match finite differences within 1e-4 rad/s^2",
           fmt("max |err| DP %.2e, EP %.2e", worst_dp, worst_ep));

    // (c) non-maneuvering collision course
    const double lam = deg2rad(-45), gE = deg2rad(30), vE = 100, vP = 375, r0 = 15000;
    const double dP = kPi - std::asin(vE * std::sin(wrap_angle(gE - lam)) / vP);
    EngagementState s{AgentState{0, 0, gE, vE},
                      AgentState{r0 * std::cos(lam), r0 * std::sin(lam), wrap_angle(lam + dP), vP},
                      AgentState{-5000, 5000, 0, 400}};
    const double pred = *tgo_EP(relative_state(s.evader, s.pursuer), vE, vP);
    SimConfig sim;
    double prev = r0, t = 0;
    for (;;) {
        const EngagementState n = step(s, Commands{}, sim, 50, 600);
        const double r = relative_state(n.evader, n.pursuer).r;
        if (r > prev) break;
        prev = r;
        s = n;
        t += sim.dt;
    }
    report(std::abs(t - pred) <= sim.dt, "6c", "collision-course capture at tgo_EP(0) +- dt",
           fmt("closest approach at %.4f s, predicted %.4f s", t, pred));

    // (d) with-access minus without-access equals the evader feed-through term
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    GuidanceConfig cfg;
    double worst_d = 0;
    for (int i = 0; i < 1000; ++i) {
        PairState dp, ep;
        dp.r = 500 + 15000 * U(gen);
        dp.r_dot = -(300 + 500 * U(gen));
        dp.lambda_dot = (U(gen) - 0.5) * 0.1;
        dp.delta_ij = (U(gen) - 0.5) * 2.5;
        ep.r = 1000 + 15000 * U(gen);
        ep.r_dot = -(200 + 250 * U(gen));
        ep.lambda_dot = (U(gen) - 0.5) * 0.05;
        ep.delta_ij = (U(gen) - 0.5) * 2.5;
        const double a_E = (U(gen) - 0.5) * 98.1, s2 = (U(gen) - 0.5) * 20;
        const DefenderTerms w = defender_terms(dp, ep, a_E, s2, 0.3, DefenderMode::WithEvaderAccess, cfg);
        const DefenderTerms wo = defender_terms(dp, ep, a_E, s2, 0.3, DefenderMode::WithoutEvaderAccess, cfg);
        const double M = dp.r_dot * dp.r_dot + dp.r * dp.r * dp.lambda_dot * dp.lambda_dot + 2 * cfg.c * dp.r_dot;
        const double ld = std::abs(dp.lambda_dot) < cfg.lambda_dot_floor
                              ? std::copysign(cfg.lambda_dot_floor, dp.lambda_dot)
                              : dp.lambda_dot;
        const double K = M * M / (2 * dp.r * dp.r * ld * (dp.r_dot + 2 * cfg.c));
        const double feed = -ep.r * std::sin(ep.delta_ij) / (ep.r_dot * ep.r_dot) * K * a_E;
        const double diff = w.total() - wo.total();
        worst_d = std::max(worst_d, std::abs(diff - feed) / std::max(1e-9, std::abs(feed)));
        if (!(w.tpn == wo.tpn && w.evader_los == wo.evader_los && w.reaching == wo.reaching)) worst_d = 1;
    }
    report(worst_d <= 1e-9, "6d", "with-access law minus without-access law equals the a_E feed-through term",
           fmt("max rel err %.2e over 1000 snapshots", worst_d));
}

void criterion7() {
    double drift = 0, halving = 0;
    std::string worst_case;
    bool identical = true;
    for (const auto& name : preset_names()) {
        ScenarioConfig sc = preset(name);
        const SimResult a = simulate(sc);
        for (const auto& row : a.trace.rows) {
            drift = std::max(drift, std::abs(row.state.evader.v - sc.v_E) / sc.v_E);
            drift = std::max(drift, std::abs(row.state.pursuer.v - sc.v_P) / sc.v_P);
        }
        const SimResult again = simulate(sc);
        if (a.trace.rows.size() != again.trace.rows.size()) identical = false;
        for (std::size_t i = 0; identical && i < a.trace.rows.size(); ++i) {
            const auto x = trace_values(a.trace.rows[i]), y = trace_values(again.trace.rows[i]);
            identical = std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
        }

        ScenarioConfig half = sc;
        half.sim.dt = sc.sim.dt / 2;
        half.sim.record_trace = false;
        const Outcome b = simulate(half).outcome;
        const double d = (a.outcome.t_intercept && b.t_intercept) ? std::abs(*a.outcome.t_intercept - *b.t_intercept)
                                                                  : INFINITY;
        if (d > halving) {
            halving = d;
            worst_case = name;
        }
    }
    report(drift <= 1e-9, "7a", "pursuer and evader speed drift <= 1e-9 relative", fmt("max %.2e", drift));
    report(halving < 1e-3, "7b", "halving dt moves t_intercept by < 1e-3 s on all six cases",
           fmt("max %.2e s", halving) + " (" + worst_case + ")");

    McSpec spec = mc_preset("mc1");
    spec.n_runs = 30;
    const McReport r1 = run_batch(spec, 1), r2 = run_batch(spec, std::max(2u, std::thread::hardware_concurrency()));
    bool same_report = r1.wins == r2.wins;
    for (std::size_t i = 0; i < r1.runs.size(); ++i) {
        same_report = same_report && r1.runs[i].sampled == r2.runs[i].sampled &&
                      r1.runs[i].verdict == r2.runs[i].verdict && r1.runs[i].t_intercept == r2.runs[i].t_intercept;
    }
    report(identical && same_report, "7c", "bit-identical reruns and worker-count independent batches",
           std::string(identical ? "traces identical" : "traces differ") +
               (same_report ? ", batch reports identical" : ", batch reports differ"));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion5();
    criterion6();
    criterion7();
    criterion4();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
