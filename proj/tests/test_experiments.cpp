#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coopdef/errors.hpp"
#include "coopdef/monte_carlo.hpp"
#include "coopdef/scenario.hpp"

using namespace coopdef;
using doctest::Approx;

namespace {

bool has_finding(const std::vector<Finding>& fs, Severity sev, const std::string& needle) {
    return std::any_of(fs.begin(), fs.end(), [&](const Finding& f) {
        return f.severity == sev && f.message.find(needle) != std::string::npos;
    });
}

McSpec small_spec(long n) {
    McSpec s = mc_preset("mc1");
    s.n_runs = n;
    s.base.sim.t_max = 60;
    return s;
}

}  // namespace

TEST_CASE("six named case studies") {
    CHECK(preset_names().size() == 6);
    for (const auto& n : preset_names()) {
        const ScenarioConfig sc = preset(n);
        CHECK(sc.name == n);
        CHECK_NOTHROW(sc.validate());
        CHECK(sc.v_E == 100);
        CHECK(sc.v_P == 375);
        CHECK(sc.r_EP == 15000);
        CHECK(sc.lambda_EP_deg == -45);
        CHECK(sc.gamma_P_deg == 165);
        CHECK(sc.guidance.tau == 5);
        CHECK(sc.guidance.c == default_tpn_c(sc.v_D, sc.v_P));
    }
    CHECK_THROWS_AS(preset("no-such-case"), ConfigError);
}

TEST_CASE("pure PN case with evader access") {
    const ScenarioConfig sc = preset("ppn-with-access");
    CHECK(sc.gamma_E_deg == 30);
    CHECK(sc.gamma_D_deg == 0);
    CHECK(sc.r_DE == 1000);
    CHECK(sc.lambda_DE_deg == 45);
    CHECK(sc.v_D == 400);
    const GainSet& g = sc.guidance.defender_gains;
    CHECK(g.alpha == 0.3);
    CHECK(g.zeta == 0.05);
    CHECK(g.xi == 0.05);
    CHECK(g.beta == 0.8);
    CHECK(sc.guidance.pursuer_strategy == PursuerStrategy::PurePN);
    CHECK(sc.guidance.defender_mode == DefenderMode::WithEvaderAccess);
}

TEST_CASE("realistic TPN case with evader access") {
    const ScenarioConfig sc = preset("rtpn-with-access");
    CHECK(sc.r_DE == 3000);
    CHECK(sc.lambda_DE_deg == 0);
    CHECK(sc.gamma_E_deg == -5);
    CHECK(sc.gamma_D_deg == -30);
    CHECK(sc.v_D == 370);
    CHECK(sc.guidance.defender_gains.beta == 2);
    CHECK(sc.guidance.defender_gains.xi == 1.2);
    CHECK(sc.guidance.pursuer_strategy == PursuerStrategy::RealisticTPN);
}

TEST_CASE("remaining cases") {
    const ScenarioConfig a = preset("apn-with-access");
    CHECK(a.r_DE == 0);
    CHECK(a.guidance.pursuer_strategy == PursuerStrategy::AugmentedPN);
    CHECK(a.guidance.defender_gains.alpha == 0.99);
    const ScenarioConfig b = preset("rtpn-without-access");
    CHECK(b.r_DE == 1500);
    CHECK(b.lambda_DE_deg == 110);
    CHECK(b.guidance.defender_gains.zeta == 0.1275);
    CHECK(b.guidance.defender_gains.xi == 1.8);
    CHECK(b.guidance.defender_mode == DefenderMode::WithoutEvaderAccess);
}

TEST_CASE("zero defender-evader range still runs") {
    ScenarioConfig sc = preset("apn-with-access");
    const EngagementState s = initial_state(sc);
    CHECK(std::hypot(s.defender.x - s.evader.x, s.defender.y - s.evader.y) ==
          Approx(kMinDefenderEvaderRange));
    sc.sim.t_max = 1;
    CHECK(simulate(sc).outcome.verdict == Verdict::Timeout);
}

TEST_CASE("scenario validation") {
    ScenarioConfig sc;
    sc.v_P = 0;
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioConfig{};
    sc.r_DE = -1;
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioConfig{};
    sc.gamma_D_deg = std::nan("");
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioConfig{};
    sc.sim.dt = 0;
    CHECK_THROWS_AS(sc.validate(), ConfigError);
}

TEST_CASE("scenario findings") {
    const auto case1 = check_scenario(preset("ppn-with-access"));
    CHECK(has_finding(case1, Severity::Warning, "beta*kappa = 0.8"));

    ScenarioConfig late = preset("rtpn-with-access");
    late.guidance.tau = 30;
    CHECK(has_finding(check_scenario(late), Severity::Warning, "tau = 30 s exceeds"));

    ScenarioConfig clean = preset("rtpn-with-access");
    clean.guidance.defender_gains.epsilon = 1e3;
    CHECK(check_scenario(clean).empty());

    ScenarioConfig bad;
    bad.v_E = -1;
    CHECK(has_finding(check_scenario(bad), Severity::Error, ""));
}

TEST_CASE("Monte-Carlo presets") {
    for (const auto& n : mc_preset_names()) {
        const McSpec s = mc_preset(n);
        CHECK(s.n_runs == 1100);
        CHECK(s.params.size() == 2);
        CHECK_FALSE(s.assumptions.empty());
        CHECK(s.base.gamma_E_deg == -5);
        CHECK(s.base.gamma_P_deg == 165);
        CHECK(s.base.r_EP == 15000);
    }
    const McSpec m1 = mc_preset("mc1");
    CHECK(m1.params[0].name == "r_DE");
    CHECK(m1.params[0].lo == 0);
    CHECK(m1.params[0].hi == 3300);
    CHECK(m1.params[1].name == "gamma_D_deg");
    CHECK(m1.params[1].lo == -120);
    CHECK(m1.params[1].hi == 15);
    const McSpec m2 = mc_preset("mc2");
    CHECK(m2.params[0].name == "r_EP");
    CHECK(m2.params[1].lo == 120);
    CHECK(m2.params[1].hi == 220);
    const McSpec m3 = mc_preset("mc3");
    CHECK(m3.params[1].name == "tau");
    CHECK_THROWS_AS(mc_preset("mc4"), ConfigError);
}

TEST_CASE("sampling is deterministic and in range") {
    const McSpec s = mc_preset("mc1");
    const auto a = sample(s), b = sample(s);
    REQUIRE(a.size() == 1100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].r_DE == b[i].r_DE);
        CHECK(a[i].gamma_D_deg == b[i].gamma_D_deg);
        CHECK(a[i].r_DE >= 0);
        CHECK(a[i].r_DE < 3300);
        CHECK(a[i].gamma_D_deg >= -120);
        CHECK(a[i].gamma_D_deg < 15);
    }
    // draws depend on the run index only
    McSpec one = s;
    one.n_runs = 1;
    CHECK(sample(one)[0].r_DE == a[0].r_DE);
    CHECK(draw_run(s, 517) == draw_run(s, 517));
    CHECK(draw_run(s, 517) != draw_run(s, 518));
    McSpec other = s;
    other.seed = s.seed + 1;
    CHECK(draw_run(other, 0) != draw_run(s, 0));
}

TEST_CASE("spec validation") {
    McSpec s = mc_preset("mc1");
    s.n_runs = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = mc_preset("mc1");
    s.params[0].lo = s.params[0].hi;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = mc_preset("mc1");
    s.params[0].name = "wingspan";
    CHECK_THROWS_AS(s.validate(), ConfigError);
    McSpec empty;
    empty.n_runs = 0;
    CHECK_THROWS_AS(run_batch(empty), ConfigError);
}

TEST_CASE("batch report is independent of the worker count") {
    const McSpec s = small_spec(12);
    const McReport a = run_batch(s, 1), b = run_batch(s, 4), c = run_batch(s, 1);
    REQUIRE(a.runs.size() == 12);
    CHECK(a.wins == b.wins);
    CHECK(a.win_rate == static_cast<double>(a.wins) / 12.0);
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].index == static_cast<long>(i));
        CHECK(a.runs[i].verdict == b.runs[i].verdict);
        CHECK(a.runs[i].verdict == c.runs[i].verdict);
        CHECK(a.runs[i].sampled == b.runs[i].sampled);
        CHECK(a.runs[i].t_intercept == b.runs[i].t_intercept);
        CHECK(a.runs[i].achieved_margin == c.runs[i].achieved_margin);
        // never a win for both sides
        if (a.runs[i].verdict == Verdict::DefenderWins) CHECK(a.runs[i].min_r_EP > 3.0);
        if (a.runs[i].verdict == Verdict::PursuerWins) CHECK_FALSE(a.runs[i].t_intercept.has_value());
    }
}

TEST_CASE("Wilson interval") {
    auto [lo, hi] = wilson_interval(0, 10);
    CHECK(lo == Approx(0.0).scale(1));
    CHECK(hi == Approx(0.27753).epsilon(1e-4));
    std::tie(lo, hi) = wilson_interval(1082, 1100);
    CHECK(lo < 1082.0 / 1100);
    CHECK(hi > 1082.0 / 1100);
    std::tie(lo, hi) = wilson_interval(50, 100);
    CHECK(lo == Approx(0.40383).epsilon(1e-4));
    CHECK(hi == Approx(0.59617).epsilon(1e-4));
}
