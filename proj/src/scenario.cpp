#include "coopdef/scenario.hpp"

#include <cmath>
#include <sstream>

#include "coopdef/angles.hpp"
#include "coopdef/errors.hpp"

namespace coopdef {

void ScenarioConfig::validate() const {
    if (!(v_E > 0.0 && v_P > 0.0 && v_D > 0.0)) throw ConfigError("speeds must be > 0");
    if (!(r_EP >= 0.0) || !(r_DE >= 0.0)) throw ConfigError("ranges must be >= 0");
    for (double a : {lambda_EP_deg, lambda_DE_deg, gamma_E_deg, gamma_P_deg, gamma_D_deg}) {
        if (!std::isfinite(a)) throw ConfigError("angles must be finite");
    }
    if (!std::isfinite(r_EP) || !std::isfinite(r_DE)) throw ConfigError("ranges must be finite");
    guidance.validate();
    sim.validate();
}

EngagementState initial_state(const ScenarioConfig& sc) {
    const double l_ep = deg2rad(sc.lambda_EP_deg);
    const double l_de = deg2rad(sc.lambda_DE_deg);
    const double r_de = std::max(sc.r_DE, kMinDefenderEvaderRange);
    EngagementState s;
    s.evader = AgentState{0.0, 0.0, wrap_angle(deg2rad(sc.gamma_E_deg)), sc.v_E};
    s.pursuer = AgentState{sc.r_EP * std::cos(l_ep), sc.r_EP * std::sin(l_ep),
                           wrap_angle(deg2rad(sc.gamma_P_deg)), sc.v_P};
    s.defender = AgentState{-r_de * std::cos(l_de), -r_de * std::sin(l_de),
                            wrap_angle(deg2rad(sc.gamma_D_deg)), sc.v_D};
    return s;
}

SimResult simulate(const ScenarioConfig& sc) {
    sc.validate();
    return simulate(initial_state(sc), sc.guidance, sc.sim);
}

std::string to_string(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "info";
}

std::vector<Finding> check_scenario(const ScenarioConfig& sc) {
    std::vector<Finding> out;
    try {
        sc.validate();
    } catch (const ConfigError& e) {
        out.push_back({Severity::Error, e.what()});
        return out;
    }

    auto premise = [&out](const GainSet& g, const char* who) {
        std::ostringstream os;
        if (!(g.alpha * g.kappa < 1.0)) {
            os << who << " gains: alpha*kappa = " << g.alpha * g.kappa
               << " >= 1 violates the fixed-time premise";
            out.push_back({Severity::Warning, os.str()});
        }
        if (!(g.beta * g.kappa > 1.0)) {
            std::ostringstream ob;
            ob << who << " gains: beta*kappa = " << g.beta * g.kappa
               << " <= 1 violates the fixed-time premise";
            out.push_back({Severity::Warning, ob.str()});
        }
    };
    premise(sc.guidance.evader_gains, "evader");
    premise(sc.guidance.defender_gains, "defender");

    const EngagementState s0 = initial_state(sc);
    PairState ep, dp;
    try {
        ep = relative_state(s0.evader, s0.pursuer);
        dp = relative_state(s0.defender, s0.pursuer);
    } catch (const DegenerateGeometry& e) {
        out.push_back({Severity::Error, std::string("initial geometry: ") + e.what()});
        return out;
    }

    const auto tgo0 = tgo_EP(ep, sc.v_E, sc.v_P);
    if (!tgo0) {
        out.push_back({Severity::Warning,
                       "pursuer is not closing on the evader at t = 0; evader time-to-go undefined"});
    }
    if (tgo0 && sc.guidance.defender_gains.satisfies_fixed_time_premise()) {
        const double t2 = settling_bound(sc.guidance.defender_gains);
        if (!tau_feasible(dp.r, sc.guidance.v_D_max, sc.v_P, *tgo0, t2, sc.guidance.tau)) {
            std::ostringstream os;
            os.precision(6);
            os << "tau = " << sc.guidance.tau << " s exceeds the conservative margin bound min{"
               << dp.r / (sc.guidance.v_D_max + sc.v_P) << ", " << *tgo0 - t2 << "} s";
            out.push_back({Severity::Warning, os.str()});
        }
    }

    const auto req = epsilon_bounds(dp, ep, AgentSpeeds{sc.v_E, sc.v_P, sc.v_D}, sc.guidance.c,
                                    sc.guidance.a_P_max, sc.guidance.a_E_max,
                                    sc.guidance.epsilon_range_floor);
    if (sc.guidance.evader_epsilon == EpsilonPolicy::Fixed &&
        !(sc.guidance.evader_gains.epsilon > req.eps1)) {
        std::ostringstream os;
        os << "evader epsilon = " << sc.guidance.evader_gains.epsilon
           << " is below the initial sufficiency bound " << req.eps1;
        out.push_back({Severity::Warning, os.str()});
    }
    if (sc.guidance.defender_epsilon == EpsilonPolicy::Fixed) {
        const double need = sc.guidance.defender_mode == DefenderMode::WithEvaderAccess ? req.eps2
                                                                                       : req.eps3;
        if (!(sc.guidance.defender_gains.epsilon > need)) {
            std::ostringstream os;
            os << "defender epsilon = " << sc.guidance.defender_gains.epsilon
               << " is below the initial sufficiency bound " << need
               << "; convergence relies on the reaching term";
            out.push_back({Severity::Info, os.str()});
        }
    }
    if (sc.guidance.pursuer_strategy == PursuerStrategy::AugmentedPN &&
        sc.guidance.apn_sign == AugmentedPnSign::Minus) {
        out.push_back({Severity::Info, "augmented PN uses the negated PN term"});
    }
    return out;
}

double default_tpn_c(double v_D, double v_P) { return v_D + v_P; }

std::vector<std::string> preset_names() {
    return {"ppn-with-access",    "rtpn-with-access",    "apn-with-access",
            "ppn-without-access", "rtpn-without-access", "apn-without-access"};
}

ScenarioConfig preset(const std::string& name) {
    ScenarioConfig sc;  // common engagement: r_EP 15 km, lambda_EP -45 deg, gamma_P 165 deg
    sc.name = name;
    GuidanceConfig& g = sc.guidance;
    g.evader_gains = GainSet{0.05, 0.005, 0.3, 2.0, 1.0, 0.0};
    g.defender_gains.kappa = 1.0;
    g.defender_gains.alpha = 0.3;
    g.defender_gains.beta = 2.0;  // unstated for all but the first two cases
    g.defender_gains.epsilon = 0.3;
    sc.sim.t_max = 120.0;

    if (name == "ppn-with-access") {
        g.pursuer_strategy = PursuerStrategy::PurePN;
        g.defender_mode = DefenderMode::WithEvaderAccess;
        g.defender_gains.zeta = 0.05;
        g.defender_gains.xi = 0.05;
        g.defender_gains.beta = 0.8;
        sc.v_D = 400.0;
        sc.r_DE = 1000.0;
        sc.lambda_DE_deg = 45.0;
        sc.gamma_E_deg = 30.0;
        sc.gamma_D_deg = 0.0;
    } else if (name == "rtpn-with-access") {
        g.pursuer_strategy = PursuerStrategy::RealisticTPN;
        g.defender_mode = DefenderMode::WithEvaderAccess;
        g.defender_gains.zeta = 0.05;
        g.defender_gains.xi = 1.2;
        g.defender_gains.beta = 2.0;
        sc.v_D = 370.0;
        sc.r_DE = 3000.0;
        sc.lambda_DE_deg = 0.0;
        sc.gamma_E_deg = -5.0;
        sc.gamma_D_deg = -30.0;
    } else if (name == "apn-with-access") {
        g.pursuer_strategy = PursuerStrategy::AugmentedPN;
        g.defender_mode = DefenderMode::WithEvaderAccess;
        g.defender_gains.alpha = 0.99;
        g.defender_gains.zeta = 0.01;
        g.defender_gains.xi = 0.07;
        sc.v_D = 370.0;
        sc.r_DE = 0.0;
        sc.lambda_DE_deg = 45.0;
        sc.gamma_E_deg = 60.0;
        sc.gamma_D_deg = -15.0;
    } else if (name == "ppn-without-access") {
        g.pursuer_strategy = PursuerStrategy::PurePN;
        g.defender_mode = DefenderMode::WithoutEvaderAccess;
        g.defender_gains.zeta = 0.05;
        g.defender_gains.xi = 0.99;
        sc.v_D = 400.0;
        sc.r_DE = 2000.0;
        sc.lambda_DE_deg = 60.0;
        sc.gamma_E_deg = 30.0;
        sc.gamma_D_deg = -15.0;
    } else if (name == "rtpn-without-access") {
        g.pursuer_strategy = PursuerStrategy::RealisticTPN;
        g.defender_mode = DefenderMode::WithoutEvaderAccess;
        g.defender_gains.zeta = 0.1275;
        g.defender_gains.xi = 1.8;
        sc.v_D = 400.0;
        sc.r_DE = 1500.0;
        sc.lambda_DE_deg = 110.0;
        sc.gamma_E_deg = -5.0;
        sc.gamma_D_deg = 0.0;
    } else if (name == "apn-without-access") {
        g.pursuer_strategy = PursuerStrategy::AugmentedPN;
        g.defender_mode = DefenderMode::WithoutEvaderAccess;
        g.defender_gains.zeta = 0.01;
        g.defender_gains.xi = 0.06;
        sc.v_D = 400.0;
        sc.r_DE = 500.0;
        sc.lambda_DE_deg = 45.0;
        sc.gamma_E_deg = 60.0;
        sc.gamma_D_deg = -15.0;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    g.c = default_tpn_c(sc.v_D, sc.v_P);
    return sc;
}

}  // namespace coopdef
