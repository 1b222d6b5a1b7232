#include "coopdef/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coopdef/angles.hpp"
#include "coopdef/errors.hpp"

namespace coopdef {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

AgentState advance(const AgentState& s, const GuidanceCommand& cmd, double dt,
                   Integrator integrator) {
    auto add = [](const AgentState& a, const AgentRates& k, double h) {
        return AgentState{a.x + h * k.x_dot, a.y + h * k.y_dot, a.gamma + h * k.gamma_dot,
                          a.v + h * k.v_dot};
    };
    AgentState out;
    if (integrator == Integrator::Euler) {
        out = add(s, state_derivative(s, cmd), dt);
    } else {
        const AgentRates k1 = state_derivative(s, cmd);
        const AgentRates k2 = state_derivative(add(s, k1, 0.5 * dt), cmd);
        const AgentRates k3 = state_derivative(add(s, k2, 0.5 * dt), cmd);
        const AgentRates k4 = state_derivative(add(s, k3, dt), cmd);
        const double h = dt / 6.0;
        out.x = s.x + h * (k1.x_dot + 2.0 * k2.x_dot + 2.0 * k3.x_dot + k4.x_dot);
        out.y = s.y + h * (k1.y_dot + 2.0 * k2.y_dot + 2.0 * k3.y_dot + k4.y_dot);
        out.gamma =
            s.gamma + h * (k1.gamma_dot + 2.0 * k2.gamma_dot + 2.0 * k3.gamma_dot + k4.gamma_dot);
        out.v = s.v + h * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
    }
    out.gamma = wrap_angle(out.gamma);
    return out;
}

bool finite(const AgentState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.gamma) &&
           std::isfinite(s.v);
}

std::string describe(const EngagementState& s) {
    std::ostringstream os;
    os.precision(9);
    auto one = [&os](const char* name, const AgentState& a) {
        os << name << "(x=" << a.x << ", y=" << a.y << ", gamma=" << a.gamma << ", v=" << a.v
           << ") ";
    };
    one("E", s.evader);
    one("P", s.pursuer);
    one("D", s.defender);
    return os.str();
}

PairState nan_pair() { return PairState{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN}; }

double range(const AgentState& a, const AgentState& b) { return std::hypot(b.x - a.x, b.y - a.y); }

// Fraction of the step [prev, cur] at which the range crosses the radius.
double crossing_fraction(double prev, double cur, double radius) {
    if (!(prev > radius) || prev == cur) return 1.0;
    return std::clamp((prev - radius) / (prev - cur), 0.0, 1.0);
}

}  // namespace

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("sim.dt must be > 0");
    if (!(t_max > dt)) throw ConfigError("sim.t_max must exceed dt");
    if (!(capture_radius > 0.0)) throw ConfigError("sim.capture_radius must be > 0");
    if (record_stride < 1) throw ConfigError("sim.record_stride must be >= 1");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::DefenderWins: return "DefenderWins";
        case Verdict::PursuerWins: return "PursuerWins";
        case Verdict::Timeout: return "Timeout";
        case Verdict::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

GuidanceStep evaluate_guidance(const EngagementState& s, const GuidanceConfig& cfg) {
    GuidanceStep g;
    g.ep = relative_state(s.evader, s.pursuer);
    g.dp = relative_state(s.defender, s.pursuer);
    try {
        g.de = relative_state(s.defender, s.evader);
    } catch (const DegenerateGeometry&) {
        g.de = nan_pair();
    }

    const AgentSpeeds speeds{s.evader.v, s.pursuer.v, s.defender.v};
    g.commands.evader = evader_accel(g.ep, cfg);
    const double a_E = g.commands.evader.a_lateral;
    g.commands.pursuer = pursuer_accel(g.ep, s.pursuer.v, a_E, cfg);

    const DefenderOutput d = cfg.defender_mode == DefenderMode::WithEvaderAccess
                                 ? defender_accel_with_access(g.dp, g.ep, speeds, a_E, cfg)
                                 : defender_accel_without_access(g.dp, g.ep, speeds, cfg);
    g.commands.defender = d.command;
    g.manifold = d.manifold;
    g.a_D = d.a_D;
    g.fallback = d.fallback;

    g.required = epsilon_bounds(g.dp, g.ep, speeds, cfg.c, cfg.a_P_max, cfg.a_E_max,
                                cfg.epsilon_range_floor);
    g.eps_evader = cfg.evader_epsilon == EpsilonPolicy::Adaptive
                       ? cfg.epsilon_safety * g.required.eps1
                       : cfg.evader_gains.epsilon;
    g.eps_defender = d.epsilon;
    g.eps_evader_held = g.eps_evader > g.required.eps1;
    const double need = cfg.defender_mode == DefenderMode::WithEvaderAccess ? g.required.eps2
                                                                           : g.required.eps3;
    g.eps_defender_held = !d.fallback && g.eps_defender > need;
    return g;
}

EngagementState step(const EngagementState& s, const Commands& cmds, const SimConfig& sim,
                     double v_D_min, double v_D_max) {
    EngagementState next;
    try {
        next.evader = advance(s.evader, cmds.evader, sim.dt, sim.integrator);
        next.pursuer = advance(s.pursuer, cmds.pursuer, sim.dt, sim.integrator);
        next.defender = advance(s.defender, cmds.defender, sim.dt, sim.integrator);
    } catch (const InvalidState& e) {
        throw PropagationError(std::string("invalid state during step: ") + e.what() + "; " +
                               describe(s));
    }
    next.defender.v = std::clamp(next.defender.v, v_D_min, v_D_max);
    if (!finite(next.evader) || !finite(next.pursuer) || !finite(next.defender)) {
        throw PropagationError("non-finite state after step; pre-step " + describe(s));
    }
    return next;
}

SimResult simulate(const EngagementState& initial, const GuidanceConfig& guidance,
                   const SimConfig& sim) {
    guidance.validate();
    sim.validate();

    SimResult result;
    Outcome& out = result.outcome;
    const double radius = sim.capture_radius;
    const long max_steps = static_cast<long>(std::ceil(sim.t_max / sim.dt - 1e-9));

    EngagementState state = initial;
    double prev_r_DP = range(state.defender, state.pursuer);
    double prev_r_EP = range(state.evader, state.pursuer);
    double prev_tgo = kNaN;
    out.min_r_DP = prev_r_DP;
    out.min_r_EP = prev_r_EP;

    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * sim.dt;
        const double r_DP = range(state.defender, state.pursuer);
        const double r_EP = range(state.evader, state.pursuer);
        out.min_r_DP = std::min(out.min_r_DP, r_DP);
        out.min_r_EP = std::min(out.min_r_EP, r_EP);
        out.steps = k;

        const bool d_hit = r_DP <= radius;
        const bool p_hit = r_EP <= radius;

        GuidanceStep g;
        bool have_guidance = false;
        try {
            g = evaluate_guidance(state, guidance);
            have_guidance = true;
        } catch (const DegenerateGeometry& e) {
            if (!d_hit && !p_hit) {
                out.verdict = Verdict::Degenerate;
                out.t_end = t;
                out.diagnostic = e.what();
                return result;
            }
        }

        if (have_guidance) {
            if (sim.record_trace && k % sim.record_stride == 0) {
                result.trace.rows.push_back(TraceRow{t, state, g.ep, g.de, g.dp, g.commands,
                                                     g.manifold, g.eps_evader_held,
                                                     g.eps_defender_held, g.fallback});
            }
            if (!d_hit && !p_hit) {
                out.fallback_steps += g.fallback ? 1 : 0;
                out.eps_evader_always_held = out.eps_evader_always_held && g.eps_evader_held;
                out.eps_defender_always_held = out.eps_defender_always_held && g.eps_defender_held;
            }
        }

        if (d_hit || p_hit) {
            const double f_D = d_hit ? crossing_fraction(prev_r_DP, r_DP, radius) : 2.0;
            const double f_P = p_hit ? crossing_fraction(prev_r_EP, r_EP, radius) : 2.0;
            const double t_prev = k == 0 ? t : t - sim.dt;
            if (d_hit && f_D < f_P) {
                const double t_hit = k == 0 ? t : t_prev + f_D * sim.dt;
                const double tgo_now = have_guidance ? g.manifold.tgo_EP : kNaN;
                double margin = tgo_now;
                if (k > 0 && std::isfinite(prev_tgo) && std::isfinite(tgo_now)) {
                    margin = prev_tgo + f_D * (tgo_now - prev_tgo);
                }
                out.verdict = Verdict::DefenderWins;
                out.t_intercept = t_hit;
                if (std::isfinite(margin)) out.achieved_margin = margin;
                out.t_end = t_hit;
            } else {
                out.verdict = Verdict::PursuerWins;
                out.t_end = k == 0 ? t : t_prev + f_P * sim.dt;
            }
            return result;
        }
        if (k >= max_steps) {
            out.verdict = Verdict::Timeout;
            out.t_end = t;
            return result;
        }

        prev_r_DP = r_DP;
        prev_r_EP = r_EP;
        prev_tgo = g.manifold.tgo_EP;
        state = step(state, g.commands, sim, guidance.v_D_min, guidance.v_D_max);
    }
}

}  // namespace coopdef
