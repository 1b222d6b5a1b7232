#include "coopdef/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coopdef/errors.hpp"

namespace coopdef {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Floor on |r_dot_DP + 2c| and |r_dot_EP| inside the defender law, m/s.
constexpr double kSpeedFloor = 1e-3;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

void validate_gains(const GainSet& g, const char* who) {
    const std::string p = std::string(who) + " gains: ";
    require(g.zeta > 0.0, p + "zeta must be > 0");
    require(g.xi > 0.0, p + "xi must be > 0");
    require(g.alpha > 0.0, p + "alpha must be > 0");
    require(g.beta > 0.0, p + "beta must be > 0");
    require(g.kappa > 0.0, p + "kappa must be > 0");
    require(g.epsilon >= 0.0, p + "epsilon must be >= 0");
}

}  // namespace

bool GainSet::satisfies_fixed_time_premise() const {
    return alpha * kappa < 1.0 && beta * kappa > 1.0;
}

void GuidanceConfig::validate() const {
    validate_gains(evader_gains, "evader");
    validate_gains(defender_gains, "defender");
    require(tau > 0.0, "tau must be > 0");
    require(c > 0.0, "c must be > 0");
    require(std::isfinite(N), "N must be finite");
    require(std::isfinite(k_P), "k_P must be finite");
    require(a_E_max > 0.0 && a_P_max > 0.0 && a_D_max > 0.0,
            "saturation limits must be > 0");
    require(sign_boundary_layer >= 0.0, "sign_boundary_layer must be >= 0");
    require(lambda_dot_floor > 0.0, "lambda_dot_floor must be > 0");
    require(cos_floor > 0.0 && cos_floor < 1.0, "cos_floor must lie in (0, 1)");
    require(epsilon_safety > 0.0, "epsilon_safety must be > 0");
    require(epsilon_range_floor > 0.0, "epsilon_range_floor must be > 0");
    require(v_D_min > 0.0 && v_D_max > v_D_min, "defender speed limits must satisfy 0 < min < max");
}

ManifoldSnapshot make_manifold(double lambda_dot_EP, double tgo_ep, double tgo_dp, double tau) {
    return ManifoldSnapshot{lambda_dot_EP, tgo_dp - tgo_ep + tau, tgo_ep, tgo_dp};
}

std::optional<double> tgo_EP(const PairState& pair_EP, double v_E, double v_P) {
    const double closing = v_E * std::cos(pair_EP.delta_ij) - v_P * std::cos(pair_EP.delta_ji);
    if (!(closing > 0.0)) return std::nullopt;
    return pair_EP.r / closing;
}

std::optional<double> tgo_DP(const PairState& pair_DP, double v_D, double v_P, double c) {
    const double delta_DP = pair_DP.delta_ij;
    const double delta_PD = pair_DP.delta_ji;
    const double den = v_D * v_D + v_P * v_P - 2.0 * v_P * v_D * std::cos(delta_PD - delta_DP) +
                       2.0 * c * pair_DP.r_dot;
    const double scale = (v_D + v_P) * (v_D + v_P);
    if (!(std::abs(den) >= 1e-9 * scale)) return std::nullopt;
    const double num = -pair_DP.r * (v_P * std::cos(delta_PD) - v_D * std::cos(delta_DP) + 2.0 * c);
    return num / den;
}

double smooth_sign(double s, double boundary_layer) {
    if (boundary_layer <= 0.0) return static_cast<double>((s > 0.0) - (s < 0.0));
    return std::clamp(s / boundary_layer, -1.0, 1.0);
}

double reaching_term(double s, const GainSet& g) {
    const double m = std::abs(s);
    return std::pow(g.zeta * std::pow(m, g.alpha) + g.xi * std::pow(m, g.beta), g.kappa);
}

double settling_bound(const GainSet& g) {
    if (!(g.alpha * g.kappa < 1.0) || !(g.beta * g.kappa > 1.0)) {
        std::ostringstream msg;
        msg << "fixed-time premise violated: alpha*kappa = " << g.alpha * g.kappa
            << " (need < 1), beta*kappa = " << g.beta * g.kappa << " (need > 1)";
        throw ConditionViolated(msg.str());
    }
    return 1.0 / (std::pow(g.zeta, g.kappa) * (1.0 - g.alpha * g.kappa)) +
           1.0 / (std::pow(g.xi, g.kappa) * (g.beta * g.kappa - 1.0));
}

EpsilonRequirements epsilon_bounds(const PairState& pair_DP, const PairState& pair_EP,
                                   const AgentSpeeds& speeds, double c, double a_P_max,
                                   double a_E_max, double range_floor) {
    const double r_DP = pair_DP.r;
    const double r_EP = pair_EP.r;
    const double v_E = speeds.v_E;
    const double v_P = speeds.v_P;
    const double v_D = speeds.v_D;
    const double sum_DP = v_P + v_D;
    const double sum_EP = v_P + v_E;
    const double evader_part = r_EP / (sum_EP * sum_EP);

    EpsilonRequirements req;
    req.eps1 = a_P_max / std::max(r_EP, range_floor);

    // With access: [((v_P+v_D)^2 + 4 r c^2 + r v_D (4c + v_D + v_P))
    //               / (2 (v_P+v_D)^2 + 2c (v_P+v_D))^2 + r_EP/(v_P+v_E)^2] a_P_max
    const double den2 = 2.0 * sum_DP * sum_DP + 2.0 * c * sum_DP;
    const double num2 =
        sum_DP * sum_DP + 4.0 * r_DP * c * c + r_DP * v_D * (4.0 * c + v_D + v_P);
    req.eps2 = (num2 / (den2 * den2) + evader_part) * a_P_max;

    // Without access. The printed bound breaks a line inside (v_P + v_E)^2;
    // it is read as a single squared sum.
    const double den3 = (1.0 + r_DP) * sum_DP * sum_DP + 2.0 * c * sum_DP;
    const double num3 = r_DP * sum_DP * sum_DP + 4.0 * c * c * r_DP + (4.0 * c + sum_DP) * r_DP;
    req.eps3 = (num3 / (den3 * den3) + evader_part) * a_P_max + evader_part * a_E_max;
    return req;
}

bool tau_feasible(double r_DP0, double v_D_max, double v_P, double tgo_EP0, double t2,
                  double tau) {
    const double bound = std::min(r_DP0 / (v_D_max + v_P), tgo_EP0 - t2);
    return tau < bound;
}

double clamp_cos(double c, double floor) {
    if (std::abs(c) >= floor) return c;
    return c < 0.0 ? -floor : floor;
}

double floor_magnitude(double x, double floor) {
    if (std::abs(x) >= floor) return x;
    return x < 0.0 ? -floor : floor;
}

double evader_law(const PairState& pair_EP, const GainSet& gains, double epsilon,
                  double boundary_layer, double cos_floor) {
    const double s1 = pair_EP.lambda_dot;
    const double cos_e = clamp_cos(std::cos(pair_EP.delta_ij), cos_floor);
    const double nav = -2.0 * pair_EP.r_dot * pair_EP.lambda_dot / cos_e;
    const double correction = (pair_EP.r / cos_e) *
                              (reaching_term(s1, gains) + epsilon / cos_e) *
                              smooth_sign(s1, boundary_layer);
    return nav + correction;
}

GuidanceCommand evader_accel(const PairState& pair_EP, const GuidanceConfig& cfg) {
    const double eps = cfg.evader_epsilon == EpsilonPolicy::Adaptive
                           ? cfg.epsilon_safety * cfg.a_P_max /
                                 std::max(pair_EP.r, cfg.epsilon_range_floor)
                           : cfg.evader_gains.epsilon;
    const double a =
        evader_law(pair_EP, cfg.evader_gains, eps, cfg.sign_boundary_layer, cfg.cos_floor);
    return GuidanceCommand::lateral(std::clamp(a, -cfg.a_E_max, cfg.a_E_max));
}

DefenderTerms defender_terms(const PairState& pair_DP, const PairState& pair_EP, double a_E,
                             double s2, double epsilon, DefenderMode mode,
                             const GuidanceConfig& cfg) {
    const double c = cfg.c;
    const double r = pair_DP.r;
    const double r_dot = pair_DP.r_dot;
    const double ld = pair_DP.lambda_dot;

    // (r_dot^2 + r^2 lambda_dot^2 + 2c r_dot)^2 / (2 r^2 lambda_dot (r_dot + 2c))
    const double m = r_dot * r_dot + r * r * ld * ld + 2.0 * c * r_dot;
    const double ld_reg = floor_magnitude(ld, cfg.lambda_dot_floor);
    const double lead = floor_magnitude(r_dot + 2.0 * c, kSpeedFloor);
    const double gain = (m * m) / (2.0 * r * r * ld_reg * lead);

    const double r_EP = pair_EP.r;
    const double rd_EP = floor_magnitude(pair_EP.r_dot, kSpeedFloor);
    const double rd_EP2 = rd_EP * rd_EP;

    DefenderTerms t;
    t.tpn = c * ld;
    t.evader_los = -(r_EP * r_EP / rd_EP2) * gain * pair_EP.lambda_dot * pair_EP.lambda_dot;
    if (mode == DefenderMode::WithEvaderAccess) {
        t.evader_feed = -(r_EP * std::sin(pair_EP.delta_ij) / rd_EP2) * gain * a_E;
    }
    const double sec_dp = 1.0 / clamp_cos(std::cos(pair_DP.delta_ij), cfg.cos_floor);
    t.reaching = gain * (reaching_term(s2, cfg.defender_gains) + sec_dp * epsilon) *
                 smooth_sign(s2, cfg.sign_boundary_layer);
    return t;
}

namespace {

DefenderOutput defender_accel(const PairState& pair_DP, const PairState& pair_EP,
                              const AgentSpeeds& speeds, double a_E, DefenderMode mode,
                              const GuidanceConfig& cfg) {
    DefenderOutput out;
    const auto t_ep = tgo_EP(pair_EP, speeds.v_E, speeds.v_P);
    const auto t_dp = tgo_DP(pair_DP, speeds.v_D, speeds.v_P, cfg.c);
    out.manifold = make_manifold(pair_EP.lambda_dot, t_ep.value_or(kNaN), t_dp.value_or(kNaN),
                                 cfg.tau);

    double a = 0.0;
    if (!t_ep || !t_dp) {
        out.fallback = true;
        a = cfg.c * pair_DP.lambda_dot;
    } else {
        if (cfg.defender_epsilon == EpsilonPolicy::Adaptive) {
            const auto req = epsilon_bounds(pair_DP, pair_EP, speeds, cfg.c, cfg.a_P_max,
                                             cfg.a_E_max, cfg.epsilon_range_floor);
            out.epsilon = cfg.epsilon_safety *
                          (mode == DefenderMode::WithEvaderAccess ? req.eps2 : req.eps3);
        } else {
            out.epsilon = cfg.defender_gains.epsilon;
        }
        a = defender_terms(pair_DP, pair_EP, a_E, out.manifold.s2, out.epsilon, mode, cfg)
                .total();
    }
    out.a_D = std::clamp(a, -cfg.a_D_max, cfg.a_D_max);
    out.command = GuidanceCommand::los_normal(out.a_D, pair_DP.delta_ij);
    return out;
}

}  // namespace

DefenderOutput defender_accel_with_access(const PairState& pair_DP, const PairState& pair_EP,
                                          const AgentSpeeds& speeds, double a_E,
                                          const GuidanceConfig& cfg) {
    return defender_accel(pair_DP, pair_EP, speeds, a_E, DefenderMode::WithEvaderAccess, cfg);
}

DefenderOutput defender_accel_without_access(const PairState& pair_DP,
                                             const PairState& pair_EP,
                                             const AgentSpeeds& speeds,
                                             const GuidanceConfig& cfg) {
    return defender_accel(pair_DP, pair_EP, speeds, 0.0, DefenderMode::WithoutEvaderAccess,
                          cfg);
}

GuidanceCommand pursuer_accel(const PairState& pair_EP, double v_P, double a_E,
                              const GuidanceConfig& cfg) {
    double a = 0.0;
    switch (cfg.pursuer_strategy) {
        case PursuerStrategy::PurePN:
            a = cfg.N * v_P * pair_EP.lambda_dot;
            break;
        case PursuerStrategy::RealisticTPN:
            a = -cfg.N * pair_EP.r_dot * pair_EP.lambda_dot;
            break;
        case PursuerStrategy::AugmentedPN: {
            const double pn = cfg.N * v_P * pair_EP.lambda_dot;
            a = (cfg.apn_sign == AugmentedPnSign::Plus ? pn : -pn) + cfg.k_P * a_E;
            break;
        }
        case PursuerStrategy::None:
            break;
    }
    return GuidanceCommand::lateral(std::clamp(a, -cfg.a_P_max, cfg.a_P_max));
}

std::string to_string(DefenderMode m) {
    return m == DefenderMode::WithEvaderAccess ? "with-evader-access" : "without-evader-access";
}

std::string to_string(PursuerStrategy s) {
    switch (s) {
        case PursuerStrategy::PurePN: return "pure-pn";
        case PursuerStrategy::RealisticTPN: return "realistic-tpn";
        case PursuerStrategy::AugmentedPN: return "augmented-pn";
        case PursuerStrategy::None: return "none";
    }
    return "none";
}

std::string to_string(EpsilonPolicy p) {
    return p == EpsilonPolicy::Fixed ? "fixed" : "adaptive";
}

std::string to_string(AugmentedPnSign s) { return s == AugmentedPnSign::Plus ? "plus" : "minus"; }

DefenderMode parse_defender_mode(const std::string& s) {
    if (s == "with-evader-access") return DefenderMode::WithEvaderAccess;
    if (s == "without-evader-access") return DefenderMode::WithoutEvaderAccess;
    throw ConfigError("unknown defender_mode '" + s + "'");
}

PursuerStrategy parse_pursuer_strategy(const std::string& s) {
    if (s == "pure-pn") return PursuerStrategy::PurePN;
    if (s == "realistic-tpn") return PursuerStrategy::RealisticTPN;
    if (s == "augmented-pn") return PursuerStrategy::AugmentedPN;
    if (s == "none") return PursuerStrategy::None;
    throw ConfigError("unknown pursuer_strategy '" + s + "'");
}

EpsilonPolicy parse_epsilon_policy(const std::string& s) {
    if (s == "fixed") return EpsilonPolicy::Fixed;
    if (s == "adaptive") return EpsilonPolicy::Adaptive;
    throw ConfigError("unknown epsilon policy '" + s + "'");
}

AugmentedPnSign parse_apn_sign(const std::string& s) {
    if (s == "plus") return AugmentedPnSign::Plus;
    if (s == "minus") return AugmentedPnSign::Minus;
    throw ConfigError("unknown apn_sign '" + s + "'");
}

}  // namespace coopdef
