#pragma once

// Cooperative guidance laws for the evader-defender team and the PN-family
// pursuer strategies, together with the time-to-go estimates, sliding
// manifolds and gain-sufficiency evaluators they depend on.
//
// Every function here is a pure function of its arguments.

#include <optional>
#include <string>

#include "coopdef/angles.hpp"
#include "coopdef/kinematics.hpp"

namespace coopdef {

/// Fixed-time reaching-law gains. The reaching term is
/// (zeta |s|^alpha + xi |s|^beta)^kappa.
struct GainSet {
    double zeta = 0.05;
    double xi = 0.005;
    double alpha = 0.3;
    double beta = 2.0;
    double kappa = 1.0;
    double epsilon = 0.0;  // robustness gain, used when the policy is Fixed

    /// alpha*kappa < 1 and beta*kappa > 1.
    [[nodiscard]] bool satisfies_fixed_time_premise() const;
};

enum class DefenderMode { WithEvaderAccess, WithoutEvaderAccess };
enum class PursuerStrategy { PurePN, RealisticTPN, AugmentedPN, None };
/// Sign of the PN term in augmented PN: +N v_P lambda_dot (Plus) or
/// -N v_P lambda_dot (Minus).
enum class AugmentedPnSign { Plus, Minus };
/// Fixed: use GainSet::epsilon. Adaptive: safety factor times the
/// sufficiency bound evaluated at the current state.
enum class EpsilonPolicy { Fixed, Adaptive };

struct GuidanceConfig {
    GainSet evader_gains{0.05, 0.005, 0.3, 2.0, 1.0, 0.0};
    GainSet defender_gains{0.05, 0.05, 0.3, 2.0, 1.0, 0.3};
    EpsilonPolicy evader_epsilon = EpsilonPolicy::Adaptive;
    EpsilonPolicy defender_epsilon = EpsilonPolicy::Fixed;
    double epsilon_safety = 1.2;
    double epsilon_range_floor = 10.0;  // m

    double c = 775.0;    // TPN parameter, m/s
    double tau = 5.0;    // s
    double N = 5.0;
    double k_P = 1.0;
    AugmentedPnSign apn_sign = AugmentedPnSign::Plus;

    double a_E_max = 5.0 * kGravity;
    double a_P_max = 40.0 * kGravity;
    double a_D_max = 40.0 * kGravity;

    double sign_boundary_layer = 1e-3;
    double lambda_dot_floor = 1e-4;  // rad/s
    double cos_floor = 1e-3;
    double v_D_min = 50.0;   // m/s
    double v_D_max = 600.0;  // m/s

    DefenderMode defender_mode = DefenderMode::WithEvaderAccess;
    PursuerStrategy pursuer_strategy = PursuerStrategy::PurePN;

    /// Throws ConfigError when a hard invariant (tau > 0, c > 0, limits > 0,
    /// boundary layer >= 0, ...) is violated.
    void validate() const;
};

struct ManifoldSnapshot {
    double s1 = 0.0;      // rad/s
    double s2 = 0.0;      // s
    double tgo_EP = 0.0;  // s
    double tgo_DP = 0.0;  // s
};

/// s2 = tgo_DP - tgo_EP + tau.
ManifoldSnapshot make_manifold(double lambda_dot_EP, double tgo_EP, double tgo_DP, double tau);

/// Speeds of the three agents at the current instant.
struct AgentSpeeds {
    double v_E = 0.0;
    double v_P = 0.0;
    double v_D = 0.0;
};

/// Collision-course capture time of the evader. Empty when the pair is not
/// closing (denominator <= 0).
std::optional<double> tgo_EP(const PairState& pair_EP, double v_E, double v_P);

/// TPN time-to-go of the defender-pursuer pair. Empty when the denominator
/// is below 1e-9 (v_D + v_P)^2 in magnitude.
std::optional<double> tgo_DP(const PairState& pair_DP, double v_D, double v_P, double c);

/// Exact sign (boundary_layer == 0, sign(0) = 0) or the saturation ramp
/// clamp(s / boundary_layer, -1, 1).
double smooth_sign(double s, double boundary_layer);

/// (zeta |s|^alpha + xi |s|^beta)^kappa.
double reaching_term(double s, const GainSet& g);

/// Fixed-time settling-time upper bound of the reaching law.
/// Throws ConditionViolated unless alpha*kappa < 1 < beta*kappa.
double settling_bound(const GainSet& g);

struct EpsilonRequirements {
    double eps1 = 0.0;  // evader
    double eps2 = 0.0;  // defender with evader access
    double eps3 = 0.0;  // defender without evader access
};

/// Sufficiency bounds on the robustness gains at the current state. Ranges
/// are floored at range_floor.
EpsilonRequirements epsilon_bounds(const PairState& pair_DP, const PairState& pair_EP,
                                   const AgentSpeeds& speeds, double c, double a_P_max,
                                   double a_E_max, double range_floor = 10.0);

/// Conservative time-margin feasibility:
/// tau < min(r_DP0 / (v_D_max + v_P), tgo_EP0 - t2).
bool tau_feasible(double r_DP0, double v_D_max, double v_P, double tgo_EP0, double t2,
                  double tau);

/// Unsaturated evader law; s1 = lambda_dot_EP.
double evader_law(const PairState& pair_EP, const GainSet& gains, double epsilon,
                  double boundary_layer, double cos_floor);

/// Evader command with the configured epsilon policy, saturated to a_E_max.
GuidanceCommand evader_accel(const PairState& pair_EP, const GuidanceConfig& cfg);

/// The four additive parts of the defender law.
struct DefenderTerms {
    double tpn = 0.0;          // c * lambda_dot_DP
    double evader_los = 0.0;   // lambda_dot_EP^2 compensation
    double evader_feed = 0.0;  // a_E feed-through (with access only)
    double reaching = 0.0;     // s2 reaching + robustness term

    [[nodiscard]] double total() const { return tpn + evader_los + evader_feed + reaching; }
};

/// Evaluates the defender law terms for given s2 and epsilon. a_E is ignored
/// (evader_feed = 0) when mode is WithoutEvaderAccess.
DefenderTerms defender_terms(const PairState& pair_DP, const PairState& pair_EP, double a_E,
                             double s2, double epsilon, DefenderMode mode,
                             const GuidanceConfig& cfg);

struct DefenderOutput {
    GuidanceCommand command;
    ManifoldSnapshot manifold;
    double a_D = 0.0;        // signed LOS-normal acceleration after saturation
    double epsilon = 0.0;    // robustness gain used
    bool fallback = false;   // a time-to-go was unavailable; pure TPN used
};

DefenderOutput defender_accel_with_access(const PairState& pair_DP, const PairState& pair_EP,
                                          const AgentSpeeds& speeds, double a_E,
                                          const GuidanceConfig& cfg);

DefenderOutput defender_accel_without_access(const PairState& pair_DP,
                                             const PairState& pair_EP,
                                             const AgentSpeeds& speeds,
                                             const GuidanceConfig& cfg);

/// Pursuer command of the configured strategy, saturated to a_P_max.
GuidanceCommand pursuer_accel(const PairState& pair_EP, double v_P, double a_E,
                              const GuidanceConfig& cfg);

/// Clamps |cos| to at least floor, keeping its sign (zero maps to +floor).
double clamp_cos(double c, double floor);

/// Sign-preserving magnitude floor (zero maps to +floor).
double floor_magnitude(double x, double floor);

std::string to_string(DefenderMode m);
std::string to_string(PursuerStrategy s);
std::string to_string(EpsilonPolicy p);
std::string to_string(AugmentedPnSign s);
DefenderMode parse_defender_mode(const std::string& s);
PursuerStrategy parse_pursuer_strategy(const std::string& s);
EpsilonPolicy parse_epsilon_policy(const std::string& s);
AugmentedPnSign parse_apn_sign(const std::string& s);

}  // namespace coopdef
