#pragma once

// Planar nonholonomic agent model and pairwise relative motion.
//
// Pursuer and evader fly at constant speed and steer with a lateral
// acceleration. The defender additionally changes speed through a radial
// channel. Pair quantities follow the ordered-pair convention: the LOS of
// pair (i, j) points from agent i toward agent j.

namespace coopdef {

/// Ranges below this are treated as coincident positions.
inline constexpr double kDegenerateRange = 1e-6;

struct AgentState {
    double x = 0.0;      // m, east
    double y = 0.0;      // m, north
    double gamma = 0.0;  // rad, heading in (-pi, pi]
    double v = 0.0;      // m/s, > 0
};

struct AgentRates {
    double x_dot = 0.0;
    double y_dot = 0.0;
    double gamma_dot = 0.0;
    double v_dot = 0.0;
};

struct PairState {
    double r = 0.0;           // m
    double lambda = 0.0;      // rad, LOS from first agent to second
    double r_dot = 0.0;       // m/s
    double lambda_dot = 0.0;  // rad/s
    double delta_ij = 0.0;    // first agent's heading relative to the LOS
    double delta_ji = 0.0;    // second agent's heading relative to the LOS
};

/// Steering command. For pursuer and evader only a_lateral is used. For the
/// defender a_lateral is the heading-rate channel and a_radial the speed
/// channel; the pair is the LOS-normal acceleration split by the bearing.
struct GuidanceCommand {
    double a_lateral = 0.0;  // m/s^2
    double a_radial = 0.0;   // m/s^2
    double a_total = 0.0;    // m/s^2, magnitude

    static GuidanceCommand lateral(double a);
    /// Splits a signed LOS-normal acceleration: a_lateral = a cos(delta),
    /// a_radial = a sin(delta).
    static GuidanceCommand los_normal(double a, double delta_DP);
};

/// Signed LOS-normal acceleration carried by a defender command.
double los_normal_component(const GuidanceCommand& cmd, double delta_DP);

/// Clamps the command magnitude to limit, preserving direction. Both
/// defender channels are rescaled by the same factor.
GuidanceCommand apply_saturation(const GuidanceCommand& cmd, double limit);

/// Closed-form relative state of the ordered pair (a, b).
/// Throws DegenerateGeometry when the positions coincide.
PairState relative_state(const AgentState& a, const AgentState& b);

/// Equations of motion. Throws InvalidState when v <= 0.
AgentRates state_derivative(const AgentState& s, const GuidanceCommand& cmd);

/// LOS acceleration of the defender-pursuer pair; a_D is the signed
/// LOS-normal defender acceleration.
double los_accel_DP(const PairState& pair, double a_D, double a_P, double delta_PD);

/// LOS acceleration of the evader-pursuer pair.
double los_accel_EP(const PairState& pair, double a_E, double a_P, double delta_EP,
                    double delta_PE);

}  // namespace coopdef
