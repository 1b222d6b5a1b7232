#include "coopdef/kinematics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coopdef/angles.hpp"
#include "coopdef/errors.hpp"

namespace coopdef {

GuidanceCommand GuidanceCommand::lateral(double a) {
    return GuidanceCommand{a, 0.0, std::abs(a)};
}

GuidanceCommand GuidanceCommand::los_normal(double a, double delta_DP) {
    return GuidanceCommand{a * std::cos(delta_DP), a * std::sin(delta_DP), std::abs(a)};
}

double los_normal_component(const GuidanceCommand& cmd, double delta_DP) {
    return cmd.a_lateral * std::cos(delta_DP) + cmd.a_radial * std::sin(delta_DP);
}

GuidanceCommand apply_saturation(const GuidanceCommand& cmd, double limit) {
    if (!(limit > 0.0)) throw std::invalid_argument("saturation limit must be positive");
    const double mag = std::hypot(cmd.a_lateral, cmd.a_radial);
    if (mag <= limit) return GuidanceCommand{cmd.a_lateral, cmd.a_radial, mag};
    const double k = limit / mag;
    return GuidanceCommand{cmd.a_lateral * k, cmd.a_radial * k, limit};
}

PairState relative_state(const AgentState& a, const AgentState& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double r = std::hypot(dx, dy);
    if (!(r >= kDegenerateRange)) {
        std::ostringstream msg;
        msg << "coincident agents at (" << a.x << ", " << a.y << "): LOS undefined";
        throw DegenerateGeometry(msg.str());
    }
    PairState p;
    p.r = r;
    p.lambda = std::atan2(dy, dx);
    p.delta_ij = wrap_angle(a.gamma - p.lambda);
    p.delta_ji = wrap_angle(b.gamma - p.lambda);
    p.r_dot = b.v * std::cos(p.delta_ji) - a.v * std::cos(p.delta_ij);
    p.lambda_dot = (b.v * std::sin(p.delta_ji) - a.v * std::sin(p.delta_ij)) / r;
    return p;
}

AgentRates state_derivative(const AgentState& s, const GuidanceCommand& cmd) {
    if (!(s.v > 0.0)) {
        std::ostringstream msg;
        msg << "speed must be positive, got " << s.v;
        throw InvalidState(msg.str());
    }
    return AgentRates{s.v * std::cos(s.gamma), s.v * std::sin(s.gamma), cmd.a_lateral / s.v,
                      cmd.a_radial};
}

double los_accel_DP(const PairState& pair, double a_D, double a_P, double delta_PD) {
    if (!(pair.r >= kDegenerateRange)) throw DegenerateGeometry("los_accel_DP: r = 0");
    return (-2.0 * pair.r_dot * pair.lambda_dot - a_D + a_P * std::cos(delta_PD)) / pair.r;
}

double los_accel_EP(const PairState& pair, double a_E, double a_P, double delta_EP,
                    double delta_PE) {
    if (!(pair.r >= kDegenerateRange)) throw DegenerateGeometry("los_accel_EP: r = 0");
    return (-2.0 * pair.r_dot * pair.lambda_dot - std::cos(delta_EP) * a_E +
            std::cos(delta_PE) * a_P) /
           pair.r;
}

}  // namespace coopdef
