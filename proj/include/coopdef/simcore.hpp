#pragma once

// Fixed-step closed-loop propagation of the pursuer / evader / defender
// engagement with event detection and trace recording.

#include <optional>
#include <string>
#include <vector>

#include "coopdef/guidance.hpp"
#include "coopdef/kinematics.hpp"

namespace coopdef {

enum class Integrator { Rk4, Euler };

struct SimConfig {
    double dt = 1e-3;              // s
    double t_max = 120.0;          // s
    double capture_radius = 3.0;   // m
    Integrator integrator = Integrator::Rk4;
    int record_stride = 1;         // steps per trace row
    bool record_trace = true;

    void validate() const;
};

struct EngagementState {
    AgentState evader;
    AgentState pursuer;
    AgentState defender;
};

struct Commands {
    GuidanceCommand evader;
    GuidanceCommand pursuer;
    GuidanceCommand defender;
};

/// Everything the guidance layer derives from one pre-step state.
struct GuidanceStep {
    PairState ep;  // evader -> pursuer
    PairState de;  // defender -> evader; NaN when D and E coincide
    PairState dp;  // defender -> pursuer
    Commands commands;
    ManifoldSnapshot manifold;
    double a_D = 0.0;  // signed LOS-normal defender acceleration
    EpsilonRequirements required;
    double eps_evader = 0.0;
    double eps_defender = 0.0;
    bool eps_evader_held = false;
    bool eps_defender_held = false;
    bool fallback = false;
};

/// Evaluates the evader, pursuer and defender laws on one state.
/// Throws DegenerateGeometry when E-P or D-P positions coincide.
GuidanceStep evaluate_guidance(const EngagementState& s, const GuidanceConfig& cfg);

/// Advances all three agents by one step with commands held constant.
/// Headings are wrapped and the defender speed clamped to [v_D_min, v_D_max].
/// Throws PropagationError on a non-finite result.
EngagementState step(const EngagementState& s, const Commands& cmds, const SimConfig& sim,
                     double v_D_min, double v_D_max);

struct TraceRow {
    double t = 0.0;
    EngagementState state;
    PairState ep, de, dp;
    Commands commands;
    ManifoldSnapshot manifold;
    bool eps_evader_held = false;
    bool eps_defender_held = false;
    bool fallback = false;
};

struct SimTrace {
    std::vector<TraceRow> rows;
};

enum class Verdict { DefenderWins, PursuerWins, Timeout, Degenerate };

std::string to_string(Verdict v);

struct Outcome {
    Verdict verdict = Verdict::Timeout;
    std::optional<double> t_intercept;      // defender-pursuer interception instant
    std::optional<double> achieved_margin;  // tgo_EP at interception
    double t_end = 0.0;                     // instant of the terminal event
    double min_r_DP = 0.0;
    double min_r_EP = 0.0;
    long steps = 0;
    long fallback_steps = 0;
    bool eps_evader_always_held = true;
    bool eps_defender_always_held = true;
    std::string diagnostic;
};

struct SimResult {
    SimTrace trace;
    Outcome outcome;
};

/// Runs the closed loop from the given initial state until interception,
/// capture of the evader, or t_max. Degenerate initial geometry yields the
/// Degenerate verdict; PropagationError propagates to the caller.
SimResult simulate(const EngagementState& initial, const GuidanceConfig& guidance,
                   const SimConfig& sim);

/// Number of trace rows produced by a run of the given length.
inline long expected_row_count(long steps, int stride) { return steps / stride + 1; }

}  // namespace coopdef
