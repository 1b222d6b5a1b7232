#pragma once

// Scenario definition, validation and the six named case-study presets.

#include <string>
#include <vector>

#include "coopdef/guidance.hpp"
#include "coopdef/simcore.hpp"

namespace coopdef {

/// Initial geometry in the evader-centred frame. The pursuer sits at
/// r_EP along lambda_EP from the evader; the evader sits at r_DE along
/// lambda_DE from the defender. Angles in degrees, SI otherwise.
struct ScenarioConfig {
    std::string name = "custom";
    double r_EP = 15000.0;
    double lambda_EP_deg = -45.0;
    double r_DE = 1000.0;
    double lambda_DE_deg = 45.0;
    double gamma_E_deg = 30.0;
    double gamma_P_deg = 165.0;
    double gamma_D_deg = 0.0;
    double v_E = 100.0;
    double v_P = 375.0;
    double v_D = 400.0;
    GuidanceConfig guidance;
    SimConfig sim;

    /// Throws ConfigError on hard violations (non-positive speeds, negative
    /// ranges, non-finite angles, invalid guidance or sim settings).
    void validate() const;
};

/// Minimum defender-evader separation used when a configuration places the
/// two on top of each other.
inline constexpr double kMinDefenderEvaderRange = 1.0;

/// Initial agent states. r_DE below kMinDefenderEvaderRange is raised to it.
EngagementState initial_state(const ScenarioConfig& sc);

SimResult simulate(const ScenarioConfig& sc);

enum class Severity { Info, Warning, Error };
std::string to_string(Severity s);

struct Finding {
    Severity severity = Severity::Info;
    std::string message;
};

/// Consistency checks beyond hard validation: fixed-time exponent premises,
/// the conservative time-margin bound, robustness-gain requirements.
std::vector<Finding> check_scenario(const ScenarioConfig& sc);

/// Names accepted by preset().
std::vector<std::string> preset_names();

/// One of the six case studies. Throws ConfigError for unknown names.
ScenarioConfig preset(const std::string& name);

/// TPN parameter used by the presets: c = v_D + v_P.
double default_tpn_c(double v_D, double v_P);

}  // namespace coopdef
