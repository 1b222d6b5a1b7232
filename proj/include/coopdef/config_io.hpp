#pragma once

// JSON documents for scenarios, Monte-Carlo specs, outcomes and reports.
//
// Scenario document:
//   { "name": str, "preset": str?,           // optional base preset
//     "scenario": { r_EP, lambda_EP_deg, r_DE, lambda_DE_deg, gamma_E_deg,
//                   gamma_P_deg, gamma_D_deg, v_E, v_P, v_D },
//     "guidance": { evader_gains{zeta,xi,alpha,beta,kappa,epsilon},
//                   defender_gains{...}, evader_epsilon, defender_epsilon,
//                   epsilon_safety, epsilon_range_floor, c, tau, N, k_P,
//                   apn_sign, a_E_max, a_P_max, a_D_max, sign_boundary_layer,
//                   lambda_dot_floor, cos_floor, v_D_min, v_D_max,
//                   defender_mode, pursuer_strategy },
//     "sim": { dt, t_max, capture_radius, integrator, record_stride } }
// Every key is optional; unknown keys are rejected. When "c" is absent it
// is v_D + v_P.
//
// Monte-Carlo document:
//   { "name": str, "preset": "mc1"|"mc2"|"mc3"?, "n_runs": int, "seed": int,
//     "sample": [ { "name": str, "lo": num, "hi": num } ],
//     "base": <scenario document>, "assumptions": [str] }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "coopdef/monte_carlo.hpp"
#include "coopdef/scenario.hpp"

namespace coopdef {

ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioConfig& sc);

McSpec mc_spec_from_json(const nlohmann::json& doc);
nlohmann::json mc_spec_to_json(const McSpec& spec);

nlohmann::json outcome_to_json(const Outcome& o);
nlohmann::json report_to_json(const McReport& rep);

/// Parses a JSON file. Throws ConfigError with the path on I/O or syntax
/// errors, std::filesystem::filesystem_error when the file does not exist.
nlohmann::json load_json_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace coopdef
