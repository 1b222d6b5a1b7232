#pragma once

// Trace and per-run exports.
//
// trace.csv columns, in order:
//   t,
//   E_x, E_y, E_gamma, E_v, P_x, P_y, P_gamma, P_v, D_x, D_y, D_gamma, D_v,
//   EP_r, EP_lambda, EP_lambda_dot, DE_r, DE_lambda, DE_lambda_dot,
//   DP_r, DP_lambda, DP_lambda_dot,
//   a_E, a_P, a_D_lat, a_D_rad, a_D_total,
//   s1, s2, tgo_EP, tgo_DP,
//   eps_evader_held, eps_defender_held, fallback
// Angles in radians. Numbers carry 9 significant digits; undefined values
// are written as "nan".

#include <string>
#include <vector>

#include <json.hpp>

#include "coopdef/monte_carlo.hpp"
#include "coopdef/simcore.hpp"

namespace coopdef {

/// printf "%.9g"; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double v);

const std::vector<std::string>& trace_columns();
std::vector<double> trace_values(const TraceRow& row);

std::string trace_to_csv(const SimTrace& trace);
nlohmann::json trace_to_json(const SimTrace& trace);

/// runs.csv: index, one column per sampled parameter, verdict,
/// t_intercept, achieved_margin, min_r_DP, min_r_EP. Absent values are empty.
std::string runs_to_csv(const McReport& rep);

}  // namespace coopdef
