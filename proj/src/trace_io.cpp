#include "coopdef/trace_io.hpp"

#include <cmath>
#include <cstdio>

namespace coopdef {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> cols = {
        "t",
        "E_x", "E_y", "E_gamma", "E_v",
        "P_x", "P_y", "P_gamma", "P_v",
        "D_x", "D_y", "D_gamma", "D_v",
        "EP_r", "EP_lambda", "EP_lambda_dot",
        "DE_r", "DE_lambda", "DE_lambda_dot",
        "DP_r", "DP_lambda", "DP_lambda_dot",
        "a_E", "a_P", "a_D_lat", "a_D_rad", "a_D_total",
        "s1", "s2", "tgo_EP", "tgo_DP",
        "eps_evader_held", "eps_defender_held", "fallback"};
    return cols;
}

std::vector<double> trace_values(const TraceRow& row) {
    const auto& s = row.state;
    const auto& c = row.commands;
    const auto& m = row.manifold;
    auto b = [](bool f) { return f ? 1.0 : 0.0; };
    return {row.t,
            s.evader.x, s.evader.y, s.evader.gamma, s.evader.v,
            s.pursuer.x, s.pursuer.y, s.pursuer.gamma, s.pursuer.v,
            s.defender.x, s.defender.y, s.defender.gamma, s.defender.v,
            row.ep.r, row.ep.lambda, row.ep.lambda_dot,
            row.de.r, row.de.lambda, row.de.lambda_dot,
            row.dp.r, row.dp.lambda, row.dp.lambda_dot,
            c.evader.a_lateral, c.pursuer.a_lateral,
            c.defender.a_lateral, c.defender.a_radial, c.defender.a_total,
            m.s1, m.s2, m.tgo_EP, m.tgo_DP,
            b(row.eps_evader_held), b(row.eps_defender_held), b(row.fallback)};
}

std::string trace_to_csv(const SimTrace& trace) {
    std::string out;
    const auto& cols = trace_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';
    for (const auto& row : trace.rows) {
        const auto vals = trace_values(row);
        const std::size_t n_flags = 3;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) out += ',';
            if (i >= vals.size() - n_flags)
                out += vals[i] != 0.0 ? '1' : '0';
            else
                out += format_number(vals[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json trace_to_json(const SimTrace& trace) {
    nlohmann::json j;
    const auto& cols = trace_columns();
    j["columns"] = cols;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : trace.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : trace_values(row)) {
            if (std::isfinite(v))
                r.push_back(v);
            else
                r.push_back(nullptr);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string runs_to_csv(const McReport& rep) {
    std::string out = "index";
    for (const auto& n : rep.param_names) out += "," + n;
    out += ",verdict,t_intercept,achieved_margin,min_r_DP,min_r_EP\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : rep.runs) {
        out += std::to_string(r.index);
        for (double v : r.sampled) out += "," + format_number(v);
        out += "," + to_string(r.verdict) + "," + opt(r.t_intercept) + "," +
               opt(r.achieved_margin) + "," + format_number(r.min_r_DP) + "," +
               format_number(r.min_r_EP) + "\n";
    }
    return out;
}

}  // namespace coopdef
