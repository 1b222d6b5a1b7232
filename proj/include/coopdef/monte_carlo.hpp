#pragma once

// Monte-Carlo batches over uniformly sampled scenario parameters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopdef/scenario.hpp"

namespace coopdef {

/// A scenario field drawn uniformly from [lo, hi).
struct SampledParam {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
};

struct McSpec {
    std::string name = "custom";
    long n_runs = 1;
    std::uint64_t seed = 1;
    std::vector<SampledParam> params;
    ScenarioConfig base;
    std::vector<std::string> assumptions;  // documented defaults, copied to the report

    /// Throws ConfigError for n_runs < 1, lo >= hi, or unknown names.
    void validate() const;
};

/// Names that SampledParam::name may take.
std::vector<std::string> sampleable_params();

/// Writes value into the scenario field called name. Throws ConfigError
/// for unknown names.
void set_param(ScenarioConfig& sc, const std::string& name, double value);

/// Uniform draws for one run, in McSpec::params order. The stream depends
/// only on (seed, run index), never on how runs are scheduled.
std::vector<double> draw_run(const McSpec& spec, long run_index);

/// n_runs scenarios with the sampled values applied.
std::vector<ScenarioConfig> sample(const McSpec& spec);

struct McRun {
    long index = 0;
    std::vector<double> sampled;
    Verdict verdict = Verdict::Degenerate;
    std::optional<double> t_intercept;
    std::optional<double> achieved_margin;
    double min_r_DP = 0.0;
    double min_r_EP = 0.0;
    std::string diagnostic;
};

struct McReport {
    std::string name;
    long n_runs = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> param_names;
    long wins = 0;
    double win_rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::vector<std::string> assumptions;
    std::vector<McRun> runs;  // ordered by index
};

/// Wilson score interval for k successes out of n at z = 1.96.
std::pair<double, double> wilson_interval(long k, long n, double z = 1.959963984540054);

/// Runs every sampled scenario on `jobs` worker threads (0 = hardware
/// concurrency) and aggregates by run index. A run that fails to propagate
/// is recorded as Degenerate and counts as a loss.
McReport run_batch(const McSpec& spec, unsigned jobs = 1);

/// The three Monte-Carlo studies: "mc1" (r_DE x gamma_D), "mc2"
/// (r_EP x gamma_P), "mc3" (r_DE x tau). 1100 runs each.
McSpec mc_preset(const std::string& name);
std::vector<std::string> mc_preset_names();

}  // namespace coopdef
