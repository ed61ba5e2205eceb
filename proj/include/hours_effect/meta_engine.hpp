#pragma once

#include <span>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "hours_effect/study_ledger.hpp"

namespace hours_effect {

/// Aggregates of one sample-size-weighted effect-size run.
struct MetaResult {
    long long k = 0;          ///< observation count after filtering
    double total_n = 0.0;     ///< sum of sample sizes
    double mean_n = 0.0;      ///< total_n / k
    double r_bar = 0.0;       ///< weighted mean elasticity
    double var_observed = 0.0; ///< weighted variance of the elasticities
    double var_sampling = 0.0; ///< expected sampling-error variance
    double var_true = 0.0;     ///< var_observed - var_sampling, clamped at 0
    bool clamped = false;      ///< true iff the clamp fired
    double z = 1.96;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

class EmptySelection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// sum(N_i * r_i) / sum(N_i). Throws EmptySelection on empty input.
/// Aggregation order is canonicalized, so any permutation of the input
/// produces bit-identical output.
double weighted_mean_effect(std::span<const StudyObservation> obs);

/// sum(N_i * (r_i - r_bar)^2) / sum(N_i).
double observed_variance(std::span<const StudyObservation> obs, double r_bar);

/// (1 - r_bar^2)^2 / (mean_n - 1). Requires mean_n > 1.
double sampling_error_variance(double r_bar, double mean_n);

/// max(var_observed - var_sampling, 0), with a flag set iff clamping occurred.
/// Both inputs must be non-negative.
std::pair<double, bool> true_variance(double var_observed, double var_sampling);

/// (r_bar - z*sqrt(var_true), r_bar + z*sqrt(var_true)). Requires var_true >= 0
/// and z >= 0 (z = 0 yields the degenerate interval).
std::pair<double, double> credibility_interval(double r_bar, double var_true, double z);

/// Filter, then compose the four aggregation steps at full precision.
MetaResult run_meta(std::span<const StudyObservation> ledger, const FilterSpec& spec,
                    double z = 1.96);

/// JSON object with every MetaResult field under its own name.
nlohmann::json meta_to_json(const MetaResult& r);

} // namespace hours_effect
