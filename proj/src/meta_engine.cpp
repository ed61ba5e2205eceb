#include "hours_effect/meta_engine.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace hours_effect {

namespace {

struct WeightedPoint {
    double n;
    double r;
    const std::string* id;
};

// Fixed accumulation order makes every aggregate invariant under input
// permutation, bit for bit.
std::vector<WeightedPoint> canonical(std::span<const StudyObservation> obs) {
    std::vector<WeightedPoint> pts;
    pts.reserve(obs.size());
    for (const auto& o : obs)
        pts.push_back({static_cast<double>(o.sample_size), o.elasticity, &o.id});
    std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.r != b.r) return a.r < b.r;
        return *a.id < *b.id;
    });
    return pts;
}

void require_nonempty(std::span<const StudyObservation> obs, const char* op) {
    if (obs.empty()) throw EmptySelection(std::string(op) + ": no observations");
}

} // namespace

double weighted_mean_effect(std::span<const StudyObservation> obs) {
    require_nonempty(obs, "weighted_mean_effect");
    double num = 0.0, den = 0.0;
    for (const auto& p : canonical(obs)) {
        num += p.n * p.r;
        den += p.n;
    }
    return num / den;
}

double observed_variance(std::span<const StudyObservation> obs, double r_bar) {
    require_nonempty(obs, "observed_variance");
    double num = 0.0, den = 0.0;
    for (const auto& p : canonical(obs)) {
        const double d = p.r - r_bar;
        num += p.n * d * d;
        den += p.n;
    }
    return num / den;
}

double sampling_error_variance(double r_bar, double mean_n) {
    if (!(mean_n > 1.0))
        throw std::invalid_argument("sampling_error_variance: mean sample size must exceed 1");
    const double s = 1.0 - r_bar * r_bar;
    return s * s / (mean_n - 1.0);
}

std::pair<double, bool> true_variance(double var_observed, double var_sampling) {
    if (var_observed < 0.0 || var_sampling < 0.0)
        throw std::invalid_argument("true_variance: variances must be non-negative");
    const double raw = var_observed - var_sampling;
    if (raw < 0.0) return {0.0, true};
    return {raw, false};
}

std::pair<double, double> credibility_interval(double r_bar, double var_true, double z) {
    if (var_true < 0.0) throw std::invalid_argument("credibility_interval: negative variance");
    if (z < 0.0) throw std::invalid_argument("credibility_interval: negative z");
    const double half = z * std::sqrt(var_true);
    return {r_bar - half, r_bar + half};
}

MetaResult run_meta(std::span<const StudyObservation> ledger, const FilterSpec& spec, double z) {
    const auto obs = apply_filter(ledger, spec);
    if (obs.empty()) throw EmptySelection("run_meta: filter left zero observations");

    MetaResult r;
    r.k = static_cast<long long>(obs.size());
    double total = 0.0;
    for (const auto& p : canonical(obs)) total += p.n;
    r.total_n = total;
    r.mean_n = r.total_n / static_cast<double>(r.k);
    r.r_bar = weighted_mean_effect(obs);
    r.var_observed = observed_variance(obs, r.r_bar);
    r.var_sampling = sampling_error_variance(r.r_bar, r.mean_n);
    std::tie(r.var_true, r.clamped) = true_variance(r.var_observed, r.var_sampling);
    r.z = z;
    std::tie(r.ci_low, r.ci_high) = credibility_interval(r.r_bar, r.var_true, z);
    return r;
}

nlohmann::json meta_to_json(const MetaResult& r) {
    return nlohmann::json{
        {"k", r.k},
        {"total_n", r.total_n},
        {"mean_n", r.mean_n},
        {"r_bar", r.r_bar},
        {"var_observed", r.var_observed},
        {"var_sampling", r.var_sampling},
        {"var_true", r.var_true},
        {"clamped", r.clamped},
        {"z", r.z},
        {"ci_low", r.ci_low},
        {"ci_high", r.ci_high},
    };
}

} // namespace hours_effect
