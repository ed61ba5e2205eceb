#include "hours_effect/policy_metrics.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hours_effect {

void PolicyCostLedger::validate() const {
    if (gross_cost_low > gross_cost_high)
        throw std::invalid_argument("gross_cost_low exceeds gross_cost_high");
    if (gross_cost_low < 0) throw std::invalid_argument("gross costs must be non-negative");
    for (const auto& o : offsets)
        if (o.amount < 0) throw std::invalid_argument("offset \"" + o.label + "\" is negative");
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
}

std::int64_t PolicyCostLedger::offsets_total() const {
    std::int64_t t = 0;
    for (const auto& o : offsets) t += o.amount;
    return t;
}

CostPerJob cost_per_job(const PolicyCostLedger& ledger, bool apply_offsets) {
    ledger.validate();
    CostPerJob r;
    r.offsets_applied = apply_offsets;
    const std::int64_t off = apply_offsets ? ledger.offsets_total() : 0;
    r.net_low = ledger.gross_cost_low - off;
    r.net_high = ledger.gross_cost_high - off;
    if (r.net_low < 0) {
        r.net_low = 0;
        r.lower_clamped = true;
    }
    if (r.net_high < 0) r.net_high = 0;
    const double jobs = static_cast<double>(ledger.jobs);
    r.low = static_cast<double>(r.net_low) / jobs;
    r.high = static_cast<double>(r.net_high) / jobs;
    return r;
}

GrowthDecomposition decompose_growth(double total_percent,
                                     std::vector<GrowthComponent> components) {
    GrowthDecomposition d;
    d.total = total_percent;
    double sum = 0.0;
    for (const auto& c : components) sum += c.percent;
    d.components = std::move(components);
    d.residual = total_percent - sum;
    d.flagged = std::abs(d.residual) > 0.5;
    return d;
}

FteGrowth fte_growth(double jobs_base, double jobs_new, double hours_base, double hours_new) {
    if (!(jobs_base > 0.0 && jobs_new > 0.0 && hours_base > 0.0 && hours_new > 0.0))
        throw std::invalid_argument("fte_growth: all inputs must be positive");
    FteGrowth g;
    g.headcount_pct = (jobs_new / jobs_base - 1.0) * 100.0;
    g.fte_pct = ((jobs_new * hours_new) / (jobs_base * hours_base) - 1.0) * 100.0;
    g.gap_pct = g.headcount_pct - g.fte_pct;
    return g;
}

namespace {

std::int64_t exact_amount(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j.at(name).is_number())
        throw std::invalid_argument(std::string("ledger field \"") + name +
                                    "\" missing or non-numeric");
    const double v = j.at(name).get<double>();
    const double r = std::nearbyint(v);
    if (!(std::isfinite(v)) || std::abs(v - r) > 1e-6 || std::abs(r) > 9.0e15)
        throw std::invalid_argument(std::string("ledger field \"") + name +
                                    "\" must be an exact integer amount");
    return static_cast<std::int64_t>(r);
}

} // namespace

PolicyCostLedger policy_ledger_from_json(const nlohmann::json& j) {
    PolicyCostLedger ledger;
    ledger.gross_cost_low = exact_amount(j, "gross_cost_low");
    ledger.gross_cost_high = exact_amount(j, "gross_cost_high");
    ledger.jobs = exact_amount(j, "jobs");
    if (j.contains("notes")) ledger.notes = j.at("notes").get<std::string>();
    if (j.contains("offsets")) {
        if (!j.at("offsets").is_array())
            throw std::invalid_argument("ledger field \"offsets\" must be an array");
        for (const auto& e : j.at("offsets")) {
            PolicyOffset o;
            o.label = e.value("label", "");
            o.amount = exact_amount(e, "amount");
            o.note = e.value("note", "");
            ledger.offsets.push_back(std::move(o));
        }
    }
    ledger.validate();
    return ledger;
}

nlohmann::json cost_per_job_to_json(const CostPerJob& r) {
    return nlohmann::json{
        {"net_low", r.net_low},       {"net_high", r.net_high},
        {"per_job_low", r.low},       {"per_job_high", r.high},
        {"offsets_applied", r.offsets_applied}, {"lower_clamped", r.lower_clamped},
    };
}

} // namespace hours_effect
