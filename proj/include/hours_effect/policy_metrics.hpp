#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hours_effect {

/// Program cost ledger. Amounts are exact integer currency units per year;
/// quotients only become floating point at the end.
struct PolicyOffset {
    std::string label;
    std::int64_t amount = 0;
    std::string note;
};

struct PolicyCostLedger {
    std::int64_t gross_cost_low = 0;
    std::int64_t gross_cost_high = 0;
    std::vector<PolicyOffset> offsets;
    std::int64_t jobs = 1; ///< created or saved
    std::string notes;

    void validate() const;
    std::int64_t offsets_total() const;
};

struct CostPerJob {
    std::int64_t net_low = 0;
    std::int64_t net_high = 0;
    double low = 0.0;  ///< currency per job per year
    double high = 0.0;
    bool offsets_applied = false;
    bool lower_clamped = false; ///< offsets exceeded gross_cost_low
};

CostPerJob cost_per_job(const PolicyCostLedger& ledger, bool apply_offsets);

struct GrowthComponent {
    std::string label;
    double percent = 0.0;
};

struct GrowthDecomposition {
    double total = 0.0;
    std::vector<GrowthComponent> components;
    double residual = 0.0;
    bool flagged = false; ///< |residual| > 0.5 percentage points
};

GrowthDecomposition decompose_growth(double total_percent,
                                     std::vector<GrowthComponent> components);

struct FteGrowth {
    double headcount_pct = 0.0;
    double fte_pct = 0.0;
    double gap_pct = 0.0; ///< headcount minus full-time-equivalent growth
};

/// Headcount vs full-time-equivalent employment growth between two states.
FteGrowth fte_growth(double jobs_base, double jobs_new, double hours_base, double hours_new);

PolicyCostLedger policy_ledger_from_json(const nlohmann::json& j);
nlohmann::json cost_per_job_to_json(const CostPerJob& r);

} // namespace hours_effect
