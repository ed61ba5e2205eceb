#pragma once

#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hours_effect {

/// One elasticity estimate as used in the weighting. A study reporting
/// splits (sector, gender, skill) or several readings of the same finding
/// contributes multiple rows sharing study_label.
struct StudyObservation {
    std::string id;
    std::string study_label;
    std::string country;
    std::string group_tag; ///< semicolon-separated descriptor tokens
    long long sample_size = 0;
    double elasticity = 0.0; ///< %d employment / %d hours; positive: cutting hours cuts jobs
    bool significant = false;
    bool cost_weighted = false; ///< estimate accounts for the hourly-cost increase
    std::string source_note;

    std::vector<std::string> tags() const;
};

/// Declarative predicate set over observations. Conjunction of all members;
/// a default-constructed spec keeps everything.
struct FilterSpec {
    bool require_significant = false;
    bool require_cost_weighted = false;
    std::set<std::string> include_tags; ///< keep rows carrying at least one
    std::set<std::string> exclude_tags; ///< drop rows carrying any

    bool empty() const {
        return !require_significant && !require_cost_weighted && include_tags.empty() &&
               exclude_tags.empty();
    }
};

/// Rows that are alternate cost-adjusted readings of a study whose primary
/// reading ignores the hourly-cost channel carry this group_tag token.
inline constexpr std::string_view kAlternateReadingTag = "alternate-reading";

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse the ledger CSV. Exact header
///   id,study_label,country,group_tag,sample_size,elasticity,significant,cost_weighted,source_note
/// RFC-4180 quoting; "." and "," both accepted as decimal separator.
/// Throws ParseError naming row and column on malformed input, sample_size < 2,
/// non-finite elasticity or |elasticity| > 10.
std::vector<StudyObservation> parse_ledger(std::string_view csv_text);

/// Inverse of parse_ledger: emits the documented CSV, "." decimals, quoting
/// only where needed. parse_ledger(serialize_ledger(x)) == x.
std::string serialize_ledger(std::span<const StudyObservation> ledger);

/// (%d employment) / (%d hours). Throws std::invalid_argument on zero hours change.
double elasticity_from_percent_changes(double d_employment_pct, double d_hours_pct);

/// Stable-order subsequence satisfying every predicate in spec.
std::vector<StudyObservation> apply_filter(std::span<const StudyObservation> ledger,
                                           const FilterSpec& spec);

} // namespace hours_effect
