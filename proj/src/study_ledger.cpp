#include "hours_effect/study_ledger.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace hours_effect {

namespace {

constexpr std::array<std::string_view, 9> kHeader = {
    "id",          "study_label", "country",       "group_tag",   "sample_size",
    "elasticity",  "significant", "cost_weighted", "source_note"};

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t row, std::size_t col, const std::string& what) {
    std::string msg = "row " + std::to_string(row) + ", column " + std::to_string(col);
    if (col >= 1 && col <= kHeader.size()) msg += " (" + std::string(kHeader[col - 1]) + ")";
    throw ParseError(msg + ": " + what);
}

// Splits one logical CSV record (quotes already balanced) into fields.
std::vector<std::string> split_record(std::string_view line, std::size_t row) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t p = 0; p < line.size(); ++p) {
        char c = line[p];
        if (quoted) {
            if (c == '"') {
                if (p + 1 < line.size() && line[p + 1] == '"') {
                    cur += '"';
                    ++p;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty())
                fail(row, out.size() + 1, "unexpected quote inside unquoted field");
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) fail(row, out.size() + 1, "unterminated quote");
    out.push_back(cur);
    return out;
}

// Records may contain quoted newlines, so split on unquoted '\n' only.
std::vector<std::pair<std::string, std::size_t>> split_records(std::string_view text) {
    std::vector<std::pair<std::string, std::size_t>> records;
    std::string cur;
    bool quoted = false;
    std::size_t line_no = 1;
    for (char c : text) {
        if (c == '"') quoted = !quoted;
        if (c == '\n' && !quoted) {
            records.emplace_back(cur, line_no);
            cur.clear();
            ++line_no;
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) records.emplace_back(cur, line_no);
    return records;
}

long long parse_count(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string s = trim(raw);
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        fail(row, col, "expected an integer, got \"" + s + "\"");
    return v;
}

double parse_real(const std::string& raw, std::size_t row, std::size_t col) {
    std::string s = trim(raw);
    std::replace(s.begin(), s.end(), ',', '.');
    if (s.empty()) fail(row, col, "empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        fail(row, col, "expected a real number, got \"" + trim(raw) + "\"");
    return v;
}

bool parse_bool(const std::string& raw, std::size_t row, std::size_t col) {
    const std::string s = trim(raw);
    if (s == "true") return true;
    if (s == "false") return false;
    fail(row, col, "expected true or false, got \"" + s + "\"");
}

bool needs_quoting(std::string_view s) {
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

void write_field(std::string& out, std::string_view s) {
    if (!needs_quoting(s)) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

std::string format_double(double v) {
    char buf[64];
    // shortest representation that round-trips
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

std::vector<std::string> StudyObservation::tags() const {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= group_tag.size()) {
        std::size_t sep = group_tag.find(';', start);
        if (sep == std::string::npos) sep = group_tag.size();
        std::string tok = trim(std::string_view(group_tag).substr(start, sep - start));
        if (!tok.empty()) out.push_back(std::move(tok));
        start = sep + 1;
    }
    return out;
}

std::vector<StudyObservation> parse_ledger(std::string_view csv_text) {
    const auto records = split_records(csv_text);
    if (records.empty()) throw ParseError("row 1: missing header");

    const auto header = split_record(records.front().first, 1);
    if (header.size() != kHeader.size())
        throw ParseError("row 1: header has " + std::to_string(header.size()) +
                         " fields, expected " + std::to_string(kHeader.size()));
    for (std::size_t c = 0; c < kHeader.size(); ++c)
        if (trim(header[c]) != kHeader[c])
            fail(1, c + 1, "header mismatch, expected \"" + std::string(kHeader[c]) + "\"");

    std::vector<StudyObservation> out;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& [line, row_no] = records[r];
        if (trim(line).empty()) continue;
        const auto f = split_record(line, row_no);
        if (f.size() != kHeader.size())
            throw ParseError("row " + std::to_string(row_no) + ": has " +
                             std::to_string(f.size()) + " fields, expected " +
                             std::to_string(kHeader.size()));
        StudyObservation o;
        o.id = trim(f[0]);
        o.study_label = trim(f[1]);
        o.country = trim(f[2]);
        o.group_tag = trim(f[3]);
        o.sample_size = parse_count(f[4], row_no, 5);
        o.elasticity = parse_real(f[5], row_no, 6);
        o.significant = parse_bool(f[6], row_no, 7);
        o.cost_weighted = parse_bool(f[7], row_no, 8);
        o.source_note = f[8];

        if (o.sample_size < 2) fail(row_no, 5, "sample_size must be >= 2");
        if (!std::isfinite(o.elasticity)) fail(row_no, 6, "elasticity must be finite");
        if (std::abs(o.elasticity) > 10.0) fail(row_no, 6, "|elasticity| exceeds the sanity bound 10");
        out.push_back(std::move(o));
    }
    return out;
}

std::string serialize_ledger(std::span<const StudyObservation> ledger) {
    std::string out;
    for (std::size_t c = 0; c < kHeader.size(); ++c) {
        if (c) out += ',';
        out += kHeader[c];
    }
    out += '\n';
    for (const auto& o : ledger) {
        write_field(out, o.id);
        out += ',';
        write_field(out, o.study_label);
        out += ',';
        write_field(out, o.country);
        out += ',';
        write_field(out, o.group_tag);
        out += ',';
        out += std::to_string(o.sample_size);
        out += ',';
        out += format_double(o.elasticity);
        out += ',';
        out += o.significant ? "true" : "false";
        out += ',';
        out += o.cost_weighted ? "true" : "false";
        out += ',';
        write_field(out, o.source_note);
        out += '\n';
    }
    return out;
}

double elasticity_from_percent_changes(double d_employment_pct, double d_hours_pct) {
    if (d_hours_pct == 0.0)
        throw std::invalid_argument("elasticity_from_percent_changes: zero hours change");
    return d_employment_pct / d_hours_pct;
}

std::vector<StudyObservation> apply_filter(std::span<const StudyObservation> ledger,
                                           const FilterSpec& spec) {
    std::vector<StudyObservation> out;
    out.reserve(ledger.size());
    for (const auto& o : ledger) {
        if (spec.require_significant && !o.significant) continue;
        if (spec.require_cost_weighted && !o.cost_weighted) continue;
        if (!spec.include_tags.empty() || !spec.exclude_tags.empty()) {
            const auto toks = o.tags();
            if (!spec.include_tags.empty()) {
                bool any = std::any_of(toks.begin(), toks.end(), [&](const std::string& t) {
                    return spec.include_tags.count(t) > 0;
                });
                if (!any) continue;
            }
            bool excluded = std::any_of(toks.begin(), toks.end(), [&](const std::string& t) {
                return spec.exclude_tags.count(t) > 0;
            });
            if (excluded) continue;
        }
        out.push_back(o);
    }
    return out;
}

} // namespace hours_effect
