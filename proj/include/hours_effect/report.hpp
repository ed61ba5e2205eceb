#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hours_effect/meta_engine.hpp"
#include "hours_effect/study_ledger.hpp"

namespace hours_effect {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// FNV-1a 64-bit digest, hex encoded. Provenance fingerprinting only.
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Input-file digests and tool version, embedded in every JSON report so
/// identical inputs are recognizable from the artifacts alone.
struct Provenance {
    std::map<std::string, std::string> inputs; ///< path -> fnv1a64 digest
    void add(const std::filesystem::path& path, std::string_view bytes);
};

nlohmann::json provenance_to_json(const Provenance& p);

/// Plain-text table mirroring the weighting worksheet: per-observation N, r,
/// N*r and N*(r - r_bar)^2 columns, a TOTAL row, then the derived aggregates.
std::string render_meta_table(std::span<const StudyObservation> obs, const MetaResult& result);

/// Scalar formatting shared by text reports: 4 significant digits.
std::string format_scalar(double v);

} // namespace hours_effect
