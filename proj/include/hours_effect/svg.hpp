#pragma once

#include <string>
#include <vector>

#include "hours_effect/labor_models.hpp"
#include "hours_effect/meta_engine.hpp"
#include "hours_effect/study_ledger.hpp"

namespace hours_effect {

/// Vertical reference line with a label, in data coordinates.
struct SvgMarker {
    std::string label;
    double x = 0.0;
};

/// Employment-vs-cap curve with labeled hour markers. Output is plain SVG
/// text with fixed formatting; identical inputs give identical bytes.
std::string curve_svg(const CapResponse& curve, const std::vector<SvgMarker>& markers,
                      const std::string& title);

/// One row per observation: square marker at its elasticity, area scaled by
/// its weight share, plus the pooled mean line and interval band.
std::string forest_svg(std::span<const StudyObservation> obs, const MetaResult& result,
                       const std::string& title);

} // namespace hours_effect
