#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailband/bands.hpp"
#include "tailband/plotsets.hpp"

namespace tailband::cli {

struct ReferenceLine {
    double slope = 0.0;
    double intercept = 0.0;
};

/// SVG 1.1 scatter of `plot` with band rectangles (widest first, drawn
/// lightest) and an optional reference line. Numbers use %.9g.
std::string render_svg(const PlotSet& plot, const std::vector<ConfidenceBand>& bands,
                       const std::optional<ReferenceLine>& line, const std::string& title);

}  // namespace tailband::cli
