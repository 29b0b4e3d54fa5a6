#pragma once

#include <cstddef>
#include <string_view>

namespace tailband {

struct QuantileEstimate {
    enum class Source { Series, MonteCarlo, CfInversion };

    double value = 0.0;
    double level = 0.0;
    Source source = Source::Series;
    /// Monte Carlo standard error, or the numerical error estimate of a CF
    /// inversion. Exactly 0 for series values.
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::size_t grid_m = 0;
};

constexpr std::string_view source_name(QuantileEstimate::Source s) noexcept
{
    switch (s) {
    case QuantileEstimate::Source::Series:
        return "series";
    case QuantileEstimate::Source::MonteCarlo:
        return "monte-carlo";
    case QuantileEstimate::Source::CfInversion:
        return "cf-inversion";
    }
    return "unknown";
}

}  // namespace tailband
