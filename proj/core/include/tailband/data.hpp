#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tailband {

/// Immutable sample sorted in decreasing order, X(1) >= ... >= X(n).
class OrderedSample {
public:
    /// Sorts `values` descending (stable, ties kept). Requires n >= 2 and
    /// finite values.
    explicit OrderedSample(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    /// 1-based order statistic X(i).
    double order_stat(std::size_t i) const { return values_.at(i - 1); }

    /// Copy with every value mapped through x -> a x + b.
    OrderedSample affine(double a, double b) const;

private:
    std::vector<double> values_;
};

enum class InputFormat { Plain, CsvColumn };

/// Read one number per line ('#' starts a comment line, blank lines are
/// skipped) or, for CsvColumn, the given 0-based column of a CSV file. A
/// non-numeric first data row of a CSV file is taken as a header.
OrderedSample ingest(const std::filesystem::path& path, InputFormat format = InputFormat::Plain,
                     std::size_t column = 0);

/// Parse from an in-memory buffer with the same rules as ingest.
OrderedSample parse_sample(std::string_view text, InputFormat format = InputFormat::Plain,
                           std::size_t column = 0);

/// One value per line, shortest round-trip formatting, descending order.
std::string serialize(const OrderedSample& sample);

/// Shortest round-trip decimal representation of v.
std::string format_double(double v);

/// Mean excess over u: average of X_i - u over X_i > u (strict).
double empirical_me(const OrderedSample& sample, double u);

/// M̂(X(i)) for i = 1..n. Entries whose exceedance set is empty are NaN.
std::vector<double> empirical_me_at_order_stats(const OrderedSample& sample);

struct TailIndexEstimate {
    enum class Method { Hill, Pickands, Fixed };

    double xi = 0.0;
    Method method = Method::Fixed;
    std::size_t k = 0;
    /// Set when a Pickands estimate came out non-positive.
    bool non_positive = false;
};

std::string_view method_name(TailIndexEstimate::Method m) noexcept;

/// Hill estimator (1/k) sum_{i<=k} log(X(i) / X(k+1)).
TailIndexEstimate hill_estimate(const OrderedSample& sample, std::size_t k);

/// Pickands estimator log((X(k)-X(2k)) / (X(2k)-X(4k))) / log 2.
TailIndexEstimate pickands_estimate(const OrderedSample& sample, std::size_t k);

TailIndexEstimate fixed_xi(double xi, std::size_t k);

}  // namespace tailband
