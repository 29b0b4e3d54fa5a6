#include "tailband/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailband/error.hpp"

namespace tailband {

OrderedSample::OrderedSample(std::vector<double> values) : values_(std::move(values))
{
    require(values_.size() >= 2, Errc::TooFewObservations,
            "need at least 2 observations, got " + std::to_string(values_.size()));
    for (double v : values_) {
        require(std::isfinite(v), Errc::NonFiniteValue, "sample contains a non-finite value");
    }
    std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

OrderedSample OrderedSample::affine(double a, double b) const
{
    std::vector<double> out(values_);
    for (double& v : out) {
        v = a * v + b;
    }
    return OrderedSample(std::move(out));
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_non_finite_token(std::string_view tok)
{
    std::string lower;
    for (char c : tok) {
        if (c != '+' && c != '-') {
            lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return lower == "nan" || lower == "inf" || lower == "infinity";
}

// Parses a full token as a double. from_chars does not accept a leading '+'.
bool parse_number(std::string_view tok, double& out)
{
    if (!tok.empty() && tok.front() == '+') {
        tok.remove_prefix(1);
    }
    if (tok.empty()) {
        return false;
    }
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::string_view csv_field(std::string_view line, std::size_t column, bool& found)
{
    std::size_t start = 0;
    for (std::size_t c = 0; c < column; ++c) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            found = false;
            return {};
        }
        start = comma + 1;
    }
    const auto comma = line.find(',', start);
    found = true;
    return trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
}

}  // namespace

OrderedSample parse_sample(std::string_view text, InputFormat format, std::size_t column)
{
    std::vector<double> values;
    std::size_t line_no = 0;
    bool seen_data_row = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::string_view tok = line;
        if (format == InputFormat::CsvColumn) {
            bool found = false;
            tok = csv_field(line, column, found);
            if (!found) {
                throw Error(Errc::ParseError, "no column " + std::to_string(column), line_no);
            }
        }
        const bool first_row = !seen_data_row;
        seen_data_row = true;

        double v = 0.0;
        if (is_non_finite_token(tok)) {
            throw Error(Errc::NonFiniteValue, "non-finite value '" + std::string(tok) + "'", line_no);
        }
        if (!parse_number(tok, v)) {
            if (format == InputFormat::CsvColumn && first_row) {
                continue;  // header
            }
            throw Error(Errc::ParseError, "cannot parse '" + std::string(tok) + "'", line_no);
        }
        if (!std::isfinite(v)) {
            throw Error(Errc::NonFiniteValue, "value out of range '" + std::string(tok) + "'", line_no);
        }
        values.push_back(v);
    }
    require(values.size() >= 2, Errc::TooFewObservations,
            "need at least 2 observations, got " + std::to_string(values.size()));
    return OrderedSample(std::move(values));
}

OrderedSample ingest(const std::filesystem::path& path, InputFormat format, std::size_t column)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::FileNotFound, path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sample(buf.str(), format, column);
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string serialize(const OrderedSample& sample)
{
    std::string out;
    for (double v : sample.values()) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

double empirical_me(const OrderedSample& sample, double u)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : sample.values()) {
        if (!(v > u)) {
            break;
        }
        sum += v - u;
        ++count;
    }
    require(count > 0, Errc::EmptyExceedanceSet, "no observation exceeds " + format_double(u));
    return sum / static_cast<double>(count);
}

std::vector<double> empirical_me_at_order_stats(const OrderedSample& sample)
{
    const auto x = sample.values();
    const std::size_t n = x.size();
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    double prefix = 0.0;  // sum of the values strictly above the current one
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && x[j] == x[i]) {
            ++j;
        }
        if (count > 0) {
            // Mean of (X_l - u) over the strictly larger values.
            const double me = prefix / static_cast<double>(count) - x[i];
            std::fill(out.begin() + static_cast<std::ptrdiff_t>(i),
                      out.begin() + static_cast<std::ptrdiff_t>(j), me);
        }
        for (std::size_t l = i; l < j; ++l) {
            prefix += x[l];
        }
        count = j;
        i = j;
    }
    return out;
}

std::string_view method_name(TailIndexEstimate::Method m) noexcept
{
    switch (m) {
    case TailIndexEstimate::Method::Hill:
        return "hill";
    case TailIndexEstimate::Method::Pickands:
        return "pickands";
    case TailIndexEstimate::Method::Fixed:
        return "fixed";
    }
    return "unknown";
}

TailIndexEstimate hill_estimate(const OrderedSample& sample, std::size_t k)
{
    const std::size_t n = sample.size();
    require(k >= 1 && k <= n - 1, Errc::BadK,
            "Hill needs 1 <= k <= n-1 (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    const double base = sample.order_stat(k + 1);
    require(base > 0.0, Errc::NonPositiveOrderStatistic,
            "X(" + std::to_string(k + 1) + ") = " + format_double(base) + " is not positive");
    const double log_base = std::log(base);
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        s += std::log(sample.order_stat(i)) - log_base;
    }
    return {s / static_cast<double>(k), TailIndexEstimate::Method::Hill, k, false};
}

TailIndexEstimate pickands_estimate(const OrderedSample& sample, std::size_t k)
{
    const std::size_t n = sample.size();
    require(k >= 1 && 4 * k <= n, Errc::BadK,
            "Pickands needs 1 <= k and 4k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    const double a = sample.order_stat(k);
    const double b = sample.order_stat(2 * k);
    const double c = sample.order_stat(4 * k);
    require(a - b > 0.0 && b - c > 0.0, Errc::DegenerateSpacings,
            "zero spacing among X(k), X(2k), X(4k)");
    const double xi = std::log((a - b) / (b - c)) / std::numbers::ln2;
    return {xi, TailIndexEstimate::Method::Pickands, k, xi <= 0.0};
}

TailIndexEstimate fixed_xi(double xi, std::size_t k)
{
    require(std::isfinite(xi) && xi > 0.0, Errc::InvalidArgument, "xi must be positive");
    return {xi, TailIndexEstimate::Method::Fixed, k, false};
}

}  // namespace tailband
