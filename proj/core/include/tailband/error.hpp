#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tailband {

enum class Errc {
    FileNotFound,
    ParseError,
    TooFewObservations,
    NonFiniteValue,
    EmptyExceedanceSet,
    NonPositiveOrderStatistic,
    BadK,
    DegenerateSpacings,
    DomainError,
    ConvergenceFailure,
    RegimeMismatch,
    RegimeBoundary,
    MeanDoesNotExist,
    MissingQuantileFunction,
    WindowMismatch,
    InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every domain failure in the library is reported through this type.
/// `what()` reads "<Name>: <detail>", or "<Name>(<line>): <detail>" for
/// errors tied to an input line.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail, std::size_t line = 0);

    Errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    Errc code_;
    std::size_t line_;
};

inline void require(bool cond, Errc code, const std::string& detail)
{
    if (!cond) {
        throw Error(code, detail);
    }
}

}  // namespace tailband
