#include "tailband/error.hpp"

namespace tailband {
namespace {

std::string format_message(Errc code, const std::string& detail, std::size_t line)
{
    std::string msg(errc_name(code));
    if (line > 0) {
        msg += "(" + std::to_string(line) + ")";
    }
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

}  // namespace

std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ParseError: return "ParseError";
    case Errc::TooFewObservations: return "TooFewObservations";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::EmptyExceedanceSet: return "EmptyExceedanceSet";
    case Errc::NonPositiveOrderStatistic: return "NonPositiveOrderStatistic";
    case Errc::BadK: return "BadK";
    case Errc::DegenerateSpacings: return "DegenerateSpacings";
    case Errc::DomainError: return "DomainError";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::RegimeMismatch: return "RegimeMismatch";
    case Errc::RegimeBoundary: return "RegimeBoundary";
    case Errc::MeanDoesNotExist: return "MeanDoesNotExist";
    case Errc::MissingQuantileFunction: return "MissingQuantileFunction";
    case Errc::WindowMismatch: return "WindowMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

Error::Error(Errc code, const std::string& detail, std::size_t line)
    : std::runtime_error(format_message(code, detail, line)), code_(code), line_(line)
{
}

}  // namespace tailband
