#pragma once

#include <stdexcept>
#include <string>

namespace courtfilter {

/// Base class for all courtfilter errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input text (tracking files, reports, configs, scripts).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::string& source, std::size_t line, const std::string& msg)
        : Error(source + ":" + std::to_string(line) + ": " + msg) {}
};

/// A caller violated an operation's precondition (non-finite measurement,
/// wrong on-court count, mismatched ranges, invalid parameters).
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// A rate with a zero denominator was requested.
class UndefinedRateError : public ContractError {
public:
    explicit UndefinedRateError(const std::string& msg) : ContractError(msg) {}
};

/// Threshold tuning cannot proceed (degenerate ground truth, empty grid).
class TuningError : public Error {
public:
    explicit TuningError(const std::string& msg) : Error(msg) {}
};

}  // namespace courtfilter
