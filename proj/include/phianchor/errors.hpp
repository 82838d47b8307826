#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phianchor {

// Every failure surfaced by the library carries one of these codes.
// Validation findings are data (see registry.hpp), not errors.
enum class ErrorCode {
    MalformedIndex,
    OutOfRange,
    DuplicateId,
    SentinelReserved,
    UnknownTarget,
    CycleDetected,
    UnknownNode,
    UnanchoredNode,
    SyntaxError,
    UnknownPrefix,
    MissingPhiIndex,
    MissingType,
    InverseMismatch,
    NoIsoCode,
    UnknownCode,
    EmptyRegistry,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    // Text-level errors (Turtle) carry a 1-based source position.
    Error(ErrorCode code, std::string message, int line, int column)
        : std::runtime_error(std::string(to_string(code)) + ": " + message + " (line " +
                             std::to_string(line) + ", col " + std::to_string(column) + ")"),
          code_(code), line_(line), column_(column) {}

    ErrorCode code() const noexcept { return code_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    ErrorCode code_;
    int line_ = 0;
    int column_ = 0;
};

} // namespace phianchor
