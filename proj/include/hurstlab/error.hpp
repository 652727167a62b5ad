#pragma once

#include <stdexcept>
#include <string>

namespace hurstlab {

/// Failure category. Preserved across the C API boundary as a status code.
enum class errc {
    invalid_argument = 1,  ///< bad parameter or configuration
    parse = 2,             ///< malformed input text
    validation = 3,        ///< well-formed input violating a domain invariant
    degenerate = 4,        ///< series unusable for the requested estimator
    io = 5,                ///< file or stream failure
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          code_(code),
          line_(line) {}

    [[nodiscard]] errc code() const noexcept { return code_; }

    /// 1-based input line for parse/validation errors, 0 when not applicable.
    [[nodiscard]] long line() const noexcept { return line_; }

private:
    errc code_;
    long line_;
};

}  // namespace hurstlab
