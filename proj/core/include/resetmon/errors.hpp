#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resetmon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, mismatched inputs, or a model violating its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed chain, automaton, or report text. Carries a stable diagnostic
/// code (e.g. "E_ROWSUM") and a 1-based source position; line 0 means the
/// error is not tied to a single line.
class ParseError : public Error {
public:
    ParseError(std::string code, std::size_t line, std::size_t column, const std::string& message);

    const std::string& code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string code_;
    std::size_t line_;
    std::size_t column_;
};

/// A caller broke the stepping protocol of a tracker or monitor.
class ProtocolError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace resetmon
