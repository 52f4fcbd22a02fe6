#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax or semantic error in a polynomial system source, with 1-based location.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Raised when face enumeration exceeds the configured cap.
class EnumerationOverflow : public Error {
public:
    using Error::Error;
};

/// The feasibility pre-pass of the distance oracle found no point of S.
class EmptyFeasibleSet : public Error {
public:
    using Error::Error;
};

}  // namespace heb
