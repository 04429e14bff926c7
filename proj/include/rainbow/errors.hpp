#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rainbow {

// Raised when an argument violates an operation's documented precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when inputs are individually valid but inconsistent with each other
// (e.g. a coloring that does not cover an edge it is asked about).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed interchange file. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ParameterError(msg);
}

}  // namespace rainbow
