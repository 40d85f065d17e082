#pragma once

#include <stdexcept>
#include <string>

namespace flagnet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated precondition: mismatched fields, bad shapes, out-of-range indices.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Malformed text input. Carries a 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Input is well-formed but semantically rejected (e.g. not a codeword).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A flag is not in the big cell; extraction cannot proceed.
class CellError : public Error {
public:
    explicit CellError(const std::string& what) : Error(what) {}
};

/// An exhaustive operation would exceed the enumeration budget.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

}  // namespace flagnet
