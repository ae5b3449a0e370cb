#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptsdist
{

// Input violates a model invariant. Carries every violation found, not just the first.
class ValidationError : public std::runtime_error
{
    std::vector< std::string > _violations;

public:
    explicit ValidationError( std::vector< std::string > violations );
    [[nodiscard]] const std::vector< std::string >& violations() const { return _violations; }
};

// Text input could not be parsed. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error
{
    std::size_t _line;
    std::size_t _column;

public:
    ParseError( std::size_t line, std::size_t column, const std::string& message );
    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
};

// An enumeration or memo table grew past its configured cap.
class CapExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The computation is not defined for this input (e.g. cyclic interaction system for trace-indexed testing).
class UnsupportedInput : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bad combination of options or parameters.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace ptsdist
