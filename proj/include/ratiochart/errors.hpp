#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratiochart {

// Argument outside the mathematical domain of an operation (x <= 0, p outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sample count or sample size does not match the configured chart shape.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Operation not valid in the current state (e.g. stepping an untrained chart).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input text. `location` names the line (1-based) or the document path.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::string location, const std::string& what)
        : std::runtime_error(source + ":" + location + ": " + what),
          source_(std::move(source)),
          location_(std::move(location)) {}

    ParseError(std::string source, std::size_t line, const std::string& what)
        : ParseError(std::move(source), std::to_string(line), what) {}

    const std::string& source() const noexcept { return source_; }
    const std::string& location() const noexcept { return location_; }

private:
    std::string source_;
    std::string location_;
};

}  // namespace ratiochart
