#ifndef INTENT_ERROR_HPP
#define INTENT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intent {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data: bad timestamps, missing columns, unknown labels.
// Carries the source name and 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message)
        : Error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

    explicit ParseError(const std::string& message) : Error(message), line_(0) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Data that parsed but breaks a documented contract: dangling click
// references, conflicting labels, multi-user missions, degenerate
// training sets.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Misuse of the command-line surface (maps to exit code 2).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace intent

#endif
