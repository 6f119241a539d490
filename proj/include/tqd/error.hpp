// error.hpp — exception hierarchy shared by all tqd modules

#pragma once

#include <stdexcept>
#include <string>

namespace tqd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's domain.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A matrix that should be a state carries non-physical residue (e.g. complex
// Pauli expectation values).
class CorruptedState : public Error {
public:
    using Error::Error;
};

// An invariant the library itself guarantees was violated.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class NoZerosError : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace tqd
