#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inqnl {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Formula / INL-formula syntax errors, with a byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

// Raised when an operation would exceed a documented size cap.
struct CapError : Error {
    using Error::Error;
};

// Bad arguments: unknown atoms, foreign worlds, kind mismatches, malformed files.
struct ArgError : Error {
    using Error::Error;
};

}  // namespace inqnl
