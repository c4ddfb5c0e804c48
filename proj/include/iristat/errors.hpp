#pragma once

#include <stdexcept>
#include <string>

namespace iristat {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// I/O and file-format failures (CLI exit code 1).
struct IoError : Error {
    using Error::Error;
};

// Format violation in an input file; carries the byte offset (or line
// number for text formats) where parsing stopped.
struct FormatError : IoError {
    FormatError(const std::string& what, std::uint64_t offset)
        : IoError(what + " (at byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    std::uint64_t byte_offset;
};

// Statistical / domain-contract violations (CLI exit code 2).
struct DomainError : Error {
    using Error::Error;
};

struct LayoutMismatch : DomainError {
    using DomainError::DomainError;
};

struct SpecInvalid : DomainError {
    using DomainError::DomainError;
};

struct EmptySample : DomainError {
    using DomainError::DomainError;
};

struct DegenerateSample : DomainError {
    using DomainError::DomainError;
};

struct NonPositiveRate : DomainError {
    using DomainError::DomainError;
};

struct IncompatibleData : DomainError {
    using DomainError::DomainError;
};

}  // namespace iristat
