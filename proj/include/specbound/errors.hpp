#pragma once

#include <stdexcept>
#include <string>

namespace specbound {

// Exit codes used by the command line tool. Library code only throws; the
// mapping to process exit status lives here so tests can assert on it.
enum class ExitCode : int {
    kSuccess = 0,
    kValidation = 1,
    kResourceGuard = 2,
    kCheckFailure = 3,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const noexcept = 0;
};

/// Bad input: malformed files, out-of-range parameters, broken invariants of
/// caller-supplied objects.
class ValidationError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }
};

/// A file or directory could not be read or written.
class FilesystemError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An enumeration or search would exceed its configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::kResourceGuard; }
};

/// An internal consistency check failed (solver did not converge, a
/// certificate failed re-verification, ...).
class CheckFailure : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::kCheckFailure; }
};

}  // namespace specbound
