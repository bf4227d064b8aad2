#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdfa {

class MdfaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInstance : public MdfaError {
public:
    using MdfaError::MdfaError;
};

class InvalidAllocation : public MdfaError {
public:
    using MdfaError::MdfaError;
};

class IndexOutOfRange : public MdfaError {
public:
    using MdfaError::MdfaError;
};

/// A method was called on an instance it does not apply to (wrong agent
/// count, non-identical valuations for an identical-only method, ...).
class PreconditionError : public MdfaError {
public:
    using MdfaError::MdfaError;
};

/// Raised when a search exceeds its configured budget. The question is then
/// undecided; callers must not read this as a negative answer.
class ResourceLimitExceeded : public MdfaError {
public:
    ResourceLimitExceeded(const std::string& what, std::uint64_t used, std::uint64_t limit)
        : MdfaError(what), used_(used), limit_(limit) {}

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t used_;
    std::uint64_t limit_;
};

}  // namespace mdfa
