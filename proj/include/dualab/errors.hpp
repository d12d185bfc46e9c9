#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dualab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete scenario/configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input lies outside the domain where a computation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A field was requested at (or a path runs through) a line-charge position.
class SingularPoint : public DomainError {
public:
    explicit SingularPoint(const std::string& what,
                           std::optional<std::size_t> segment = std::nullopt)
        : DomainError(segment ? what + " (path segment " + std::to_string(*segment) + ")" : what),
          segment_(segment) {}

    std::optional<std::size_t> segment() const noexcept { return segment_; }

private:
    std::optional<std::size_t> segment_;
};

class StepTooLarge : public DomainError {
public:
    using DomainError::DomainError;
};

class NotNormalized : public DomainError {
public:
    using DomainError::DomainError;
};

class UndefinedPhase : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularInversion : public DomainError {
public:
    using DomainError::DomainError;
};

class GeodesicAmbiguous : public DomainError {
public:
    using DomainError::DomainError;
};

class InsufficientSamples : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace dualab
