#pragma once

#include <stdexcept>
#include <string>

namespace sieveflow {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid physical or geometric parameters (domain violations, bad layouts).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Layout generation produced no admissible hole center.
class EmptyLayoutError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Configuration problems: bad config files, tag/profile mismatches,
/// insufficient quadrature, unknown keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mesh generation failures (unresolvable holes, quality floor violations).
class MeshError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: nonlinear divergence, singular linear solves,
/// eigen-solver stagnation.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// File input/output failures.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace sieveflow
