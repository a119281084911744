#pragma once

#include <stdexcept>
#include <string>

namespace modemix {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid geometry, configuration or malformed input data.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Wavelength (or other quantity) outside a declared validity range.
class RangeError : public Error {
public:
    using Error::Error;
};

// Unknown mode label in a corrections map or mode set.
class LookupError : public Error {
public:
    using Error::Error;
};

// A tracked mode disappeared or could not be followed across wavelengths.
class TrackingError : public Error {
public:
    using Error::Error;
};

// Eigensolver or root finder failed to converge.
class SolverError : public Error {
public:
    using Error::Error;
};

// Caller violated an operation contract (unnormalized mode, mismatched
// grids, pair differing in more than one slot, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// QPM bracket has the wrong sign for a first-order grating.
class SignError : public Error {
public:
    using Error::Error;
};

// Reference overlap vanished; normalized table cannot be formed.
class NormalizationError : public Error {
public:
    using Error::Error;
};

// Bracketed root search found no sign change.
class NoRootError : public Error {
public:
    using Error::Error;
};

} // namespace modemix
