#pragma once

#include <stdexcept>
#include <string>

namespace chainfp {

/// Base class for every failure this library raises deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value violates a type invariant (negative quantity, non-positive stake, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Scenario or configuration problem: unknown key, bad type, missing dataset file.
class ConfigError : public Error {
public:
    using Error::Error;
};

// --- dataset ingestion ---

class SchemaError : public Error {
public:
    using Error::Error;
};

class ShareSumError : public Error {
public:
    using Error::Error;
};

class DuplicateCountryError : public Error {
public:
    using Error::Error;
};

class DuplicateNameError : public Error {
public:
    using Error::Error;
};

class NonMonotoneDateError : public Error {
public:
    using Error::Error;
};

class NegativeValueError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

// --- weighting ---

class EmptyTableError : public Error {
public:
    using Error::Error;
};

// --- proof-of-work model ---

class NonPositiveEfficiencyError : public Error {
public:
    using Error::Error;
};

class ZeroElectricityPriceError : public Error {
public:
    using Error::Error;
};

class NoHardwareAvailableError : public Error {
public:
    using Error::Error;
};

class MissingFactorError : public Error {
public:
    using Error::Error;
};

// --- proof-of-stake model ---

class ZeroReturnError : public Error {
public:
    using Error::Error;
};

// --- staking equilibrium simulator ---

class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// --- projections ---

class EmptySetError : public Error {
public:
    using Error::Error;
};

class ZeroCurrentFractionError : public Error {
public:
    using Error::Error;
};

class ZeroBaselineTxError : public Error {
public:
    using Error::Error;
};

class FitDivergenceError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

}  // namespace chainfp
