#pragma once

#include <stdexcept>
#include <string>

namespace bdpp {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// ---- scenario validation ------------------------------------------------

class NonPositiveParameter : public Error {
public:
    NonPositiveParameter(int regime, const std::string& field)
        : Error("parameter '" + field + "' of regime " + std::to_string(regime) +
                " must be strictly positive"),
          regime_(regime), field_(field) {}
    int regime() const { return regime_; }          // 1-based, as in scenario files
    const std::string& field() const { return field_; }
private:
    int regime_;
    std::string field_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidInitialCondition : public Error {
public:
    using Error::Error;
};

// ---- generator checks ----------------------------------------------------

class InvalidGenerator : public Error {
public:
    using Error::Error;
};

class NegativeOffDiagonal : public InvalidGenerator {
public:
    using InvalidGenerator::InvalidGenerator;
};

class RowSumNonzero : public InvalidGenerator {
public:
    using InvalidGenerator::InvalidGenerator;
};

class NotIrreducible : public InvalidGenerator {
public:
    using InvalidGenerator::InvalidGenerator;
};

class SolverFailure : public Error {
public:
    using Error::Error;
};

// ---- integration ----------------------------------------------------------

class StepTooLarge : public Error {
public:
    StepTooLarge(const std::string& what, double suggested_dt)
        : Error(what), suggested_dt_(suggested_dt) {}
    double suggested_dt() const { return suggested_dt_; }
private:
    double suggested_dt_;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

// ---- statistics ------------------------------------------------------------

class WindowTooShort : public Error {
public:
    using Error::Error;
};

class TooFewReplicas : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class ConditionViolated : public Error {
public:
    using Error::Error;
};

// ---- I/O -------------------------------------------------------------------

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace bdpp
