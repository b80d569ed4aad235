#pragma once

#include <stdexcept>
#include <string>

namespace elastica {

// Base of every error thrown by the library. The CLI maps categories to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs outside the admissible parameter set (mu <= 0, mu + lambda < 0, n out of range, ...).
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

// A formula is evaluated at a point where one of its terms diverges.
class SingularLimitError : public Error {
public:
    using Error::Error;
};

// Helmholtz potential split undefined because both wave speeds coincide.
class DegenerateDecompositionError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

class MeshError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

// Heat trace requested at a time for which the truncated spectrum cannot bound its tail.
class TailBoundError : public RangeError {
public:
    TailBoundError(const std::string& what, double min_admissible_t)
        : RangeError(what), min_admissible_t_(min_admissible_t) {}
    double min_admissible_t() const noexcept { return min_admissible_t_; }

private:
    double min_admissible_t_;
};

class ConditioningError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

// Malformed or mutually inconsistent inputs (files, paired spectra).
class InputError : public Error {
public:
    using Error::Error;
};

// A numeric procedure stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace elastica
