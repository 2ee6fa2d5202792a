#pragma once

#include <stdexcept>
#include <string>

namespace sharpflat {

/// Invalid arithmetic datum or mismatched ring parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inversion of an element that is zero at its tracked precision.
class DivisionByZero : public std::domain_error {
public:
    DivisionByZero(const std::string& what, long precision_halves)
        : std::domain_error(what), precision_halves_(precision_halves) {}

    /// Absolute precision (in half-digits) at which the divisor is indistinguishable from 0.
    long precision_halves() const noexcept { return precision_halves_; }

private:
    long precision_halves_;
};

/// Result would carry no significant digits.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes that cannot be combined (variables, degrees, axes).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace sharpflat
