#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace infogeo {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed formula text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Failure while evaluating an expression: unbound variable or domain error.
class EvalError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature did not reach the requested tolerance, or hit a
// non-finite sample.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

// Metric tensor is singular (or numerically so) at the requested point.
class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace infogeo
