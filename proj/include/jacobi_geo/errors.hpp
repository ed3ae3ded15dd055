#pragma once

#include <stdexcept>
#include <string>

namespace jgeo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainViolation : Error {
    std::string coordinate;
    double value;
    double bound;
    DomainViolation(std::string coord, double v, double b)
        : Error("domain violation: " + coord + " = " + std::to_string(v) + " (bound " + std::to_string(b) + ")"),
          coordinate(std::move(coord)), value(v), bound(b) {}
};

struct BadParams : Error {
    using Error::Error;
};

struct SingularMetric : Error {
    double residual;
    explicit SingularMetric(double r)
        : Error("singular metric: |g*ginv - I| = " + std::to_string(r)), residual(r) {}
};

struct DetMismatch : Error {
    double computed, closed_form;
    DetMismatch(double c, double f)
        : Error("determinant mismatch: " + std::to_string(c) + " vs " + std::to_string(f)),
          computed(c), closed_form(f) {}
};

struct Unsupported : Error {
    using Error::Error;
};

struct StepLimitExceeded : Error {
    double t;
    explicit StepLimitExceeded(double at) : Error("step limit exceeded at t = " + std::to_string(at)), t(at) {}
};

struct Pole : Error {
    using Error::Error;
};

struct NotUnimodular : Error {
    double det;
    explicit NotUnimodular(double d) : Error("ad - bc = " + std::to_string(d) + ", expected 1"), det(d) {}
};

}  // namespace jgeo
