#pragma once

#include <stdexcept>
#include <string>

namespace angval {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Thrown when a k-vector has no k-dimensional wedge-annihilator kernel.
// `residual` is the relative size of the singular value that should have
// vanished, so callers can see how far from decomposable the input was.
struct NotSimple : Error {
    NotSimple(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

struct NotFullDimensional : Error {
    using Error::Error;
};

struct FaceNotOfPolytope : Error {
    using Error::Error;
};

}  // namespace angval
