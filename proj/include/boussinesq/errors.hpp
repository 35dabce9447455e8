#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boussinesq {

/// Base class of every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonpositiveDepth : public Error {
public:
    NonpositiveDepth(std::size_t index, double depth)
        : Error("nonpositive depth d=" + std::to_string(depth) + " at node " + std::to_string(index)),
          index_(index), depth_(depth) {}
    std::size_t index() const noexcept { return index_; }
    double depth() const noexcept { return depth_; }

private:
    std::size_t index_;
    double depth_;
};

class NegativeParameter : public Error {
public:
    using Error::Error;
};

/// The characteristic quadratic has no real root at the requested wavenumber.
class ComplexRoots : public Error {
public:
    explicit ComplexRoots(double k)
        : Error("complex dispersion roots at k=" + std::to_string(k)), k_(k) {}
    double wavenumber() const noexcept { return k_; }

private:
    double k_;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class AlphaNotZero : public Error {
public:
    AlphaNotZero() : Error("the IMEX step requires alpha = 0") {}
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class BlowUp : public Error {
public:
    BlowUp(std::size_t step, double t, const std::string& what)
        : Error("blow-up at step " + std::to_string(step) + " (t=" + std::to_string(t) + "): " + what),
          step_(step), t_(t) {}
    std::size_t step() const noexcept { return step_; }
    double time() const noexcept { return t_; }

private:
    std::size_t step_;
    double t_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace boussinesq
