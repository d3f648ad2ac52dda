#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdmkit {

/// Broad failure class; the CLI maps each kind onto its own exit code.
enum class ErrorKind { Input, Numerical, Io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Rejected input: bad samples, bad parameters, malformed files.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// A numerical contract (symmetry, reconstruction, phase definedness) failed.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

/// Imaginary residue after synthesis exceeded the allowed threshold.
class SymmetryError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Phase is undefined at a zero-magnitude sample.
class UndefinedPhaseError : public NumericalError {
public:
    explicit UndefinedPhaseError(std::size_t index)
        : NumericalError("phase undefined at zero-magnitude sample " + std::to_string(index)),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace fdmkit
