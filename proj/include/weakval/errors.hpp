#pragma once

#include <stdexcept>
#include <string>

namespace weakval {

/// Base class for all domain errors raised by the toolkit. Input-validation
/// failures (malformed constructor arguments) throw std::invalid_argument
/// instead; everything that can legitimately happen on valid-but-degenerate
/// quantum inputs derives from Error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Two values that must live over the same labeled basis do not.
class BasisMismatch : public Error {
public:
    explicit BasisMismatch(const std::string& what_arg) : Error(what_arg) {}
};

/// A state with (numerically) zero norm was used where a direction is needed.
class ZeroVector : public Error {
public:
    explicit ZeroVector(const std::string& what_arg) : Error(what_arg) {}
};

/// The post-selected state is orthogonal to the evolved pre-selected state;
/// the weak value is undefined (dark-port post-selection).
class PostSelectionOrthogonal : public Error {
public:
    explicit PostSelectionOrthogonal(const std::string& what_arg) : Error(what_arg) {}
};

/// No intermediate outcome connects the pre- and post-selected states.
class NoConsistentHistory : public Error {
public:
    explicit NoConsistentHistory(const std::string& what_arg) : Error(what_arg) {}
};

/// An operator that must be Hermitian is not (within tolerance).
class NotHermitian : public Error {
public:
    explicit NotHermitian(const std::string& what_arg) : Error(what_arg) {}
};

/// An evolution operator that must be unitary is not (within tolerance).
class NotUnitary : public Error {
public:
    explicit NotUnitary(const std::string& what_arg) : Error(what_arg) {}
};

/// Both inputs of a conversion vanish; the ratio is undefined.
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what_arg) : Error(what_arg) {}
};

/// A structural failure while evaluating a parsed scenario program.
class EvalError : public Error {
public:
    explicit EvalError(const std::string& what_arg) : Error(what_arg) {}
};

} // namespace weakval
