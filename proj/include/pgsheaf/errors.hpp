#ifndef PGSHEAF_ERRORS_HPP
#define PGSHEAF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgsheaf {

// Base class for all mathematical precondition violations raised by the
// library.  Input/parse problems use InputError instead so the CLI can map
// them to distinct exit codes.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : MathError {
    explicit DivisionByZero(const std::string& msg = "division by zero in F_p") : MathError(msg) {}
};

struct ShapeError : MathError {
    explicit ShapeError(const std::string& msg) : MathError(msg) {}
};

struct NotPNilpotent : MathError {
    explicit NotPNilpotent(const std::string& msg = "operator is not p-nilpotent") : MathError(msg) {}
};

struct RingMismatch : MathError {
    explicit RingMismatch(const std::string& msg = "ring context mismatch") : MathError(msg) {}
};

struct NonHomogeneous : MathError {
    explicit NonHomogeneous(const std::string& msg = "polynomial is not homogeneous") : MathError(msg) {}
};

struct ZeroPolynomial : MathError {
    explicit ZeroPolynomial(const std::string& msg = "zero polynomial has no degree") : MathError(msg) {}
};

struct GradingError : MathError {
    explicit GradingError(const std::string& msg) : MathError(msg) {}
};

struct NotASubmodule : MathError {
    explicit NotASubmodule(const std::string& msg) : MathError(msg) {}
};

struct NotRestrictedSubalgebra : MathError {
    explicit NotRestrictedSubalgebra(const std::string& msg) : MathError(msg) {}
};

struct NotOnNullcone : MathError {
    explicit NotOnNullcone(const std::string& msg) : MathError(msg) {}
};

struct ZeroPoint : MathError {
    explicit ZeroPoint(const std::string& msg = "the zero vector is not a point of P(G)") : MathError(msg) {}
};

struct GroupMismatch : MathError {
    explicit GroupMismatch(const std::string& msg = "representations belong to different groups") : MathError(msg) {}
};

struct RangeError : MathError {
    explicit RangeError(const std::string& msg) : MathError(msg) {}
};

struct Unsupported : MathError {
    explicit Unsupported(const std::string& msg) : MathError(msg) {}
};

struct InternalInvariantViolation : MathError {
    explicit InternalInvariantViolation(const std::string& msg) : MathError(msg) {}
};

// Saturation watchdog, exponent overflow and similar resource guards.
struct EngineLimit : MathError {
    explicit EngineLimit(const std::string& msg) : MathError(msg) {}
};

// Bad files, unparsable expressions, unknown names.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pgsheaf

#endif
