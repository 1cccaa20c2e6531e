#pragma once

#include <stdexcept>
#include <string>

namespace lieform {

enum class ErrorCode {
    NonPrimeModulus,
    ReduciblePolynomial,
    SizeLimit,
    Unsupported,
    NotMaximal,
    TwoNotInvertible,
    DimensionMismatch,
    UnsupportedRing,
    NotSquare,
    BadParams,
    AlgebraMismatch,
    RingMismatch,
    NotDupRing,
    PreconditionFailed,
    WrongCharacteristic,
    NotPerfect,
    NotAnIdeal,
    NoSqrtMinusOne,
    MissingInverse2,
    NotSymmetricTraceless,
    NotOrthogonal,
    AlphaConditionUnsatisfiable,
    NotDiagonalOnH,
    NotStabilizing,
    NotUnit,
    UnknownCheck,
    ParseError,
    VerificationFailed,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lieform
