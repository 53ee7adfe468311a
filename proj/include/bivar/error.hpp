#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bivar {

enum class Errc {
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    VarTableMismatch,
    UnknownVariable,
    NegativePowerOfNonMonomial,
    NotDivisible,
    NonInvertibleImageForLaurentVariable,
    NotInAmbientRing,
    UnexpectedVariable,
    NegativeExponentAtZero,
    ExponentOverflow,
    SyntaxError,
    NegativeExponentNotAllowed,
    PreconditionViolated,
    JacobianNotUnit,
    ShapeError,
    MembershipError,
    CharTwoField,
    DegreeNotOne,
    NoPolynomialSInRange,
    InvalidArgument,
};

constexpr std::string_view errc_name(Errc e) noexcept
{
    switch (e) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidField: return "InvalidField";
    case Errc::VarTableMismatch: return "VarTableMismatch";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::NegativePowerOfNonMonomial: return "NegativePowerOfNonMonomial";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::NonInvertibleImageForLaurentVariable: return "NonInvertibleImageForLaurentVariable";
    case Errc::NotInAmbientRing: return "NotInAmbientRing";
    case Errc::UnexpectedVariable: return "UnexpectedVariable";
    case Errc::NegativeExponentAtZero: return "NegativeExponentAtZero";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NegativeExponentNotAllowed: return "NegativeExponentNotAllowed";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::JacobianNotUnit: return "JacobianNotUnit";
    case Errc::ShapeError: return "ShapeError";
    case Errc::MembershipError: return "MembershipError";
    case Errc::CharTwoField: return "CharTwoField";
    case Errc::DegreeNotOne: return "DegreeNotOne";
    case Errc::NoPolynomialSInRange: return "NoPolynomialSInRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// All library failures are reported through this one exception type; the
// code identifies the condition, the message carries the details.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Syntax errors additionally carry the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(Errc code, std::size_t position, const std::string &what)
        : Error(code, what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace bivar
