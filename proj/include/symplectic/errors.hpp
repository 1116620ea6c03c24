#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symplectic {

enum class ErrorCode {
    SingularModel,
    ZeroScale,
    ZeroTwist,
    ZeroInput,
    NonIntegralModel,
    UnclassifiedReduction,
    TableMiss,
    PreconditionFailed,
    InconsistentPair,
    DegreeDivisibleByP,
    UnsupportedReduction,
    PrecisionFailure,
    NoValidH,
    SingularReduction,
    CharacteristicClash,
    BasisNotFound,
    PairingDegenerate,
    NotIsomorphic,
    ResourceBound,
    DegenerateFrey,
    EquationViolated,
    GcdViolated,
    HypothesisFailed,
    FactorizationLimit,
    InvalidArgument,
};

inline std::string_view error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::SingularModel: return "singular-model";
    case ErrorCode::ZeroScale: return "zero-scale";
    case ErrorCode::ZeroTwist: return "zero-twist";
    case ErrorCode::ZeroInput: return "zero-input";
    case ErrorCode::NonIntegralModel: return "non-integral-model";
    case ErrorCode::UnclassifiedReduction: return "unclassified-reduction";
    case ErrorCode::TableMiss: return "table-miss";
    case ErrorCode::PreconditionFailed: return "precondition-failed";
    case ErrorCode::InconsistentPair: return "inconsistent-pair";
    case ErrorCode::DegreeDivisibleByP: return "degree-divisible-by-p";
    case ErrorCode::UnsupportedReduction: return "unsupported-reduction";
    case ErrorCode::PrecisionFailure: return "precision-failure";
    case ErrorCode::NoValidH: return "no-valid-h";
    case ErrorCode::SingularReduction: return "singular-reduction";
    case ErrorCode::CharacteristicClash: return "characteristic-clash";
    case ErrorCode::BasisNotFound: return "basis-not-found";
    case ErrorCode::PairingDegenerate: return "pairing-degenerate";
    case ErrorCode::NotIsomorphic: return "not-isomorphic";
    case ErrorCode::ResourceBound: return "resource-bound";
    case ErrorCode::DegenerateFrey: return "degenerate-frey";
    case ErrorCode::EquationViolated: return "equation-violated";
    case ErrorCode::GcdViolated: return "gcd-violated";
    case ErrorCode::HypothesisFailed: return "hypothesis-failed";
    case ErrorCode::FactorizationLimit: return "factorization-limit";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace symplectic
