#include "acyl/types.hpp"

#include <limits>

namespace acyl {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotFullDimensional: return "NotFullDimensional";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::ComputationOverflow: return "ComputationOverflow";
        case ErrorCode::NonIntegralDual: return "NonIntegralDual";
        case ErrorCode::DependentRows: return "DependentRows";
        case ErrorCode::DegenerateAmbient: return "DegenerateAmbient";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::NotEmbeddable: return "NotEmbeddable";
        case ErrorCode::NoE8Found: return "NoE8Found";
        case ErrorCode::OddDegree: return "OddDegree";
        case ErrorCode::NonIntegralChi: return "NonIntegralChi";
        case ErrorCode::NegativeDefect: return "NegativeDefect";
        case ErrorCode::NegativeBetti: return "NegativeBetti";
        case ErrorCode::InconsistentBetti: return "InconsistentBetti";
        case ErrorCode::InconsistentC2: return "InconsistentC2";
        case ErrorCode::RankNullityViolation: return "RankNullityViolation";
        case ErrorCode::NotReflexive: return "NotReflexive";
        case ErrorCode::NotTerminal: return "NotTerminal";
        case ErrorCode::NotSmooth: return "NotSmooth";
    }
    return "Error";
}

long long to_ll(const Int& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw Error(ErrorCode::ComputationOverflow, "value " + x.str() + " exceeds 64 bits");
    return x.convert_to<long long>();
}

std::string to_string(const Int& x) { return x.str(); }

std::string to_string(const Rational& x) {
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace acyl
