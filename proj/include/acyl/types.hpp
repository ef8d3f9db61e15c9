#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace acyl {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatZ = Mat<Int>;
using VecZ = Vec<Int>;
using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

// Every failure carries a code; the CLI maps input-side codes to exit 1 and
// everything else to exit 2.
enum class ErrorCode {
    MalformedInput,
    NotSymmetric,
    NotFullDimensional,
    SchemaViolation,
    ComputationOverflow,
    NonIntegralDual,
    DependentRows,
    DegenerateAmbient,
    RankMismatch,
    NotEmbeddable,
    NoE8Found,
    OddDegree,
    NonIntegralChi,
    NegativeDefect,
    NegativeBetti,
    InconsistentBetti,
    InconsistentC2,
    RankNullityViolation,
    NotReflexive,
    NotTerminal,
    NotSmooth,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }
    bool is_input_error() const {
        return code_ == ErrorCode::MalformedInput || code_ == ErrorCode::NotSymmetric ||
               code_ == ErrorCode::NotFullDimensional || code_ == ErrorCode::SchemaViolation;
    }

private:
    ErrorCode code_;
};

// Converts, throwing ComputationOverflow when the value does not fit.
long long to_ll(const Int& x);

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

std::string to_string(const Int& x);
std::string to_string(const Rational& x);  // canonical p/q, or p when q = 1

}  // namespace acyl
