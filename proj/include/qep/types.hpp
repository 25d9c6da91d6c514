#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace qep {

// Every quantity on the decision path is an arbitrary-precision rational.
// GMP keeps values canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::mpq_rational;

using Index = Eigen::Index;
using RVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class of all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Construction or mixing of incompatible party systems.
struct ContextError : Error {
    using Error::Error;
};

/// Input text rejected by the grammar; `position` is a 0-based byte offset.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position_)
        : Error(what + " (at position " + std::to_string(position_) + ")"),
          position(position_) {}
    std::size_t position;
};

/// A resource cap was hit (pivot limit, size budget). Distinct from any
/// mathematical outcome: the computation was cut short, not decided.
struct LimitError : Error {
    using Error::Error;
};

/// Internal invariant violation; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

/// "p/q" when q != 1, plain "p" otherwise. Never a decimal approximation.
inline std::string to_string(const Rational& value) { return value.str(); }

/// Parses "p", "p/q" or a decimal literal ("0.8" -> 4/5) exactly.
/// Returns nullopt on malformed input.
std::optional<Rational> rational_from_string(std::string_view text);

}  // namespace qep
