#pragma once

// Rational-function expressions in the variable z with Gaussian-rational
// literals, e.g. "(z^2 + 1)/z" or "(1/2 + 3i) z^3" written "(1/2+3i)*z^3".

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pqcurve/ratfunc.hpp"

namespace pqcurve {

struct Expression {
  enum class Kind { Variable, Literal, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Literal;
  GaussQ literal;
  int exponent = 0;
  /// Byte offset of the token that introduced the node.
  std::size_t offset = 0;
  std::vector<std::shared_ptr<const Expression>> args;
};

/// Grammar, loosest first: sum (+ -), product (* /), unary minus, power
/// (^ with a signed integer exponent), atom (z, i, number, parenthesis).
/// A number directly followed by i is imaginary ("3i", "0.5i").
/// Throws SyntaxError with the byte offset of the offending token.
Expression parse_expression(std::string_view text);

/// Lowers to numerator and denominator (not reduced). Throws
/// ZeroDenominator on division by an identically zero expression.
std::pair<ExactPoly, ExactPoly> lower_fraction(const Expression& e);

/// Parse, lower and normalize; constants raise DegreeZero.
RationalFunction parse_function(std::string_view text);

}  // namespace pqcurve
