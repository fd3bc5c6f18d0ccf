#pragma once

#include "starprod/rational_function.hpp"

#include <stdexcept>
#include <string>

namespace starprod {

class ParseError : public std::runtime_error {
public:
    ParseError(size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position(position) {}

    size_t position;
};

// Recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' natural)?
//   base   := natural | variable | '(' expr ')' | '-' factor
// Evaluated with exact rational function arithmetic, so quotients reduce;
// (x1^2 - x2^2)/(x1 - x2) comes back as the polynomial x1 + x2.
RationalFunction parse_expression(const std::string& text, const VarSpacePtr& space);

// As parse_expression, but rejects results with a nonconstant denominator.
Polynomial parse_polynomial(const std::string& text, const VarSpacePtr& space);

} // namespace starprod
