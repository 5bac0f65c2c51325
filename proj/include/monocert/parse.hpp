#ifndef MONOCERT_PARSE_HPP
#define MONOCERT_PARSE_HPP

// Polynomial input language for the CLI. Grammar (precedence ^ > unary - >
// * > + -):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := int | 't' | '(' expr ')'
// Alternatively the coefficient-list form "coeffs:c0,c1,...,cn" (lowest
// degree first). Integers are arbitrary precision. Errors carry a 1-based
// column and the expected-token set.

#include <string>
#include <string_view>

#include "monocert/intpoly.hpp"

namespace monocert {

int_poly parse_poly(std::string_view src);

}  // namespace monocert

#endif
