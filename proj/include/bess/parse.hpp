#pragma once

#include <string_view>

#include "bess/ratio.hpp"

namespace bess {

/// Parses an infix expression over the given field: `+ - * / ^`, parentheses,
/// variables z1..zn, decimal constants (reduced mod p), hex masks for
/// extension-field elements, and `g` for the adjoined root.  Whitespace is
/// insignificant.  Errors carry line and column.
RatFunc parse_ratfunc(std::string_view src, const FieldSpec& spec, int nvars);

/// Parses `[[e, e, ...],[...]]` into a matrix; a bare scalar expression
/// becomes a 1x1 matrix.
RatMatrix parse_matrix(std::string_view src, const FieldSpec& spec, int nvars);

}  // namespace bess
