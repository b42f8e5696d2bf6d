#pragma once

#include <string_view>

#include "dblie/basis.hpp"
#include "dblie/tensor.hpp"

namespace dblie {

// Grammar shared by reports, seeds and user-defined brackets:
//
//   sum     := ['-'] term (('+' | '-') term)*
//   term    := [scalar ['*']] factor ('(x)' factor)*  |  scalar
//   factor  := 't' ['^' int] | 'e_' int | 'm_' int | 'T_' int '^{' int ',' int '}' | '1'
//   scalar  := int ['/' int]
//
// A bare 't' is t^1 and a bare scalar (or '1') in vector position is the
// scalar times t^0. Whitespace is insignificant. `poly_space` selects the tag
// used for t-monomials (Space::poly or Space::laurent).

BasisSymbol parse_symbol(std::string_view text, Space poly_space = Space::poly);
Vec parse_vec(std::string_view text, Space poly_space = Space::poly);
Tensor2 parse_tensor2(std::string_view text, Space poly_space = Space::poly);

}  // namespace dblie
