#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dblie {

/// Carrier space of a basis symbol. Brackets never mix tags silently: the
/// module tag marks the second summand of an L (+) M construction.
enum class Space : std::uint8_t {
  poly,     // t^n, n >= 0
  laurent,  // t^n, n in Z
  finite,   // e_i
  yangian,  // T_n^{i,j} = t^n (x) e_ij
  module,   // m_k, the k-th generator of a module carrier
};

const char* space_name(Space space);

struct BasisSymbol {
  Space space = Space::poly;
  std::int64_t index = 0;
  std::int32_t row = 0;  // matrix indices, yangian only (1-based)
  std::int32_t col = 0;

  auto operator<=>(const BasisSymbol&) const = default;
};

BasisSymbol monomial(std::int64_t degree);
BasisSymbol laurent_monomial(std::int64_t degree);
BasisSymbol finite_basis(std::int64_t index);
/// Throws InputError unless n >= 0 and i, j >= 1.
BasisSymbol yangian_basis(std::int64_t degree, std::int32_t i, std::int32_t j);
BasisSymbol module_basis(std::int64_t index);

/// "t^3", "e_2", "T_1^{1,2}", "m_4".
std::string render(const BasisSymbol& symbol);

}  // namespace dblie
