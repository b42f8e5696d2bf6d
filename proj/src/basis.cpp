#include "dblie/basis.hpp"

#include "dblie/error.hpp"

namespace dblie {

const char* space_name(Space space) {
  switch (space) {
    case Space::poly: return "poly";
    case Space::laurent: return "laurent";
    case Space::finite: return "finite";
    case Space::yangian: return "yangian";
    case Space::module: return "module";
  }
  return "?";
}

BasisSymbol monomial(std::int64_t degree) {
  if (degree < 0) throw InputError("negative degree for a polynomial monomial");
  return {Space::poly, degree, 0, 0};
}

BasisSymbol laurent_monomial(std::int64_t degree) { return {Space::laurent, degree, 0, 0}; }

BasisSymbol finite_basis(std::int64_t index) { return {Space::finite, index, 0, 0}; }

BasisSymbol yangian_basis(std::int64_t degree, std::int32_t i, std::int32_t j) {
  if (degree < 0 || i < 1 || j < 1) throw InputError("yangian symbol needs n >= 0 and i, j >= 1");
  return {Space::yangian, degree, i, j};
}

BasisSymbol module_basis(std::int64_t index) { return {Space::module, index, 0, 0}; }

std::string render(const BasisSymbol& s) {
  switch (s.space) {
    case Space::poly:
    case Space::laurent: return "t^" + std::to_string(s.index);
    case Space::finite: return "e_" + std::to_string(s.index);
    case Space::yangian:
      return "T_" + std::to_string(s.index) + "^{" + std::to_string(s.row) + "," + std::to_string(s.col) + "}";
    case Space::module: return "m_" + std::to_string(s.index);
  }
  return "?";
}

}  // namespace dblie
