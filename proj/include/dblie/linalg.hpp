#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dblie/scalar.hpp"

namespace dblie {

using DenseMatrix = std::vector<std::vector<Scalar>>;

DenseMatrix identity_matrix(std::size_t n);
/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(DenseMatrix& m);
std::size_t rank(DenseMatrix m);
/// Exact inverse, or nullopt when singular. Throws InputError if not square.
std::optional<DenseMatrix> inverse(const DenseMatrix& m);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);

}  // namespace dblie
