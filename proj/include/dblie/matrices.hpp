#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dblie/scalar.hpp"
#include "dblie/tensor.hpp"

namespace dblie {

/// Index set of the rows and columns of a matrix.
struct IndexDomain {
  enum class Kind : std::uint8_t { naturals, integers, finite };

  Kind kind = Kind::naturals;
  std::int64_t size = 0;   // finite only
  std::int64_t first = 0;  // finite only: indices first .. first+size-1

  static IndexDomain naturals() { return {Kind::naturals, 0, 0}; }
  static IndexDomain integers() { return {Kind::integers, 0, 0}; }
  static IndexDomain finite(std::int64_t n, std::int64_t first = 0);

  bool contains(std::int64_t i) const;
  /// Smallest index, if bounded below.
  std::optional<std::int64_t> lower() const;
  std::optional<std::int64_t> upper() const;
  /// Carrier tag of the basis u_q on which matrices over this domain act.
  Space vector_space() const;
  std::string describe() const;

  friend bool operator==(const IndexDomain&, const IndexDomain&) = default;
};

using MatrixIndex = std::pair<std::int64_t, std::int64_t>;

/// Finitely supported matrix over a domain: an element of the ideal I.
class FinitaryMatrix {
 public:
  explicit FinitaryMatrix(IndexDomain domain = IndexDomain::naturals()) : domain_(domain) {}
  static FinitaryMatrix unit(IndexDomain domain, std::int64_t i, std::int64_t j, const Scalar& c = Scalar(1));

  const IndexDomain& domain() const { return domain_; }
  const std::map<MatrixIndex, Scalar>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Scalar entry(std::int64_t i, std::int64_t j) const;
  /// Throws DomainError for indices outside the domain.
  void add(std::int64_t i, std::int64_t j, const Scalar& c);
  void add_scaled(const FinitaryMatrix& other, const Scalar& c);

  FinitaryMatrix transpose() const;

  friend FinitaryMatrix operator+(FinitaryMatrix a, const FinitaryMatrix& b);
  friend FinitaryMatrix operator-(FinitaryMatrix a, const FinitaryMatrix& b);
  friend FinitaryMatrix operator*(const Scalar& c, FinitaryMatrix a);
  friend bool operator==(const FinitaryMatrix& a, const FinitaryMatrix& b) {
    return a.domain_ == b.domain_ && a.entries_ == b.entries_;
  }

 private:
  IndexDomain domain_;
  std::map<MatrixIndex, Scalar> entries_;
};

/// coeff * sum_s e_{row0 + s*stride, col0 + s*stride} with s >= 0 (forward),
/// s <= 0 (backward), s in Z (bi) or 0 <= s < length when length is set.
struct RayTerm {
  enum class Extent : std::uint8_t { forward, backward, bi };

  Scalar coeff{1};
  std::int64_t row0 = 0;
  std::int64_t col0 = 0;
  std::int64_t stride = 1;
  Extent extent = Extent::forward;
  std::optional<std::int64_t> length;  // finite forward segment

  std::int64_t diagonal() const { return col0 - row0; }
  /// Whether row r lies on the ray.
  bool covers_row(std::int64_t r) const;

  friend bool operator==(const RayTerm&, const RayTerm&) = default;
};

/// Matrix with finite rows and columns, stored as a finitary part plus rays
/// along slope-one diagonals. The representation is canonical: on every
/// diagonal the rays are the periodic tails of the entry sequence, each
/// residue class carries at most one ray, and the finitary part holds the
/// irregular middle. Structural equality is therefore matrix equality.
class LocallyFiniteOperator {
 public:
  explicit LocallyFiniteOperator(IndexDomain domain = IndexDomain::naturals());
  LocallyFiniteOperator(FinitaryMatrix finitary, std::vector<RayTerm> rays);
  static LocallyFiniteOperator from_finitary(const FinitaryMatrix& m) { return LocallyFiniteOperator(m, {}); }
  static LocallyFiniteOperator ray(IndexDomain domain, RayTerm r) { return LocallyFiniteOperator(FinitaryMatrix(domain), {r}); }

  const IndexDomain& domain() const { return finitary_.domain(); }
  const FinitaryMatrix& finitary() const { return finitary_; }
  const std::vector<RayTerm>& rays() const { return rays_; }
  bool is_finitary() const { return rays_.empty(); }
  bool is_zero() const { return rays_.empty() && finitary_.empty(); }

  Scalar entry(std::int64_t i, std::int64_t j) const;
  /// Nonzero entries of column j as (row -> value); finite by construction.
  IndexVec column(std::int64_t j) const;
  IndexVec row(std::int64_t i) const;

  /// Image of the basis vector u_j and of a sparse vector.
  IndexVec apply_basis(std::int64_t j) const { return column(j); }
  IndexVec apply(const IndexVec& v) const;

  LocallyFiniteOperator transpose() const;

  friend LocallyFiniteOperator operator+(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b);
  friend LocallyFiniteOperator operator-(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b);
  friend LocallyFiniteOperator operator*(const Scalar& c, const LocallyFiniteOperator& a);
  friend bool operator==(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b) {
    return a.finitary_ == b.finitary_ && a.rays_ == b.rays_;
  }

 private:
  void canonicalize(std::vector<RayTerm> raw);
  void index_columns();

  FinitaryMatrix finitary_;
  std::vector<RayTerm> rays_;
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, Scalar>>> by_column_;
};

/// Matrix-vector product on V: sum_q v_q * op(u_q). The vector's symbols must
/// match the domain's carrier (t-monomials over naturals/integers, e_i over a
/// finite domain).
Vec apply_operator(const LocallyFiniteOperator& op, const Vec& v);

/// sum_{k,l} x_{kl} y_{lk}.
Scalar trace_pair(const FinitaryMatrix& x, const LocallyFiniteOperator& y);
Scalar trace_pair(const FinitaryMatrix& x, const FinitaryMatrix& y);

FinitaryMatrix mul(const FinitaryMatrix& a, const FinitaryMatrix& b);
FinitaryMatrix mul(const FinitaryMatrix& a, const LocallyFiniteOperator& b);
FinitaryMatrix mul(const LocallyFiniteOperator& a, const FinitaryMatrix& b);
LocallyFiniteOperator mul(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b);

/// Entries with both indices in first .. first+n-1, as a matrix over finite(n, first).
FinitaryMatrix project_to_block(const LocallyFiniteOperator& op, std::int64_t n, std::int64_t first = 0);

/// Line-oriented record:
///   operator <naturals|integers|finite N FIRST>
///   entry <row> <col> <scalar>
///   ray <coeff> <row0> <col0> <stride> <inf|-inf|biinf|LENGTH>
///   end
std::string serialize(const LocallyFiniteOperator& op);
LocallyFiniteOperator parse_operator(std::string_view text);

std::string render(const FinitaryMatrix& m);
std::string render(const LocallyFiniteOperator& op);

}  // namespace dblie
