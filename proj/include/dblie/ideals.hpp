#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dblie/brackets.hpp"
#include "dblie/report.hpp"
#include "dblie/tensor.hpp"

namespace dblie {

/// Subspace of a finite ambient list of basis symbols, kept in fully reduced
/// echelon form: every basis vector has its largest symbol (the pivot) with
/// coefficient 1, and no pivot appears in any other basis vector.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::vector<BasisSymbol> ambient);
  static Subspace span(std::vector<BasisSymbol> ambient, const std::vector<Vec>& generators);
  /// Whole ambient space.
  static Subspace full(std::vector<BasisSymbol> ambient);

  const std::vector<BasisSymbol>& ambient() const { return ambient_; }
  /// Echelon basis, ordered by increasing pivot.
  const std::vector<Vec>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_.size(); }
  bool in_ambient(const BasisSymbol& s) const;
  bool in_ambient(const Vec& v) const;

  /// Canonical representative modulo the subspace: a combination of
  /// non-pivot symbols. Throws WindowError outside the ambient.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& other) const;
  /// Returns false if v was already in the subspace.
  bool add(const Vec& v);
  /// Ambient symbols that are not pivots: the coordinates of the quotient.
  std::vector<BasisSymbol> complement() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  std::vector<BasisSymbol> ambient_;
  std::vector<Vec> basis_;
};

/// "span{t^0, t^2 - 1}"
std::string render(const Subspace& s);

/// psi(u) in (V/I) (x) (V/I), written on complement representatives; zero
/// exactly when u lies in I (x) V + V (x) I.
Tensor2 quotient_reduce(const Tensor2& u, const Subspace& ideal);

/// Window basis of the bracket's carrier, used as ambient for subspaces.
std::vector<BasisSymbol> ambient_basis(const DoubleBracket& b, std::int64_t window);

/// <<v,w>> and <<w,v>> reduce to zero for window basis v and generators w;
/// pairs whose value leaves the window are skipped and counted in the notes.
VerificationReport is_ideal(const DoubleBracket& b, const Subspace& ideal, std::int64_t window);

/// Bracket on the complement representatives; throws DomainError unless
/// is_ideal passes on the window.
DoubleBracket quotient_bracket(const DoubleBracket& b, const Subspace& ideal, std::int64_t window);

struct ClosureResult {
  std::vector<Subspace> closures;  // minimal by inclusion, in discovery order
  std::size_t nodes = 0;
  bool exhausted = false;
};

/// Branch-and-bound search for the minimal ideals containing the seeds.
ClosureResult ideal_closure(const DoubleBracket& b, const std::vector<Vec>& seeds, std::int64_t window,
                            std::size_t budget = 20000);

/// Polynomials of degree <= max_degree with small rational coefficients and a
/// nonzero leading term, deterministic in the seed.
std::vector<Vec> random_polynomials(std::size_t count, std::int64_t max_degree, std::uint64_t seed);

/// Pass: <<V,V>> != 0 and every closure of every seed contains V_{<= (window-1)/2}.
/// Fail: the counterexample names a proper ideal (or the vanishing bracket).
VerificationReport simplicity_probe(const DoubleBracket& b, std::int64_t window, const std::vector<Vec>& seeds,
                                    std::size_t budget = 20000);

/// Exact replay of the simplicity argument for L2 on the window.
VerificationReport theorem3_replay(std::int64_t window, std::uint64_t seed = 3);

/// Every generator of each closure beyond the seed span is forced: dropping
/// it and closing again recovers the same ideal.
VerificationReport minimality_audit(const DoubleBracket& b, const std::vector<Vec>& seeds, std::int64_t window,
                                    std::size_t budget = 20000);

}  // namespace dblie
