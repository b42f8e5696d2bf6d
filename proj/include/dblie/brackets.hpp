#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dblie/linalg.hpp"
#include "dblie/rb.hpp"
#include "dblie/report.hpp"
#include "dblie/tensor.hpp"

namespace dblie {

using BracketFn = std::function<Tensor2(const BasisSymbol&, const BasisSymbol&)>;
using ProductFn = std::function<Vec(const BasisSymbol&, const BasisSymbol&)>;
using LinearMap = std::function<Vec(const BasisSymbol&)>;

/// Basis family of a bracket's underlying space plus an optional
/// associative product (needed only for Leibniz).
struct Carrier {
  std::string description;
  std::function<std::vector<BasisSymbol>(std::int64_t window)> window_basis;
  std::optional<ProductFn> product;
};

/// t^0..t^w; with a product t^a t^b = t^{a+b}.
Carrier poly_carrier();
/// t^0..t^w with the product t^a * t^b = t^{a+b+1}, i.e. tF[t] carried back
/// along t^{n+1} -> t^n.
Carrier shifted_poly_carrier();
/// t^-w..t^w.
Carrier laurent_carrier();
/// e_1..e_n regardless of the window.
Carrier finite_carrier(std::int64_t n);
/// T_a^{ij}, a <= w, 1 <= i, j <= N, with (t^a e_ij)(t^b e_kl) = delta_jk t^{a+b} e_il.
Carrier yangian_carrier(std::int64_t n);
/// A fixed list of symbols regardless of the window.
Carrier explicit_carrier(std::string description, std::vector<BasisSymbol> basis);

/// A double bracket given on basis pairs; evaluations are memoized and
/// shared between copies.
class DoubleBracket {
 public:
  DoubleBracket(std::string name, Carrier carrier, BracketFn fn, std::optional<std::int64_t> degree_shift = {});

  const std::string& name() const { return name_; }
  const Carrier& carrier() const { return carrier_; }
  /// Total degree of every term of <<t^n, t^m>> is n + m + shift, when known.
  std::optional<std::int64_t> degree_shift() const { return degree_shift_; }

  const Tensor2& eval(const BasisSymbol& a, const BasisSymbol& b) const;
  Tensor2 eval(const Vec& a, const Vec& b) const;

  /// <<a, x (x) y>>_L = <<a, x>> (x) y
  Tensor3 left_L(const BasisSymbol& a, const Tensor2& u) const;
  /// <<a, x (x) y>>_R = (x (x) <<a, y>>)^(12)
  Tensor3 left_R(const BasisSymbol& a, const Tensor2& u) const;
  /// <<x (x) y, c>>_L = (<<x, c>> (x) y)^(23)
  Tensor3 right_L(const Tensor2& u, const BasisSymbol& c) const;

  DoubleBracket renamed(std::string name) const;
  /// Same bracket over another carrier description (e.g. a different product).
  DoubleBracket with_carrier(Carrier carrier) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<BasisSymbol, BasisSymbol>, std::unique_ptr<Tensor2>> values;
  };
  std::string name_;
  Carrier carrier_;
  BracketFn fn_;
  std::optional<std::int64_t> degree_shift_;
  std::shared_ptr<Cache> cache_;
};

/// <<a,<<b,c>>>>_L - <<b,<<a,c>>>>_R^(12) - <<<<a,b>>,c>>_L
Tensor3 jacobiator(const DoubleBracket& b, const BasisSymbol& x, const BasisSymbol& y, const BasisSymbol& z);

/// <<u_p, u_q>> = sum_s u_s (x) R(e_ps) u_q over s in the support hint.
DoubleBracket bracket_from_rb(const RBOperator& r);
/// R(e_ps) u_q is the u_s-left component of <<b_p, b_q>>, over finite(dim, 1)
/// with b_1..b_dim the given basis.
RBOperator rb_from_bracket(const DoubleBracket& b, const std::vector<BasisSymbol>& basis);

VerificationReport check_anticommutativity(const DoubleBracket& b, std::int64_t window);
VerificationReport check_jacobi(const DoubleBracket& b, std::int64_t window);
VerificationReport check_leibniz(const DoubleBracket& b, std::int64_t window);

enum class Variant { L1, L2, L3, L4 };
Variant parse_variant(const std::string& name);
/// Exact expansion of the closed forms by division by (t (x) 1 - 1 (x) t).
/// With Space::laurent, n and m may be negative.
Tensor2 divided_difference(Variant v, std::int64_t n, std::int64_t m, Space space = Space::poly);

/// Names: L1..L4, L1_laurent..L4_laurent, ex1, ex2, quiver, dY(N), zero, and
/// rb:<operator> for the bracket of any catalog operator.
DoubleBracket catalog_bracket(const std::string& name);
std::vector<std::string> catalog_bracket_names();
/// The dY(N) multiplication table.
DoubleBracket yangian_table(std::int64_t n);

/// L3 = -(t (x) t) L2 and L4(n, m) = -L1(n+1, m+1) for n, m <= window.
VerificationReport check_bracket_relations(std::int64_t window);

/// Recomputes the bracket of R from the basis f_j = sum_i change[j][i] e_i of
/// the window units (ordered row-major) and its trace-dual basis.
VerificationReport check_basis_independence(const RBOperator& r, std::int64_t window, const DenseMatrix& change);
/// Units used by check_basis_independence, in order.
std::vector<MatrixIndex> window_units(const RBOperator& r, std::int64_t window);
/// Upper unitriangular with small integer entries, rows then shuffled;
/// deterministic in the seed.
DenseMatrix random_basis_change(std::size_t k, std::uint64_t seed);

VerificationReport check_homomorphism(const DoubleBracket& from, const DoubleBracket& to, const LinearMap& phi,
                                      std::int64_t window);

/// The three pairing identities behind the Jacobi identity: F12 <-> R(yR(x)),
/// F23 <-> R(y)R(x), G12 <-> R(R*(y)x), for units x, y in the window.
VerificationReport verify_trace_functional_identities(const RBOperator& r, std::int64_t window);

/// "carrier poly|laurent|finite N|yangian N" followed by lines
/// "<symbol>, <symbol> -> <tensor>"; unlisted pairs are zero.
DoubleBracket parse_bracket(const std::string& name, std::string_view text);

Tensor2 map_tensor(const Tensor2& u, const LinearMap& phi);

}  // namespace dblie
