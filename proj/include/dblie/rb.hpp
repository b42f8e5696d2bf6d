#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dblie/matrices.hpp"
#include "dblie/report.hpp"

namespace dblie {

using ImageFn = std::function<LocallyFiniteOperator(std::int64_t i, std::int64_t j)>;
/// Indices s for which R(e_{ps}) u_q may be nonzero.
using HintFn = std::function<std::vector<std::int64_t>(std::int64_t p, std::int64_t q)>;

/// A linear map R from the finitary matrices into locally finite operators,
/// given on matrix units. Over a flattened matrix factor (matrix_factor N > 0)
/// index a*N + s stands for u_a (x) f_s, s = 0..N-1. Images are memoized and
/// copies share the cache.
class RBOperator {
 public:
  RBOperator(std::string name, IndexDomain domain, ImageFn image, HintFn hint, std::int64_t matrix_factor = 0);

  const std::string& name() const { return name_; }
  const IndexDomain& domain() const { return domain_; }
  const Scalar& weight() const { return weight_; }
  std::int64_t matrix_factor() const { return matrix_factor_; }
  const std::vector<std::string>& flags() const { return flags_; }

  const LocallyFiniteOperator& image(std::int64_t i, std::int64_t j) const;
  LocallyFiniteOperator apply(const FinitaryMatrix& x) const;
  /// R(x) u_q without materializing R(x).
  IndexVec apply_column(const FinitaryMatrix& x, std::int64_t q) const;
  std::vector<std::int64_t> support_hint(std::int64_t p, std::int64_t q) const { return hint_(p, q); }
  const HintFn& hint() const { return hint_; }
  const ImageFn& image_fn() const { return image_; }

  RBOperator renamed(std::string name) const;
  RBOperator with_flag(std::string flag) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MatrixIndex, std::unique_ptr<LocallyFiniteOperator>> images;
  };

  std::string name_;
  IndexDomain domain_;
  Scalar weight_{0};
  ImageFn image_;
  HintFn hint_;
  std::int64_t matrix_factor_ = 0;
  std::vector<std::string> flags_;
  std::shared_ptr<Cache> cache_;
};

/// Basis indices covered by a window: 0..w over the naturals, -w..w over the
/// integers, the whole domain when finite. With a matrix factor N the range
/// is 0..(w+1)N-1 on flattened indices.
std::vector<std::int64_t> window_indices(const IndexDomain& domain, std::int64_t window, std::int64_t matrix_factor = 0);

/// Hints used by the catalog: every s with |s| <= (|P| + |Q| + slack) in the
/// domain, P and Q the unflattened degrees of p and q.
HintFn degree_hint(IndexDomain domain, std::int64_t slack, std::int64_t matrix_factor = 0);
HintFn full_hint(IndexDomain domain);

VerificationReport check_rb_identity(const RBOperator& r, std::int64_t window, std::int64_t cutoff);
VerificationReport check_skew_symmetry(const RBOperator& r, std::int64_t window);

/// Conjugation descriptor for R -> psi^{-1} R psi.
struct Conjugation {
  enum class Kind : std::uint8_t { identity, transpose, permutation };
  Kind kind = Kind::identity;
  std::vector<std::int64_t> images;  // permutation: index first+a -> images[a]

  static Conjugation identity() { return {Kind::identity, {}}; }
  static Conjugation transpose() { return {Kind::transpose, {}}; }
  static Conjugation permutation(std::vector<std::int64_t> images) { return {Kind::permutation, std::move(images)}; }
  /// psi_n(e_ij) = e_{n-1-i, n-1-j} on indices 0..n-1.
  static Conjugation reversal(std::int64_t n);
};

RBOperator conjugate_by(const RBOperator& r, const Conjugation& psi);
/// (R (x) id) on I (x) M_N, flattened.
RBOperator tensor_extend(const RBOperator& r, std::int64_t n);
RBOperator scaled(const RBOperator& r, const Scalar& alpha);
/// R with the image of one unit negated.
RBOperator mutate_sign(const RBOperator& r, std::int64_t i, std::int64_t j);
/// R with R(e_ij) replaced by R(e_ij) + c e_ab (breaks skew-symmetry, usually RB too).
RBOperator mutate_add(const RBOperator& r, std::int64_t i, std::int64_t j, std::int64_t a, std::int64_t b,
                      const Scalar& c);

/// Flattened index helpers for I (x) M_N: unit e_ij (x) e_st (s, t 1-based).
std::int64_t flat_index(std::int64_t degree, std::int32_t matrix_index, std::int64_t n);

RBOperator zero_operator(IndexDomain domain = IndexDomain::naturals());
RBOperator r1();
RBOperator r2();
RBOperator r1_laurent();
RBOperator r2_laurent();
/// Laurent counterparts of r3, r4 built from the bracket relations
/// L3 = -(t (x) t) L2 and L4(n, m) = -L1(n+1, m+1): R(e_ps) = -A R2(e_{p,s-1})
/// and R(e_ps) = -R1(e_{p+1,s}) A with the bi-infinite shift A.
RBOperator r3_laurent();
RBOperator r4_laurent();
RBOperator example1_operator();
RBOperator example2_literal();
RBOperator quiver_operator();
/// Projection of R1 onto M_n (indices 0..n-1).
RBOperator r1_block(std::int64_t n);
/// Projection of any naturals-domain operator onto indices 0..n-1.
RBOperator project_operator(const RBOperator& r, std::int64_t n);
/// The inline Kac formula read literally, flattened with factor N.
RBOperator example8_literal(std::int64_t n);

/// Minimal-support solution P_k of X A^k - A^k X = e_ij over the naturals.
RBOperator build_pk(std::int64_t k);
VerificationReport check_pk_equation(std::int64_t k, std::int64_t window);

/// Names: r1 r2 r3 r4 ex1 ex2 quiver kac(N) r1_laurent .. r4_laurent p_k(k)
/// zero r1_block(n) kac_literal(N), and r3_laurent_T / r4_laurent_T, the plain
/// transpose conjugates over the integers.
RBOperator catalog_rb(const std::string& name);
std::vector<std::string> catalog_rb_names();

/// Custom operator: "hint <radius>" then blocks "unit i j" followed by an
/// operator record; units not listed map to zero.
RBOperator parse_rb_operator(const std::string& name, std::string_view text);

/// The derivation d(x) = xA - Ax with A = e_{10} + e_{21} + ...
LocallyFiniteOperator remark3_d(const LocallyFiniteOperator& x);
VerificationReport remark3_suite(std::int64_t window);

/// Brute-force scan: for p, q in the window and s <= 3*window outside the hint,
/// R(e_ps) u_q must vanish.
VerificationReport check_support_hint(const RBOperator& r, std::int64_t window);

/// Window adjoint: R*(e_kl) = sum over window units e_ij of R(e_ij)_{lk} e_ji.
FinitaryMatrix adjoint_on_window(const RBOperator& r, std::int64_t k, std::int64_t l, std::int64_t window);

}  // namespace dblie
