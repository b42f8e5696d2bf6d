#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dblie/brackets.hpp"
#include "dblie/ideals.hpp"
#include "dblie/rb.hpp"
#include "dblie/report.hpp"

namespace dblie {

/// Double action of L on M. Module symbols carry Space::module; eval is
/// called on pairs with exactly one module symbol and returns a tensor in
/// L (x) M + M (x) L.
struct DoubleAction {
  std::string name;
  std::function<std::vector<BasisSymbol>(std::int64_t window)> m_window;
  BracketFn eval;
};

inline bool is_module_symbol(const BasisSymbol& s) { return s.space == Space::module; }

/// Zero action on m_1..m_k.
DoubleAction zero_action(std::int64_t k);

/// Anticommutativity on L x M, and the two Jacobi-type identities on
/// M x M x L and L x L x M. Throws DomainError if an output term does not
/// have exactly one factor in M.
VerificationReport check_module_axioms(const DoubleAction& act, const DoubleBracket& l, std::int64_t window);

/// B_L on L x L, the action on mixed pairs, zero on M x M.
DoubleBracket trivial_extension_bracket(const DoubleBracket& l, const DoubleAction& act);

/// Module axioms and the double Lie identities of the extension, with the
/// verdict that the two agree.
struct ExtensionEquivalence {
  VerificationReport axioms;
  VerificationReport extension;
  bool agree() const { return axioms.passed() == extension.passed(); }
};
ExtensionEquivalence check_extension_equivalence(const DoubleAction& act, const DoubleBracket& l, std::int64_t window);

enum class InducedMode {
  quotient,  // L = V/I on complement representatives; I (x) I terms dropped
  ambient,   // L = V; I (x) I terms land in L (x) M
};

struct InducedModule {
  DoubleBracket l;
  DoubleAction action;
};

/// Module on I = t^from F[t] (m_k <-> t^k, k >= from) for a bracket on
/// t-monomials.
InducedModule induced_module_from_tail(const DoubleBracket& b, std::int64_t from, InducedMode mode = InducedMode::quotient);
/// Module on the span of the monomials t^k with in_ideal(k); in quotient
/// mode L is spanned by the remaining monomials.
InducedModule induced_module_from_monomials(const DoubleBracket& b, std::function<bool(std::int64_t)> in_ideal,
                                            const std::string& label, InducedMode mode = InducedMode::quotient);
/// Module on a subspace of a finite-dimensional carrier; m_k stands for the
/// basis vector of I with pivot index k. Throws DomainError unless I is an ideal.
InducedModule induced_module_from_ideal(const DoubleBracket& b, const Subspace& ideal,
                                        InducedMode mode = InducedMode::quotient);

/// <<l, n>> lies in L (x) N + N (x) L for window basis l and n in N; N is
/// spanned by vectors over module symbols.
VerificationReport check_submodule(const DoubleAction& act, const DoubleBracket& l, const std::vector<Vec>& n,
                                   std::int64_t window);
/// Submodule test for the regular module: N is a subspace of the carrier itself.
VerificationReport check_regular_submodule(const DoubleBracket& b, const Subspace& n, std::int64_t window);

/// The action with one extra term c * x (x) y added to <<a, b>>; if
/// keep_antisymmetry, -c * y (x) x is added to <<b, a>> as well.
DoubleAction perturb_action(const DoubleAction& act, const BasisSymbol& a, const BasisSymbol& b, const Tensor2& extra,
                            bool keep_antisymmetry);
/// Random perturbation built from the window bases, deterministic in the seed.
DoubleAction random_perturbation(const DoubleAction& act, const DoubleBracket& l, std::int64_t window, std::uint64_t seed);

struct BimoduleSplit {
  bool a = false;  // (A, R|_A) is an RB-algebra
  bool b = false;  // B is R-invariant
  bool c = false;  // (B, R|_B) is an (A, R|_A)-bimodule
  bool d = false;  // R|_A + R|_B is RB on A x B with B.B = 0
  VerificationReport report;
  bool coherent() const { return d == (a && b && c); }
};

/// Block split of R on M_{n+k}: A = diagonal blocks, B = off-diagonal blocks.
BimoduleSplit rb_bimodule_split_check(const RBOperator& r, std::int64_t n, std::int64_t k);
/// R = rb_from_bracket of the trivial extension over L (n symbols) and m_1..m_k window.
BimoduleSplit rb_bimodule_split_check(const DoubleBracket& l, const DoubleAction& act, std::int64_t n, std::int64_t k);

/// L = ex1 on F[t]/(t^2) and M = span{t^2} inside F[t]/(t^3), under L1.
InducedModule catalog_bimodule_instance();

/// Names accepted by module_report: "L1:t^2F[t]", "L3:tF[t]", "L4:t^2F[t]",
/// "L1:t^2F[t]:ambient", "L1:M(2)", "L4:M(2)", "L1:M(2):ambient", "bimodule".
std::vector<std::string> catalog_module_names();
std::vector<VerificationReport> module_report(const std::string& name, std::int64_t window);

}  // namespace dblie
