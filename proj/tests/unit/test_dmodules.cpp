#include "doctest.h"
#include "dblie/dmodules.hpp"

using namespace dblie;

namespace {

BasisSymbol m(std::int64_t k) { return module_basis(k); }
BasisSymbol t(std::int64_t k) { return monomial(k); }

}  // namespace

TEST_SUITE("dmodules") {
  TEST_CASE("restriction modules") {
    auto l1 = induced_module_from_tail(catalog_bracket("L1"), 2);
    CHECK(l1.l.carrier().window_basis(10).size() == 2);
    CHECK(l1.action.m_window(10).size() == 9);
    CHECK(check_module_axioms(l1.action, l1.l, 6).passed());
    // <<t, t^2>>_{L1} = t^2(x)1 - 1(x)t^2
    CHECK(l1.action.eval(t(1), m(2)) == pure_tensor(m(2), t(0)) - pure_tensor(t(0), m(2)));
    auto l3 = induced_module_from_tail(catalog_bracket("L3"), 1);
    CHECK(check_module_axioms(l3.action, l3.l, 6).passed());
    auto zero = zero_action(3);
    CHECK(check_module_axioms(zero, catalog_bracket("ex1"), 0).passed());
    auto none = induced_module_from_ideal(catalog_bracket("ex1"), Subspace(finite_carrier(2).window_basis(0)));
    CHECK(none.action.m_window(0).empty());
  }

  TEST_CASE("corrupted actions") {
    auto l1 = induced_module_from_tail(catalog_bracket("L1"), 2);
    auto bad = perturb_action(l1.action, t(1), m(2), pure_tensor(t(0), m(3)), false);
    auto rep = check_module_axioms(bad, l1.l, 5);
    CHECK_FALSE(rep.passed());
    CHECK(rep.counterexample.find("antisymmetry") != std::string::npos);
    auto bad2 = perturb_action(l1.action, t(1), m(2), pure_tensor(t(0), m(3)), true);
    auto rep2 = check_module_axioms(bad2, l1.l, 5);
    CHECK_FALSE(rep2.passed());
    CHECK(rep2.counterexample.find("antisymmetry") == std::string::npos);
    auto broken = perturb_action(l1.action, t(1), m(2), pure_tensor(t(0), t(1)), false);
    CHECK_THROWS_AS(check_module_axioms(broken, l1.l, 3), DomainError);
  }

  TEST_CASE("trivial extension equivalence") {
    auto l1 = induced_module_from_tail(catalog_bracket("L1"), 2);
    auto eq = check_extension_equivalence(l1.action, l1.l, 5);
    CHECK(eq.axioms.passed());
    CHECK(eq.extension.passed());
    auto ext = trivial_extension_bracket(l1.l, l1.action);
    CHECK(ext.eval(m(2), m(3)).empty());
    CHECK(ext.eval(t(1), t(1)) == pure_tensor(t(1), t(0)) - pure_tensor(t(0), t(1)));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto p = random_perturbation(l1.action, l1.l, 5, seed);
      auto e = check_extension_equivalence(p, l1.l, 5);
      INFO("seed " << seed);
      CHECK(e.agree());
    }
    auto z = check_extension_equivalence(zero_action(2), catalog_bracket("ex1"), 0);
    CHECK(z.agree());
    CHECK(z.extension.passed());
  }

  TEST_CASE("readings of the low-degree span") {
    auto l1 = catalog_bracket("L1");
    auto low = Subspace::span(ambient_basis(l1, 8), {Vec(t(0)), Vec(t(1)), Vec(t(2))});
    CHECK(is_ideal(l1, low, 8).passed());
    auto q = induced_module_from_monomials(l1, [](std::int64_t k) { return k <= 2; }, "M(2)");
    CHECK_FALSE(check_module_axioms(q.action, q.l, 5).passed());
    auto amb = induced_module_from_tail(l1, 2, InducedMode::ambient);
    CHECK_FALSE(check_module_axioms(amb.action, amb.l, 5).passed());
  }

  TEST_CASE("modules from finite ideals") {
    auto ex1 = catalog_bracket("ex1");
    auto ideal = Subspace::span(finite_carrier(2).window_basis(0), {Vec(finite_basis(2))});
    auto mod = induced_module_from_ideal(ex1, ideal);
    CHECK(check_module_axioms(mod.action, mod.l, 0).passed());
    auto other = Subspace::span(finite_carrier(2).window_basis(0), {Vec(finite_basis(1))});
    CHECK(is_ideal(ex1, other, 0).passed());
    auto ex2 = catalog_bracket("ex2");
    CHECK_THROWS_AS(induced_module_from_ideal(ex2, ideal), DomainError);
  }

  TEST_CASE("submodules") {
    auto l1 = induced_module_from_tail(catalog_bracket("L1"), 2);
    std::vector<Vec> all;
    for (std::int64_t k = 2; k <= 8; ++k) all.push_back(Vec(m(k)));
    CHECK(check_submodule(l1.action, l1.l, all, 8).passed());
    // <<t, t^k>>_{L1} = t^k(x)1 - 1(x)t^k keeps every span of module symbols
    CHECK(check_submodule(l1.action, l1.l, {Vec(m(5))}, 8).passed());
    auto bent = perturb_action(l1.action, t(1), m(5), pure_tensor(t(0), m(6)), true);
    CHECK_FALSE(check_submodule(bent, l1.l, {Vec(m(5))}, 8).passed());
    auto l2 = catalog_bracket("L2");
    auto window = ambient_basis(l2, 8);
    for (std::int64_t k = 0; k <= 6; ++k) {
      auto n = Subspace::span(window, {Vec(t(k)), Vec(t(k + 1)) + Vec(t(0))});
      CHECK_FALSE(check_regular_submodule(l2, n, 8).passed());
    }
  }

  TEST_CASE("rota-baxter bimodules") {
    auto inst = catalog_bimodule_instance();
    CHECK(inst.l.carrier().window_basis(0).size() == 2);
    CHECK(inst.action.m_window(0).size() == 1);
    LinearMap to_ex1 = [](const BasisSymbol& s) { return Vec(finite_basis(s.index == 1 ? 1 : 2)); };
    CHECK(check_homomorphism(inst.l, catalog_bracket("ex1"), to_ex1, 0).passed());
    auto split = rb_bimodule_split_check(inst.l, inst.action, 2, 1);
    CHECK(split.a);
    CHECK(split.b);
    CHECK(split.c);
    CHECK(split.d);
    CHECK(split.report.passed());
    auto z = rb_bimodule_split_check(catalog_bracket("ex1"), zero_action(1), 2, 1);
    CHECK(z.coherent());
    CHECK(z.d);
    // corrupt p on one off-diagonal unit, staying inside B
    auto ext = trivial_extension_bracket(inst.l, inst.action);
    std::vector<BasisSymbol> basis = inst.l.carrier().window_basis(0);
    basis.push_back(inst.action.m_window(0).front());
    auto r = rb_from_bracket(ext, basis);
    auto corrupted = mutate_add(r, 1, 3, 3, 1, Scalar(1));
    auto bad = rb_bimodule_split_check(corrupted, 2, 1);
    CHECK(bad.b);
    CHECK_FALSE(bad.c);
    CHECK_FALSE(bad.d);
    CHECK(bad.coherent());
    CHECK_THROWS_AS(rb_bimodule_split_check(inst.l, inst.action, 3, 1), InputError);
  }

  TEST_CASE("module catalog") {
    for (const auto& name : catalog_module_names()) CHECK_NOTHROW(module_report(name, 4));
    auto good = module_report("L3:tF[t]", 4);
    for (const auto& r : good) CHECK(r.passed());
    CHECK_THROWS_AS(module_report("nope", 4), InputError);
  }
}
