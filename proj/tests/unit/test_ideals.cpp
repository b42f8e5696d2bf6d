#include <random>

#include "doctest.h"
#include "dblie/ideals.hpp"
#include "dblie/text_format.hpp"

using namespace dblie;

namespace {

Vec t(std::int64_t n) { return Vec(monomial(n)); }

std::vector<BasisSymbol> poly_window(std::int64_t w) { return poly_carrier().window_basis(w); }

Subspace tail_ideal(std::int64_t from, std::int64_t w) {
  std::vector<Vec> gens;
  for (std::int64_t k = from; k <= w; ++k) gens.push_back(t(k));
  return Subspace::span(poly_window(w), gens);
}

}  // namespace

TEST_SUITE("ideals") {
  TEST_CASE("echelon subspaces") {
    auto s = Subspace::span(poly_window(4), {parse_vec("t^2 + 1"), parse_vec("t^2 - t"), parse_vec("2*t^2 + 1 - t")});
    CHECK(s.dim() == 2);
    CHECK(s.contains(parse_vec("t + 1")));
    CHECK_FALSE(s.contains(t(3)));
    CHECK(s.reduce(t(2)) == parse_vec("-1"));
    auto same = Subspace::span(poly_window(4), {parse_vec("t + 1"), parse_vec("t^2 - t")});
    CHECK(s == same);
    CHECK(s.complement().size() == 3);
    CHECK_THROWS_AS(s.reduce(t(5)), WindowError);
    CHECK(render(Subspace(poly_window(2))) == "span{}");
  }

  TEST_CASE("quotient reduction") {
    auto i2 = Subspace::span(poly_window(4), {t(2)});
    CHECK(quotient_reduce(pure_tensor(monomial(2), monomial(0)), i2).empty());
    CHECK(quotient_reduce(Tensor2(), i2).empty());
    CHECK_FALSE(quotient_reduce(pure_tensor(monomial(1), monomial(1)), i2).empty());
    // kernel of psi is I (x) V + V (x) I
    std::mt19937_64 rng(11);
    auto rnd = [&](const Subspace& s, bool inside) {
      Vec v;
      if (inside) {
        for (const auto& b : s.basis()) v.add_scaled(b, make_scalar(static_cast<std::int64_t>(rng() % 5) - 2));
      } else {
        for (const auto& c : s.complement()) v.add_term(c, make_scalar(static_cast<std::int64_t>(rng() % 5) - 2));
        if (v.empty()) v.add_term(s.complement().front(), Scalar(1));
      }
      return v;
    };
    auto ideal = Subspace::span(poly_window(6), {parse_vec("t^2 - t"), parse_vec("t^5 + 3")});
    for (int k = 0; k < 20; ++k) {
      Vec v = rnd(ideal, true);
      Vec w = rnd(Subspace::full(poly_window(6)), true);
      CHECK(quotient_reduce(outer(v, w), ideal).empty());
      CHECK(quotient_reduce(outer(w, v), ideal).empty());
      Vec a = rnd(ideal, false);
      Vec b = rnd(ideal, false);
      CHECK_FALSE(quotient_reduce(outer(a, b), ideal).empty());
    }
  }

  TEST_CASE("ideal verification") {
    auto l1 = catalog_bracket("L1");
    CHECK(is_ideal(l1, tail_ideal(2, 10), 10).passed());
    auto ex1 = catalog_bracket("ex1");
    auto e2 = Subspace::span(ambient_basis(ex1, 0), {Vec(finite_basis(2))});
    CHECK(is_ideal(ex1, e2, 0).passed());
    auto l2 = catalog_bracket("L2");
    auto rep = is_ideal(l2, Subspace::span(poly_window(10), {t(0)}), 10);
    CHECK_FALSE(rep.passed());
    CHECK_FALSE(rep.counterexample.empty());
  }

  TEST_CASE("quotient brackets") {
    auto l1 = catalog_bracket("L1");
    auto q = quotient_bracket(l1, tail_ideal(2, 10), 10);
    CHECK(q.carrier().window_basis(0).size() == 2);
    CHECK(q.eval(monomial(1), monomial(1)) == pure_tensor(monomial(1), monomial(0)) - pure_tensor(monomial(0), monomial(1)));
    LinearMap to_ex1 = [](const BasisSymbol& s) { return Vec(finite_basis(s.index == 1 ? 1 : 2)); };
    CHECK(check_homomorphism(q, catalog_bracket("ex1"), to_ex1, 0).passed());
    CHECK(check_anticommutativity(q, 0).passed());
    CHECK(check_jacobi(q, 0).passed());
    auto same = quotient_bracket(l1, Subspace(poly_window(6)), 6);
    for (std::int64_t n = 0; n <= 3; ++n) {
      for (std::int64_t m = 0; m <= 3; ++m) CHECK(same.eval(monomial(n), monomial(m)) == l1.eval(monomial(n), monomial(m)));
    }
    auto none = quotient_bracket(l1, Subspace::full(poly_window(6)), 6);
    CHECK(none.carrier().window_basis(0).empty());
    CHECK_THROWS_AS(quotient_bracket(catalog_bracket("L2"), Subspace::span(poly_window(6), {t(0)}), 6), DomainError);
  }

  TEST_CASE("closure search") {
    auto l2 = catalog_bracket("L2");
    auto res = ideal_closure(l2, {t(0)}, 20);
    CHECK_FALSE(res.exhausted);
    REQUIRE(res.closures.size() == 1);
    for (std::int64_t s = 0; s <= 9; ++s) CHECK(res.closures[0].contains(t(s)));
    CHECK(is_ideal(l2, res.closures[0], 20).passed());
    auto ex1 = catalog_bracket("ex1");
    auto e = ideal_closure(ex1, {Vec(finite_basis(2))}, 0);
    REQUIRE(e.closures.size() == 1);
    CHECK(e.closures[0].dim() == 1);
    auto zero = ideal_closure(l2, {}, 8);
    REQUIRE(zero.closures.size() == 1);
    CHECK(zero.closures[0].is_zero());
    auto tiny = ideal_closure(l2, {t(3)}, 12, 1);
    CHECK(tiny.exhausted);
  }

  TEST_CASE("simplicity probe") {
    auto l2 = catalog_bracket("L2");
    auto rep = simplicity_probe(l2, 20, random_polynomials(5, 8, 5));
    CHECK(rep.passed());
    auto ex1 = simplicity_probe(catalog_bracket("ex1"), 0, {Vec(finite_basis(2))});
    CHECK_FALSE(ex1.passed());
    CHECK(ex1.counterexample.find("span{e_2}") != std::string::npos);
    auto ex2 = simplicity_probe(catalog_bracket("ex2"), 0, {Vec(finite_basis(1))});
    CHECK_FALSE(ex2.passed());
    auto z = simplicity_probe(catalog_bracket("zero"), 6, {t(1)});
    CHECK_FALSE(z.passed());
    CHECK(z.counterexample.find("<<V,V>> = 0") != std::string::npos);
  }

  TEST_CASE("replay of the simplicity argument") {
    auto l2 = catalog_bracket("L2");
    CHECK(l2.eval(t(0), t(1)) == pure_tensor(monomial(0), monomial(0)));
    auto red = quotient_reduce(l2.eval(t(0), t(3)), Subspace::span(poly_window(6), {t(0)}));
    CHECK(red == pure_tensor(monomial(1), monomial(1)));
    auto rep = theorem3_replay(20);
    CHECK(rep.passed());
    CHECK(rep.seed == 3u);
    CHECK_THROWS_AS(theorem3_replay(2), InputError);
  }

  TEST_CASE("minimality audit") {
    CHECK(minimality_audit(catalog_bracket("L2"), {t(0)}, 8).passed());
    CHECK(minimality_audit(catalog_bracket("L1"), {t(2)}, 8).passed());
    CHECK(minimality_audit(catalog_bracket("ex1"), {Vec(finite_basis(2))}, 0).passed());
  }
}
