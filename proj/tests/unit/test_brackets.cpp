#include "doctest.h"
#include "dblie/brackets.hpp"
#include "dblie/text_format.hpp"

using namespace dblie;

namespace {

Tensor2 tt(std::int64_t a, std::int64_t b, std::int64_t c = 1) {
  return pure_tensor(monomial(a), monomial(b), make_scalar(c));
}

// (x^a - y^a)/(x - y) as an explicit geometric sum
Tensor2 geometric(std::int64_t a) {
  Tensor2 out;
  for (std::int64_t k = 0; k < a; ++k) out += tt(k, a - 1 - k);
  return out;
}

Tensor2 times_xy(const Tensor2& u, std::int64_t px, std::int64_t py, std::int64_t sign = 1) {
  return make_scalar(sign) * shift_degrees(u, px, py);
}

// Oracles written directly from the closed forms.
Tensor2 l1_oracle(std::int64_t n, std::int64_t m) {
  // geometric(n) * (x^m - y^m)
  Tensor2 g = geometric(n);
  return times_xy(g, m, 0) - times_xy(g, 0, m);
}

Tensor2 l2_oracle(std::int64_t n, std::int64_t m) {
  Tensor2 out;
  if (n > m) {
    for (std::int64_t i = m; i < n; ++i) out -= tt(i, n + m - 1 - i);
  } else if (m > n) {
    for (std::int64_t i = n; i < m; ++i) out += tt(n + m - 1 - i, i);
  }
  return out;
}

Tensor2 l3_oracle(std::int64_t n, std::int64_t m) {
  if (n == m) return {};
  std::int64_t lo = std::min(n, m);
  Tensor2 g = times_xy(geometric(std::abs(n - m)), lo + 1, lo + 1);
  return n > m ? g : -g;
}

Tensor2 l4_oracle(std::int64_t n, std::int64_t m) {
  Tensor2 g = geometric(n + 1);
  return times_xy(g, 0, m + 1) - times_xy(g, m + 1, 0);
}

BasisSymbol e(std::int64_t i) { return finite_basis(i); }

}  // namespace

TEST_SUITE("brackets") {
  TEST_CASE("divided differences match explicit sums") {
    CHECK(divided_difference(Variant::L2, 1, 0) == tt(0, 0, -1));
    CHECK(divided_difference(Variant::L2, 2, 1) == tt(1, 1, -1));
    CHECK(divided_difference(Variant::L1, 1, 1) == tt(1, 0) - tt(0, 1));
    CHECK(divided_difference(Variant::L1, 0, 5).empty());
    CHECK(divided_difference(Variant::L2, 4, 4).empty());
    CHECK(render(divided_difference(Variant::L2, 3, 1)) == "-t^1(x)t^2 - t^2(x)t^1");
    for (std::int64_t n = 0; n <= 12; ++n) {
      for (std::int64_t m = 0; m <= 12; ++m) {
        CHECK(divided_difference(Variant::L1, n, m) == l1_oracle(n, m));
        CHECK(divided_difference(Variant::L2, n, m) == l2_oracle(n, m));
        CHECK(divided_difference(Variant::L3, n, m) == l3_oracle(n, m));
        CHECK(divided_difference(Variant::L4, n, m) == l4_oracle(n, m));
      }
    }
    CHECK_THROWS_AS(divided_difference(Variant::L1, -1, 2), DomainError);
  }

  TEST_CASE("laurent divided differences") {
    // (x^-1 - y^-1)/(x - y) = -x^-1 y^-1, so L2(-1, 0) = x^-1 y^-1
    auto u = divided_difference(Variant::L2, -1, 0, Space::laurent);
    CHECK(u == pure_tensor(laurent_monomial(-1), laurent_monomial(-1)));
    auto b = catalog_bracket("L2_laurent");
    CHECK(check_anticommutativity(b, 4).passed());
    CHECK(check_jacobi(b, 3).passed());
  }

  TEST_CASE("degree shape of L2") {
    auto b = catalog_bracket("L2");
    for (std::int64_t n = 0; n <= 8; ++n) {
      for (std::int64_t m = 0; m <= 8; ++m) {
        for (const auto& [key, c] : b.eval(monomial(n), monomial(m))) CHECK(key[0].index + key[1].index == n + m - 1);
      }
    }
  }

  TEST_CASE("brackets from operators") {
    auto ex1 = bracket_from_rb(example1_operator());
    CHECK(ex1.eval(e(1), e(1)) == pure_tensor(e(1), e(2)) - pure_tensor(e(2), e(1)));
    CHECK(ex1.eval(e(1), e(2)).empty());
    CHECK(ex1.eval(e(2), e(1)).empty());
    CHECK(ex1.eval(e(2), e(2)).empty());
    auto q = bracket_from_rb(quiver_operator());
    auto ref = catalog_bracket("quiver");
    for (std::int64_t a = 1; a <= 4; ++a) {
      for (std::int64_t b = 1; b <= 4; ++b) CHECK(q.eval(e(a), e(b)) == ref.eval(e(a), e(b)));
    }
    CHECK(q.eval(e(3), e(4)) == pure_tensor(e(2), e(1)));
    auto ex2 = bracket_from_rb(example2_literal());
    auto ref2 = catalog_bracket("ex2");
    for (std::int64_t a = 1; a <= 2; ++a) {
      for (std::int64_t b = 1; b <= 2; ++b) CHECK(ex2.eval(e(a), e(b)) == ref2.eval(e(a), e(b)));
    }
    auto b2 = bracket_from_rb(r2());
    CHECK(b2.eval(monomial(1), monomial(0)) == tt(0, 0, -1));
    CHECK(b2.eval(monomial(2), monomial(1)) == tt(1, 1, -1));
    CHECK_THROWS_AS(b2.eval(e(1), monomial(0)), DomainError);
  }

  TEST_CASE("operator brackets equal the closed forms") {
    const char* names[] = {"r1", "r2", "r3", "r4"};
    const Variant vs[] = {Variant::L1, Variant::L2, Variant::L3, Variant::L4};
    for (int v = 0; v < 4; ++v) {
      auto b = bracket_from_rb(catalog_rb(names[v]));
      for (std::int64_t n = 0; n <= 12; ++n) {
        for (std::int64_t m = 0; m <= 12; ++m) {
          INFO(std::string(names[v]) << " " << n << " " << m);
          CHECK(b.eval(monomial(n), monomial(m)) == divided_difference(vs[v], n, m));
        }
      }
    }
  }

  TEST_CASE("laurent operator brackets equal the laurent closed forms") {
    const char* names[] = {"r1_laurent", "r2_laurent", "r3_laurent", "r4_laurent"};
    const Variant vs[] = {Variant::L1, Variant::L2, Variant::L3, Variant::L4};
    for (int v = 0; v < 4; ++v) {
      auto b = bracket_from_rb(catalog_rb(names[v]));
      for (std::int64_t n = -6; n <= 6; ++n) {
        for (std::int64_t m = -6; m <= 6; ++m) {
          INFO(std::string(names[v]) << " " << n << " " << m);
          CHECK(b.eval(laurent_monomial(n), laurent_monomial(m)) ==
                divided_difference(vs[v], n, m, Space::laurent));
        }
      }
    }
  }

  TEST_CASE("round trip on finite operators") {
    for (const char* name : {"ex1", "ex2", "quiver", "zero"}) {
      auto r = std::string(name) == "zero" ? zero_operator(IndexDomain::finite(3, 1)) : catalog_rb(name);
      auto b = bracket_from_rb(r);
      auto back = rb_from_bracket(b, b.carrier().window_basis(0));
      auto idx = window_indices(r.domain(), 0);
      for (auto i : idx) {
        for (auto j : idx) CHECK(back.image(i, j) == r.image(i, j));
      }
    }
    auto ex1 = rb_from_bracket(catalog_bracket("ex1"), finite_carrier(2).window_basis(0));
    CHECK(ex1.image(1, 1) == example1_operator().image(1, 1));
    CHECK(ex1.image(1, 2) == example1_operator().image(1, 2));
    CHECK_THROWS_AS(rb_from_bracket(catalog_bracket("ex1"), {e(1)}), DomainError);
  }

  TEST_CASE("identities on the catalog") {
    for (const char* name : {"L1", "L2", "L3", "L4"}) {
      auto b = catalog_bracket(name);
      CHECK(check_anticommutativity(b, 10).passed());
      CHECK(check_jacobi(b, 6).passed());
    }
    for (const char* name : {"ex1", "ex2", "quiver", "zero"}) {
      auto b = catalog_bracket(name);
      CHECK(check_anticommutativity(b, 0).passed());
      CHECK(check_jacobi(b, 0).passed());
    }
    CHECK(check_anticommutativity(catalog_bracket("dY(2)"), 5).passed());
    CHECK(check_jacobi(catalog_bracket("dY(2)"), 2).passed());
  }

  TEST_CASE("jacobi convention") {
    // a bracket that is anticommutative but not Jacobi on two letters
    auto bad = parse_bracket("bad", "carrier finite 2\ne_1, e_2 -> e_1(x)e_1\ne_2, e_1 -> -e_1(x)e_1\n"
                                    "e_1, e_1 -> e_2(x)e_1 - e_1(x)e_2\n");
    CHECK(check_anticommutativity(bad, 0).passed());
    auto rep = check_jacobi(bad, 0);
    CHECK_FALSE(rep.passed());
    CHECK(rep.counterexample.find("(a,b,c)") != std::string::npos);
    auto mutated = bracket_from_rb(mutate_sign(r1(), 1, 1));
    CHECK_FALSE((check_anticommutativity(mutated, 4).passed() && check_jacobi(mutated, 4).passed()));
  }

  TEST_CASE("leibniz") {
    CHECK(check_leibniz(catalog_bracket("L1"), 5).passed());
    // <<1,1>> != 0 in L4, impossible for a unital product
    auto l4 = check_leibniz(catalog_bracket("L4"), 5);
    CHECK_FALSE(l4.passed());
    CHECK(l4.counterexample.find("(t^0, t^0, t^0)") != std::string::npos);
    CHECK(check_leibniz(catalog_bracket("L4").with_carrier(shifted_poly_carrier()), 5).passed());
    CHECK_FALSE(check_leibniz(catalog_bracket("L1").with_carrier(shifted_poly_carrier()), 3).passed());
    auto rep = check_leibniz(catalog_bracket("L2"), 3);
    CHECK_FALSE(rep.passed());
    CHECK_FALSE(rep.counterexample.empty());
    CHECK_FALSE(check_leibniz(catalog_bracket("L3"), 3).passed());
    CHECK(check_leibniz(catalog_bracket("zero"), 3).passed());
    CHECK_THROWS_AS(check_leibniz(catalog_bracket("ex1"), 0), InputError);
  }

  TEST_CASE("yangian table") {
    auto b = catalog_bracket("dY(2)");
    auto T = [](std::int64_t n, int i, int j) { return yangian_basis(n, i, j); };
    CHECK(b.eval(T(0, 1, 2), T(3, 2, 1)).empty());
    CHECK(b.eval(T(1, 1, 2), T(1, 2, 1)) == pure_tensor(T(0, 2, 2), T(1, 1, 1)) - pure_tensor(T(1, 2, 2), T(0, 1, 1)));
    for (std::int64_t n = 1; n <= 3; ++n) {
      auto kac = bracket_from_rb(catalog_rb("kac(" + std::to_string(n) + ")"));
      auto table = yangian_table(n);
      for (const auto& x : table.carrier().window_basis(3)) {
        for (const auto& y : table.carrier().window_basis(3)) CHECK(kac.eval(x, y) == table.eval(x, y));
      }
    }
  }

  TEST_CASE("relations between the closed forms") {
    CHECK(check_bracket_relations(10).passed());
    CHECK(check_bracket_relations(0).passed());
  }

  TEST_CASE("basis independence") {
    auto r = example1_operator();
    auto units = window_units(r, 0);
    CHECK(units.size() == 4);
    CHECK(check_basis_independence(r, 0, identity_matrix(4)).passed());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CHECK(check_basis_independence(r, 0, random_basis_change(4, seed)).passed());
      CHECK(check_basis_independence(r2(), 3, random_basis_change(16, seed)).passed());
    }
    DenseMatrix singular(4, std::vector<Scalar>(4, Scalar(0)));
    CHECK_THROWS_AS(check_basis_independence(r, 0, singular), InputError);
    // a change applied without the dual correction is detected
    auto broken = example1_operator();
    DenseMatrix scale = identity_matrix(4);
    scale[0][0] = 2;
    CHECK(check_basis_independence(broken, 0, scale).passed());
  }

  TEST_CASE("trace functional identities") {
    for (const char* name : {"ex1", "ex2", "quiver"}) CHECK(verify_trace_functional_identities(catalog_rb(name), 0).passed());
    CHECK(verify_trace_functional_identities(r1(), 3).passed());
    CHECK(verify_trace_functional_identities(r2(), 3).passed());
  }

  TEST_CASE("homomorphisms") {
    auto l2 = catalog_bracket("L2");
    CHECK(check_homomorphism(l2, l2, [](const BasisSymbol& s) { return Vec(s); }, 6).passed());
    CHECK(check_homomorphism(l2, l2, [](const BasisSymbol&) { return Vec(); }, 6).passed());
    // F[t] -> F[t]/(t^2), t -> e_1, 1 -> e_2, from L1 to the ex1 bracket
    LinearMap proj = [](const BasisSymbol& s) {
      if (s.index == 0) return Vec(finite_basis(2));
      if (s.index == 1) return Vec(finite_basis(1));
      return Vec();
    };
    auto l1 = catalog_bracket("L1");
    auto ex1 = catalog_bracket("ex1");
    auto rep = check_homomorphism(l1, ex1, proj, 1);
    CHECK(rep.passed());
  }

  TEST_CASE("bracket text format") {
    auto b = parse_bracket("user", "# two letters\ncarrier finite 2\ne_1, e_1 -> e_1(x)e_2 - e_2(x)e_1\n");
    auto ex1 = catalog_bracket("ex1");
    for (std::int64_t a = 1; a <= 2; ++a) {
      for (std::int64_t c = 1; c <= 2; ++c) CHECK(b.eval(e(a), e(c)) == ex1.eval(e(a), e(c)));
    }
    auto y = parse_bracket("y", "carrier yangian 2\nT_1^{1,2}, T_1^{2,1} -> T_0^{2,2}(x)T_1^{1,1}\n");
    CHECK(y.eval(yangian_basis(1, 1, 2), yangian_basis(1, 2, 1)).size() == 1);
    CHECK_THROWS_AS(parse_bracket("x", "e_1, e_1 -> 0"), InputError);
    CHECK_THROWS_AS(parse_bracket("x", "carrier finite 2\ne_1 e_1 -> 0"), InputError);
    CHECK_THROWS_AS(parse_bracket("x", "carrier poly\ne_1, t -> 0"), InputError);
    CHECK_THROWS_AS(catalog_bracket("L9"), InputError);
    CHECK_THROWS_AS(catalog_bracket("dY(x)"), InputError);
  }
}
