#include <random>

#include "doctest.h"
#include "dblie/matrices.hpp"

using namespace dblie;

namespace {

using Extent = RayTerm::Extent;

const IndexDomain N = IndexDomain::naturals();
const IndexDomain Z = IndexDomain::integers();

RayTerm fwd(std::int64_t r, std::int64_t c, std::int64_t coeff = 1, std::int64_t stride = 1) {
  return {make_scalar(coeff), r, c, stride, Extent::forward, std::nullopt};
}

LocallyFiniteOperator unit_op(IndexDomain d, std::int64_t i, std::int64_t j) {
  return LocallyFiniteOperator::from_finitary(FinitaryMatrix::unit(d, i, j));
}

// Raw description of a matrix: summed entrywise by the oracle, independent of
// the canonical form.
struct Raw {
  IndexDomain dom;
  std::vector<std::tuple<std::int64_t, std::int64_t, Scalar>> entries;
  std::vector<RayTerm> rays;

  Scalar at(std::int64_t i, std::int64_t j) const {
    Scalar v(0);
    for (const auto& [a, b, c] : entries) {
      if (a == i && b == j) v += c;
    }
    for (const auto& r : rays) {
      std::int64_t u = i - r.row0;
      if (j - i != r.col0 - r.row0 || u % r.stride != 0) continue;
      bool on = r.extent == Extent::bi || (r.extent == Extent::forward ? u >= 0 : u <= 0);
      if (r.length) on = u >= 0 && u / r.stride < *r.length;
      if (on) v += r.coeff;
    }
    return v;
  }

  LocallyFiniteOperator build() const {
    FinitaryMatrix m(dom);
    for (const auto& [a, b, c] : entries) m.add(a, b, c);
    return LocallyFiniteOperator(m, rays);
  }
};

Raw random_raw(std::mt19937_64& rng, IndexDomain dom) {
  Raw raw{dom, {}, {}};
  auto small = [&](int lo, int hi) { return static_cast<std::int64_t>(lo + static_cast<int>(rng() % (hi - lo + 1))); };
  bool ints = dom.kind == IndexDomain::Kind::integers;
  int lo = ints ? -4 : 0;
  for (int k = small(0, 4); k > 0; --k) raw.entries.emplace_back(small(lo, 5), small(lo, 5), make_scalar(small(-2, 2)));
  for (int k = small(0, 3); k > 0; --k) {
    RayTerm r = fwd(small(lo, 4), small(lo, 4), small(-2, 2), small(1, 3));
    if (r.coeff == 0) r.coeff = 1;
    if (ints) r.extent = static_cast<Extent>(small(0, 2));
    if (rng() % 4 == 0) {
      r.extent = Extent::forward;
      r.length = small(0, 4);
    }
    raw.rays.push_back(r);
  }
  return raw;
}

// Same matrix written differently: every ray split into residue classes of a
// doubled stride, and the first element of forward rays peeled into an entry.
Raw rewrite(const Raw& raw) {
  Raw out{raw.dom, raw.entries, {}};
  for (const auto& r : raw.rays) {
    if (r.length || r.extent == Extent::backward) {
      out.rays.push_back(r);
      continue;
    }
    RayTerm a = r, b = r;
    a.stride = b.stride = 2 * r.stride;
    if (r.extent == Extent::forward) {
      out.entries.emplace_back(r.row0, r.col0, r.coeff);
      a.row0 += 2 * r.stride;
      a.col0 += 2 * r.stride;
    }
    b.row0 += r.stride;
    b.col0 += r.stride;
    out.rays.push_back(a);
    out.rays.push_back(b);
  }
  return out;
}

}  // namespace

TEST_SUITE("matrices") {
  TEST_CASE("matrix units and rays act on the basis") {
    Vec u1(monomial(1));
    CHECK(apply_operator(unit_op(N, 0, 1), u1) == Vec(monomial(0)));
    auto r1_e10 = LocallyFiniteOperator::ray(N, fwd(1, 1, -1));
    CHECK(apply_operator(r1_e10, Vec(monomial(2))) == make_scalar(-1) * Vec(monomial(2)));
    CHECK(apply_operator(r1_e10, Vec{}).empty());
    CHECK_THROWS_AS(apply_operator(r1_e10, Vec(finite_basis(1))), DomainError);
  }

  TEST_CASE("trace pairing examples") {
    CHECK(trace_pair(FinitaryMatrix::unit(N, 0, 1), unit_op(N, 1, 0)) == 1);
    CHECK(trace_pair(FinitaryMatrix::unit(N, 0, 1), unit_op(N, 0, 1)) == 0);
    auto r1_e10 = LocallyFiniteOperator::ray(N, fwd(1, 1, -1));
    CHECK(trace_pair(FinitaryMatrix::unit(N, 1, 1), r1_e10) == -1);
  }

  TEST_CASE("transpose") {
    CHECK(unit_op(N, 2, 5).transpose() == unit_op(N, 5, 2));
    auto r = LocallyFiniteOperator::ray(N, fwd(1, 0));
    CHECK(r.transpose() == LocallyFiniteOperator::ray(N, fwd(0, 1)));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
      auto op = random_raw(rng, i % 2 ? Z : N).build();
      CHECK(op.transpose().transpose() == op);
    }
  }

  TEST_CASE("mixed products") {
    CHECK(mul(FinitaryMatrix::unit(N, 0, 1), FinitaryMatrix::unit(N, 1, 0)) == FinitaryMatrix::unit(N, 0, 0));
    auto diag = LocallyFiniteOperator::ray(N, fwd(1, 1));
    CHECK(mul(diag, FinitaryMatrix::unit(N, 0, 1)).empty());
    CHECK(mul(diag, FinitaryMatrix::unit(N, 1, 2)) == FinitaryMatrix::unit(N, 1, 2));
    auto A = LocallyFiniteOperator::ray(N, fwd(1, 0));
    auto x = unit_op(N, 0, 0);
    auto d = mul(A, x) - mul(x, A);
    CHECK(d == unit_op(N, 1, 0));
    // A^2 is the unit ray on the diagonal shifted by two.
    CHECK(mul(A, A) == LocallyFiniteOperator::ray(N, fwd(2, 0)));
  }

  TEST_CASE("block projection") {
    auto r = LocallyFiniteOperator::ray(N, fwd(1, 1, -1));
    CHECK(project_to_block(r, 2) == FinitaryMatrix::unit(IndexDomain::finite(2), 1, 1, make_scalar(-1)));
    CHECK(project_to_block(unit_op(N, 0, 1), 2) == FinitaryMatrix::unit(IndexDomain::finite(2), 0, 1));
    CHECK(project_to_block(unit_op(N, 3, 5), 2).empty());
  }

  TEST_CASE("domain guards") {
    CHECK_THROWS_AS(LocallyFiniteOperator::ray(N, {Scalar(1), 3, 3, 1, Extent::bi, std::nullopt}), DomainError);
    CHECK_THROWS_AS(LocallyFiniteOperator::ray(IndexDomain::finite(3), fwd(0, 0)), DomainError);
    CHECK_THROWS_AS(FinitaryMatrix::unit(N, -1, 0), DomainError);
    CHECK_THROWS_AS(trace_pair(FinitaryMatrix::unit(Z, 0, 0), unit_op(N, 0, 0)), DomainError);
  }

  TEST_CASE("canonical form merges rays") {
    // Two residue classes of stride 2 are one stride-1 ray.
    auto a = LocallyFiniteOperator(FinitaryMatrix(N), {fwd(0, 1, 1, 2), fwd(1, 2, 1, 2)});
    CHECK(a == LocallyFiniteOperator::ray(N, fwd(0, 1)));
    // A ray minus its first element starts one step later.
    FinitaryMatrix m(N);
    m.add(0, 0, make_scalar(-1));
    auto b = LocallyFiniteOperator(m, {fwd(0, 0)});
    CHECK(b == LocallyFiniteOperator::ray(N, fwd(1, 1)));
    CHECK(b.rays().size() == 1);
    CHECK(b.finitary().empty());
    // Backward plus forward over the integers is bi-infinite.
    RayTerm back{Scalar(1), -1, 0, 1, Extent::backward, std::nullopt};
    auto c = LocallyFiniteOperator(FinitaryMatrix(Z), {fwd(0, 1), back});
    REQUIRE(c.rays().size() == 1);
    CHECK(c.rays()[0].extent == Extent::bi);
  }

  TEST_CASE("canonical form is representation independent") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      IndexDomain dom = i % 2 ? Z : N;
      Raw raw = random_raw(rng, dom);
      auto op = raw.build();
      for (std::int64_t r = -8; r <= 12; ++r) {
        for (std::int64_t c = -8; c <= 12; ++c) {
          if (!dom.contains(r) || !dom.contains(c)) continue;
          CHECK(op.entry(r, c) == raw.at(r, c));
        }
      }
      CHECK(rewrite(raw).build() == op);
      CHECK(parse_operator(serialize(op)) == op);
      CHECK(serialize(parse_operator(serialize(op))) == serialize(op));
    }
  }

  TEST_CASE("products agree with the entrywise oracle") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 150; ++i) {
      IndexDomain dom = i % 2 ? Z : N;
      Raw ra = random_raw(rng, dom), rb = random_raw(rng, dom);
      auto p = mul(ra.build(), rb.build());
      // Entries of the factors vanish outside a band, so middle indices are bounded.
      for (std::int64_t r = -5; r <= 8; ++r) {
        for (std::int64_t c = -5; c <= 8; ++c) {
          if (!dom.contains(r) || !dom.contains(c)) continue;
          Scalar v(0);
          for (std::int64_t m = r - 12; m <= r + 12; ++m) {
            if (dom.contains(m)) v += ra.at(r, m) * rb.at(m, c);
          }
          CHECK(p.entry(r, c) == v);
        }
      }
    }
  }

  TEST_CASE("pairing symmetry and associativity") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
      Raw rx = random_raw(rng, N), ry = random_raw(rng, N), rb = random_raw(rng, N);
      rx.rays.clear();
      ry.rays.clear();
      FinitaryMatrix x = rx.build().finitary(), y = ry.build().finitary();
      auto b = rb.build();
      CHECK(trace_pair(x, y) == trace_pair(y, x));
      CHECK(trace_pair(x, y) == trace_pair(y.transpose(), LocallyFiniteOperator::from_finitary(x.transpose())));
      CHECK(trace_pair(mul(x, b), LocallyFiniteOperator::from_finitary(y)) ==
            trace_pair(x, LocallyFiniteOperator::from_finitary(mul(b, y))));
    }
  }

  TEST_CASE("rows and columns are finite and apply is linear") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
      IndexDomain dom = i % 2 ? Z : N;
      auto op = random_raw(rng, dom).build();
      for (std::int64_t k = 0; k < 10; ++k) {
        CHECK(op.row(k).size() <= op.finitary().entries().size() + op.rays().size());
        for (const auto& [r, v] : op.column(k)) CHECK(op.entry(r, k) == v);
        for (const auto& [c, v] : op.row(k)) CHECK(op.entry(k, c) == v);
      }
      IndexVec u, w;
      u.add_term(1, make_scalar(2));
      u.add_term(3, make_scalar(-1, 2));
      w.add_term(3, make_scalar(5));
      CHECK(op.apply(u + w) == op.apply(u) + op.apply(w));
      CHECK(op.apply(make_scalar(7, 3) * u) == make_scalar(7, 3) * op.apply(u));
    }
  }

  TEST_CASE("serialization format") {
    auto op = LocallyFiniteOperator(FinitaryMatrix::unit(N, 0, 2, make_scalar(3, 2)), {fwd(1, 0, -1)});
    CHECK(serialize(op) == "operator naturals\nentry 0 2 3/2\nray -1 1 0 1 inf\nend\n");
    CHECK(parse_operator("operator naturals\nray 1 0 0 1 3\nend\n") == LocallyFiniteOperator(
              [] {
                FinitaryMatrix m(N);
                for (int s = 0; s < 3; ++s) m.add(s, s, Scalar(1));
                return m;
              }(),
              {}));
    CHECK_THROWS_AS(parse_operator("operator naturals\nray 1 0 0 1 biinf\nend\n"), DomainError);
    CHECK_THROWS_AS(parse_operator("operator naturals\nentry 0 0\nend\n"), InputError);
    CHECK_THROWS_AS(parse_operator("entry 0 0 1\nend\n"), InputError);
  }
}
