#include "dblie/brackets.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "dblie/error.hpp"
#include "dblie/text_format.hpp"

namespace dblie {

namespace {

std::string pair_text(const BasisSymbol& a, const BasisSymbol& b) { return "(" + render(a) + ", " + render(b) + ")"; }

std::string triple_text(const BasisSymbol& a, const BasisSymbol& b, const BasisSymbol& c) {
  return "(" + render(a) + ", " + render(b) + ", " + render(c) + ")";
}

VerificationReport make_report(std::string check, std::string target, std::int64_t window) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.target = std::move(target);
  rep.window = window;
  rep.cutoff = window;
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// carriers

Carrier poly_carrier() {
  Carrier c;
  c.description = "poly";
  c.window_basis = [](std::int64_t w) {
    std::vector<BasisSymbol> out;
    for (std::int64_t n = 0; n <= w; ++n) out.push_back(monomial(n));
    return out;
  };
  c.product = [](const BasisSymbol& a, const BasisSymbol& b) { return Vec(monomial(a.index + b.index)); };
  return c;
}

Carrier shifted_poly_carrier() {
  Carrier c = poly_carrier();
  c.description = "poly, shifted product";
  c.product = [](const BasisSymbol& a, const BasisSymbol& b) { return Vec(monomial(a.index + b.index + 1)); };
  return c;
}

Carrier laurent_carrier() {
  Carrier c;
  c.description = "laurent";
  c.window_basis = [](std::int64_t w) {
    std::vector<BasisSymbol> out;
    for (std::int64_t n = -w; n <= w; ++n) out.push_back(laurent_monomial(n));
    return out;
  };
  c.product = [](const BasisSymbol& a, const BasisSymbol& b) { return Vec(laurent_monomial(a.index + b.index)); };
  return c;
}

Carrier finite_carrier(std::int64_t n) {
  std::vector<BasisSymbol> basis;
  for (std::int64_t i = 1; i <= n; ++i) basis.push_back(finite_basis(i));
  return explicit_carrier("finite " + std::to_string(n), std::move(basis));
}

Carrier yangian_carrier(std::int64_t n) {
  if (n < 1) throw InputError("dY(N) needs N >= 1");
  Carrier c;
  c.description = "yangian " + std::to_string(n);
  c.window_basis = [n](std::int64_t w) {
    std::vector<BasisSymbol> out;
    for (std::int64_t a = 0; a <= w; ++a) {
      for (std::int32_t i = 1; i <= n; ++i) {
        for (std::int32_t j = 1; j <= n; ++j) out.push_back(yangian_basis(a, i, j));
      }
    }
    return out;
  };
  c.product = [](const BasisSymbol& a, const BasisSymbol& b) {
    if (a.col != b.row) return Vec();
    return Vec(yangian_basis(a.index + b.index, a.row, b.col));
  };
  return c;
}

Carrier explicit_carrier(std::string description, std::vector<BasisSymbol> basis) {
  Carrier c;
  c.description = std::move(description);
  c.window_basis = [basis = std::move(basis)](std::int64_t) { return basis; };
  return c;
}

// ---------------------------------------------------------------------------
// DoubleBracket

DoubleBracket::DoubleBracket(std::string name, Carrier carrier, BracketFn fn, std::optional<std::int64_t> degree_shift)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      fn_(std::move(fn)),
      degree_shift_(degree_shift),
      cache_(std::make_shared<Cache>()) {}

const Tensor2& DoubleBracket::eval(const BasisSymbol& a, const BasisSymbol& b) const {
  std::pair<BasisSymbol, BasisSymbol> key{a, b};
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return *it->second;
  }
  auto value = std::make_unique<Tensor2>(fn_(a, b));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto [it, inserted] = cache_->values.try_emplace(key, std::move(value));
  return *it->second;
}

Tensor2 DoubleBracket::eval(const Vec& a, const Vec& b) const {
  Tensor2 out;
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) out.add_scaled(eval(x, y), cx * cy);
  }
  return out;
}

Tensor3 DoubleBracket::left_L(const BasisSymbol& a, const Tensor2& u) const {
  Tensor3 out;
  for (const auto& [key, c] : u) {
    for (const auto& [inner, d] : eval(a, key[0])) out.add_term({inner[0], inner[1], key[1]}, c * d);
  }
  return out;
}

Tensor3 DoubleBracket::left_R(const BasisSymbol& a, const Tensor2& u) const {
  Tensor3 plain;
  for (const auto& [key, c] : u) {
    for (const auto& [inner, d] : eval(a, key[1])) plain.add_term({key[0], inner[0], inner[1]}, c * d);
  }
  return permute(plain, kSwap12of3);
}

Tensor3 DoubleBracket::right_L(const Tensor2& u, const BasisSymbol& c) const {
  Tensor3 plain;
  for (const auto& [key, coeff] : u) {
    for (const auto& [inner, d] : eval(key[0], c)) plain.add_term({inner[0], inner[1], key[1]}, coeff * d);
  }
  return permute(plain, kSwap23of3);
}

DoubleBracket DoubleBracket::renamed(std::string name) const {
  DoubleBracket out = *this;
  out.name_ = std::move(name);
  return out;
}

DoubleBracket DoubleBracket::with_carrier(Carrier carrier) const {
  DoubleBracket out = *this;
  out.carrier_ = std::move(carrier);
  return out;
}

Tensor3 jacobiator(const DoubleBracket& br, const BasisSymbol& a, const BasisSymbol& b, const BasisSymbol& c) {
  Tensor3 j = br.left_L(a, br.eval(b, c));
  j -= permute(br.left_R(b, br.eval(a, c)), kSwap12of3);
  j -= br.right_L(br.eval(a, b), c);
  return j;
}

Tensor2 map_tensor(const Tensor2& u, const LinearMap& phi) {
  Tensor2 out;
  for (const auto& [key, c] : u) out.add_scaled(outer(phi(key[0]), phi(key[1])), c);
  return out;
}

// ---------------------------------------------------------------------------
// checkers

VerificationReport check_anticommutativity(const DoubleBracket& b, std::int64_t window) {
  auto rep = make_report("anticommutativity", b.name(), window);
  auto basis = b.carrier().window_basis(window);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Tensor2& ab = b.eval(basis[i], basis[j]);
      Tensor2 rhs = -permute(b.eval(basis[j], basis[i]), kSwap12);
      if (!(ab == rhs)) {
        rep.fail("<<a,b>> at " + pair_text(basis[i], basis[j]) + " = " + render(ab) + " but -<<b,a>>^(12) = " + render(rhs));
        return rep;
      }
    }
  }
  return rep;
}

VerificationReport check_jacobi(const DoubleBracket& b, std::int64_t window) {
  auto rep = make_report("jacobi", b.name(), window);
  auto basis = b.carrier().window_basis(window);
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      for (const auto& z : basis) {
        Tensor3 j = jacobiator(b, x, y, z);
        if (!j.empty()) {
          rep.fail("(a,b,c) = " + triple_text(x, y, z) + ": <<a,<<b,c>>>>_L = " + render(b.left_L(x, b.eval(y, z))) +
                   " but <<b,<<a,c>>>>_R^(12) + <<<<a,b>>,c>>_L differs by " + render(j));
          return rep;
        }
      }
    }
  }
  return rep;
}

VerificationReport check_leibniz(const DoubleBracket& b, std::int64_t window) {
  auto rep = make_report("leibniz", b.name(), window);
  if (!b.carrier().product) throw InputError("bracket " + b.name() + " has no product on its carrier");
  const ProductFn& mul = *b.carrier().product;
  auto basis = b.carrier().window_basis(window);
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      for (const auto& z : basis) {
        Tensor2 lhs = b.eval(Vec(x), mul(y, z));
        Tensor2 rhs;
        // <<a,b>> c + b <<a,c>>, with b (p (x) q) c = (b p) (x) (q c)
        for (const auto& [key, coeff] : b.eval(x, y)) rhs.add_scaled(outer(Vec(key[0]), mul(key[1], z)), coeff);
        for (const auto& [key, coeff] : b.eval(x, z)) rhs.add_scaled(outer(mul(y, key[0]), Vec(key[1])), coeff);
        if (!(lhs == rhs)) {
          rep.fail("(a,b,c) = " + triple_text(x, y, z) + ": <<a,bc>> = " + render(lhs) +
                   " but <<a,b>>c + b<<a,c>> = " + render(rhs));
          return rep;
        }
      }
    }
  }
  return rep;
}

VerificationReport check_homomorphism(const DoubleBracket& from, const DoubleBracket& to, const LinearMap& phi,
                                      std::int64_t window) {
  auto rep = make_report("homomorphism", from.name() + "->" + to.name(), window);
  auto basis = from.carrier().window_basis(window);
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      Tensor2 lhs = map_tensor(from.eval(x, y), phi);
      Tensor2 rhs = to.eval(phi(x), phi(y));
      if (!(lhs == rhs)) {
        rep.fail("(a,b) = " + pair_text(x, y) + ": (phi(x)phi)<<a,b>> = " + render(lhs) +
                 " but <<phi(a),phi(b)>> = " + render(rhs));
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// divided differences

Variant parse_variant(const std::string& name) {
  if (name == "L1") return Variant::L1;
  if (name == "L2") return Variant::L2;
  if (name == "L3") return Variant::L3;
  if (name == "L4") return Variant::L4;
  throw InputError("unknown bracket variant '" + name + "'");
}

Tensor2 divided_difference(Variant v, std::int64_t n, std::int64_t m, Space space) {
  if (space != Space::poly && space != Space::laurent) throw DomainError("divided differences live on t-monomials");
  if (space == Space::poly && (n < 0 || m < 0)) throw DomainError("negative degree in F[t]");
  // numerator as sum_k c_k x^k y^{d-k}, x = t (x) 1, y = 1 (x) t
  std::map<std::int64_t, Scalar> num;
  std::int64_t d = 0;
  auto add = [&](std::int64_t k, int c) { num[k] += c; };
  switch (v) {
    case Variant::L1:
      d = n + m;
      add(n + m, 1), add(n, -1), add(m, -1), add(0, 1);
      break;
    case Variant::L2:
      d = n + m;
      add(n, -1), add(m, 1);
      break;
    case Variant::L3:
      d = n + m + 2;
      add(n + 1, 1), add(m + 1, -1);
      break;
    case Variant::L4:
      d = n + m + 2;
      add(n + m + 2, -1), add(n + 1, 1), add(m + 1, 1), add(0, -1);
      break;
  }
  std::erase_if(num, [](const auto& kv) { return is_zero(kv.second); });
  Tensor2 out;
  if (num.empty()) return out;
  // P(z) = sum c_k z^k divided by (z - 1), shifted to start at z^0
  std::int64_t lo = num.begin()->first;
  std::int64_t top = num.rbegin()->first - lo;
  std::vector<Scalar> a(static_cast<std::size_t>(top + 1));
  for (const auto& [k, c] : num) a[static_cast<std::size_t>(k - lo)] = c;
  std::vector<Scalar> b(static_cast<std::size_t>(top));
  Scalar carry = 0;
  for (std::int64_t k = top; k >= 1; --k) {
    carry += a[static_cast<std::size_t>(k)];
    b[static_cast<std::size_t>(k - 1)] = carry;
  }
  if (!is_zero(carry + a[0])) throw std::logic_error("numerator not divisible by t(x)1 - 1(x)t");
  auto sym = [space](std::int64_t deg) { return space == Space::poly ? monomial(deg) : laurent_monomial(deg); };
  for (std::int64_t k = 0; k < top; ++k) {
    const Scalar& c = b[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    std::int64_t px = k + lo;
    out.add_term({sym(px), sym(d - 1 - px)}, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// correspondence with operators

namespace {

struct SymbolMap {
  IndexDomain domain;
  std::int64_t n = 0;

  BasisSymbol symbol(std::int64_t idx, std::int32_t col) const {
    if (n > 0) return yangian_basis(floor_div(idx, n), static_cast<std::int32_t>(idx - floor_div(idx, n) * n + 1), col);
    switch (domain.kind) {
      case IndexDomain::Kind::naturals: return monomial(idx);
      case IndexDomain::Kind::integers: return laurent_monomial(idx);
      case IndexDomain::Kind::finite: return finite_basis(idx - domain.first + 1);
    }
    return {};
  }

  std::int64_t index(const BasisSymbol& s) const {
    Space want = n > 0 ? Space::yangian : domain.vector_space();
    if (s.space != want) throw DomainError("symbol " + render(s) + " is not in the carrier of this bracket");
    std::int64_t idx = 0;
    if (n > 0) {
      if (s.row < 1 || s.row > n || s.col < 1 || s.col > n) throw DomainError("matrix index out of range in " + render(s));
      idx = s.index * n + (s.row - 1);
    } else if (domain.kind == IndexDomain::Kind::finite) {
      idx = s.index - 1 + domain.first;
    } else {
      idx = s.index;
    }
    if (!domain.contains(idx)) throw DomainError("symbol " + render(s) + " outside the domain");
    return idx;
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
  }
};

Carrier carrier_for(const RBOperator& r) {
  if (r.matrix_factor() > 0) {
    if (r.domain().kind != IndexDomain::Kind::naturals) throw DomainError("matrix factor supported over the naturals only");
    return yangian_carrier(r.matrix_factor());
  }
  switch (r.domain().kind) {
    case IndexDomain::Kind::naturals: return poly_carrier();
    case IndexDomain::Kind::integers: return laurent_carrier();
    case IndexDomain::Kind::finite: return finite_carrier(r.domain().size);
  }
  return poly_carrier();
}

}  // namespace

DoubleBracket bracket_from_rb(const RBOperator& r) {
  SymbolMap map{r.domain(), r.matrix_factor()};
  BracketFn fn = [r, map](const BasisSymbol& a, const BasisSymbol& b) {
    std::int64_t p = map.index(a);
    std::int64_t q = map.index(b);
    Tensor2 out;
    for (std::int64_t s : r.support_hint(p, q)) {
      if (!r.domain().contains(s)) continue;
      for (const auto& [y, c] : r.image(p, s).column(q)) out.add_term({map.symbol(s, a.col), map.symbol(y, b.col)}, c);
    }
    return out;
  };
  return DoubleBracket("rb:" + r.name(), carrier_for(r), std::move(fn));
}

RBOperator rb_from_bracket(const DoubleBracket& b, const std::vector<BasisSymbol>& basis) {
  const auto dim = static_cast<std::int64_t>(basis.size());
  IndexDomain dom = IndexDomain::finite(dim, 1);
  std::map<BasisSymbol, std::int64_t> position;
  for (std::int64_t i = 0; i < dim; ++i) position[basis[static_cast<std::size_t>(i)]] = i + 1;
  auto lookup = [&](const BasisSymbol& s) {
    auto it = position.find(s);
    if (it == position.end()) throw DomainError("bracket value " + render(s) + " outside the given basis");
    return it->second;
  };
  auto table = std::make_shared<std::map<MatrixIndex, FinitaryMatrix>>();
  for (std::int64_t p = 1; p <= dim; ++p) {
    for (std::int64_t q = 1; q <= dim; ++q) {
      for (const auto& [key, c] : b.eval(basis[static_cast<std::size_t>(p - 1)], basis[static_cast<std::size_t>(q - 1)])) {
        std::int64_t s = lookup(key[0]);
        std::int64_t y = lookup(key[1]);
        auto [it, inserted] = table->try_emplace({p, s}, dom);
        it->second.add(y, q, c);
      }
    }
  }
  ImageFn img = [table, dom](std::int64_t i, std::int64_t j) {
    auto it = table->find({i, j});
    return it == table->end() ? LocallyFiniteOperator(dom) : LocallyFiniteOperator::from_finitary(it->second);
  };
  return RBOperator("op:" + b.name(), dom, std::move(img), full_hint(dom));
}

// ---------------------------------------------------------------------------
// catalog

DoubleBracket yangian_table(std::int64_t n) {
  BracketFn fn = [n](const BasisSymbol& a, const BasisSymbol& b) {
    if (a.space != Space::yangian || b.space != Space::yangian) throw DomainError("dY expects T_n^{i,j} symbols");
    if (a.row > n || a.col > n || b.row > n || b.col > n) throw DomainError("matrix index out of range");
    Tensor2 out;
    std::int64_t m = a.index;
    std::int64_t k = b.index;
    for (std::int64_t r = 0; r < std::min(m, k); ++r) {
      out.add_term({yangian_basis(r, b.row, a.col), yangian_basis(m + k - r - 1, a.row, b.col)}, Scalar(1));
      out.add_term({yangian_basis(m + k - r - 1, b.row, a.col), yangian_basis(r, a.row, b.col)}, Scalar(-1));
    }
    return out;
  };
  return DoubleBracket("dY(" + std::to_string(n) + ")", yangian_carrier(n), std::move(fn), -1);
}

namespace {

DoubleBracket closed_form(const std::string& name, Variant v, Space space) {
  Carrier c = space == Space::poly ? poly_carrier() : laurent_carrier();
  BracketFn fn = [v, space](const BasisSymbol& a, const BasisSymbol& b) {
    if (a.space != space || b.space != space) throw DomainError("symbol outside the t-monomial carrier");
    return divided_difference(v, a.index, b.index, space);
  };
  std::int64_t shift = (v == Variant::L1 || v == Variant::L2) ? -1 : 1;
  return DoubleBracket(name, std::move(c), std::move(fn), shift);
}

DoubleBracket finite_table(const std::string& name, std::int64_t dim,
                           std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, int>> rows) {
  BracketFn fn = [rows, dim](const BasisSymbol& a, const BasisSymbol& b) {
    if (a.space != Space::finite || b.space != Space::finite || a.index < 1 || a.index > dim || b.index < 1 ||
        b.index > dim)
      throw DomainError("symbol outside the finite carrier");
    Tensor2 out;
    for (const auto& [p, q, x, y, c] : rows) {
      if (p == a.index && q == b.index) out.add_term({finite_basis(x), finite_basis(y)}, Scalar(c));
    }
    return out;
  };
  return DoubleBracket(name, finite_carrier(dim), std::move(fn));
}

}  // namespace

DoubleBracket catalog_bracket(const std::string& name) {
  static const std::vector<std::pair<std::string, Variant>> variants{
      {"L1", Variant::L1}, {"L2", Variant::L2}, {"L3", Variant::L3}, {"L4", Variant::L4}};
  for (const auto& [n, v] : variants) {
    if (name == n) return closed_form(name, v, Space::poly);
    if (name == n + "_laurent") return closed_form(name, v, Space::laurent);
  }
  if (name == "ex1") return finite_table(name, 2, {{1, 1, 1, 2, 1}, {1, 1, 2, 1, -1}});
  if (name == "ex2") return finite_table(name, 2, {{1, 2, 1, 1, 1}, {2, 1, 1, 1, -1}});
  if (name == "quiver") return finite_table(name, 4, {{3, 4, 2, 1, 1}, {4, 3, 1, 2, -1}});
  if (name == "zero") return DoubleBracket(name, poly_carrier(), [](const BasisSymbol&, const BasisSymbol&) { return Tensor2(); });
  if (name.starts_with("dY(") && name.ends_with(")")) {
    std::string inner = name.substr(3, name.size() - 4);
    std::int64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(inner, &used);
      if (used != inner.size()) throw InputError("bad");
    } catch (const std::exception&) {
      throw InputError("bad matrix size in '" + name + "'");
    }
    return yangian_table(n);
  }
  if (name.starts_with("rb:")) return bracket_from_rb(catalog_rb(name.substr(3)));
  throw InputError("unknown bracket '" + name + "'");
}

std::vector<std::string> catalog_bracket_names() {
  return {"L1",  "L2",  "L3",     "L4",   "L1_laurent", "L2_laurent", "L3_laurent", "L4_laurent",
          "ex1", "ex2", "quiver", "zero", "dY(1)",      "dY(2)",      "dY(3)"};
}

VerificationReport check_bracket_relations(std::int64_t window) {
  auto rep = make_report("bracket_relations", "L1-L4", window);
  auto l1 = catalog_bracket("L1");
  auto l2 = catalog_bracket("L2");
  auto l3 = catalog_bracket("L3");
  auto l4 = catalog_bracket("L4");
  for (std::int64_t n = 0; n <= window; ++n) {
    for (std::int64_t m = 0; m <= window; ++m) {
      auto a = monomial(n);
      auto b = monomial(m);
      Tensor2 lhs3 = l3.eval(a, b);
      Tensor2 rhs3 = -shift_degrees(l2.eval(a, b), 1, 1);
      if (!(lhs3 == rhs3)) {
        rep.fail("L3" + pair_text(a, b) + " = " + render(lhs3) + " but -(t(x)t)L2 = " + render(rhs3));
        return rep;
      }
      Tensor2 lhs4 = l4.eval(a, b);
      Tensor2 rhs4 = -l1.eval(monomial(n + 1), monomial(m + 1));
      if (!(lhs4 == rhs4)) {
        rep.fail("L4" + pair_text(a, b) + " = " + render(lhs4) + " but -L1(n+1,m+1) = " + render(rhs4));
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// dual bases

std::vector<MatrixIndex> window_units(const RBOperator& r, std::int64_t window) {
  auto idx = window_indices(r.domain(), window, r.matrix_factor());
  std::vector<MatrixIndex> out;
  for (std::int64_t i : idx) {
    for (std::int64_t j : idx) out.emplace_back(i, j);
  }
  return out;
}

DenseMatrix random_basis_change(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseMatrix upper = identity_matrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (rng() % 3 == 0) upper[i][j] = make_scalar(static_cast<std::int64_t>(rng() % 5) - 2);
    }
  }
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  for (std::size_t i = k; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  DenseMatrix out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = upper[order[i]];
  return out;
}

VerificationReport check_basis_independence(const RBOperator& r, std::int64_t window, const DenseMatrix& change) {
  auto rep = make_report("basis_independence", r.name(), window);
  auto units = window_units(r, window);
  const std::size_t k = units.size();
  if (change.size() != k) throw InputError("basis change must be " + std::to_string(k) + "x" + std::to_string(k));
  auto inv = inverse(change);
  if (!inv) throw InputError("singular basis change");
  DenseMatrix beta = transpose(*inv);
  auto idx = window_indices(r.domain(), window, r.matrix_factor());
  std::set<std::int64_t> in_window(idx.begin(), idx.end());
  using PairVec = LinearCombination<MatrixIndex>;
  std::size_t skipped = 0;
  std::size_t tested = 0;
  for (std::int64_t p : idx) {
    for (std::int64_t q : idx) {
      PairVec original;
      bool inside = true;
      for (std::int64_t s : r.support_hint(p, q)) {
        if (!r.domain().contains(s)) continue;
        IndexVec col = r.image(p, s).column(q);
        if (col.empty()) continue;
        if (!in_window.contains(s)) {
          inside = false;
          break;
        }
        for (const auto& [y, c] : col) original.add_term({s, y}, c);
      }
      if (!inside) {
        ++skipped;
        continue;
      }
      ++tested;
      // R(e_U*) u_q for every unit, e_{ab}* = e_{ba}
      std::vector<IndexVec> dual_cols(k);
      for (std::size_t l = 0; l < k; ++l) dual_cols[l] = r.image(units[l].second, units[l].first).column(q);
      PairVec changed;
      for (std::size_t j = 0; j < k; ++j) {
        IndexVec left;  // f_j(u_p)
        for (std::size_t i = 0; i < k; ++i) {
          if (units[i].second == p) left.add_term(units[i].first, change[j][i]);
        }
        if (left.empty()) continue;
        IndexVec right;  // R(f_j*) u_q
        for (std::size_t l = 0; l < k; ++l) right.add_scaled(dual_cols[l], beta[j][l]);
        for (const auto& [s, a] : left) {
          for (const auto& [y, b] : right) changed.add_term({s, y}, a * b);
        }
      }
      if (!(original == changed)) {
        auto show = [](const PairVec& v) {
          std::ostringstream os;
          for (const auto& [key, c] : v) os << " " << to_string(c) << "*u_" << key.first << "(x)u_" << key.second;
          return v.empty() ? std::string("0") : os.str();
        };
        rep.fail("(u_" + std::to_string(p) + ", u_" + std::to_string(q) + "): unit basis gives" + show(original) +
                 " but changed basis gives" + show(changed));
        return rep;
      }
    }
  }
  rep.note(std::to_string(tested) + " pairs compared, " + std::to_string(skipped) + " reach outside the window");
  return rep;
}

// ---------------------------------------------------------------------------
// trace-functional identities

VerificationReport verify_trace_functional_identities(const RBOperator& r, std::int64_t window) {
  auto rep = make_report("trace_functional_identities", r.name(), window);
  if (r.matrix_factor() > 0) throw DomainError("trace identities are checked without a matrix factor");
  auto skew = check_skew_symmetry(r, window);
  const std::int64_t wide = 3 * window;
  if (!skew.passed()) rep.note("R* taken as the adjoint on window " + std::to_string(wide));
  auto br = bracket_from_rb(r);
  SymbolMap map{r.domain(), 0};
  auto idx = window_indices(r.domain(), window);
  const IndexDomain dom = r.domain();
  auto r_star = [&](std::int64_t k, std::int64_t l) {
    if (skew.passed()) {
      return -1 * r.image(k, l);
    }
    return LocallyFiniteOperator::from_finitary(adjoint_on_window(r, k, l, wide));
  };
  // coefficient of u_j (x) u_l (x) u_gamma in a triple, as a vector over gamma
  auto slice = [&](const Tensor3& u, std::int64_t j, std::int64_t l) {
    IndexVec out;
    BasisSymbol sj = map.symbol(j, 0);
    BasisSymbol sl = map.symbol(l, 0);
    for (const auto& [key, c] : u) {
      if (key[0] == sj && key[1] == sl) out.add_term(map.index(key[2]), c);
    }
    return out;
  };
  auto unit = [&](std::int64_t a, std::int64_t b) { return FinitaryMatrix::unit(dom, a, b); };
  for (std::int64_t i : idx) {
    for (std::int64_t k : idx) {
      const BasisSymbol ui = map.symbol(i, 0);
      const BasisSymbol uk = map.symbol(k, 0);
      for (std::int64_t c : idx) {
        const BasisSymbol uc = map.symbol(c, 0);
        Tensor3 f12 = br.left_L(ui, br.eval(uk, uc));
        Tensor3 f23 = permute(br.left_R(uk, br.eval(ui, uc)), kSwap12of3);
        Tensor3 g12 = br.right_L(br.eval(ui, uk), uc);
        for (std::int64_t j : idx) {
          const auto& rx = r.image(i, j);
          for (std::int64_t l : idx) {
            const auto& ry = r.image(k, l);
            std::string at = " at x=e_{" + std::to_string(i) + "," + std::to_string(j) + "} y=e_{" + std::to_string(k) +
                             "," + std::to_string(l) + "} on u_" + std::to_string(c);
            IndexVec a1 = slice(f12, j, l);
            IndexVec b1 = r.apply_column(mul(unit(k, l), rx), c);
            if (!(a1 == b1)) {
              rep.fail("F12 differs from R(yR(x))" + at);
              return rep;
            }
            IndexVec a2 = slice(f23, j, l);
            IndexVec b2 = ry.apply(rx.column(c));
            if (!(a2 == b2)) {
              rep.fail("F23 differs from R(y)R(x)" + at);
              return rep;
            }
            IndexVec a3 = slice(g12, j, l);
            IndexVec b3 = r.apply_column(mul(r_star(k, l), unit(i, j)), c);
            if (!(a3 == b3)) {
              rep.fail("G12 differs from R(R*(y)x)" + at);
              return rep;
            }
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// text format

DoubleBracket parse_bracket(const std::string& name, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Carrier> carrier;
  Space space = Space::poly;
  std::int64_t bound = 0;
  auto table = std::make_shared<std::map<std::pair<BasisSymbol, BasisSymbol>, Tensor2>>();
  std::size_t lineno = 0;
  auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!carrier) {
      std::istringstream head(line);
      std::string word, kind;
      head >> word >> kind;
      if (word != "carrier") throw InputError("bracket text must start with 'carrier'" + where());
      if (kind == "poly") {
        carrier = poly_carrier();
      } else if (kind == "laurent") {
        carrier = laurent_carrier();
        space = Space::laurent;
      } else if (kind == "finite" || kind == "yangian") {
        if (!(head >> bound) || bound < 1) throw InputError("carrier size missing" + where());
        carrier = kind == "finite" ? finite_carrier(bound) : yangian_carrier(bound);
        space = kind == "finite" ? Space::finite : Space::yangian;
      } else {
        throw InputError("unknown carrier '" + kind + "'" + where());
      }
      continue;
    }
    auto arrow = line.find("->");
    auto comma = line.find(',');
    // a comma inside T_n^{i,j} is not the separator
    std::size_t depth = 0;
    comma = std::string::npos;
    for (std::size_t i = 0; i < arrow && i < line.size(); ++i) {
      if (line[i] == '{') ++depth;
      if (line[i] == '}' && depth > 0) --depth;
      if (line[i] == ',' && depth == 0) {
        comma = i;
        break;
      }
    }
    if (arrow == std::string::npos || comma == std::string::npos) throw InputError("expected 'a, b -> tensor'" + where());
    BasisSymbol a, b;
    Tensor2 value;
    try {
      a = parse_symbol(line.substr(0, comma), space == Space::laurent ? Space::laurent : Space::poly);
      b = parse_symbol(line.substr(comma + 1, arrow - comma - 1), space == Space::laurent ? Space::laurent : Space::poly);
      value = parse_tensor2(line.substr(arrow + 2), space == Space::laurent ? Space::laurent : Space::poly);
    } catch (const InputError& e) {
      throw InputError(std::string(e.what()) + where());
    }
    for (const auto& sym : {a, b}) {
      if (sym.space != space) throw InputError("symbol " + render(sym) + " not in the declared carrier" + where());
    }
    for (Space s : spaces_of(value)) {
      if (s != space) throw InputError("value uses symbols outside the declared carrier" + where());
    }
    (*table)[{a, b}] += value;
  }
  if (!carrier) throw InputError("empty bracket text");
  BracketFn fn = [table](const BasisSymbol& a, const BasisSymbol& b) {
    auto it = table->find({a, b});
    return it == table->end() ? Tensor2() : it->second;
  };
  return DoubleBracket(name, std::move(*carrier), std::move(fn));
}

}  // namespace dblie
