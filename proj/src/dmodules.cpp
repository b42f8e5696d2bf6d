#include "dblie/dmodules.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dblie/error.hpp"

namespace dblie {

namespace {

VerificationReport make_report(std::string check, std::string target, std::int64_t window) {
  VerificationReport rep;
  rep.check = std::move(check);
  rep.target = std::move(target);
  rep.window = window;
  rep.cutoff = window;
  return rep;
}

void require_split(const Tensor2& u, const std::string& where) {
  for (const auto& [key, c] : u) {
    if (is_module_symbol(key[0]) == is_module_symbol(key[1]))
      throw DomainError("action value " + render(u) + " at " + where + " is not in L(x)M + M(x)L");
  }
}

std::string pair_text(const BasisSymbol& a, const BasisSymbol& b) { return "(" + render(a) + ", " + render(b) + ")"; }

std::string triple_text(const BasisSymbol& a, const BasisSymbol& b, const BasisSymbol& c) {
  return "(" + render(a) + ", " + render(b) + ", " + render(c) + ")";
}

}  // namespace

DoubleAction zero_action(std::int64_t k) {
  DoubleAction act;
  act.name = "zero";
  act.m_window = [k](std::int64_t) {
    std::vector<BasisSymbol> out;
    for (std::int64_t i = 1; i <= k; ++i) out.push_back(module_basis(i));
    return out;
  };
  act.eval = [](const BasisSymbol&, const BasisSymbol&) { return Tensor2(); };
  return act;
}

DoubleBracket trivial_extension_bracket(const DoubleBracket& l, const DoubleAction& act) {
  Carrier c;
  c.description = l.carrier().description + " (+) module";
  c.window_basis = [l, act](std::int64_t w) {
    auto out = l.carrier().window_basis(w);
    auto m = act.m_window(w);
    out.insert(out.end(), m.begin(), m.end());
    return out;
  };
  BracketFn fn = [l, act](const BasisSymbol& a, const BasisSymbol& b) {
    bool ma = is_module_symbol(a);
    bool mb = is_module_symbol(b);
    if (!ma && !mb) return l.eval(a, b);
    if (ma && mb) return Tensor2();
    Tensor2 u = act.eval(a, b);
    require_split(u, pair_text(a, b));
    return u;
  };
  return DoubleBracket(l.name() + "(+)" + act.name, std::move(c), std::move(fn));
}

VerificationReport check_module_axioms(const DoubleAction& act, const DoubleBracket& l, std::int64_t window) {
  auto rep = make_report("module_axioms", act.name, window);
  auto ext = trivial_extension_bracket(l, act);
  auto ls = l.carrier().window_basis(window);
  auto ms = act.m_window(window);
  for (const auto& x : ls) {
    for (const auto& m : ms) {
      const Tensor2& lm = ext.eval(x, m);
      Tensor2 rhs = -permute(ext.eval(m, x), kSwap12);
      if (!(lm == rhs)) {
        rep.fail("antisymmetry at " + pair_text(x, m) + ": <<l,m>> = " + render(lm) + " but -<<m,l>>^(12) = " + render(rhs));
        return rep;
      }
    }
  }
  for (const auto& m1 : ms) {
    for (const auto& m2 : ms) {
      for (const auto& x : ls) {
        Tensor3 lhs = ext.left_L(m1, ext.eval(m2, x));
        Tensor3 rhs = permute(ext.left_R(m2, ext.eval(m1, x)), kSwap12of3);
        if (!(lhs == rhs)) {
          rep.fail("M,M,L identity at " + triple_text(m1, m2, x) + ": <<m1,<<m2,l>>>>_L = " + render(lhs) +
                   " but <<m2,<<m1,l>>>>_R^(12) = " + render(rhs));
          return rep;
        }
      }
    }
  }
  for (const auto& l1 : ls) {
    for (const auto& l2 : ls) {
      for (const auto& m : ms) {
        Tensor3 lhs = ext.left_L(l1, ext.eval(l2, m)) - permute(ext.left_R(l2, ext.eval(l1, m)), kSwap12of3);
        Tensor3 rhs = ext.right_L(ext.eval(l1, l2), m);
        if (!(lhs == rhs)) {
          rep.fail("L,L,M identity at " + triple_text(l1, l2, m) + ": left side " + render(lhs) +
                   " but <<<<l1,l2>>,m>>_L = " + render(rhs));
          return rep;
        }
      }
    }
  }
  return rep;
}

ExtensionEquivalence check_extension_equivalence(const DoubleAction& act, const DoubleBracket& l, std::int64_t window) {
  ExtensionEquivalence out{check_module_axioms(act, l, window), {}};
  auto ext = trivial_extension_bracket(l, act);
  out.extension = check_anticommutativity(ext, window);
  out.extension.check = "extension_double_lie";
  out.extension.absorb(check_jacobi(ext, window));
  return out;
}

// ---------------------------------------------------------------------------
// induced modules

namespace {

struct Splitter {
  std::function<Vec(const BasisSymbol&)> c_part;  // complement coordinates
  std::function<Vec(const BasisSymbol&)> i_part;  // coordinates over module symbols
  std::function<Vec(const BasisSymbol&)> embed;   // module symbol -> carrier vector
};

Tensor2 split(const Tensor2& u, const Splitter& s, InducedMode mode, const std::string& where) {
  Tensor2 out;
  Tensor2 stray;
  for (const auto& [key, c] : u) {
    Vec cx = s.c_part(key[0]);
    Vec ix = s.i_part(key[0]);
    Vec cy = s.c_part(key[1]);
    Vec iy = s.i_part(key[1]);
    stray.add_scaled(outer(cx, cy), c);
    if (mode == InducedMode::quotient) {
      out.add_scaled(outer(cx, iy), c);
    } else {
      out.add_scaled(outer(Vec(key[0]), iy), c);
    }
    out.add_scaled(outer(ix, cy), c);
  }
  if (!stray.empty()) throw DomainError("restriction does not split at " + where + ": component " + render(stray) + " in L(x)L");
  return out;
}

InducedModule build_induced(const DoubleBracket& b, const Splitter& s, InducedMode mode, DoubleBracket l_bracket,
                            std::function<std::vector<BasisSymbol>(std::int64_t)> m_window, std::string name) {
  DoubleAction act;
  act.name = std::move(name);
  act.m_window = std::move(m_window);
  act.eval = [b, s, mode](const BasisSymbol& x, const BasisSymbol& y) {
    Vec vx = is_module_symbol(x) ? s.embed(x) : Vec(x);
    Vec vy = is_module_symbol(y) ? s.embed(y) : Vec(y);
    return split(b.eval(vx, vy), s, mode, pair_text(x, y));
  };
  return {std::move(l_bracket), std::move(act)};
}

}  // namespace

InducedModule induced_module_from_monomials(const DoubleBracket& b, std::function<bool(std::int64_t)> in_ideal,
                                            const std::string& label, InducedMode mode) {
  auto probe = b.carrier().window_basis(0);
  if (probe.empty() || probe.front().space != Space::poly) throw DomainError("monomial modules need a bracket on F[t]");
  Splitter s;
  s.c_part = [in_ideal](const BasisSymbol& x) { return in_ideal(x.index) ? Vec() : Vec(x); };
  s.i_part = [in_ideal](const BasisSymbol& x) { return in_ideal(x.index) ? Vec(module_basis(x.index)) : Vec(); };
  s.embed = [](const BasisSymbol& m) { return Vec(monomial(m.index)); };
  auto m_window = [in_ideal](std::int64_t w) {
    std::vector<BasisSymbol> out;
    for (std::int64_t k = 0; k <= w; ++k) {
      if (in_ideal(k)) out.push_back(module_basis(k));
    }
    return out;
  };
  std::string name = b.name() + ":" + label;
  if (mode == InducedMode::ambient) return build_induced(b, s, mode, b, m_window, name + ":ambient");
  Carrier c;
  c.description = "quotient";
  c.window_basis = [in_ideal](std::int64_t w) {
    std::vector<BasisSymbol> out;
    for (std::int64_t k = 0; k <= w; ++k) {
      if (!in_ideal(k)) out.push_back(monomial(k));
    }
    return out;
  };
  BracketFn qfn = [b, in_ideal](const BasisSymbol& x, const BasisSymbol& y) {
    if (x.space != Space::poly || y.space != Space::poly || in_ideal(x.index) || in_ideal(y.index))
      throw DomainError("quotient symbols are the monomials outside the ideal");
    Tensor2 out;
    for (const auto& [key, coeff] : b.eval(x, y)) {
      if (!in_ideal(key[0].index) && !in_ideal(key[1].index)) out.add_term(key, coeff);
    }
    return out;
  };
  DoubleBracket q(b.name() + "/" + label, std::move(c), std::move(qfn));
  return build_induced(b, s, mode, std::move(q), m_window, name);
}

InducedModule induced_module_from_tail(const DoubleBracket& b, std::int64_t from, InducedMode mode) {
  if (from < 0) throw InputError("tail degree must be nonnegative");
  std::string label = from == 1 ? "tF[t]" : "t^" + std::to_string(from) + "F[t]";
  return induced_module_from_monomials(b, [from](std::int64_t k) { return k >= from; }, label, mode);
}

InducedModule induced_module_from_ideal(const DoubleBracket& b, const Subspace& ideal, InducedMode mode) {
  auto check = is_ideal(b, ideal, 0);
  if (!check.passed()) throw DomainError("not an ideal: " + check.counterexample);
  Splitter s;
  s.c_part = [ideal](const BasisSymbol& x) { return ideal.reduce(Vec(x)); };
  s.i_part = [ideal](const BasisSymbol& x) {
    Vec inside = Vec(x) - ideal.reduce(Vec(x));
    Vec out;
    for (const auto& v : ideal.basis()) {
      const BasisSymbol& p = v.terms().rbegin()->first;
      out.add_term(module_basis(p.index), inside.coefficient(p));
    }
    return out;
  };
  s.embed = [ideal](const BasisSymbol& m) {
    for (const auto& v : ideal.basis()) {
      if (v.terms().rbegin()->first.index == m.index) return v;
    }
    throw DomainError("module symbol " + render(m) + " not in the ideal");
  };
  std::vector<BasisSymbol> ms;
  for (const auto& v : ideal.basis()) ms.push_back(module_basis(v.terms().rbegin()->first.index));
  auto m_window = [ms](std::int64_t) { return ms; };
  std::string name = b.name() + ":" + render(ideal);
  if (mode == InducedMode::ambient) return build_induced(b, s, mode, b, m_window, name + ":ambient");
  return build_induced(b, s, mode, quotient_bracket(b, ideal, 0), m_window, name);
}

// ---------------------------------------------------------------------------
// submodules

VerificationReport check_submodule(const DoubleAction& act, const DoubleBracket& l, const std::vector<Vec>& n,
                                   std::int64_t window) {
  auto rep = make_report("submodule", act.name, window);
  auto ms = act.m_window(window);
  std::vector<BasisSymbol> ambient = ms;
  for (const auto& v : n) {
    for (const auto& [s, c] : v) ambient.push_back(s);
  }
  Subspace span = Subspace::span(ambient, n);
  std::size_t skipped = 0;
  for (const auto& x : l.carrier().window_basis(window)) {
    for (const auto& g : span.basis()) {
      Tensor2 u;
      for (const auto& [m, c] : g) u.add_scaled(act.eval(x, m), c);
      // group M-factors by their L partner
      std::map<BasisSymbol, Vec> left, right;
      for (const auto& [key, c] : u) {
        if (is_module_symbol(key[1])) left[key[0]].add_term(key[1], c);
        if (is_module_symbol(key[0])) right[key[1]].add_term(key[0], c);
      }
      bool outside = false;
      for (auto* side : {&left, &right}) {
        for (const auto& [partner, v] : *side) {
          if (!span.in_ambient(v)) {
            outside = true;
            continue;
          }
          if (!span.contains(v)) {
            rep.fail("<<" + render(x) + ", " + render(g) + ">> = " + render(u) + " has M-component " + render(v) +
                     " outside N = " + render(span));
            return rep;
          }
        }
      }
      if (outside) ++skipped;
    }
  }
  if (skipped) rep.note(std::to_string(skipped) + " pairs leave the window");
  return rep;
}

VerificationReport check_regular_submodule(const DoubleBracket& b, const Subspace& n, std::int64_t window) {
  auto rep = is_ideal(b, n, window);
  rep.check = "regular_submodule";
  return rep;
}

// ---------------------------------------------------------------------------
// perturbations

DoubleAction perturb_action(const DoubleAction& act, const BasisSymbol& a, const BasisSymbol& b, const Tensor2& extra,
                            bool keep_antisymmetry) {
  DoubleAction out = act;
  out.name = act.name + "~";
  Tensor2 swapped = -permute(extra, kSwap12);
  out.eval = [base = act.eval, a, b, extra, swapped, keep_antisymmetry](const BasisSymbol& x, const BasisSymbol& y) {
    Tensor2 u = base(x, y);
    if (x == a && y == b) u += extra;
    if (keep_antisymmetry && x == b && y == a) u += swapped;
    return u;
  };
  return out;
}

DoubleAction random_perturbation(const DoubleAction& act, const DoubleBracket& l, std::int64_t window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto ls = l.carrier().window_basis(window);
  auto ms = act.m_window(window);
  if (ls.empty() || ms.empty()) throw InputError("perturbation needs nonempty L and M windows");
  auto pick = [&](const std::vector<BasisSymbol>& v) { return v[rng() % v.size()]; };
  BasisSymbol x = pick(ls);
  BasisSymbol m = pick(ms);
  Tensor2 extra = pure_tensor(pick(ls), pick(ms), make_scalar(rng() % 2 ? 1 : -1));
  if (rng() % 2) extra = permute(extra, kSwap12);
  bool lm_order = rng() % 2;
  bool keep = rng() % 2;
  auto out = lm_order ? perturb_action(act, x, m, extra, keep) : perturb_action(act, m, x, extra, keep);
  out.name = act.name + "~" + std::to_string(seed);
  return out;
}

// ---------------------------------------------------------------------------
// Rota-Baxter bimodules

namespace {

bool in_block_a(std::int64_t i, std::int64_t j, std::int64_t n) { return (i <= n) == (j <= n); }

FinitaryMatrix part(const FinitaryMatrix& x, std::int64_t n, bool diagonal) {
  FinitaryMatrix out(x.domain());
  for (const auto& [ij, c] : x.entries()) {
    if (in_block_a(ij.first, ij.second, n) == diagonal) out.add(ij.first, ij.second, c);
  }
  return out;
}

// product on A x B with B.B = 0
FinitaryMatrix semidirect(const FinitaryMatrix& x, const FinitaryMatrix& y, std::int64_t n) {
  return mul(x, y) - mul(part(x, n, false), part(y, n, false));
}

}  // namespace

BimoduleSplit rb_bimodule_split_check(const RBOperator& r, std::int64_t n, std::int64_t k) {
  BimoduleSplit out;
  out.report = make_report("rb_bimodule_split", r.name(), n + k);
  const IndexDomain dom = r.domain();
  if (dom.kind != IndexDomain::Kind::finite || dom.size != n + k || dom.first != 1)
    throw DomainError("bimodule split needs an operator on finite(n+k, 1)");
  auto R = [&](const FinitaryMatrix& x) { return r.apply(x).finitary(); };
  auto unit = [&](std::int64_t i, std::int64_t j) { return FinitaryMatrix::unit(dom, i, j); };
  std::vector<MatrixIndex> a_units, b_units;
  for (std::int64_t i = 1; i <= n + k; ++i) {
    for (std::int64_t j = 1; j <= n + k; ++j) (in_block_a(i, j, n) ? a_units : b_units).emplace_back(i, j);
  }
  auto name = [](const MatrixIndex& u) { return "e_{" + std::to_string(u.first) + "," + std::to_string(u.second) + "}"; };
  std::string wa, wb, wc, wd;
  // (a) R(A) in A and RB on A
  out.a = true;
  for (const auto& x : a_units) {
    FinitaryMatrix rx = R(unit(x.first, x.second));
    if (!part(rx, n, false).empty()) {
      out.a = false;
      wa = "R(" + name(x) + ") = " + render(rx) + " leaves A";
      break;
    }
    for (const auto& y : a_units) {
      FinitaryMatrix ry = R(unit(y.first, y.second));
      FinitaryMatrix lhs = mul(rx, ry);
      FinitaryMatrix rhs = R(mul(rx, unit(y.first, y.second)) + mul(unit(x.first, x.second), ry));
      if (!(lhs.entries() == rhs.entries())) {
        out.a = false;
        wa = "x=" + name(x) + " y=" + name(y) + ": R(x)R(y) = " + render(lhs) + " but R(R(x)y+xR(y)) = " + render(rhs);
        break;
      }
    }
    if (!out.a) break;
  }
  // (b) R(B) in B
  out.b = true;
  for (const auto& s : b_units) {
    FinitaryMatrix rs = R(unit(s.first, s.second));
    if (!part(rs, n, true).empty()) {
      out.b = false;
      wb = "R(" + name(s) + ") = " + render(rs) + " leaves B";
      break;
    }
  }
  // (c) both bimodule equalities, weight 0
  out.c = true;
  for (const auto& x : a_units) {
    FinitaryMatrix ex = unit(x.first, x.second);
    FinitaryMatrix rx = R(ex);
    for (const auto& s : b_units) {
      FinitaryMatrix es = unit(s.first, s.second);
      FinitaryMatrix ps = R(es);
      FinitaryMatrix l1 = mul(rx, ps);
      FinitaryMatrix r1 = R(mul(rx, es) + mul(ex, ps));
      FinitaryMatrix l2 = mul(ps, rx);
      FinitaryMatrix r2 = R(mul(es, rx) + mul(ps, ex));
      if (!(l1.entries() == r1.entries())) {
        out.c = false;
        wc = "x=" + name(x) + " s=" + name(s) + ": R(x)p(s) = " + render(l1) + " but p(R(x)s + xp(s)) = " + render(r1);
      } else if (!(l2.entries() == r2.entries())) {
        out.c = false;
        wc = "x=" + name(x) + " s=" + name(s) + ": p(s)R(x) = " + render(l2) + " but p(sR(x) + p(s)x) = " + render(r2);
      }
      if (!out.c) break;
    }
    if (!out.c) break;
  }
  // (d) RB on the semidirect product
  out.d = true;
  std::vector<MatrixIndex> all = a_units;
  all.insert(all.end(), b_units.begin(), b_units.end());
  for (const auto& x : all) {
    FinitaryMatrix ex = unit(x.first, x.second);
    FinitaryMatrix rx = R(ex);
    for (const auto& y : all) {
      FinitaryMatrix ey = unit(y.first, y.second);
      FinitaryMatrix ry = R(ey);
      FinitaryMatrix lhs = semidirect(rx, ry, n);
      FinitaryMatrix rhs = R(semidirect(rx, ey, n) + semidirect(ex, ry, n));
      if (!(lhs.entries() == rhs.entries())) {
        out.d = false;
        wd = "x=" + name(x) + " y=" + name(y) + " in A x B: R(x)R(y) = " + render(lhs) + " but R(R(x)y+xR(y)) = " +
             render(rhs);
        break;
      }
    }
    if (!out.d) break;
  }
  auto flag = [](bool v) { return v ? "pass" : "fail"; };
  out.report.note(std::string("(a) A-block RB: ") + flag(out.a) + (wa.empty() ? "" : ": " + wa));
  out.report.note(std::string("(b) B invariant: ") + flag(out.b) + (wb.empty() ? "" : ": " + wb));
  out.report.note(std::string("(c) bimodule equalities: ") + flag(out.c) + (wc.empty() ? "" : ": " + wc));
  out.report.note(std::string("(d) RB on A x B: ") + flag(out.d) + (wd.empty() ? "" : ": " + wd));
  if (!out.coherent()) {
    out.report.fail("(d) disagrees with (a)+(b)+(c)");
  } else if (!out.d) {
    out.report.fail(!wd.empty() ? wd : (!wa.empty() ? wa : (!wb.empty() ? wb : wc)));
  }
  return out;
}

BimoduleSplit rb_bimodule_split_check(const DoubleBracket& l, const DoubleAction& act, std::int64_t n, std::int64_t k) {
  auto ls = l.carrier().window_basis(0);
  auto ms = act.m_window(0);
  if (static_cast<std::int64_t>(ls.size()) != n || static_cast<std::int64_t>(ms.size()) != k)
    throw InputError("bimodule split needs dim L = " + std::to_string(n) + " and dim M = " + std::to_string(k));
  auto ext = trivial_extension_bracket(l, act);
  std::vector<BasisSymbol> basis = ls;
  basis.insert(basis.end(), ms.begin(), ms.end());
  auto r = rb_from_bracket(ext, basis).renamed("R[" + ext.name() + "]");
  return rb_bimodule_split_check(r, n, k);
}

InducedModule catalog_bimodule_instance() {
  auto l1 = catalog_bracket("L1");
  auto cubic = induced_module_from_tail(l1, 3).l;
  auto ambient = cubic.carrier().window_basis(2);
  auto ideal = Subspace::span(ambient, {Vec(monomial(2))});
  auto out = induced_module_from_ideal(cubic, ideal);
  out.action.name = "L1/(t^3):span{t^2}";
  return out;
}

std::vector<std::string> catalog_module_names() {
  return {"L1:t^2F[t]", "L3:tF[t]", "L4:t^2F[t]", "L1:t^2F[t]:ambient", "L1:M(2)", "L4:M(2)", "L1:M(2):ambient",
          "bimodule"};
}

std::vector<VerificationReport> module_report(const std::string& name, std::int64_t window) {
  std::vector<VerificationReport> out;
  auto run = [&](const InducedModule& mod) {
    auto eq = check_extension_equivalence(mod.action, mod.l, window);
    eq.axioms.target = name;
    eq.extension.target = name;
    out.push_back(eq.axioms);
    out.push_back(eq.extension);
  };
  auto tail = [&](const std::string& br, std::int64_t from, InducedMode mode) {
    run(induced_module_from_tail(catalog_bracket(br), from, mode));
  };
  auto low = [](std::int64_t k) { return k <= 2; };
  if (name == "L1:t^2F[t]") {
    tail("L1", 2, InducedMode::quotient);
    auto q = induced_module_from_tail(catalog_bracket("L1"), 2).l;
    LinearMap to_ex1 = [](const BasisSymbol& s) { return Vec(finite_basis(s.index == 1 ? 1 : 2)); };
    auto hom = check_homomorphism(q, catalog_bracket("ex1"), to_ex1, 0);
    hom.target = name;
    out.push_back(hom);
  } else if (name == "L3:tF[t]") {
    tail("L3", 1, InducedMode::quotient);
  } else if (name == "L4:t^2F[t]") {
    tail("L4", 2, InducedMode::quotient);
  } else if (name == "L1:t^2F[t]:ambient") {
    tail("L1", 2, InducedMode::ambient);
  } else if (name == "L1:M(2)" || name == "L4:M(2)" || name == "L1:M(2):ambient") {
    auto b = catalog_bracket(name.substr(0, 2));
    auto span = Subspace::span(ambient_basis(b, window), {Vec(monomial(0)), Vec(monomial(1)), Vec(monomial(2))});
    auto rep = is_ideal(b, span, window);
    rep.target = name;
    out.push_back(rep);
    run(induced_module_from_monomials(b, low, "M(2)",
                                      name.ends_with(":ambient") ? InducedMode::ambient : InducedMode::quotient));
  } else if (name == "bimodule") {
    auto inst = catalog_bimodule_instance();
    auto split = rb_bimodule_split_check(inst.l, inst.action, 2, 1);
    split.report.target = name;
    out.push_back(split.report);
  } else {
    throw InputError("unknown module '" + name + "'");
  }
  return out;
}

}  // namespace dblie
