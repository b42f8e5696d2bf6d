#include "dblie/ideals.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "dblie/error.hpp"
#include "dblie/linalg.hpp"

namespace dblie {

Subspace::Subspace(std::vector<BasisSymbol> ambient) : ambient_(std::move(ambient)) {
  std::sort(ambient_.begin(), ambient_.end());
  ambient_.erase(std::unique(ambient_.begin(), ambient_.end()), ambient_.end());
}

Subspace Subspace::span(std::vector<BasisSymbol> ambient, const std::vector<Vec>& generators) {
  Subspace s(std::move(ambient));
  for (const auto& g : generators) s.add(g);
  return s;
}

Subspace Subspace::full(std::vector<BasisSymbol> ambient) {
  Subspace s(std::move(ambient));
  for (const auto& sym : s.ambient_) s.basis_.emplace_back(sym);
  return s;
}

bool Subspace::in_ambient(const BasisSymbol& s) const { return std::binary_search(ambient_.begin(), ambient_.end(), s); }

bool Subspace::in_ambient(const Vec& v) const {
  return std::all_of(v.begin(), v.end(), [this](const auto& kv) { return in_ambient(kv.first); });
}

Vec Subspace::reduce(const Vec& v) const {
  if (!in_ambient(v)) throw WindowError("vector " + render(v) + " leaves the window");
  Vec out = v;
  for (const auto& b : basis_) {
    Scalar c = out.coefficient(b.terms().rbegin()->first);
    if (!dblie::is_zero(c)) out.add_scaled(b, -c);
  }
  return out;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vec& v) { return contains(v); });
}

bool Subspace::add(const Vec& v) {
  Vec r = reduce(v);
  if (r.empty()) return false;
  auto lead = *r.terms().rbegin();
  r *= Scalar(1) / lead.second;
  for (auto& b : basis_) {
    Scalar c = b.coefficient(lead.first);
    if (!dblie::is_zero(c)) b.add_scaled(r, -c);
  }
  auto pos = std::lower_bound(basis_.begin(), basis_.end(), lead.first,
                              [](const Vec& b, const BasisSymbol& s) { return b.terms().rbegin()->first < s; });
  basis_.insert(pos, std::move(r));
  return true;
}

std::vector<BasisSymbol> Subspace::complement() const {
  std::set<BasisSymbol> pivots;
  for (const auto& b : basis_) pivots.insert(b.terms().rbegin()->first);
  std::vector<BasisSymbol> out;
  for (const auto& s : ambient_) {
    if (!pivots.contains(s)) out.push_back(s);
  }
  return out;
}

std::string render(const Subspace& s) {
  std::string out = "span{";
  for (std::size_t i = 0; i < s.basis().size(); ++i) out += (i ? ", " : "") + render(s.basis()[i]);
  return out + "}";
}

Tensor2 quotient_reduce(const Tensor2& u, const Subspace& ideal) {
  Tensor2 out;
  for (const auto& [key, c] : u) {
    Vec a = ideal.reduce(Vec(key[0]));
    if (a.empty()) continue;
    Vec b = ideal.reduce(Vec(key[1]));
    if (b.empty()) continue;
    out.add_scaled(outer(a, b), c);
  }
  return out;
}

std::vector<BasisSymbol> ambient_basis(const DoubleBracket& b, std::int64_t window) {
  return b.carrier().window_basis(window);
}

namespace {

bool tensor_in(const Tensor2& u, const Subspace& s) {
  return std::all_of(u.begin(), u.end(), [&](const auto& kv) { return s.in_ambient(kv.first[0]) && s.in_ambient(kv.first[1]); });
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

VerificationReport is_ideal(const DoubleBracket& b, const Subspace& ideal, std::int64_t window) {
  auto rep = make_report("is_ideal", b.name(), window);
  std::size_t skipped = 0;
  for (const auto& w : ideal.basis()) {
    for (const auto& v : ideal.ambient()) {
      for (int side = 0; side < 2; ++side) {
        Tensor2 u = side == 0 ? b.eval(Vec(v), w) : b.eval(w, Vec(v));
        if (!tensor_in(u, ideal)) {
          ++skipped;
          continue;
        }
        Tensor2 r = quotient_reduce(u, ideal);
        if (!r.empty()) {
          std::string pair = side == 0 ? "<<" + render(v) + ", " + render(w) + ">>" : "<<" + render(w) + ", " + render(v) + ">>";
          rep.fail(pair + " = " + render(u) + " survives modulo " + render(ideal) + " as " + render(r));
          return rep;
        }
      }
    }
  }
  if (skipped) rep.note(std::to_string(skipped) + " pairs leave the window");
  return rep;
}

DoubleBracket quotient_bracket(const DoubleBracket& b, const Subspace& ideal, std::int64_t window) {
  auto rep = is_ideal(b, ideal, window);
  if (!rep.passed()) throw DomainError("not an ideal: " + rep.counterexample);
  auto reps = ideal.complement();
  BracketFn fn = [b, ideal](const BasisSymbol& x, const BasisSymbol& y) {
    if (!(ideal.reduce(Vec(x)) == Vec(x)) || !(ideal.reduce(Vec(y)) == Vec(y)))
      throw DomainError("quotient symbols are complement representatives");
    return quotient_reduce(b.eval(x, y), ideal);
  };
  return DoubleBracket(b.name() + "/" + render(ideal), explicit_carrier("quotient", reps), std::move(fn));
}

// ---------------------------------------------------------------------------
// closure search

namespace {

struct Violation {
  Tensor2 reduced;
  std::vector<Vec> left;   // rank decomposition: reduced = sum left[r] (x) right[r]
  std::vector<Vec> right;
};

Violation decompose(const Tensor2& reduced) {
  std::vector<BasisSymbol> rows, cols;
  for (const auto& [key, c] : reduced) {
    rows.push_back(key[0]);
    cols.push_back(key[1]);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  auto at = [](const std::vector<BasisSymbol>& v, const BasisSymbol& s) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  DenseMatrix m(rows.size(), std::vector<Scalar>(cols.size(), Scalar(0)));
  for (const auto& [key, c] : reduced) m[at(rows, key[0])][at(cols, key[1])] = c;
  DenseMatrix e = m;
  auto pivots = rref(e);
  Violation v{reduced, {}, {}};
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Vec p, q;
    for (std::size_t a = 0; a < rows.size(); ++a) p.add_term(rows[a], m[a][pivots[r]]);
    for (std::size_t c = 0; c < cols.size(); ++c) q.add_term(cols[c], e[r][c]);
    v.left.push_back(std::move(p));
    v.right.push_back(std::move(q));
  }
  return v;
}

class ClosureSearch {
 public:
  ClosureSearch(const DoubleBracket& b, std::size_t budget) : b_(b), budget_(budget) {}

  void run(const Subspace& start) { visit(start); }
  ClosureResult finish() {
    ClosureResult out;
    out.nodes = nodes_;
    out.exhausted = exhausted_;
    for (std::size_t i = 0; i < found_.size(); ++i) {
      bool minimal = true;
      for (std::size_t j = 0; j < found_.size() && minimal; ++j) {
        if (i != j && found_[i].contains(found_[j]) && !(found_[i] == found_[j])) minimal = false;
      }
      if (minimal) out.closures.push_back(found_[i]);
    }
    return out;
  }

 private:
  // Violation with the fewest rank-decomposition terms; the first one found
  // of rank one ends the scan.
  std::optional<Violation> pick(const Subspace& s) {
    std::optional<Violation> best;
    for (const auto& w : s.basis()) {
      for (const auto& v : s.ambient()) {
        for (int side = 0; side < 2; ++side) {
          Tensor2 u = side == 0 ? b_.eval(Vec(v), w) : b_.eval(w, Vec(v));
          if (u.empty() || !tensor_in(u, s)) continue;
          Tensor2 r = quotient_reduce(u, s);
          if (r.empty()) continue;
          Violation cand = decompose(r);
          if (!best || cand.left.size() < best->left.size()) best = std::move(cand);
          if (best->left.size() == 1) return best;
        }
      }
    }
    return best;
  }

  void visit(const Subspace& s) {
    if (exhausted_) return;
    for (const auto& f : found_) {
      if (s.contains(f)) return;
    }
    std::string key = render(s);
    if (!seen_.insert(key).second) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    auto viol = pick(s);
    if (!viol) {
      found_.push_back(s);
      return;
    }
    std::size_t r = viol->left.size();
    std::vector<std::uint32_t> masks;
    if (r <= 3) {
      for (std::uint32_t m = 0; m < (1u << r); ++m) masks.push_back(m);
    } else {
      masks = {0u, (1u << r) - 1};
    }
    std::set<std::string> branch_keys;
    for (std::uint32_t m : masks) {
      Subspace next = s;
      for (std::size_t t = 0; t < r; ++t) next.add((m >> t) & 1u ? viol->right[t] : viol->left[t]);
      if (!branch_keys.insert(render(next)).second) continue;
      visit(next);
    }
  }

  const DoubleBracket& b_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Subspace> found_;
  std::set<std::string> seen_;
};

}  // namespace

ClosureResult ideal_closure(const DoubleBracket& b, const std::vector<Vec>& seeds, std::int64_t window,
                            std::size_t budget) {
  Subspace start = Subspace::span(ambient_basis(b, window), seeds);
  ClosureSearch search(b, budget);
  search.run(start);
  return search.finish();
}

std::vector<Vec> random_polynomials(std::size_t count, std::int64_t max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  for (std::size_t k = 0; k < count; ++k) {
    auto deg = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max_degree + 1));
    Vec f;
    for (std::int64_t d = 0; d <= deg; ++d) {
      std::int64_t num = static_cast<std::int64_t>(rng() % 7) - 3;
      std::int64_t den = static_cast<std::int64_t>(rng() % 3) + 1;
      if (d == deg && num == 0) num = 1;
      f.add_term(monomial(d), make_scalar(num, den));
    }
    out.push_back(std::move(f));
  }
  return out;
}

VerificationReport simplicity_probe(const DoubleBracket& b, std::int64_t window, const std::vector<Vec>& seeds,
                                    std::size_t budget) {
  auto rep = make_report("simplicity_probe", b.name(), window);
  auto ambient = ambient_basis(b, window);
  bool nonzero = false;
  for (const auto& x : ambient) {
    for (const auto& y : ambient) {
      if (!b.eval(x, y).empty()) {
        nonzero = true;
        break;
      }
    }
    if (nonzero) break;
  }
  if (!nonzero) {
    rep.fail("<<V,V>> = 0 on the window");
    return rep;
  }
  // guaranteed sub-window for t-monomial carriers; finite carriers use all of V
  std::vector<BasisSymbol> target;
  std::int64_t half = (window - 1) / 2;
  for (const auto& s : ambient) {
    bool mono = s.space == Space::poly || s.space == Space::laurent;
    if (!mono || (s.index >= -half && s.index <= half)) target.push_back(s);
  }
  std::size_t nodes = 0;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    auto res = ideal_closure(b, {seeds[k]}, window, budget);
    nodes += res.nodes;
    if (res.exhausted) {
      rep.status = Status::budget;
      rep.counterexample = "budget exhausted on seed " + render(seeds[k]);
      return rep;
    }
    for (const auto& c : res.closures) {
      for (const auto& s : target) {
        if (!c.contains(Vec(s))) {
          rep.fail("seed " + render(seeds[k]) + " closes to proper ideal " + render(c) + " missing " + render(s));
          return rep;
        }
      }
    }
  }
  rep.note(std::to_string(seeds.size()) + " seeds, " + std::to_string(nodes) + " search nodes; saturation checked on " +
           std::to_string(target.size()) + " basis vectors");
  rep.note("no proper ideal found within the window");
  return rep;
}

VerificationReport theorem3_replay(std::int64_t window, std::uint64_t seed) {
  auto rep = make_report("theorem3_replay", "L2", window);
  rep.seed = seed;
  if (window < 3) throw InputError("theorem3_replay needs window >= 3");
  auto l2 = catalog_bracket("L2");
  auto ambient = ambient_basis(l2, window);
  std::mt19937_64 rng(seed);
  Vec one(monomial(0));
  // (a) minimal degree n of a nonzero element forces n = 0
  for (std::int64_t n = 1; n <= window / 2; ++n) {
    Vec f(monomial(n));
    std::vector<Scalar> alpha(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
      alpha[static_cast<std::size_t>(j)] = make_scalar(static_cast<std::int64_t>(rng() % 7) - 3, 1);
      f.add_term(monomial(j), alpha[static_cast<std::size_t>(j)]);
    }
    Tensor2 got = l2.eval(one, f);
    Tensor2 expected;
    for (std::int64_t j = 1; j <= n; ++j) {
      Scalar c = j == n ? Scalar(1) : alpha[static_cast<std::size_t>(j)];
      for (std::int64_t i = 0; i < j; ++i) expected.add_term({monomial(i), monomial(j - 1 - i)}, c);
    }
    if (!(got == expected)) {
      rep.fail("<<1, f>> for f = " + render(f) + " is " + render(got) + " but the expansion gives " + render(expected));
      return rep;
    }
    Tensor2 red = quotient_reduce(got, Subspace::span(ambient, {f}));
    if (red.empty()) {
      rep.fail("<<1, f>> vanishes modulo span{f} for f = " + render(f));
      return rep;
    }
  }
  rep.note("<<1, f>> = +(t^{n-1}(x)1 + ... + 1(x)t^{n-1}) + lower terms; nonzero modulo span{f} for n <= " +
           std::to_string(window / 2));
  // (b) t^s is forced once 1, ..., t^{s-1} are in I
  Subspace is(ambient);
  is.add(one);
  std::int64_t top = (window - 1) / 2;
  for (std::int64_t s = 1; s <= top; ++s) {
    Tensor2 u = l2.eval(one, Vec(monomial(2 * s + 1)));
    Tensor2 red = quotient_reduce(u, is);
    if (!(red == pure_tensor(monomial(s), monomial(s)))) {
      rep.fail("<<1, t^" + std::to_string(2 * s + 1) + ">> modulo " + render(is) + " is " + render(red) +
               ", expected t^" + std::to_string(s) + "(x)t^" + std::to_string(s));
      return rep;
    }
    is.add(Vec(monomial(s)));
  }
  rep.note("t^s forced for s <= " + std::to_string(top));
  return rep;
}

VerificationReport minimality_audit(const DoubleBracket& b, const std::vector<Vec>& seeds, std::int64_t window,
                                    std::size_t budget) {
  auto rep = make_report("minimality_audit", b.name(), window);
  auto ambient = ambient_basis(b, window);
  Subspace seed_span = Subspace::span(ambient, seeds);
  auto res = ideal_closure(b, seeds, window, budget);
  if (res.exhausted) {
    rep.status = Status::budget;
    return rep;
  }
  for (const auto& c : res.closures) {
    auto check = is_ideal(b, c, window);
    if (!check.passed()) {
      rep.fail("closure " + render(c) + " is not an ideal: " + check.counterexample);
      return rep;
    }
    for (std::size_t g = 0; g < c.basis().size(); ++g) {
      if (seed_span.contains(c.basis()[g])) continue;
      std::vector<Vec> rest = seeds;
      for (std::size_t h = 0; h < c.basis().size(); ++h) {
        if (h != g) rest.push_back(c.basis()[h]);
      }
      if (Subspace::span(ambient, rest) == c) continue;
      auto again = ideal_closure(b, rest, window, budget);
      bool regrows = std::find(again.closures.begin(), again.closures.end(), c) != again.closures.end();
      if (!regrows) {
        rep.fail("dropping " + render(c.basis()[g]) + " from " + render(c) + " does not close back");
        return rep;
      }
    }
  }
  rep.note(std::to_string(res.closures.size()) + " closures audited");
  return rep;
}

}  // namespace dblie
