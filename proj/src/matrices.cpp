#include "dblie/matrices.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dblie/error.hpp"

namespace dblie {

IndexDomain IndexDomain::finite(std::int64_t n, std::int64_t first) {
  if (n < 1) throw InputError("finite index domain needs n >= 1");
  return {Kind::finite, n, first};
}

bool IndexDomain::contains(std::int64_t i) const {
  switch (kind) {
    case Kind::naturals: return i >= 0;
    case Kind::integers: return true;
    case Kind::finite: return i >= first && i < first + size;
  }
  return false;
}

std::optional<std::int64_t> IndexDomain::lower() const {
  if (kind == Kind::naturals) return 0;
  if (kind == Kind::finite) return first;
  return std::nullopt;
}

std::optional<std::int64_t> IndexDomain::upper() const {
  if (kind == Kind::finite) return first + size - 1;
  return std::nullopt;
}

Space IndexDomain::vector_space() const {
  switch (kind) {
    case Kind::naturals: return Space::poly;
    case Kind::integers: return Space::laurent;
    case Kind::finite: return Space::finite;
  }
  return Space::poly;
}

std::string IndexDomain::describe() const {
  switch (kind) {
    case Kind::naturals: return "naturals";
    case Kind::integers: return "integers";
    case Kind::finite: return "finite " + std::to_string(size) + " " + std::to_string(first);
  }
  return "?";
}

// ---------------------------------------------------------------------------

FinitaryMatrix FinitaryMatrix::unit(IndexDomain domain, std::int64_t i, std::int64_t j, const Scalar& c) {
  FinitaryMatrix m(domain);
  m.add(i, j, c);
  return m;
}

Scalar FinitaryMatrix::entry(std::int64_t i, std::int64_t j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? Scalar(0) : it->second;
}

void FinitaryMatrix::add(std::int64_t i, std::int64_t j, const Scalar& c) {
  if (dblie::is_zero(c)) return;
  if (!domain_.contains(i) || !domain_.contains(j)) {
    throw DomainError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") outside domain " +
                      domain_.describe());
  }
  auto [it, inserted] = entries_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (dblie::is_zero(it->second)) entries_.erase(it);
  }
}

void FinitaryMatrix::add_scaled(const FinitaryMatrix& other, const Scalar& c) {
  if (!(other.domain_ == domain_)) throw DomainError("adding matrices over different index domains");
  for (const auto& [ij, v] : other.entries_) add(ij.first, ij.second, v * c);
}

FinitaryMatrix FinitaryMatrix::transpose() const {
  FinitaryMatrix out(domain_);
  for (const auto& [ij, v] : entries_) out.entries_.emplace(MatrixIndex{ij.second, ij.first}, v);
  return out;
}

FinitaryMatrix operator+(FinitaryMatrix a, const FinitaryMatrix& b) {
  a.add_scaled(b, Scalar(1));
  return a;
}

FinitaryMatrix operator-(FinitaryMatrix a, const FinitaryMatrix& b) {
  a.add_scaled(b, Scalar(-1));
  return a;
}

FinitaryMatrix operator*(const Scalar& c, FinitaryMatrix a) {
  if (dblie::is_zero(c)) return FinitaryMatrix(a.domain());
  for (auto& [ij, v] : a.entries_) v *= c;
  return a;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool RayTerm::covers_row(std::int64_t r) const {
  std::int64_t u = r - row0;
  switch (extent) {
    case Extent::forward:
      if (u < 0 || u % stride != 0) return false;
      return !length || u / stride < *length;
    case Extent::backward: return u <= 0 && (-u) % stride == 0;
    case Extent::bi: return floor_mod(u, stride) == 0;
  }
  return false;
}

namespace {

struct DiagonalData {
  std::map<std::int64_t, Scalar> entries;  // row -> value
  std::vector<RayTerm> rays;

  Scalar value(std::int64_t a) const {
    Scalar v(0);
    auto it = entries.find(a);
    if (it != entries.end()) v = it->second;
    for (const auto& r : rays) {
      if (r.covers_row(a)) v += r.coeff;
    }
    return v;
  }
};

// Smallest divisor p of L with g(a + p) = g(a) for all a.
template <typename G>
std::int64_t minimal_period(std::int64_t L, std::int64_t base, G&& g) {
  for (std::int64_t p = 1; p < L; ++p) {
    if (L % p != 0) continue;
    bool ok = true;
    for (std::int64_t a = 0; a < L && ok; ++a) ok = g(base + a) == g(base + a + p);
    if (ok) return p;
  }
  return L;
}

auto ray_order(const RayTerm& r) {
  return std::make_tuple(r.diagonal(), static_cast<int>(r.extent), r.row0, r.stride);
}

}  // namespace

LocallyFiniteOperator::LocallyFiniteOperator(IndexDomain domain) : finitary_(domain) {}

LocallyFiniteOperator::LocallyFiniteOperator(FinitaryMatrix finitary, std::vector<RayTerm> rays)
    : finitary_(std::move(finitary)) {
  canonicalize(std::move(rays));
}

void LocallyFiniteOperator::canonicalize(std::vector<RayTerm> raw) {
  const IndexDomain dom = finitary_.domain();
  std::map<std::int64_t, DiagonalData> diagonals;

  for (auto r : raw) {
    if (dblie::is_zero(r.coeff)) continue;
    if (r.stride < 1) throw InputError("ray stride must be positive");
    if (r.length) {
      if (*r.length < 0) throw InputError("ray length must be non-negative");
      if (r.extent != RayTerm::Extent::forward) throw InputError("only forward rays may have a finite length");
      for (std::int64_t s = 0; s < *r.length; ++s) finitary_.add(r.row0 + s * r.stride, r.col0 + s * r.stride, r.coeff);
      continue;
    }
    if (dom.kind == IndexDomain::Kind::finite) throw DomainError("infinite ray over a finite index domain");
    if (dom.kind == IndexDomain::Kind::naturals) {
      if (r.extent != RayTerm::Extent::forward) throw DomainError("backward or bi-infinite ray over the naturals");
      if (!dom.contains(r.row0) || !dom.contains(r.col0)) throw DomainError("ray starts outside the naturals");
    }
    if (r.extent == RayTerm::Extent::bi) {
      std::int64_t d = r.diagonal();
      r.row0 = floor_mod(r.row0, r.stride);
      r.col0 = r.row0 + d;
    }
    diagonals[r.diagonal()].rays.push_back(r);
  }

  if (diagonals.empty()) {
    rays_.clear();
    index_columns();
    return;
  }

  // Move finitary entries on ray-carrying diagonals into the diagonal data.
  std::map<MatrixIndex, Scalar> kept;
  for (const auto& [ij, v] : finitary_.entries()) {
    auto it = diagonals.find(ij.second - ij.first);
    if (it == diagonals.end()) {
      kept.emplace(ij, v);
    } else {
      it->second.entries.emplace(ij.first, v);
    }
  }
  FinitaryMatrix fin(dom);
  for (const auto& [ij, v] : kept) fin.add(ij.first, ij.second, v);

  std::vector<RayTerm> out;
  for (auto& [D, data] : diagonals) {
    std::int64_t Lf = 1, Lb = 1;
    std::vector<std::int64_t> starts;
    for (const auto& r : data.rays) {
      if (r.extent != RayTerm::Extent::backward) Lf = std::lcm(Lf, r.stride);
      if (r.extent != RayTerm::Extent::forward) Lb = std::lcm(Lb, r.stride);
      if (r.extent != RayTerm::Extent::bi) starts.push_back(r.row0);
    }
    for (const auto& [a, v] : data.entries) starts.push_back(a);
    std::int64_t lo = 0, hi = 0;
    if (!starts.empty()) {
      lo = *std::min_element(starts.begin(), starts.end());
      hi = *std::max_element(starts.begin(), starts.end()) + 1;
    }
    auto g_plus = [&](std::int64_t a) { return data.value(hi + floor_mod(a - hi, Lf)); };
    auto g_minus = [&](std::int64_t a) { return data.value(lo - 1 - floor_mod(lo - 1 - a, Lb)); };
    std::int64_t p_plus = minimal_period(Lf, hi, g_plus);
    std::int64_t p_minus = minimal_period(Lb, lo - Lb, g_minus);

    auto emit_entry = [&](std::int64_t a, const Scalar& v) {
      if (!dblie::is_zero(v)) fin.add(a, a + D, v);
    };

    if (dom.kind == IndexDomain::Kind::integers) {
      std::int64_t P = std::lcm(p_plus, p_minus);
      bool same = p_plus == p_minus;
      for (std::int64_t a = 0; a < P && same; ++a) same = g_plus(a) == g_minus(a);
      if (same) {
        for (std::int64_t c = 0; c < p_plus; ++c) {
          Scalar v = g_plus(c);
          if (!dblie::is_zero(v)) out.push_back({v, c, c + D, p_plus, RayTerm::Extent::bi, std::nullopt});
        }
        for (std::int64_t a = lo; a < hi; ++a) emit_entry(a, data.value(a) - g_plus(a));
        continue;
      }
    }

    std::optional<std::int64_t> lb;
    if (dom.kind == IndexDomain::Kind::naturals) lb = std::max<std::int64_t>(0, -D);
    std::int64_t b_hi = hi;
    if (lb && b_hi < *lb) b_hi = *lb;
    while ((!lb || b_hi - 1 >= *lb) && data.value(b_hi - 1) == g_plus(b_hi - 1)) --b_hi;
    for (std::int64_t c = 0; c < p_plus; ++c) {
      Scalar v = g_plus(b_hi + c);
      if (!dblie::is_zero(v)) out.push_back({v, b_hi + c, b_hi + c + D, p_plus, RayTerm::Extent::forward, std::nullopt});
    }
    std::int64_t first_fin = lb ? *lb : 0;
    if (!lb) {
      std::int64_t b_lo = std::min(lo - 1, b_hi - 1);
      while (b_lo + 1 < b_hi && data.value(b_lo + 1) == g_minus(b_lo + 1)) ++b_lo;
      for (std::int64_t c = 0; c < p_minus; ++c) {
        Scalar v = g_minus(b_lo - c);
        if (!dblie::is_zero(v)) {
          out.push_back({v, b_lo - c, b_lo - c + D, p_minus, RayTerm::Extent::backward, std::nullopt});
        }
      }
      first_fin = b_lo + 1;
    }
    for (std::int64_t a = first_fin; a < b_hi; ++a) emit_entry(a, data.value(a));
  }

  std::sort(out.begin(), out.end(), [](const RayTerm& x, const RayTerm& y) { return ray_order(x) < ray_order(y); });
  finitary_ = std::move(fin);
  rays_ = std::move(out);
  index_columns();
}

void LocallyFiniteOperator::index_columns() {
  by_column_.clear();
  for (const auto& [ij, v] : finitary_.entries()) by_column_[ij.second].emplace_back(ij.first, v);
}

Scalar LocallyFiniteOperator::entry(std::int64_t i, std::int64_t j) const {
  Scalar v = finitary_.entry(i, j);
  for (const auto& r : rays_) {
    if (r.diagonal() == j - i && r.covers_row(i)) v += r.coeff;
  }
  return v;
}

IndexVec LocallyFiniteOperator::column(std::int64_t j) const {
  IndexVec out;
  auto it = by_column_.find(j);
  if (it != by_column_.end()) {
    for (const auto& [i, v] : it->second) out.add_term(i, v);
  }
  for (const auto& r : rays_) {
    std::int64_t i = j - r.diagonal();
    if (r.covers_row(i)) out.add_term(i, r.coeff);
  }
  return out;
}

IndexVec LocallyFiniteOperator::row(std::int64_t i) const {
  IndexVec out;
  const auto& e = finitary_.entries();
  for (auto it = e.lower_bound({i, INT64_MIN}); it != e.end() && it->first.first == i; ++it) {
    out.add_term(it->first.second, it->second);
  }
  for (const auto& r : rays_) {
    if (r.covers_row(i)) out.add_term(i + r.diagonal(), r.coeff);
  }
  return out;
}

IndexVec LocallyFiniteOperator::apply(const IndexVec& v) const {
  IndexVec out;
  for (const auto& [j, c] : v) out.add_scaled(column(j), c);
  return out;
}

LocallyFiniteOperator LocallyFiniteOperator::transpose() const {
  std::vector<RayTerm> rays;
  for (auto r : rays_) {
    std::swap(r.row0, r.col0);
    rays.push_back(r);
  }
  return LocallyFiniteOperator(finitary_.transpose(), std::move(rays));
}

namespace {

LocallyFiniteOperator combine(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b, const Scalar& cb) {
  if (!(a.domain() == b.domain())) throw DomainError("combining operators over different index domains");
  FinitaryMatrix fin = a.finitary();
  fin.add_scaled(b.finitary(), cb);
  std::vector<RayTerm> rays = a.rays();
  for (auto r : b.rays()) {
    r.coeff *= cb;
    rays.push_back(r);
  }
  return LocallyFiniteOperator(std::move(fin), std::move(rays));
}

}  // namespace

LocallyFiniteOperator operator+(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b) {
  return combine(a, b, Scalar(1));
}

LocallyFiniteOperator operator-(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b) {
  return combine(a, b, Scalar(-1));
}

LocallyFiniteOperator operator*(const Scalar& c, const LocallyFiniteOperator& a) {
  return combine(LocallyFiniteOperator(a.domain()), a, c);
}

// ---------------------------------------------------------------------------

Vec apply_operator(const LocallyFiniteOperator& op, const Vec& v) {
  Space space = op.domain().vector_space();
  IndexVec in;
  for (const auto& [s, c] : v) {
    if (s.space != space) throw DomainError("vector carrier does not match the operator's index domain");
    in.add_term(s.index, c);
  }
  Vec out;
  for (const auto& [i, c] : op.apply(in)) out.add_term({space, i, 0, 0}, c);
  return out;
}

Scalar trace_pair(const FinitaryMatrix& x, const LocallyFiniteOperator& y) {
  if (!(x.domain() == y.domain())) throw DomainError("trace pairing over different index domains");
  Scalar total(0);
  for (const auto& [kl, v] : x.entries()) total += v * y.entry(kl.second, kl.first);
  return total;
}

Scalar trace_pair(const FinitaryMatrix& x, const FinitaryMatrix& y) {
  return trace_pair(x, LocallyFiniteOperator::from_finitary(y));
}

FinitaryMatrix mul(const FinitaryMatrix& a, const FinitaryMatrix& b) {
  return mul(a, LocallyFiniteOperator::from_finitary(b));
}

FinitaryMatrix mul(const FinitaryMatrix& a, const LocallyFiniteOperator& b) {
  if (!(a.domain() == b.domain())) throw DomainError("product over different index domains");
  FinitaryMatrix out(a.domain());
  for (const auto& [rc, v] : a.entries()) {
    for (const auto& [k, w] : b.row(rc.second)) out.add(rc.first, k, v * w);
  }
  return out;
}

FinitaryMatrix mul(const LocallyFiniteOperator& a, const FinitaryMatrix& b) {
  if (!(a.domain() == b.domain())) throw DomainError("product over different index domains");
  FinitaryMatrix out(a.domain());
  for (const auto& [rc, v] : b.entries()) {
    for (const auto& [k, w] : a.column(rc.first)) out.add(k, rc.second, w * v);
  }
  return out;
}

namespace {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Solves m = r1 (mod k1), m = r2 (mod k2); returns (m0 in [0, L), L).
std::optional<std::pair<std::int64_t, std::int64_t>> crt(std::int64_t r1, std::int64_t k1, std::int64_t r2,
                                                         std::int64_t k2) {
  std::int64_t x, y;
  std::int64_t g = ext_gcd(k1, k2, x, y);
  std::int64_t diff = r2 - r1;
  if (floor_mod(diff, g) != 0) return std::nullopt;
  std::int64_t L = k1 / g * k2;
  std::int64_t mod = k2 / g;
  std::int64_t t = floor_mod(floor_mod(diff / g, mod) * floor_mod(x, mod), mod);
  return std::make_pair(floor_mod(r1 + k1 * t, L), L);
}

// Middle indices m shared by the column progression of `a` and the row
// progression of `b`, appended to the result as entries or rays.
void ray_product(const RayTerm& a, const RayTerm& b, FinitaryMatrix& fin, std::vector<RayTerm>& rays) {
  auto sol = crt(floor_mod(a.col0, a.stride), a.stride, floor_mod(b.row0, b.stride), b.stride);
  if (!sol) return;
  auto [m0, L] = *sol;
  std::optional<std::int64_t> lower, upper;
  auto bound = [&](RayTerm::Extent e, std::int64_t anchor) {
    if (e == RayTerm::Extent::forward) lower = lower ? std::max(*lower, anchor) : anchor;
    if (e == RayTerm::Extent::backward) upper = upper ? std::min(*upper, anchor) : anchor;
  };
  bound(a.extent, a.col0);
  bound(b.extent, b.row0);
  std::int64_t Da = a.diagonal(), Db = b.diagonal();
  Scalar c = a.coeff * b.coeff;
  if (lower && upper) {
    for (std::int64_t m = *lower + floor_mod(m0 - *lower, L); m <= *upper; m += L) fin.add(m - Da, m + Db, c);
  } else if (lower) {
    std::int64_t m = *lower + floor_mod(m0 - *lower, L);
    rays.push_back({c, m - Da, m + Db, L, RayTerm::Extent::forward, std::nullopt});
  } else if (upper) {
    std::int64_t m = *upper - floor_mod(*upper - m0, L);
    rays.push_back({c, m - Da, m + Db, L, RayTerm::Extent::backward, std::nullopt});
  } else {
    rays.push_back({c, m0 - Da, m0 + Db, L, RayTerm::Extent::bi, std::nullopt});
  }
}

}  // namespace

LocallyFiniteOperator mul(const LocallyFiniteOperator& a, const LocallyFiniteOperator& b) {
  if (!(a.domain() == b.domain())) throw DomainError("product over different index domains");
  FinitaryMatrix fin = mul(a.finitary(), b);
  LocallyFiniteOperator a_rays(FinitaryMatrix(a.domain()), a.rays());
  fin.add_scaled(mul(a_rays, b.finitary()), Scalar(1));
  std::vector<RayTerm> rays;
  for (const auto& ra : a.rays()) {
    for (const auto& rb : b.rays()) ray_product(ra, rb, fin, rays);
  }
  return LocallyFiniteOperator(std::move(fin), std::move(rays));
}

FinitaryMatrix project_to_block(const LocallyFiniteOperator& op, std::int64_t n, std::int64_t first) {
  if (n < 1) throw InputError("block size must be at least 1");
  FinitaryMatrix out(IndexDomain::finite(n, first));
  for (std::int64_t i = first; i < first + n; ++i) {
    for (const auto& [j, v] : op.row(i)) {
      if (j >= first && j < first + n) out.add(i, j, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string serialize(const LocallyFiniteOperator& op) {
  std::ostringstream os;
  os << "operator " << op.domain().describe() << '\n';
  for (const auto& [ij, v] : op.finitary().entries()) {
    os << "entry " << ij.first << ' ' << ij.second << ' ' << to_string(v) << '\n';
  }
  for (const auto& r : op.rays()) {
    os << "ray " << to_string(r.coeff) << ' ' << r.row0 << ' ' << r.col0 << ' ' << r.stride << ' ';
    if (r.length) {
      os << *r.length;
    } else if (r.extent == RayTerm::Extent::forward) {
      os << "inf";
    } else if (r.extent == RayTerm::Extent::backward) {
      os << "-inf";
    } else {
      os << "biinf";
    }
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

namespace {

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw InputError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad integer '" + s + "'");
  }
}

}  // namespace

LocallyFiniteOperator parse_operator(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<IndexDomain> dom;
  std::vector<std::pair<MatrixIndex, Scalar>> entries;
  std::vector<RayTerm> rays;
  bool ended = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (ended) throw InputError("content after 'end' in operator record");
    if (tok[0] == "operator") {
      if (dom) throw InputError("duplicate operator header");
      if (tok.size() == 2 && tok[1] == "naturals") {
        dom = IndexDomain::naturals();
      } else if (tok.size() == 2 && tok[1] == "integers") {
        dom = IndexDomain::integers();
      } else if (tok.size() == 4 && tok[1] == "finite") {
        dom = IndexDomain::finite(parse_int(tok[2]), parse_int(tok[3]));
      } else {
        throw InputError("bad operator header: " + line);
      }
    } else if (!dom) {
      throw InputError("operator record must start with an 'operator' header");
    } else if (tok[0] == "entry" && tok.size() == 4) {
      entries.push_back({{parse_int(tok[1]), parse_int(tok[2])}, parse_scalar(tok[3])});
    } else if (tok[0] == "ray" && tok.size() == 6) {
      RayTerm r{parse_scalar(tok[1]), parse_int(tok[2]), parse_int(tok[3]), parse_int(tok[4]),
                RayTerm::Extent::forward, std::nullopt};
      if (tok[5] == "-inf") {
        r.extent = RayTerm::Extent::backward;
      } else if (tok[5] == "biinf") {
        r.extent = RayTerm::Extent::bi;
      } else if (tok[5] != "inf") {
        r.length = parse_int(tok[5]);
      }
      rays.push_back(r);
    } else if (tok[0] == "end" && tok.size() == 1) {
      ended = true;
    } else {
      throw InputError("bad operator record line: " + line);
    }
  }
  if (!dom || !ended) throw InputError("incomplete operator record");
  FinitaryMatrix fin(*dom);
  for (const auto& [ij, v] : entries) fin.add(ij.first, ij.second, v);
  return LocallyFiniteOperator(std::move(fin), std::move(rays));
}

std::string render(const FinitaryMatrix& m) {
  if (m.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ij, v] : m.entries()) {
    bool neg = sgn(v) < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    Scalar mag = abs(v);
    if (mag != 1) os << to_string(mag) << '*';
    os << "e_{" << ij.first << ',' << ij.second << '}';
    first = false;
  }
  return os.str();
}

std::string render(const LocallyFiniteOperator& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = op.finitary().empty();
  if (!first) os << render(op.finitary());
  for (const auto& r : op.rays()) {
    bool neg = sgn(r.coeff) < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    Scalar mag = abs(r.coeff);
    if (mag != 1) os << to_string(mag) << '*';
    const char* dir = r.extent == RayTerm::Extent::forward ? "+" : r.extent == RayTerm::Extent::backward ? "-" : "+-";
    os << "ray(" << r.row0 << ',' << r.col0 << ';' << dir << r.stride << ')';
    first = false;
  }
  return os.str();
}

}  // namespace dblie
