#include "dblie/text_format.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "dblie/error.hpp"

namespace dblie {

namespace {

class Parser {
 public:
  Parser(std::string_view text, Space poly_space) : poly_space_(poly_space) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool lookahead(std::string_view s) const { return std::string_view(text_).substr(pos_, s.size()) == s; }

  bool accept(std::string_view s) {
    if (!lookahead(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("parse error at offset " + std::to_string(pos_) + " in \"" + text_ + "\": " + what);
  }

  std::int64_t integer() {
    bool negative = accept("-");
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::int64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (value > (INT64_MAX - 9) / 10) fail("integer out of range");
      value = value * 10 + (text_[pos_++] - '0');
    }
    return negative ? -value : value;
  }

  Scalar unsigned_scalar() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (accept("/")) {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    return parse_scalar(std::string_view(text_).substr(start, pos_ - start));
  }

  bool at_factor() const {
    char c = peek();
    return c == 't' || lookahead("e_") || lookahead("m_") || lookahead("T_");
  }

  BasisSymbol factor() {
    if (accept("T_")) {
      std::int64_t n = integer();
      expect("^{");
      std::int64_t i = integer();
      expect(",");
      std::int64_t j = integer();
      expect("}");
      return yangian_basis(n, static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
    }
    if (accept("e_")) return finite_basis(integer());
    if (accept("m_")) return module_basis(integer());
    if (accept("t")) {
      std::int64_t degree = 1;
      if (accept("^")) {
        if (accept("{")) {
          degree = integer();
          expect("}");
        } else {
          degree = integer();
        }
      }
      return poly_symbol(degree);
    }
    fail("expected a basis symbol");
  }

  BasisSymbol poly_symbol(std::int64_t degree) const {
    if (poly_space_ == Space::laurent) return laurent_monomial(degree);
    if (degree < 0) throw InputError("negative degree " + std::to_string(degree) + " in the polynomial ring");
    return monomial(degree);
  }

  // One term: coefficient and the list of tensor factors.
  std::pair<Scalar, std::vector<BasisSymbol>> term() {
    Scalar coeff(1);
    std::vector<BasisSymbol> factors;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = unsigned_scalar();
      if (accept("*")) {
        factors.push_back(factor());
      } else if (at_factor()) {
        factors.push_back(factor());
      } else {
        factors.push_back(poly_symbol(0));
      }
    } else {
      factors.push_back(factor());
    }
    while (accept("(x)")) {
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= unsigned_scalar();
        factors.push_back(poly_symbol(0));
      } else {
        factors.push_back(factor());
      }
    }
    return {coeff, std::move(factors)};
  }

  template <typename Sink>
  void sum(std::size_t arity, Sink&& sink) {
    if (done()) fail("empty expression");
    bool negative = accept("-");
    if (!negative) accept("+");
    while (true) {
      auto [coeff, factors] = term();
      if (factors.size() != arity) {
        fail("term has " + std::to_string(factors.size()) + " tensor factors, expected " + std::to_string(arity));
      }
      sink(factors, negative ? Scalar(-coeff) : coeff);
      if (done()) break;
      if (accept("+")) {
        negative = false;
      } else if (accept("-")) {
        negative = true;
      } else {
        fail("expected '+' or '-'");
      }
    }
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  Space poly_space_;
};

bool is_literal_zero(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  return compact == "0";
}

}  // namespace

BasisSymbol parse_symbol(std::string_view text, Space poly_space) {
  Parser p(text, poly_space);
  BasisSymbol s = p.factor();
  if (!p.done()) p.fail("trailing characters after symbol");
  return s;
}

Vec parse_vec(std::string_view text, Space poly_space) {
  Vec out;
  if (is_literal_zero(text)) return out;
  Parser p(text, poly_space);
  p.sum(1, [&](const std::vector<BasisSymbol>& f, const Scalar& c) { out.add_term(f[0], c); });
  return out;
}

Tensor2 parse_tensor2(std::string_view text, Space poly_space) {
  Tensor2 out;
  if (is_literal_zero(text)) return out;
  Parser p(text, poly_space);
  p.sum(2, [&](const std::vector<BasisSymbol>& f, const Scalar& c) { out.add_term({f[0], f[1]}, c); });
  return out;
}

}  // namespace dblie
