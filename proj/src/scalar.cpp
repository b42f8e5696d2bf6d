#include "dblie/scalar.hpp"

#include <cctype>

#include "dblie/error.hpp"

namespace dblie {

Scalar make_scalar(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  Scalar out(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  out.canonicalize();
  return out;
}

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw InputError("malformed scalar '" + std::string(text) + "'");
  }
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Scalar out(zn, zd);
  out.canonicalize();
  return out;
}

std::string to_string(const Scalar& value) { return value.get_str(); }

}  // namespace dblie
