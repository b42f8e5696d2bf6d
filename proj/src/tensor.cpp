#include "dblie/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace dblie {

namespace {

template <std::size_t K>
Permutation<K> checked_permutation(std::span<const int> sigma) {
  if (sigma.size() != K) {
    throw InputError("permutation arity " + std::to_string(sigma.size()) + " does not match tensor arity " +
                     std::to_string(K));
  }
  Permutation<K> out{};
  std::array<bool, K> seen{};
  for (std::size_t i = 0; i < K; ++i) {
    int target = sigma[i] - 1;
    if (target < 0 || target >= static_cast<int>(K) || seen[static_cast<std::size_t>(target)]) {
      throw InputError("not a permutation of the tensor positions");
    }
    seen[static_cast<std::size_t>(target)] = true;
    out[i] = target;
  }
  return out;
}

template <typename Key, typename KeyWriter>
std::string render_terms(const LinearCombination<Key>& u, KeyWriter&& write_key) {
  if (u.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coeff] : u) {
    Scalar magnitude = abs(coeff);
    bool negative = sgn(coeff) < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    if (magnitude != 1) os << to_string(magnitude) << '*';
    write_key(os, key);
    first = false;
  }
  return os.str();
}

template <std::size_t K>
void write_tensor_key(std::ostream& os, const TensorKey<K>& key) {
  for (std::size_t i = 0; i < K; ++i) {
    if (i) os << "(x)";
    os << render(key[i]);
  }
}

}  // namespace

Tensor2 tensor_permute(const Tensor2& u, std::span<const int> sigma) {
  return permute(u, checked_permutation<2>(sigma));
}

Tensor3 tensor_permute(const Tensor3& u, std::span<const int> sigma) {
  return permute(u, checked_permutation<3>(sigma));
}

Tensor2 outer(const Vec& a, const Vec& b) {
  Tensor2 out;
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) out.add_term({x, y}, cx * cy);
  }
  return out;
}

Tensor3 outer(const Vec& v, const Tensor2& u, int slot) {
  if (slot < 1 || slot > 3) throw InputError("outer product slot must be 1, 2 or 3");
  Tensor3 out;
  for (const auto& [x, cx] : v) {
    for (const auto& [key, cu] : u) {
      TensorKey<3> k{};
      std::size_t from = 0;
      for (std::size_t pos = 0; pos < 3; ++pos) {
        k[pos] = static_cast<int>(pos) + 1 == slot ? x : key[from++];
      }
      out.add_term(k, cx * cu);
    }
  }
  return out;
}

Tensor2 pure_tensor(const BasisSymbol& a, const BasisSymbol& b, const Scalar& coeff) {
  Tensor2 out;
  out.add_term({a, b}, coeff);
  return out;
}

std::set<Space> spaces_of(const Vec& v) {
  std::set<Space> out;
  for (const auto& [s, c] : v) out.insert(s.space);
  return out;
}

std::set<Space> spaces_of(const Tensor2& u) {
  std::set<Space> out;
  for (const auto& [k, c] : u) {
    for (const auto& s : k) out.insert(s.space);
  }
  return out;
}

std::set<Space> spaces_of(const Tensor3& u) {
  std::set<Space> out;
  for (const auto& [k, c] : u) {
    for (const auto& s : k) out.insert(s.space);
  }
  return out;
}

namespace {

void require_same_carrier(const std::set<Space>& a, const std::set<Space>& b) {
  if (!a.empty() && !b.empty() && a != b) {
    throw DomainError("cannot add elements of different carrier spaces without an explicit embedding");
  }
}

}  // namespace

Tensor2 checked_add(const Tensor2& a, const Tensor2& b) {
  require_same_carrier(spaces_of(a), spaces_of(b));
  return a + b;
}

Vec checked_add(const Vec& a, const Vec& b) {
  require_same_carrier(spaces_of(a), spaces_of(b));
  return a + b;
}

std::string render(const Vec& v) {
  return render_terms(v, [](std::ostream& os, const BasisSymbol& s) { os << render(s); });
}

std::string render(const Tensor2& u) { return render_terms(u, write_tensor_key<2>); }

std::string render(const Tensor3& u) { return render_terms(u, write_tensor_key<3>); }

Tensor2 shift_degrees(const Tensor2& u, std::int64_t da, std::int64_t db) {
  Tensor2 out;
  for (const auto& [k, coeff] : u) {
    auto key = k;
    key[0].index += da;
    key[1].index += db;
    if ((key[0].space == Space::poly && key[0].index < 0) || (key[1].space == Space::poly && key[1].index < 0)) {
      throw DomainError("degree shift leaves the polynomial ring");
    }
    out.add_term(key, coeff);
  }
  return out;
}

}  // namespace dblie
