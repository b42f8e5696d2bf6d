#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "dblie/basis.hpp"
#include "dblie/error.hpp"
#include "dblie/scalar.hpp"

namespace dblie {

/// Finitely supported linear combination over an ordered key type. Zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
template <typename Key>
class LinearCombination {
 public:
  using map_type = std::map<Key, Scalar>;
  using const_iterator = typename map_type::const_iterator;

  LinearCombination() = default;
  explicit LinearCombination(const Key& key, Scalar coeff = Scalar(1)) { add_term(key, coeff); }

  void add_term(const Key& key, const Scalar& coeff) {
    if (is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  /// this += factor * other
  void add_scaled(const LinearCombination& other, const Scalar& factor) {
    if (is_zero(factor)) return;
    for (const auto& [key, coeff] : other.terms_) add_term(key, coeff * factor);
  }

  Scalar coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  LinearCombination& operator+=(const LinearCombination& other) {
    add_scaled(other, Scalar(1));
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& other) {
    add_scaled(other, Scalar(-1));
    return *this;
  }
  LinearCombination& operator*=(const Scalar& factor) {
    if (is_zero(factor)) {
      terms_.clear();
    } else {
      for (auto& [key, coeff] : terms_) coeff *= factor;
    }
    return *this;
  }

  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator-(LinearCombination a) { return a *= Scalar(-1); }
  friend LinearCombination operator*(const Scalar& s, LinearCombination a) { return a *= s; }
  friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

template <std::size_t K>
using TensorKey = std::array<BasisSymbol, K>;

using Vec = LinearCombination<BasisSymbol>;
using Tensor2 = LinearCombination<TensorKey<2>>;
using Tensor3 = LinearCombination<TensorKey<3>>;

/// Sparse vector over raw matrix indices; the working type for operator action.
using IndexVec = LinearCombination<std::int64_t>;

/// Permutation of tensor positions, 0-based: the factor at position i moves
/// to position perm[i].
template <std::size_t K>
using Permutation = std::array<int, K>;

inline constexpr Permutation<2> kSwap12{1, 0};
inline constexpr Permutation<3> kSwap12of3{1, 0, 2};
inline constexpr Permutation<3> kSwap23of3{0, 2, 1};

template <std::size_t K>
LinearCombination<TensorKey<K>> permute(const LinearCombination<TensorKey<K>>& u, const Permutation<K>& sigma) {
  LinearCombination<TensorKey<K>> out;
  for (const auto& [key, coeff] : u) {
    TensorKey<K> moved;
    for (std::size_t i = 0; i < K; ++i) moved[static_cast<std::size_t>(sigma[i])] = key[i];
    out.add_term(moved, coeff);
  }
  return out;
}

/// Runtime-checked variants: sigma is 1-based as written in the literature,
/// e.g. {2, 1} for (12). Throw InputError on arity mismatch or a
/// non-permutation.
Tensor2 tensor_permute(const Tensor2& u, std::span<const int> sigma);
Tensor3 tensor_permute(const Tensor3& u, std::span<const int> sigma);

Tensor2 outer(const Vec& a, const Vec& b);
/// Inserts the vector factor at `slot` (1, 2 or 3) of the resulting triple.
Tensor3 outer(const Vec& v, const Tensor2& u, int slot);
Tensor2 pure_tensor(const BasisSymbol& a, const BasisSymbol& b, const Scalar& coeff = Scalar(1));

/// Set of carrier tags appearing anywhere in the combination.
std::set<Space> spaces_of(const Vec& v);
std::set<Space> spaces_of(const Tensor2& u);
std::set<Space> spaces_of(const Tensor3& u);

/// Addition that refuses to combine tensors over different carriers.
Tensor2 checked_add(const Tensor2& a, const Tensor2& b);
Vec checked_add(const Vec& a, const Vec& b);

/// Text rendering, e.g. "3/2*t^2(x)t^0 - t^1(x)t^1"; the zero tensor is "0".
std::string render(const Vec& v);
std::string render(const Tensor2& u);
std::string render(const Tensor3& u);

/// (t^a (x) t^b) -> t^{a+da} (x) t^{b+db}. Throws DomainError if a polynomial
/// degree would become negative.
Tensor2 shift_degrees(const Tensor2& u, std::int64_t da, std::int64_t db);

}  // namespace dblie
