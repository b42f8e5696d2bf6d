#pragma once

#include <stdexcept>
#include <string>

namespace dblie {

/// Malformed user input: polynomial strings, operator records, unknown names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over incompatible index domains or carrier spaces.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation left its declared truncation window.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of its node budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dblie
