#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dblie {

/// Exact rational scalar. gmpxx keeps results of arithmetic in lowest terms;
/// every constructor in this file canonicalizes explicitly.
using Scalar = mpq_class;

Scalar make_scalar(std::int64_t num, std::int64_t den = 1);

/// Parses "3", "-7", "3/2", "-3/2". Throws InputError on malformed text or a
/// zero denominator.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace dblie
