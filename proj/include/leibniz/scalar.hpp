#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace leibniz {

/// Exact rational number in canonical form (positive denominator, coprime parts).
using Scalar = mpq_class;
using Integer = mpz_class;

/// Dense coefficient vector.
using Vector = std::vector<Scalar>;

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Serializes as "p/q", or "p" when the denominator is one.
std::string format_scalar(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

bool is_zero(const Vector& v);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

}  // namespace leibniz
