#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace subalign {

// Exact rational scalar. GMP's mpq_class keeps values in canonical form
// (reduced, positive denominator) through arithmetic, which the subspace
// code relies on for entry-wise equality. Every construction from raw
// numerator/denominator pairs or strings must go through the helpers below
// so the canonical-form invariant is never violated.
using Rational = mpq_class;
using RowVector = std::vector<Rational>;
using RowMatrix = std::vector<RowVector>;

/// Reduced rational from a numerator/denominator pair. Throws on zero denominator.
Rational make_rational(const mpz_class& num, const mpz_class& den);
Rational make_rational(long num, long den = 1);

/// Parses "p/q" or "p" (base 10). Throws input_error on malformed text or q = 0.
Rational rational_from_string(const std::string& text);

/// "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& value);

/// Exact floor/ceil as a machine integer. Throws capacity_error if out of range.
long rational_floor(const Rational& value);
long rational_ceil(const Rational& value);

std::size_t support_size(const RowVector& v);

} // namespace subalign
