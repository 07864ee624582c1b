#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qfs {

// Exact scalars.  mpq_class is kept canonical by GMP: reduced, positive
// denominator, so serialization is "a" or "a/b" with gcd(a,b)=1, b>1.
using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

inline int sign_of(const Rational& x) { return sgn(x); }

std::string rat_to_string(const Rational& x);

/// Parses "a" or "a/b" (optional leading '-'), canonicalizes.  Throws
/// ParseError on malformed input or zero denominator.
Rational rat_from_string(const std::string& s);

/// True iff x is the square of a rational; if so *root is the nonnegative root.
bool rat_is_square(const Rational& x, Rational* root = nullptr);

int64_t rat_to_int64(const Rational& x);  // throws unless x is a small integer

}  // namespace qfs
