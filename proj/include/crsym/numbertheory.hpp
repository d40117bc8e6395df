#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crsym/rational.hpp"

namespace crsym {

/// Prime factorization of n > 0 as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<Integer, int>> factorize(Integer n);

/// Modular exponentiation base^exp mod m (m > 1, exp >= 0).
Integer mod_pow(Integer base, Integer exp, const Integer& m);

/// A square root of -1 modulo an odd prime p with p % 4 == 1.
Integer sqrt_minus_one_mod(const Integer& p);

/// Gaussian-integer gcd (up to units) of a and b, both with integer re/im.
GaussianRational gaussian_gcd(GaussianRational a, GaussianRational b);

/// z with |z|^2 = q for a positive rational q, when such z exists in Q(i).
/// Exists iff every prime = 3 (mod 4) divides numerator*denominator to an
/// even power.  Returns nullopt otherwise.
std::optional<GaussianRational> norm_split(const Rational& q);

/// Exact square root of a nonnegative rational, when it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& q);

/// Exact square root in Q(i): w with w^2 = z, when one exists.  The root with
/// re > 0, or re == 0 and im >= 0, is returned.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z);

/// True iff positive rational q is a norm from Q(i) (a sum of two rational
/// squares).
bool is_norm(const Rational& q);

}  // namespace crsym
