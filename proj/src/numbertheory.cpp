#include "crsym/numbertheory.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace crsym {

Integer mod_pow(Integer base, Integer exp, const Integer& m) {
  Integer r = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if ((exp & 1) != 0) r = r * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return r;
}

namespace {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n == p) return true;
  if (n % 2 == 0) return false;
  return boost::multiprecision::miller_rabin_test(n, 40);
}

// Pollard's rho (Brent variant) for a composite odd n with no small factors.
Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Integer diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factorize(Integer n) {
  if (n <= 0) throw std::invalid_argument("factorize requires a positive integer");
  std::map<Integer, int> acc;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  for (Integer p = 17; p * p <= n && p < 100000; p += 2) {
    while (n % p == 0) {
      ++acc[p];
      n /= p;
    }
  }
  factor_into(n, acc);
  return {acc.begin(), acc.end()};
}

Integer sqrt_minus_one_mod(const Integer& p) {
  if (p % 4 != 1) throw std::invalid_argument("need a prime = 1 (mod 4)");
  for (Integer a = 2; a < p; ++a) {
    Integer t = mod_pow(a, (p - 1) / 4, p);
    if (t * t % p == p - 1) return t;
  }
  throw std::logic_error("no square root of -1 found; input not prime?");
}

namespace {

GaussianRational gaussian_mod(const GaussianRational& a, const GaussianRational& b) {
  // nearest-integer rounding of a/b, remainder has norm < norm(b)
  GaussianRational q = a / b;
  auto round_half = [](const Rational& x) {
    Integer num = numerator(x), den = denominator(x);
    Integer fl = num >= 0 ? Integer(num / den) : Integer(-((-num + den - 1) / den));
    return 2 * (num - fl * den) >= den ? fl + 1 : fl;
  };
  GaussianRational qi(Rational(round_half(q.re)), Rational(round_half(q.im)));
  GaussianRational r = a;
  r -= b * qi;
  return r;
}

}  // namespace

GaussianRational gaussian_gcd(GaussianRational a, GaussianRational b) {
  if (denominator(a.re) != 1 || denominator(a.im) != 1 || denominator(b.re) != 1 ||
      denominator(b.im) != 1)
    throw std::invalid_argument("gaussian_gcd requires Gaussian integers");
  while (!b.is_zero()) {
    GaussianRational r = gaussian_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

std::optional<GaussianRational> norm_split(const Rational& q) {
  if (q <= 0) return std::nullopt;
  Integer num = numerator(q), den = denominator(q);
  // q = (num*den)/den^2, so it suffices to split num*den as a Gaussian norm.
  Integer n = num * den;
  GaussianRational z(Rational(1), Rational(0));
  for (const auto& [p, e] : factorize(n)) {
    if (p == 2) {
      GaussianRational g(Rational(1), Rational(1));  // |1+i|^2 = 2
      for (int k = 0; k < e; ++k) z *= g;
    } else if (p % 4 == 1) {
      Integer x = sqrt_minus_one_mod(p);
      GaussianRational g =
          gaussian_gcd(GaussianRational(Rational(x), Rational(1)), GaussianRational(Rational(p), Rational(0)));
      if (g.norm() != Rational(p)) throw std::logic_error("Gaussian prime above p has wrong norm");
      for (int k = 0; k < e; ++k) z *= g;
    } else {
      if (e % 2 != 0) return std::nullopt;
      GaussianRational g(Rational(p), Rational(0));
      for (int k = 0; k < e / 2; ++k) z *= g;
    }
  }
  GaussianRational result = z / GaussianRational(Rational(den), Rational(0));
  if (result.norm() != q) throw std::logic_error("norm_split postcondition failed");
  return result;
}

bool is_norm(const Rational& q) {
  if (q <= 0) return false;
  Integer n = numerator(q) * denominator(q);
  for (const auto& [p, e] : factorize(n))
    if (p % 4 == 3 && e % 2 != 0) return false;
  return true;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  Integer num = numerator(q), den = denominator(q);
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
  // w = x + iy with x^2 - y^2 = re(z), 2xy = im(z).  Then
  // x^2 = (re(z) + |z|) / 2 with |z| = sqrt(norm(z)), which must be rational.
  if (z.is_zero()) return GaussianRational();
  std::optional<Rational> abs = rational_sqrt(z.norm());
  if (!abs) return std::nullopt;
  if (z.im == 0) {
    if (z.re > 0) {
      std::optional<Rational> x = rational_sqrt(z.re);
      if (!x) return std::nullopt;
      return GaussianRational(*x, Rational(0));
    }
    std::optional<Rational> y = rational_sqrt(-z.re);
    if (!y) return std::nullopt;
    return GaussianRational(Rational(0), *y);
  }
  std::optional<Rational> x = rational_sqrt((z.re + *abs) / 2);
  if (!x || *x == 0) return std::nullopt;
  Rational y = z.im / (2 * *x);
  GaussianRational w(*x, y);
  if (w * w != z) return std::nullopt;
  return w;
}

}  // namespace crsym
