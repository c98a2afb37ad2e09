#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace flagalg {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.625".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// a / b in lowest terms (mpq_class(a, b) does not canonicalize).
inline Rational ratio(const Integer& a, const Integer& b)
{
    Rational r(a, b);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline double to_double(const Rational& r) { return r.get_d(); }

Integer binomial(unsigned long n, unsigned long k);
Integer falling_factorial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

/// Nearest rational with the given denominator: round(x * den) / den.
Rational round_to_denominator(double x, const Integer& den);
/// Closest rational to x with denominator at most max_den (continued fraction convergents
/// and semiconvergents).
Rational limit_denominator(double x, long max_den);

} // namespace flagalg
