#include <flagalg/rational.hpp>

#include <cmath>
#include <stdexcept>

namespace flagalg {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (! s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (! s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);

    bool negative = false;
    if (! s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (! all_digits(num) || ! all_digits(den))
            throw std::invalid_argument("malformed rational: " + std::string(text));
        Integer d(std::string(den), 10);
        if (d == 0)
            throw std::invalid_argument("zero denominator: " + std::string(text));
        result = Rational(Integer(std::string(num), 10), d);
        result.canonicalize();
    }
    else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((! ip.empty() && ! all_digits(ip)) || (! fp.empty() && ! all_digits(fp)) || (ip.empty() && fp.empty()))
            throw std::invalid_argument("malformed decimal: " + std::string(text));
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip), 10);
        Integer frac = fp.empty() ? Integer(0) : Integer(std::string(fp), 10);
        result = Rational(whole * scale + frac, scale);
        result.canonicalize();
    }
    else {
        if (! all_digits(s))
            throw std::invalid_argument("malformed rational: " + std::string(text));
        result = Rational(Integer(std::string(s), 10));
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value)
{
    Rational r = value;
    r.canonicalize();
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    if (k > n)
        return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer falling_factorial(unsigned long n, unsigned long k)
{
    if (k > n)
        return 0;
    Integer r = 1;
    for (unsigned long i = 0; i < k; ++i)
        r *= (n - i);
    return r;
}

Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational round_to_denominator(double x, const Integer& den)
{
    if (! std::isfinite(x))
        throw std::domain_error("cannot round a non-finite value");
    // exact: x is a dyadic rational, so x*den is computed exactly in mpq
    Rational exact(x);
    Rational scaled = exact * den;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational frac = scaled - fl;
    if (frac >= Rational(1, 2))
        fl += 1;
    Rational r(fl, den);
    r.canonicalize();
    return r;
}



Rational limit_denominator(double x, long max_den)
{
    if (! std::isfinite(x))
        throw std::domain_error("cannot approximate a non-finite value");
    if (max_den < 1)
        throw std::invalid_argument("limit_denominator: max_den must be positive");
    Rational target(x);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest = target;
    for (;;) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        Integer q2 = q0 + a * q1;
        if (q2 > max_den)
            break;
        Integer p2 = p0 + a * p1;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        Rational frac = rest - a;
        if (sgn(frac) == 0)
            break;
        rest = 1 / frac;
    }
    Integer k = (max_den - q0) / q1;
    Rational b1(p1, q1), b2(p0 + k * p1, q0 + k * q1);
    b1.canonicalize();
    b2.canonicalize();
    return abs(b2 - target) < abs(b1 - target) ? b2 : b1;
}

} // namespace flagalg
