#pragma once

#include <flagalg/rational.hpp>

#include <iosfwd>
#include <string>

namespace flagalg {

/// a + b*sqrt(d) with d square-free and > 1. A value with b = 0 is a plain
/// rational and carries d = 0 until it meets an irrational operand; mixing two
/// different nonzero d is an error.
class QuadExt
{
    public:
        QuadExt() = default;
        QuadExt(const Rational& a);
        QuadExt(long a) : QuadExt(Rational(a)) {}
        QuadExt(const Rational& a, const Rational& b, long d);

        static QuadExt sqrt(long d);

        const Rational& a() const { return a_; }
        const Rational& b() const { return b_; }
        long d() const { return d_; }
        bool is_rational() const { return sgn(b_) == 0; }

        QuadExt conjugate() const;
        /// a^2 - b^2 d
        Rational norm() const;

        int sign() const;
        double to_double() const;
        std::string to_string() const;

        QuadExt& operator+=(const QuadExt& o);
        QuadExt& operator-=(const QuadExt& o);
        QuadExt& operator*=(const QuadExt& o);
        QuadExt& operator/=(const QuadExt& o);

        friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
        friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
        friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
        friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
        QuadExt operator-() const;

        friend bool operator==(const QuadExt& x, const QuadExt& y);
        friend bool operator!=(const QuadExt& x, const QuadExt& y) { return ! (x == y); }
        friend bool operator<(const QuadExt& x, const QuadExt& y) { return (x - y).sign() < 0; }
        friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
        friend bool operator<=(const QuadExt& x, const QuadExt& y) { return ! (y < x); }
        friend bool operator>=(const QuadExt& x, const QuadExt& y) { return ! (x < y); }

    private:
        void adopt(const QuadExt& o);

        Rational a_, b_;
        long d_ = 0;
};

inline int sign(const QuadExt& x) { return x.sign(); }
inline bool is_zero(const QuadExt& x) { return sgn(x.a()) == 0 && sgn(x.b()) == 0; }
inline double to_double(const QuadExt& x) { return x.to_double(); }
inline std::string to_string(const QuadExt& x) { return x.to_string(); }

/// Splits d = f^2 * core with core square-free; returns core and sets f.
long square_free_part(long d, long& factor);

/// Parses "a", "a+b*sqrt(d)", "a-b*sqrt(d)", "b*sqrt(d)", "sqrt(d)", the root term
/// first ("sqrt(d)-a"), or any of these as "(x)/c"; a, b, c in parse_rational syntax.
QuadExt parse_quadext(std::string_view text);

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

} // namespace flagalg
