#include <flagalg/quadext.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace flagalg {

long square_free_part(long d, long& factor)
{
    if (d <= 0)
        throw std::domain_error("square_free_part: d must be positive");
    factor = 1;
    long core = d;
    for (long p = 2; p * p <= core; ++p)
        while (core % (p * p) == 0) {
            core /= p * p;
            factor *= p;
        }
    return core;
}

QuadExt::QuadExt(const Rational& a) : a_(a), b_(0), d_(0) {}

QuadExt::QuadExt(const Rational& a, const Rational& b, long d) : a_(a), b_(b)
{
    if (sgn(b_) == 0) {
        d_ = 0;
        return;
    }
    long f = 1;
    long core = square_free_part(d, f);
    if (core == 1) {
        a_ += b_ * f;
        b_ = 0;
        d_ = 0;
        return;
    }
    b_ *= f;
    d_ = core;
}

QuadExt QuadExt::sqrt(long d) { return QuadExt(0, 1, d); }

void QuadExt::adopt(const QuadExt& o)
{
    if (o.d_ == 0)
        return;
    if (d_ == 0) {
        d_ = o.d_;
        return;
    }
    if (d_ != o.d_)
        throw std::domain_error("QuadExt: mixing Q(sqrt " + std::to_string(d_) + ") and Q(sqrt " + std::to_string(o.d_) + ")");
}

QuadExt QuadExt::conjugate() const
{
    QuadExt r = *this;
    r.b_ = -r.b_;
    return r;
}

Rational QuadExt::norm() const { return a_ * a_ - b_ * b_ * d_; }

int QuadExt::sign() const
{
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    // opposite signs: compare a^2 with b^2 d
    int c = cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

double QuadExt::to_double() const
{
    if (is_rational())
        return a_.get_d();
    // avoid cancellation when a and b*sqrt(d) nearly cancel
    double s = std::sqrt(static_cast<double>(d_));
    if (sgn(a_) * sgn(b_) < 0) {
        Rational n = norm();
        double den = a_.get_d() - b_.get_d() * s;
        return n.get_d() / den;
    }
    return a_.get_d() + b_.get_d() * s;
}

std::string QuadExt::to_string() const
{
    if (is_rational())
        return flagalg::to_string(a_);
    std::string out;
    if (sgn(a_) != 0)
        out = flagalg::to_string(a_) + (sgn(b_) > 0 ? "+" : "");
    out += flagalg::to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
    return out;
}

QuadExt& QuadExt::operator+=(const QuadExt& o)
{
    adopt(o);
    a_ += o.a_;
    b_ += o.b_;
    if (sgn(b_) == 0)
        d_ = 0;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o)
{
    adopt(o);
    a_ -= o.a_;
    b_ -= o.b_;
    if (sgn(b_) == 0)
        d_ = 0;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o)
{
    adopt(o);
    Rational na = a_ * o.a_ + b_ * o.b_ * d_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    if (sgn(b_) == 0)
        d_ = 0;
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o)
{
    if (is_zero(o))
        throw std::domain_error("QuadExt: division by zero");
    Rational n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
}

QuadExt QuadExt::operator-() const
{
    QuadExt r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

bool operator==(const QuadExt& x, const QuadExt& y)
{
    return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.d_ == y.d_);
}

QuadExt parse_quadext(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    // "(x)/c"
    if (! s.empty() && s[0] == '(') {
        auto end = s.rfind(")/");
        if (end == std::string::npos)
            throw std::invalid_argument("malformed quadratic value: " + std::string(text));
        QuadExt x = parse_quadext(s.substr(1, end - 1));
        Rational c = parse_rational(s.substr(end + 2));
        if (sgn(c) == 0)
            throw std::invalid_argument("division by zero in: " + std::string(text));
        return QuadExt(x.a() / c, x.b() / c, x.d());
    }
    auto pos = s.find("sqrt(");
    if (pos == std::string::npos)
        return QuadExt(parse_rational(s));

    auto close = s.find(')', pos);
    if (close == std::string::npos)
        throw std::invalid_argument("malformed quadratic value: " + std::string(text));
    if (close + 1 != s.size()) {
        // rational part written after the root: "b*sqrt(d)+a"
        std::string tail = s.substr(close + 1);
        if (tail[0] != '+' && tail[0] != '-')
            throw std::invalid_argument("malformed quadratic value: " + std::string(text));
        std::string root = s.substr(0, close + 1);
        if (root[0] != '-' && root[0] != '+')
            root = "+" + root;
        return parse_quadext(tail + root);
    }
    long d = std::stol(s.substr(pos + 5, close - pos - 5));

    // coefficient of sqrt: text between the last top-level sign before pos and pos
    std::string head = s.substr(0, pos);
    if (! head.empty() && head.back() == '*')
        head.pop_back();
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;)
        if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/') {
            split = i;
            break;
        }
    std::string a_txt, b_txt;
    if (split == std::string::npos)
        b_txt = head;
    else {
        a_txt = head.substr(0, split);
        b_txt = head.substr(split);
    }
    Rational b;
    if (b_txt.empty() || b_txt == "+")
        b = 1;
    else if (b_txt == "-")
        b = -1;
    else
        b = parse_rational(b_txt);
    Rational a = a_txt.empty() ? Rational(0) : parse_rational(a_txt);
    return QuadExt(a, b, d);
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

} // namespace flagalg
