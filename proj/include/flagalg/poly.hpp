#pragma once

#include <flagalg/quadext.hpp>
#include <flagalg/rational.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flagalg {

// Builds the constant c in the same ring as `model` (needed for number-field
// elements, which carry their field).
inline Rational lift_like(const Rational&, const Rational& c) { return c; }
inline QuadExt lift_like(const QuadExt&, const Rational& c) { return QuadExt(c); }
inline QuadExt lift_like(const QuadExt&, const QuadExt& c) { return c; }

/// Dense univariate polynomial, coefficients from degree 0 upwards, trimmed.
template <class T>
class UPoly
{
    public:
        UPoly() = default;
        explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
        UPoly(const T& constant) : c_{constant} { trim(); }

        static UPoly monomial(int deg, const T& coef = T(1))
        {
            std::vector<T> c(deg + 1, T(0));
            c[deg] = coef;
            return UPoly(std::move(c));
        }

        const std::vector<T>& coeffs() const { return c_; }
        int degree() const { return static_cast<int>(c_.size()) - 1; }
        bool is_zero() const { return c_.empty(); }
        T coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : T(0); }
        const T& leading() const { return c_.back(); }

        UPoly& operator+=(const UPoly& o)
        {
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), T(0));
            for (size_t i = 0; i < o.c_.size(); ++i)
                c_[i] += o.c_[i];
            trim();
            return *this;
        }
        UPoly& operator-=(const UPoly& o)
        {
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), T(0));
            for (size_t i = 0; i < o.c_.size(); ++i)
                c_[i] -= o.c_[i];
            trim();
            return *this;
        }
        friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
        friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
        UPoly operator-() const
        {
            UPoly r = *this;
            for (auto& x : r.c_)
                x = -x;
            return r;
        }
        friend UPoly operator*(const UPoly& a, const UPoly& b)
        {
            if (a.is_zero() || b.is_zero())
                return UPoly();
            std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
            for (size_t i = 0; i < a.c_.size(); ++i)
                for (size_t j = 0; j < b.c_.size(); ++j)
                    c[i + j] += a.c_[i] * b.c_[j];
            return UPoly(std::move(c));
        }
        UPoly scaled(const T& s) const
        {
            UPoly r = *this;
            for (auto& x : r.c_)
                x *= s;
            r.trim();
            return r;
        }

        friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
        friend bool operator!=(const UPoly& a, const UPoly& b) { return ! (a == b); }

        /// Quotient and remainder (T must be a field).
        std::pair<UPoly, UPoly> divmod(const UPoly& d) const
        {
            if (d.is_zero())
                throw std::domain_error("UPoly: division by zero polynomial");
            UPoly q, r = *this;
            if (r.degree() < d.degree())
                return {q, r};
            std::vector<T> qc(r.degree() - d.degree() + 1, T(0));
            while (! r.is_zero() && r.degree() >= d.degree()) {
                int shift = r.degree() - d.degree();
                T f = r.leading() / d.leading();
                qc[shift] = f;
                for (int i = 0; i <= d.degree(); ++i)
                    r.c_[i + shift] -= f * d.c_[i];
                r.trim();
            }
            q = UPoly(std::move(qc));
            return {q, r};
        }

        UPoly derivative() const
        {
            if (c_.size() <= 1)
                return UPoly();
            std::vector<T> c(c_.size() - 1);
            for (size_t i = 1; i < c_.size(); ++i)
                c[i - 1] = c_[i] * T(static_cast<long>(i));
            return UPoly(std::move(c));
        }

        UPoly monic() const { return is_zero() ? *this : scaled(T(1) / leading()); }

        template <class U>
        U evaluate(const U& x) const
        {
            U r = lift_like(x, Rational(0));
            for (size_t i = c_.size(); i-- > 0;)
                r = r * x + lift_like(x, c_[i]);
            return r;
        }

        UPoly compose(const UPoly& inner) const
        {
            UPoly r;
            for (size_t i = c_.size(); i-- > 0;)
                r = r * inner + UPoly(c_[i]);
            return r;
        }

        std::string to_string(const std::string& var = "x") const
        {
            if (is_zero())
                return "0";
            std::ostringstream os;
            bool first = true;
            for (size_t i = c_.size(); i-- > 0;) {
                if (flagalg::is_zero(c_[i]))
                    continue;
                if (! first)
                    os << " + ";
                first = false;
                os << "(" << flagalg::to_string(c_[i]) << ")";
                if (i >= 1)
                    os << "*" << var;
                if (i >= 2)
                    os << "^" << i;
            }
            return os.str();
        }

    private:
        void trim()
        {
            while (! c_.empty() && flagalg::is_zero(c_.back()))
                c_.pop_back();
        }

        std::vector<T> c_;
};

template <class T>
UPoly<T> gcd(UPoly<T> a, UPoly<T> b)
{
    while (! b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class T>
UPoly<T> square_free_part(const UPoly<T>& p)
{
    if (p.degree() <= 0)
        return p;
    auto g = gcd(p, p.derivative());
    return p.divmod(g).first;
}

/// Scales a rational polynomial to a primitive integer polynomial with positive leading coefficient.
UPoly<Rational> primitive_integer(const UPoly<Rational>& p);

/// Sparse multivariate polynomial over named variables.
template <class T>
class Poly
{
    public:
        using Exponents = std::vector<int>;
        using Terms = std::map<Exponents, T>;

        Poly() = default;
        explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

        static Poly constant(std::vector<std::string> vars, const T& c)
        {
            Poly p(std::move(vars));
            p.add_term(Exponents(p.vars_.size(), 0), c);
            return p;
        }
        static Poly variable(std::vector<std::string> vars, int i)
        {
            Poly p(std::move(vars));
            Exponents e(p.vars_.size(), 0);
            e.at(i) = 1;
            p.add_term(e, T(1));
            return p;
        }

        const std::vector<std::string>& variables() const { return vars_; }
        int nvars() const { return static_cast<int>(vars_.size()); }
        const Terms& terms() const { return terms_; }
        bool is_zero() const { return terms_.empty(); }

        int total_degree() const
        {
            int d = -1;
            for (auto& [e, c] : terms_) {
                int s = 0;
                for (int x : e)
                    s += x;
                d = std::max(d, s);
            }
            return d;
        }

        T coefficient(const Exponents& e) const
        {
            auto it = terms_.find(e);
            return it == terms_.end() ? T(0) : it->second;
        }

        void add_term(const Exponents& e, const T& c)
        {
            if (static_cast<int>(e.size()) != nvars())
                throw std::invalid_argument("Poly: exponent vector has wrong length");
            if (flagalg::is_zero(c))
                return;
            auto [it, inserted] = terms_.emplace(e, c);
            if (! inserted) {
                it->second += c;
                if (flagalg::is_zero(it->second))
                    terms_.erase(it);
            }
        }

        Poly& operator+=(const Poly& o)
        {
            check_vars(o);
            for (auto& [e, c] : o.terms_)
                add_term(e, c);
            return *this;
        }
        Poly& operator-=(const Poly& o)
        {
            check_vars(o);
            for (auto& [e, c] : o.terms_)
                add_term(e, -c);
            return *this;
        }
        friend Poly operator+(Poly a, const Poly& b) { return a += b; }
        friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
        Poly operator-() const
        {
            Poly r(vars_);
            for (auto& [e, c] : terms_)
                r.terms_.emplace(e, -c);
            return r;
        }
        friend Poly operator*(const Poly& a, const Poly& b)
        {
            a.check_vars(b);
            Poly r(a.vars_);
            for (auto& [ea, ca] : a.terms_)
                for (auto& [eb, cb] : b.terms_) {
                    Exponents e(ea.size());
                    for (size_t i = 0; i < e.size(); ++i)
                        e[i] = ea[i] + eb[i];
                    r.add_term(e, ca * cb);
                }
            return r;
        }
        Poly scaled(const T& s) const
        {
            Poly r(vars_);
            for (auto& [e, c] : terms_)
                r.add_term(e, c * s);
            return r;
        }
        Poly pow(int k) const
        {
            Poly r = constant(vars_, T(1));
            for (int i = 0; i < k; ++i)
                r = r * *this;
            return r;
        }

        friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }
        friend bool operator!=(const Poly& a, const Poly& b) { return ! (a == b); }

        Poly derivative(int var) const
        {
            Poly r(vars_);
            for (auto& [e, c] : terms_)
                if (e.at(var) > 0) {
                    Exponents f = e;
                    --f[var];
                    r.add_term(f, c * T(static_cast<long>(e[var])));
                }
            return r;
        }

        /// Replaces variable `var` by `value` (which must live over the same variable list).
        Poly substitute(int var, const Poly& value) const
        {
            check_vars(value);
            int maxdeg = 0;
            for (auto& [e, c] : terms_)
                maxdeg = std::max(maxdeg, e.at(var));
            std::vector<Poly> powers{constant(vars_, T(1))};
            for (int i = 1; i <= maxdeg; ++i)
                powers.push_back(powers.back() * value);
            Poly r(vars_);
            for (auto& [e, c] : terms_) {
                Exponents f = e;
                f[var] = 0;
                Poly mono(vars_);
                mono.add_term(f, c);
                r += mono * powers[e[var]];
            }
            return r;
        }

        template <class U>
        U evaluate(const std::vector<U>& point, const U& model) const
        {
            if (static_cast<int>(point.size()) != nvars())
                throw std::invalid_argument("Poly::evaluate: point has wrong dimension");
            std::vector<std::vector<U>> powers(point.size());
            std::vector<int> maxdeg(point.size(), 0);
            for (auto& [e, c] : terms_)
                for (size_t i = 0; i < e.size(); ++i)
                    maxdeg[i] = std::max(maxdeg[i], e[i]);
            for (size_t i = 0; i < point.size(); ++i) {
                powers[i].push_back(lift_like(model, Rational(1)));
                for (int k = 1; k <= maxdeg[i]; ++k)
                    powers[i].push_back(powers[i].back() * point[i]);
            }
            U r = lift_like(model, Rational(0));
            for (auto& [e, c] : terms_) {
                U t = lift_like(model, c);
                for (size_t i = 0; i < e.size(); ++i)
                    if (e[i] > 0)
                        t = t * powers[i][e[i]];
                r = r + t;
            }
            return r;
        }

        template <class U>
        U evaluate(const std::vector<U>& point) const
        {
            if (point.empty())
                return U(coefficient({}));
            return evaluate(point, point.front());
        }

        /// Univariate view in variable `var`; all other exponents must be zero.
        UPoly<T> to_univariate(int var) const
        {
            std::vector<T> c;
            for (auto& [e, coef] : terms_) {
                for (int i = 0; i < nvars(); ++i)
                    if (i != var && e[i] != 0)
                        throw std::invalid_argument("Poly::to_univariate: other variables present");
                if (static_cast<int>(c.size()) <= e[var])
                    c.resize(e[var] + 1, T(0));
                c[e[var]] += coef;
            }
            return UPoly<T>(std::move(c));
        }

        static Poly from_univariate(std::vector<std::string> vars, int var, const UPoly<T>& u)
        {
            Poly p(std::move(vars));
            for (int i = 0; i <= u.degree(); ++i) {
                Exponents e(p.vars_.size(), 0);
                e[var] = i;
                p.add_term(e, u.coeffs()[i]);
            }
            return p;
        }

        std::string to_string() const
        {
            if (is_zero())
                return "0";
            std::ostringstream os;
            bool first = true;
            for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
                if (! first)
                    os << " + ";
                first = false;
                os << "(" << flagalg::to_string(it->second) << ")";
                for (size_t i = 0; i < it->first.size(); ++i)
                    if (it->first[i] > 0) {
                        os << "*" << vars_[i];
                        if (it->first[i] > 1)
                            os << "^" << it->first[i];
                    }
            }
            return os.str();
        }

    private:
        void check_vars(const Poly& o) const
        {
            if (vars_ != o.vars_)
                throw std::invalid_argument("Poly: variable lists differ");
        }

        std::vector<std::string> vars_;
        Terms terms_;
};

/// If p = c * (product of factors) for a scalar c, returns c; otherwise nullopt.
/// Exact equality corresponds to a returned value of 1.
template <class T>
std::optional<T> factor_verify(const Poly<T>& p, const std::vector<Poly<T>>& factors)
{
    Poly<T> prod = Poly<T>::constant(p.variables(), T(1));
    for (auto& f : factors)
        prod = prod * f;
    if (prod.is_zero())
        return p.is_zero() ? std::optional<T>(T(0)) : std::nullopt;
    auto& [e0, c0] = *prod.terms().begin();
    T c = p.coefficient(e0) / c0;
    if (prod.scaled(c) == p)
        return c;
    return std::nullopt;
}

} // namespace flagalg
