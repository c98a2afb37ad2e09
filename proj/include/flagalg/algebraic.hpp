#pragma once

#include <flagalg/poly.hpp>
#include <flagalg/quadext.hpp>
#include <flagalg/rational.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace flagalg {

struct RationalInterval
{
    Rational lo, hi;
};

std::vector<UPoly<Rational>> sturm_sequence(const UPoly<Rational>& p);

/// Number of distinct real roots of the (square-free) first element of `seq` in (a, b].
int sturm_count(const std::vector<UPoly<Rational>>& seq, const Rational& a, const Rational& b);

/// Isolating intervals for the distinct real roots of p in the closed box [lo, hi].
/// An interval with lo == hi is an exact rational root; otherwise the root lies in
/// the open interval and is the only root of p there.
std::vector<RationalInterval> sturm_isolate(const UPoly<Rational>& p, const Rational& lo, const Rational& hi);

/// A real root of an integer polynomial, identified by an isolating interval.
class AlgebraicReal
{
    public:
        AlgebraicReal() : AlgebraicReal(Rational(0)) {}
        AlgebraicReal(const Rational& r);

        /// The unique root of p in the open interval (lo, hi); throws unless there is exactly one.
        static AlgebraicReal from_interval(const UPoly<Rational>& p, const Rational& lo, const Rational& hi);
        static std::vector<AlgebraicReal> real_roots(const UPoly<Rational>& p, const Rational& lo, const Rational& hi);
        static AlgebraicReal from_quadext(const QuadExt& q);

        const UPoly<Rational>& minpoly() const { return poly_; }
        const Rational& lo() const { return lo_; }
        const Rational& hi() const { return hi_; }
        bool is_rational() const { return lo_ == hi_; }

        /// Halves the isolating interval `bits` times (no-op for exact rationals).
        void refine(int bits);
        void refine_to_width(const Rational& width);

        double to_double() const;
        /// Decimal expansion rounded to `digits` places after the point.
        std::string decimal(int digits) const;

        int compare(const Rational& r) const;
        int compare(const QuadExt& q) const;
        int compare(const AlgebraicReal& o) const;
        int sign() const { return compare(Rational(0)); }
        bool equals(const Rational& r) const { return compare(r) == 0; }
        bool equals(const QuadExt& q) const;
        bool equals(const AlgebraicReal& o) const;

    private:
        void bisect_once();

        UPoly<Rational> poly_;
        Rational lo_, hi_;
};

/// Q[x]/(m) together with a real root of m selecting the embedding into R.
struct NumberField
{
    UPoly<Rational> modulus; // monic
    AlgebraicReal generator;
};

class NumberFieldElem
{
    public:
        NumberFieldElem() = default;
        NumberFieldElem(std::shared_ptr<const NumberField> field, UPoly<Rational> rep);
        NumberFieldElem(std::shared_ptr<const NumberField> field, const Rational& c);

        static std::shared_ptr<const NumberField> make_field(const AlgebraicReal& generator);
        /// The generator itself as a field element.
        static NumberFieldElem generator(const AlgebraicReal& alpha);

        const std::shared_ptr<const NumberField>& field() const { return field_; }
        const UPoly<Rational>& rep() const { return rep_; }

        NumberFieldElem& operator+=(const NumberFieldElem& o);
        NumberFieldElem& operator-=(const NumberFieldElem& o);
        NumberFieldElem& operator*=(const NumberFieldElem& o);
        friend NumberFieldElem operator+(NumberFieldElem a, const NumberFieldElem& b) { return a += b; }
        friend NumberFieldElem operator-(NumberFieldElem a, const NumberFieldElem& b) { return a -= b; }
        friend NumberFieldElem operator*(NumberFieldElem a, const NumberFieldElem& b) { return a *= b; }
        NumberFieldElem operator-() const;
        /// Division by a nonzero rational only.
        NumberFieldElem divided(const Rational& r) const;

        AlgebraicReal to_algebraic() const;
        int sign() const;
        bool is_zero() const;
        double to_double() const;
        std::string to_string() const;

    private:
        void check_field(const NumberFieldElem& o) const;

        std::shared_ptr<const NumberField> field_;
        UPoly<Rational> rep_;
};

inline NumberFieldElem lift_like(const NumberFieldElem& model, const Rational& c) { return NumberFieldElem(model.field(), c); }
inline int sign(const NumberFieldElem& x) { return x.sign(); }
inline bool is_zero(const NumberFieldElem& x) { return x.is_zero(); }
inline double to_double(const NumberFieldElem& x) { return x.to_double(); }
inline std::string to_string(const NumberFieldElem& x) { return x.to_string(); }

/// Characteristic polynomial det(xI - M) of a square rational matrix given row-major.
UPoly<Rational> characteristic_polynomial(const std::vector<std::vector<Rational>>& m);

/// An exact real value: rational, quadratic irrational, or element of a number field.
using ExactValue = std::variant<Rational, QuadExt, NumberFieldElem>;

double to_double(const ExactValue& v);
std::string to_string(const ExactValue& v);
int sign(const ExactValue& v);
AlgebraicReal to_algebraic(const ExactValue& v);
/// Exact equality of two values, going through AlgebraicReal when the fields differ.
bool exact_equal(const ExactValue& x, const ExactValue& y);
int exact_compare(const ExactValue& x, const ExactValue& y);

/// Evaluates a rational polynomial at exact values; all irrational entries must share one field.
ExactValue evaluate_exact(const Poly<Rational>& p, const std::vector<ExactValue>& point);

/// As evaluate_exact, returned as an AlgebraicReal (annihilating polynomial + isolating interval).
AlgebraicReal eval_at_algebraic(const Poly<Rational>& p, const std::vector<ExactValue>& point);

} // namespace flagalg
