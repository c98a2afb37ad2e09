#include <flagalg/algebraic.hpp>

#include <sstream>
#include <stdexcept>

namespace flagalg {

UPoly<Rational> primitive_integer(const UPoly<Rational>& p)
{
    if (p.is_zero())
        return p;
    Integer l = 1, g = 0;
    for (auto& c : p.coeffs())
        if (sgn(c) != 0)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> out;
    for (auto& c : p.coeffs()) {
        Rational s = c * l;
        out.push_back(s);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
    if (sgn(p.leading()) < 0)
        g = -g;
    for (auto& c : out)
        c /= g;
    return UPoly<Rational>(std::move(out));
}

namespace {

// Scales by a positive constant to an integer primitive polynomial (keeps signs).
UPoly<Rational> positive_primitive(const UPoly<Rational>& p)
{
    auto q = primitive_integer(p);
    if (! q.is_zero() && sgn(q.leading()) != sgn(p.leading()))
        q = -q;
    return q;
}

int sign_at(const UPoly<Rational>& p, const Rational& x) { return sgn(p.evaluate(x)); }

int variations(const std::vector<UPoly<Rational>>& seq, const Rational& x)
{
    int count = 0, last = 0;
    for (auto& p : seq) {
        int s = sign_at(p, x);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

// Roots in the open interval (a, b) of the first element of seq.
int open_count(const std::vector<UPoly<Rational>>& seq, const Rational& a, const Rational& b)
{
    if (a >= b)
        return 0;
    return sturm_count(seq, a, b) - (sign_at(seq.front(), b) == 0 ? 1 : 0);
}

RationalInterval interval_eval(const UPoly<Rational>& p, const Rational& lo, const Rational& hi)
{
    RationalInterval r{0, 0};
    for (size_t i = p.coeffs().size(); i-- > 0;) {
        Rational c1 = r.lo * lo, c2 = r.lo * hi, c3 = r.hi * lo, c4 = r.hi * hi;
        Rational mn = c1, mx = c1;
        for (auto* c : {&c2, &c3, &c4}) {
            if (*c < mn)
                mn = *c;
            if (*c > mx)
                mx = *c;
        }
        r.lo = mn + p.coeffs()[i];
        r.hi = mx + p.coeffs()[i];
    }
    return r;
}

Integer round_half_up(const Rational& x)
{
    Rational y = x + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return f;
}

} // namespace

std::vector<UPoly<Rational>> sturm_sequence(const UPoly<Rational>& p)
{
    std::vector<UPoly<Rational>> seq;
    if (p.is_zero())
        throw std::invalid_argument("sturm_sequence: zero polynomial");
    seq.push_back(positive_primitive(p));
    auto d = p.derivative();
    if (d.is_zero())
        return seq;
    seq.push_back(positive_primitive(d));
    while (true) {
        auto r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero())
            break;
        seq.push_back(positive_primitive(-r));
    }
    return seq;
}

int sturm_count(const std::vector<UPoly<Rational>>& seq, const Rational& a, const Rational& b)
{
    if (a >= b)
        return 0;
    return variations(seq, a) - variations(seq, b);
}

std::vector<RationalInterval> sturm_isolate(const UPoly<Rational>& p, const Rational& lo, const Rational& hi)
{
    if (p.is_zero())
        throw std::invalid_argument("sturm_isolate: zero polynomial");
    std::vector<RationalInterval> out;
    auto q = positive_primitive(square_free_part(p));
    if (q.degree() < 1 || lo > hi)
        return out;
    auto seq = sturm_sequence(q);
    if (sign_at(q, lo) == 0)
        out.push_back({lo, lo});

    auto rec = [&](auto&& self, const Rational& a, const Rational& b, int cnt) -> void {
        if (cnt == 0)
            return;
        if (cnt == 1) {
            if (sign_at(q, b) == 0)
                out.push_back({b, b});
            else
                out.push_back({a, b});
            return;
        }
        Rational mid = (a + b) / 2;
        int left = sturm_count(seq, a, mid);
        self(self, a, mid, left);
        self(self, mid, b, cnt - left);
    };
    rec(rec, lo, hi, sturm_count(seq, lo, hi));
    return out;
}

AlgebraicReal::AlgebraicReal(const Rational& r) :
    poly_(std::vector<Rational>{Rational(-r.get_num()), Rational(r.get_den())}), lo_(r), hi_(r)
{
}

AlgebraicReal AlgebraicReal::from_interval(const UPoly<Rational>& p, const Rational& lo, const Rational& hi)
{
    auto q = positive_primitive(square_free_part(p));
    if (q.degree() < 1)
        throw std::invalid_argument("AlgebraicReal: polynomial has no roots");
    if (lo == hi) {
        if (sign_at(q, lo) != 0)
            throw std::invalid_argument("AlgebraicReal: point is not a root");
        return AlgebraicReal(lo);
    }
    auto seq = sturm_sequence(q);
    if (open_count(seq, lo, hi) != 1)
        throw std::invalid_argument("AlgebraicReal: interval does not isolate a single root");
    AlgebraicReal a;
    a.poly_ = q;
    a.lo_ = lo;
    a.hi_ = hi;
    return a;
}

std::vector<AlgebraicReal> AlgebraicReal::real_roots(const UPoly<Rational>& p, const Rational& lo, const Rational& hi)
{
    std::vector<AlgebraicReal> out;
    auto q = positive_primitive(square_free_part(p));
    for (auto& iv : sturm_isolate(q, lo, hi)) {
        if (iv.lo == iv.hi)
            out.emplace_back(iv.lo);
        else {
            AlgebraicReal a;
            a.poly_ = q;
            a.lo_ = iv.lo;
            a.hi_ = iv.hi;
            out.push_back(a);
        }
    }
    return out;
}

AlgebraicReal AlgebraicReal::from_quadext(const QuadExt& q)
{
    if (q.is_rational())
        return AlgebraicReal(q.a());
    UPoly<Rational> p(std::vector<Rational>{q.norm(), Rational(-2 * q.a()), Rational(1)});
    for (unsigned long k = 8;; k += 8) {
        Integer scale, s;
        mpz_ui_pow_ui(scale.get_mpz_t(), 4, k);
        Integer dd = scale * q.d();
        mpz_sqrt(s.get_mpz_t(), dd.get_mpz_t());
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
        Rational slo(s, den), shi(Integer(s + 1), den);
        slo.canonicalize();
        shi.canonicalize();
        Rational x1 = q.a() + q.b() * slo, x2 = q.a() + q.b() * shi;
        Rational lo = x1 < x2 ? x1 : x2, hi = x1 < x2 ? x2 : x1;
        auto seq = sturm_sequence(p);
        if (open_count(seq, lo, hi) == 1)
            return from_interval(p, lo, hi);
    }
}

void AlgebraicReal::bisect_once()
{
    if (lo_ == hi_)
        return;
    Rational mid = (lo_ + hi_) / 2;
    int sm = sign_at(poly_, mid);
    if (sm == 0) {
        lo_ = hi_ = mid;
        return;
    }
    int sl = sign_at(poly_, lo_);
    int sh = sign_at(poly_, hi_);
    if (sl != 0) {
        if (sl != sm)
            hi_ = mid;
        else
            lo_ = mid;
    }
    else if (sh != 0) {
        if (sh != sm)
            lo_ = mid;
        else
            hi_ = mid;
    }
    else {
        auto seq = sturm_sequence(poly_);
        if (open_count(seq, lo_, mid) == 1)
            hi_ = mid;
        else
            lo_ = mid;
    }
}

void AlgebraicReal::refine(int bits)
{
    for (int i = 0; i < bits && lo_ != hi_; ++i)
        bisect_once();
}

void AlgebraicReal::refine_to_width(const Rational& width)
{
    while (lo_ != hi_ && hi_ - lo_ > width)
        bisect_once();
}

double AlgebraicReal::to_double() const
{
    if (is_rational())
        return lo_.get_d();
    AlgebraicReal c = *this;
    for (int i = 0; i < 200 && c.lo_ != c.hi_; ++i) {
        Rational w = c.hi_ - c.lo_;
        Rational mag = abs(c.lo_) + abs(c.hi_);
        Integer big = Integer(1) << 60;
        if (w * big <= mag)
            break;
        c.bisect_once();
    }
    Rational mid = (c.lo_ + c.hi_) / 2;
    return mid.get_d();
}

std::string AlgebraicReal::decimal(int digits) const
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    AlgebraicReal c = *this;
    Integer a;
    for (int guard = 0;; ++guard) {
        a = round_half_up(c.lo_ * scale);
        Integer b = round_half_up(c.hi_ * scale);
        if (a == b)
            break;
        if (guard > 4 * digits + 400)
            throw std::runtime_error("AlgebraicReal::decimal: value sits on a rounding boundary");
        c.bisect_once();
    }
    bool neg = a < 0;
    Integer m = neg ? Integer(-a) : a;
    std::string s = m.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits)
            s = std::string(digits + 1 - s.size(), '0') + s;
        s.insert(s.size() - digits, ".");
    }
    return (neg ? "-" : "") + s;
}

int AlgebraicReal::compare(const Rational& r) const
{
    if (is_rational())
        return cmp(lo_, r) > 0 ? 1 : (cmp(lo_, r) < 0 ? -1 : 0);
    if (r <= lo_)
        return 1;
    if (r >= hi_)
        return -1;
    int sr = sign_at(poly_, r);
    if (sr == 0)
        return 0;
    int sl = sign_at(poly_, lo_);
    int sh = sign_at(poly_, hi_);
    bool root_below;
    if (sl != 0)
        root_below = sl != sr;
    else if (sh != 0)
        root_below = sh == sr;
    else
        root_below = open_count(sturm_sequence(poly_), lo_, r) == 1;
    return root_below ? -1 : 1;
}

bool AlgebraicReal::equals(const QuadExt& q) const
{
    if (q.is_rational())
        return compare(q.a()) == 0;
    if (is_rational())
        return false;
    QuadExt v = poly_.evaluate(q);
    if (! flagalg::is_zero(v))
        return false;
    return QuadExt(lo_) < q && q < QuadExt(hi_);
}

int AlgebraicReal::compare(const QuadExt& q) const
{
    if (q.is_rational())
        return compare(q.a());
    if (equals(q))
        return 0;
    AlgebraicReal c = *this;
    while (true) {
        if (q <= QuadExt(c.lo_) && ! (c.is_rational() && q == QuadExt(c.lo_)))
            return 1;
        if (q >= QuadExt(c.hi_))
            return -1;
        c.bisect_once();
    }
}

bool AlgebraicReal::equals(const AlgebraicReal& o) const
{
    if (is_rational())
        return o.compare(lo_) == 0;
    if (o.is_rational())
        return compare(o.lo_) == 0;
    auto g = positive_primitive(gcd(poly_, o.poly_));
    if (g.degree() < 1)
        return false;
    auto gseq = sturm_sequence(g);
    AlgebraicReal x = *this, y = o;
    while (true) {
        if (x.is_rational() || y.is_rational())
            return x.equals(y);
        if (x.hi_ <= y.lo_ || y.hi_ <= x.lo_)
            return false;
        if (open_count(gseq, x.lo_, x.hi_) == 0 || open_count(gseq, y.lo_, y.hi_) == 0)
            return false;
        Rational ulo = x.lo_ < y.lo_ ? x.lo_ : y.lo_;
        Rational uhi = x.hi_ > y.hi_ ? x.hi_ : y.hi_;
        if (open_count(gseq, ulo, uhi) == 1)
            return true;
        x.bisect_once();
        y.bisect_once();
    }
}

int AlgebraicReal::compare(const AlgebraicReal& o) const
{
    if (o.is_rational())
        return compare(o.lo_);
    if (is_rational())
        return -o.compare(lo_);
    if (equals(o))
        return 0;
    AlgebraicReal x = *this, y = o;
    while (true) {
        if (x.is_rational() || y.is_rational())
            return x.is_rational() ? -y.compare(x.lo_) : x.compare(y.lo_);
        if (x.hi_ <= y.lo_)
            return -1;
        if (y.hi_ <= x.lo_)
            return 1;
        x.bisect_once();
        y.bisect_once();
    }
}

UPoly<Rational> characteristic_polynomial(const std::vector<std::vector<Rational>>& a)
{
    size_t n = a.size();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> am(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (sgn(a[i][l]) == 0)
                    continue;
                for (size_t j = 0; j < n; ++j)
                    am[i][j] += a[i][l] * m[l][j];
            }
        for (size_t i = 0; i < n; ++i)
            am[i][i] += c[n - k + 1];
        m = am;
        Rational tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l)
                tr += a[i][l] * m[l][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    return UPoly<Rational>(std::move(c));
}

NumberFieldElem::NumberFieldElem(std::shared_ptr<const NumberField> field, UPoly<Rational> rep) :
    field_(std::move(field)), rep_(std::move(rep))
{
    if (! field_)
        throw std::invalid_argument("NumberFieldElem: null field");
    rep_ = rep_.divmod(field_->modulus).second;
}

NumberFieldElem::NumberFieldElem(std::shared_ptr<const NumberField> field, const Rational& c) :
    NumberFieldElem(std::move(field), UPoly<Rational>(c))
{
}

std::shared_ptr<const NumberField> NumberFieldElem::make_field(const AlgebraicReal& generator)
{
    auto f = std::make_shared<NumberField>();
    f->modulus = generator.minpoly().monic();
    f->generator = generator;
    return f;
}

NumberFieldElem NumberFieldElem::generator(const AlgebraicReal& alpha)
{
    return NumberFieldElem(make_field(alpha), UPoly<Rational>(std::vector<Rational>{Rational(0), Rational(1)}));
}

void NumberFieldElem::check_field(const NumberFieldElem& o) const
{
    if (field_ != o.field_ && ! (field_->modulus == o.field_->modulus && field_->generator.equals(o.field_->generator)))
        throw std::domain_error("NumberFieldElem: operands live in different fields");
}

NumberFieldElem& NumberFieldElem::operator+=(const NumberFieldElem& o)
{
    check_field(o);
    rep_ += o.rep_;
    return *this;
}

NumberFieldElem& NumberFieldElem::operator-=(const NumberFieldElem& o)
{
    check_field(o);
    rep_ -= o.rep_;
    return *this;
}

NumberFieldElem& NumberFieldElem::operator*=(const NumberFieldElem& o)
{
    check_field(o);
    rep_ = (rep_ * o.rep_).divmod(field_->modulus).second;
    return *this;
}

NumberFieldElem NumberFieldElem::operator-() const { return NumberFieldElem(field_, -rep_); }

NumberFieldElem NumberFieldElem::divided(const Rational& r) const
{
    if (sgn(r) == 0)
        throw std::domain_error("NumberFieldElem: division by zero");
    return NumberFieldElem(field_, rep_.scaled(Rational(1 / r)));
}

AlgebraicReal NumberFieldElem::to_algebraic() const
{
    const auto& alpha = field_->generator;
    if (rep_.degree() <= 0)
        return AlgebraicReal(rep_.coeff(0));
    if (alpha.is_rational())
        return AlgebraicReal(rep_.evaluate(alpha.lo()));

    int d = field_->modulus.degree();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d, Rational(0)));
    UPoly<Rational> col = rep_;
    UPoly<Rational> x(std::vector<Rational>{Rational(0), Rational(1)});
    for (int k = 0; k < d; ++k) {
        for (int i = 0; i < d; ++i)
            m[i][k] = col.coeff(i);
        col = (col * x).divmod(field_->modulus).second;
    }
    auto cp = positive_primitive(square_free_part(characteristic_polynomial(m)));
    auto seq = sturm_sequence(cp);
    AlgebraicReal a = alpha;
    while (true) {
        auto iv = a.is_rational() ? RationalInterval{rep_.evaluate(a.lo()), rep_.evaluate(a.lo())}
                                  : interval_eval(rep_, a.lo(), a.hi());
        if (iv.lo == iv.hi)
            return AlgebraicReal(iv.lo);
        bool at_lo = sign_at(cp, iv.lo) == 0, at_hi = sign_at(cp, iv.hi) == 0;
        int count = sturm_count(seq, iv.lo, iv.hi) + (at_lo ? 1 : 0);
        if (count == 1) {
            if (at_lo)
                return AlgebraicReal(iv.lo);
            if (at_hi)
                return AlgebraicReal(iv.hi);
            return AlgebraicReal::from_interval(cp, iv.lo, iv.hi);
        }
        a.refine(1);
    }
}

int NumberFieldElem::sign() const { return to_algebraic().sign(); }

bool NumberFieldElem::is_zero() const { return rep_.is_zero() || to_algebraic().equals(Rational(0)); }

double NumberFieldElem::to_double() const { return to_algebraic().to_double(); }

std::string NumberFieldElem::to_string() const
{
    std::ostringstream os;
    os << rep_.to_string("a") << " where a is the root of " << field_->modulus.to_string("x") << " in ("
       << flagalg::to_string(field_->generator.lo()) << ", " << flagalg::to_string(field_->generator.hi()) << ")";
    return os.str();
}

double to_double(const ExactValue& v)
{
    return std::visit([](const auto& x) { return flagalg::to_double(x); }, v);
}

std::string to_string(const ExactValue& v)
{
    return std::visit([](const auto& x) { return flagalg::to_string(x); }, v);
}

int sign(const ExactValue& v)
{
    return std::visit([](const auto& x) { return flagalg::sign(x); }, v);
}

AlgebraicReal to_algebraic(const ExactValue& v)
{
    if (auto r = std::get_if<Rational>(&v))
        return AlgebraicReal(*r);
    if (auto q = std::get_if<QuadExt>(&v))
        return AlgebraicReal::from_quadext(*q);
    return std::get<NumberFieldElem>(v).to_algebraic();
}

namespace {

bool same_number_field(const NumberFieldElem& a, const NumberFieldElem& b)
{
    return a.field() == b.field() || (a.field()->modulus == b.field()->modulus && a.field()->generator.equals(b.field()->generator));
}

} // namespace

bool exact_equal(const ExactValue& x, const ExactValue& y) { return exact_compare(x, y) == 0; }

int exact_compare(const ExactValue& x, const ExactValue& y)
{
    auto qx = std::get_if<QuadExt>(&x);
    auto qy = std::get_if<QuadExt>(&y);
    auto rx = std::get_if<Rational>(&x);
    auto ry = std::get_if<Rational>(&y);
    if ((rx || qx) && (ry || qy)) {
        QuadExt a = rx ? QuadExt(*rx) : *qx, b = ry ? QuadExt(*ry) : *qy;
        if (a.is_rational() || b.is_rational() || a.d() == b.d())
            return (a - b).sign();
        return to_algebraic(x).compare(to_algebraic(y));
    }
    auto nx = std::get_if<NumberFieldElem>(&x);
    auto ny = std::get_if<NumberFieldElem>(&y);
    if (nx && ny && same_number_field(*nx, *ny))
        return (*nx - *ny).sign();
    if (nx && ry)
        return (*nx - NumberFieldElem(nx->field(), *ry)).sign();
    if (ny && rx)
        return (NumberFieldElem(ny->field(), *rx) - *ny).sign();
    if (nx && qy)
        return to_algebraic(x).compare(*qy);
    if (ny && qx)
        return -to_algebraic(y).compare(*qx);
    return to_algebraic(x).compare(to_algebraic(y));
}

ExactValue evaluate_exact(const Poly<Rational>& p, const std::vector<ExactValue>& point)
{
    const NumberFieldElem* nf = nullptr;
    long d = 0;
    for (auto& v : point) {
        if (auto n = std::get_if<NumberFieldElem>(&v)) {
            if (nf && ! same_number_field(*nf, *n))
                throw std::domain_error("evaluate_exact: values from different number fields");
            nf = n;
        }
        else if (auto q = std::get_if<QuadExt>(&v); q && ! q->is_rational()) {
            if (d != 0 && d != q->d())
                throw std::domain_error("evaluate_exact: values from different quadratic fields");
            d = q->d();
        }
    }
    if (nf && d != 0)
        throw std::domain_error("evaluate_exact: cannot mix a quadratic field and a general number field");
    if (nf) {
        std::vector<NumberFieldElem> pt;
        for (auto& v : point) {
            if (auto n = std::get_if<NumberFieldElem>(&v))
                pt.push_back(*n);
            else if (auto r = std::get_if<Rational>(&v))
                pt.emplace_back(nf->field(), *r);
            else
                pt.emplace_back(nf->field(), std::get<QuadExt>(v).a());
        }
        return p.evaluate(pt, *nf);
    }
    if (d != 0) {
        std::vector<QuadExt> pt;
        for (auto& v : point)
            pt.push_back(std::holds_alternative<Rational>(v) ? QuadExt(std::get<Rational>(v)) : std::get<QuadExt>(v));
        return p.evaluate(pt, QuadExt(0));
    }
    std::vector<Rational> pt;
    for (auto& v : point)
        pt.push_back(std::holds_alternative<Rational>(v) ? std::get<Rational>(v) : std::get<QuadExt>(v).a());
    return p.evaluate(pt, Rational(0));
}

AlgebraicReal eval_at_algebraic(const Poly<Rational>& p, const std::vector<ExactValue>& point)
{
    return to_algebraic(evaluate_exact(p, point));
}

} // namespace flagalg
