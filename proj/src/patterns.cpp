#include <flagalg/patterns.hpp>
#include <flagalg/rng.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace flagalg {

Pattern::Pattern(int m) : m_(m), adj_(static_cast<size_t>(m), 0)
{
    if (m < 0 || m > 64)
        throw std::out_of_range("Pattern: order must lie in [0, 64]");
}

Pattern::Pattern(int m, std::initializer_list<std::pair<int, int>> pairs) : Pattern(m)
{
    for (auto [i, j] : pairs)
        add_edge(i, j);
}

Pattern::Pattern(int m, std::span<const std::pair<int, int>> pairs) : Pattern(m)
{
    for (auto [i, j] : pairs)
        add_edge(i, j);
}

void Pattern::add_edge(int i, int j)
{
    if (i < 0 || j < 0 || i >= m_ || j >= m_)
        throw std::out_of_range("Pattern: vertex out of range");
    adj_[i] |= bit(j);
    adj_[j] |= bit(i);
}

std::vector<std::pair<int, int>> Pattern::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m_; ++i)
        for (int j = i + 1; j < m_; ++j)
            if (adjacent(i, j))
                out.emplace_back(i, j);
    return out;
}

std::vector<int> Pattern::loops() const
{
    std::vector<int> out;
    for (int i = 0; i < m_; ++i)
        if (loop(i))
            out.push_back(i);
    return out;
}

Graph Pattern::without_loops() const
{
    auto e = edges();
    return Graph(m_, e);
}

Pattern Pattern::complement() const
{
    Pattern c(m_);
    for (int i = 0; i < m_; ++i)
        c.adj_[i] = ~adj_[i] & low_bits(m_);
    return c;
}

Pattern Pattern::remove_vertex(int v) const
{
    Pattern r(m_ - 1);
    for (int i = 0, a = 0; i < m_; ++i) {
        if (i == v)
            continue;
        for (int j = i, b = a; j < m_; ++j) {
            if (j == v)
                continue;
            if (adjacent(i, j))
                r.add_edge(a, b);
            ++b;
        }
        ++a;
    }
    return r;
}

std::string Pattern::to_string() const
{
    std::string s = std::to_string(m_) + ":";
    bool first = true;
    for (int i = 0; i < m_; ++i)
        for (int j = i; j < m_; ++j)
            if (adjacent(i, j)) {
                if (! first)
                    s += ",";
                first = false;
                if (m_ <= 10)
                    s += std::to_string(i) + std::to_string(j);
                else
                    s += std::to_string(i) + "-" + std::to_string(j);
            }
    return s;
}

Pattern parse_pattern(const std::string& text)
{
    auto bad = [&]() { return std::invalid_argument("parse_pattern: cannot parse '" + text + "'"); };
    if (text.empty())
        throw bad();
    if (text.front() == '{')
        return pattern_from_json(nlohmann::json::parse(text));
    auto number = [&](const std::string& s) {
        if (s.empty() || ! std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw bad();
        return std::stoi(s);
    };
    char head = text.front();
    if (head == 'K' || head == 'E' || head == 'L') {
        int m = number(text.substr(1));
        Pattern b(m);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j)
                if ((head == 'K' && i != j) || (head == 'L' && i == j))
                    b.add_edge(i, j);
        return b;
    }
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw bad();
    Pattern b(number(text.substr(0, colon)));
    std::string rest = text.substr(colon + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? rest.size() : comma + 1;
        if (item.empty())
            continue;
        int i, j;
        if (auto dash = item.find('-'); dash != std::string::npos) {
            i = number(item.substr(0, dash));
            j = number(item.substr(dash + 1));
        }
        else if (item.size() == 2) {
            i = number(item.substr(0, 1));
            j = number(item.substr(1, 1));
        }
        else
            throw bad();
        b.add_edge(i, j);
    }
    return b;
}

nlohmann::json pattern_to_json(const Pattern& b)
{
    nlohmann::json edges = nlohmann::json::array();
    for (auto [i, j] : b.edges())
        edges.push_back({i, j});
    return {{"m", b.order()}, {"edges", edges}, {"loops", b.loops()}};
}

Pattern pattern_from_json(const nlohmann::json& j)
{
    Pattern b(j.at("m").get<int>());
    for (auto& e : j.value("edges", nlohmann::json::array()))
        b.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& l : j.value("loops", nlohmann::json::array()))
        b.add_edge(l.get<int>(), l.get<int>());
    return b;
}

Graph blowup_build(const Pattern& b, std::span<const int> sizes)
{
    if (static_cast<int>(sizes.size()) != b.order())
        throw std::invalid_argument("blowup_build: one size per pattern vertex required");
    std::vector<int> part;
    for (int i = 0; i < b.order(); ++i) {
        if (sizes[i] < 0)
            throw std::invalid_argument("blowup_build: negative part size");
        part.insert(part.end(), sizes[i], i);
    }
    int n = static_cast<int>(part.size());
    Graph g(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (b.adjacent(part[x], part[y]))
                g.add_edge(x, y);
    return g;
}

namespace {

// Backtracking over V(F) in order; `visit` returns false to stop.
void for_each_hom(const Graph& f, const Pattern& b, const std::function<bool(const std::vector<int>&)>& visit)
{
    int k = f.order(), m = b.order();
    std::vector<int> phi(k, -1);
    bool stop = false;
    auto rec = [&](auto&& self, int pos) -> void {
        if (stop)
            return;
        if (pos == k) {
            stop = ! visit(phi);
            return;
        }
        for (int i = 0; i < m && ! stop; ++i) {
            bool ok = true;
            for (int u = 0; u < pos && ok; ++u)
                ok = f.adjacent(u, pos) == b.adjacent(phi[u], i);
            if (! ok)
                continue;
            phi[pos] = i;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

std::vector<int> loop_colours(const Pattern& b)
{
    std::vector<int> c(b.order());
    for (int i = 0; i < b.order(); ++i)
        c[i] = b.loop(i) ? 1 : 0;
    return c;
}

} // namespace

std::vector<std::vector<int>> homomorphisms(const Graph& f, const Pattern& b)
{
    std::vector<std::vector<int>> out;
    for_each_hom(f, b, [&](const std::vector<int>& phi) {
        out.push_back(phi);
        return true;
    });
    return out;
}

bool has_homomorphism(const Graph& f, const Pattern& b)
{
    bool found = false;
    for_each_hom(f, b, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<std::vector<int>> pattern_automorphisms(const Pattern& b)
{
    int m = b.order();
    std::vector<int> id(m);
    for (int i = 0; i < m; ++i)
        id[i] = i;
    if (m == 0)
        return {id};
    auto colours = loop_colours(b);
    auto gens = automorphism_generators(b.without_loops(), colours);
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> queue{id};
    for (size_t h = 0; h < queue.size(); ++h)
        for (auto& g : gens) {
            std::vector<int> c(m);
            for (int i = 0; i < m; ++i)
                c[i] = g[queue[h][i]];
            if (seen.insert(c).second)
                queue.push_back(std::move(c));
        }
    return {seen.begin(), seen.end()};
}

int homomorphism_orbits(const Graph& f, const Pattern& b)
{
    auto auts = pattern_automorphisms(b);
    std::set<std::vector<int>> reps;
    for (auto& phi : homomorphisms(f, b)) {
        std::vector<int> best = phi, img(phi.size());
        for (auto& s : auts) {
            for (size_t v = 0; v < phi.size(); ++v)
                img[v] = s[phi[v]];
            best = std::min(best, img);
        }
        reps.insert(best);
    }
    return static_cast<int>(reps.size());
}

std::vector<std::string> pattern_variables(int m)
{
    std::vector<std::string> v;
    for (int i = 0; i < m; ++i)
        v.push_back("x" + std::to_string(i));
    return v;
}

Poly<Rational> blowup_polynomial(const Objective& g, const Pattern& b)
{
    // Coefficient of x^c is multinomial(kappa; c) * gamma(B(c)): every map
    // [kappa] -> [m] with part counts c induces a labelled copy of B(c).
    int m = b.order(), k = g.kappa;
    Poly<Rational> p(pattern_variables(m));
    if (m == 0)
        return p;
    std::vector<int> c(m, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            c[i] = left;
            const Rational& w = g.weight(blowup_build(b, c));
            if (! is_zero(w)) {
                Integer multi = factorial(k);
                for (int x : c)
                    multi /= factorial(x);
                p.add_term(c, w * Rational(multi));
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            c[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, k);
    return p;
}

Poly<Rational> blowup_polynomial_by_homs(const Objective& g, const Pattern& b)
{
    int m = b.order(), k = g.kappa;
    Poly<Rational> p(pattern_variables(m));
    for (auto& f : enumerate_graphs(k)) {
        const Rational& w = g.weight(f);
        if (is_zero(w))
            continue;
        Rational scale = w * ratio(factorial(k), automorphism_count(f));
        for (auto& phi : homomorphisms(f, b)) {
            std::vector<int> e(m, 0);
            for (int v : phi)
                ++e[v];
            p.add_term(e, scale);
        }
    }
    return p;
}

bool is_simplex_point(const std::vector<ExactValue>& a)
{
    if (a.empty())
        return false;
    for (auto& v : a)
        if (sign(v) < 0)
            return false;
    int m = static_cast<int>(a.size());
    auto vars = pattern_variables(m);
    Poly<Rational> s = Poly<Rational>::constant(vars, Rational(-1));
    for (int i = 0; i < m; ++i)
        s += Poly<Rational>::variable(vars, i);
    return sign(evaluate_exact(s, a)) == 0;
}

ExactValue eval_blowup(const Objective& g, const Pattern& b, const std::vector<ExactValue>& a)
{
    if (static_cast<int>(a.size()) != b.order())
        throw std::invalid_argument("eval_blowup: ratio vector length differs from pattern order");
    if (! is_simplex_point(a))
        throw std::invalid_argument("eval_blowup: ratios must be non-negative and sum to 1");
    return evaluate_exact(blowup_polynomial(g, b), a);
}

namespace {

struct DoublePoly
{
    std::vector<std::pair<double, std::vector<int>>> terms;

    explicit DoublePoly(const Poly<Rational>& p)
    {
        for (auto& [e, c] : p.terms())
            terms.emplace_back(to_double(c), e);
    }

    double operator()(std::span<const double> x) const
    {
        double s = 0;
        for (auto& [c, e] : terms) {
            double t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int r = 0; r < e[i]; ++r)
                    t *= x[i];
            s += t;
        }
        return s;
    }
};

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& x)
{
    std::vector<double> u = x;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0, theta = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0)
            theta = t;
    }
    for (auto& v : x)
        v = std::max(0.0, v - theta);
}

std::vector<double> random_simplex_point(CounterRng& rng, int m)
{
    std::vector<double> x(m);
    double s = 0;
    for (auto& v : x) {
        v = -std::log(1.0 - rng.uniform());
        s += v;
    }
    for (auto& v : x)
        v /= s;
    return x;
}

} // namespace

double eval_blowup_numeric(const Poly<Rational>& p, std::span<const double> x)
{
    return DoublePoly(p)(x);
}

MaximizerReport verify_maximizer(const Objective& g, const Pattern& b, const std::vector<ExactValue>& a, double eps,
                                 int samples, std::uint64_t seed, double tol)
{
    MaximizerReport rep;
    int m = b.order();
    if (static_cast<int>(a.size()) != m || ! is_simplex_point(a))
        return rep;
    rep.valid_point = true;
    auto p = blowup_polynomial(g, b);
    rep.value = evaluate_exact(p, a);
    for (int i = 0; i < m; ++i)
        rep.partials.push_back(evaluate_exact(p.derivative(i), a));

    int ref = -1;
    for (int i = 0; i < m; ++i)
        if (sign(a[i]) > 0) {
            ref = i;
            break;
        }
    rep.is_critical = true;
    for (int i = 0; i < m; ++i)
        if (sign(a[i]) > 0 && exact_compare(rep.partials[i], rep.partials[ref]) != 0)
            rep.is_critical = false;
    rep.boundary_ok = true;
    for (int i = 0; i < m; ++i)
        if (sign(a[i]) == 0) {
            rep.boundary_checked = true;
            if (exact_compare(rep.partials[i], rep.partials[ref]) > 0)
                rep.boundary_ok = false;
        }

    DoublePoly dp(p);
    std::vector<double> x0(m);
    for (int i = 0; i < m; ++i)
        x0[i] = to_double(a[i]);
    double base = dp(x0);
    CounterRng rng(seed);
    rep.samples = samples;
    rep.max_gain = -INFINITY;
    for (int t = 0; t < samples; ++t) {
        std::vector<double> y = x0;
        for (auto& v : y)
            v += eps * (2 * rng.uniform() - 1);
        project_simplex(y);
        rep.max_gain = std::max(rep.max_gain, dp(y) - base);
    }
    if (samples == 0)
        rep.max_gain = 0;
    rep.neighborhood_local_max = rep.max_gain <= tol;
    return rep;
}

AscentResult maximize_on_simplex(const Poly<Rational>& p, int starts, int iterations, std::uint64_t seed)
{
    int m = p.nvars();
    AscentResult best{-INFINITY, {}};
    if (m == 0) {
        best.value = to_double(p.coefficient({}));
        return best;
    }
    DoublePoly f(p);
    std::vector<DoublePoly> grad;
    for (int i = 0; i < m; ++i)
        grad.emplace_back(p.derivative(i));
    CounterRng rng(seed);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x = s == 0 ? std::vector<double>(m, 1.0 / m) : random_simplex_point(rng, m);
        double fx = f(x), step = 0.1;
        for (int it = 0; it < iterations && step > 1e-14; ++it) {
            std::vector<double> y = x;
            for (int i = 0; i < m; ++i)
                y[i] += step * grad[i](x);
            project_simplex(y);
            double fy = f(y);
            if (fy > fx) {
                x = std::move(y);
                fx = fy;
                step *= 1.5;
            }
            else
                step *= 0.5;
        }
        if (fx > best.value)
            best = {fx, x};
    }
    return best;
}

MinimalityProbe minimality_probe(const Objective& g, const Pattern& b, int starts, std::uint64_t seed)
{
    MinimalityProbe probe;
    probe.full_value = maximize_on_simplex(blowup_polynomial(g, b), starts, 400, seed).value;
    for (int v = 0; v < b.order(); ++v)
        probe.deleted.push_back(maximize_on_simplex(blowup_polynomial(g, b.remove_vertex(v)), starts, 400, seed));
    return probe;
}

} // namespace flagalg
