#include <doctest.h>

#include <flagalg/patterns.hpp>
#include <flagalg/rng.hpp>

#include <cmath>

using namespace flagalg;

namespace {

Graph complete(int n) { return Graph(n).complement(); }

std::vector<ExactValue> rats(std::initializer_list<Rational> xs)
{
    std::vector<ExactValue> v;
    for (auto& x : xs)
        v.emplace_back(x);
    return v;
}

Pattern random_pattern(CounterRng& rng, int m)
{
    Pattern b(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            if (rng.uniform() < 0.5)
                b.add_edge(i, j);
    return b;
}

// Root of 3(1-2x)^4 + 10(1-2x)^2 - 5 near 0.1678.
AlgebraicReal alpha2()
{
    UPoly<Rational> s(std::vector<Rational>{1, -2});
    UPoly<Rational> s2 = s * s;
    auto p = s2 * s2 * UPoly<Rational>(Rational(3)) + s2 * UPoly<Rational>(Rational(10)) - UPoly<Rational>(Rational(5));
    return AlgebraicReal::from_interval(p, Rational(16, 100), Rational(17, 100));
}

} // namespace

TEST_CASE("pattern parsing")
{
    auto b = parse_pattern("3:01,22");
    CHECK(b.order() == 3);
    CHECK(b.adjacent(0, 1));
    CHECK(b.loop(2));
    CHECK(! b.loop(0));
    CHECK(b.to_string() == "3:01,22");
    CHECK(parse_pattern(b.to_string()) == b);
    CHECK(parse_pattern("K2") == Pattern(2, {{0, 1}}));
    CHECK(parse_pattern("L2") == Pattern(2, {{0, 0}, {1, 1}}));
    CHECK(parse_pattern("E3") == Pattern(3));
    CHECK(parse_pattern("12:0-11,3-3").adjacent(11, 0));
    CHECK(pattern_from_json(pattern_to_json(b)) == b);
    CHECK(parse_pattern(pattern_to_json(b).dump()) == b);
    CHECK_THROWS(parse_pattern("3:05"));
    CHECK_THROWS(parse_pattern("x"));
}

TEST_CASE("blowup construction")
{
    Pattern loops(2, {{0, 0}, {1, 1}});
    std::vector<int> s33{3, 3};
    CHECK(canonical_key(blowup_build(loops, s33)) == canonical_key(complete(3).disjoint_union(complete(3))));
    std::vector<int> s23{2, 3};
    Graph k23 = blowup_build(Pattern(2, {{0, 1}}), s23);
    CHECK(k23.edge_count() == 6);
    CHECK(k23.adjacent(0, 2));
    CHECK(! k23.adjacent(2, 3));
    CHECK(blowup_build(Pattern(3), std::vector<int>{1, 0, 2}).order() == 3);
    CHECK_THROWS(blowup_build(loops, std::vector<int>{1}));

    // path with loops at both ends, two vertices per part: regression value of lambda_{5,5}
    Graph g = blowup_build(parse_pattern("4:00,01,12,23,33"), std::vector<int>{2, 2, 2, 2});
    CHECK(g.edge_count() == 1 + 4 + 4 + 4 + 1);
    auto v = lambda_eval(gamma_edge(5, 5), g).density;
    // oracle: direct enumeration of 5-subsets
    int hits = 0, total = 0;
    for (int mask = 0; mask < 256; ++mask)
        if (__builtin_popcount(mask) == 5) {
            std::vector<int> vs;
            for (int i = 0; i < 8; ++i)
                if (mask >> i & 1)
                    vs.push_back(i);
            ++total;
            hits += g.induced(vs).edge_count() == 5;
        }
    CHECK(v == ratio(hits, total));
}

TEST_CASE("homomorphisms")
{
    Graph k2 = complete(2);
    CHECK(homomorphisms(k2, Pattern(1, {{0, 0}})).size() == 1);
    CHECK(homomorphisms(k2, Pattern(2, {{0, 0}, {1, 1}})).size() == 2);
    CHECK(homomorphisms(complete(3), Pattern(2, {{0, 1}})).empty());
    CHECK(! has_homomorphism(complete(3), Pattern(2, {{0, 1}})));
    CHECK(homomorphisms(Graph(2), Pattern(1)).size() == 1);
    CHECK(homomorphisms(Graph(2), Pattern(1, {{0, 0}})).empty());

    // brute force over all maps
    CounterRng rng(4);
    for (int t = 0; t < 40; ++t) {
        Pattern b = random_pattern(rng, 3);
        Graph f(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (rng.uniform() < 0.5)
                    f.add_edge(i, j);
        size_t count = 0;
        for (int code = 0; code < 81; ++code) {
            int phi[4], c = code;
            for (int& x : phi) {
                x = c % 3;
                c /= 3;
            }
            bool ok = true;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    ok = ok && f.adjacent(i, j) == b.adjacent(phi[i], phi[j]);
            count += ok;
        }
        CHECK(homomorphisms(f, b).size() == count);
    }
}

TEST_CASE("pattern automorphisms and hom orbits")
{
    CHECK(pattern_automorphisms(Pattern(2, {{0, 0}, {1, 1}})).size() == 2);
    CHECK(pattern_automorphisms(parse_pattern("3:01,22")).size() == 2);
    CHECK(pattern_automorphisms(parse_pattern("3:00,11")).size() == 2);
    CHECK(pattern_automorphisms(parse_pattern("6:01,02,12,34,35,45")).size() == 72);
    // K2 into two loops: the two homs are swapped by the automorphism
    CHECK(homomorphism_orbits(complete(2), Pattern(2, {{0, 0}, {1, 1}})) == 1);
    // asymmetric pattern: loop 0 joined to plain vertex 1, plus a lone loop 2
    Pattern asym = parse_pattern("3:00,01,22");
    CHECK(pattern_automorphisms(asym).size() == 1);
    CHECK(homomorphism_orbits(complete(2), asym) == 4);
}

TEST_CASE("blowup polynomial")
{
    Pattern loops(2, {{0, 0}, {1, 1}});
    auto p = blowup_polynomial(gamma_edge(4, 3), loops);
    Poly<Rational> expected(pattern_variables(2));
    expected.add_term({3, 1}, 4);
    expected.add_term({1, 3}, 4);
    CHECK(p == expected);
    CHECK(evaluate_exact(blowup_polynomial(gamma_edge(6, 7), loops), rats({Rational(1, 2), Rational(1, 2)})).index() == 0);
    CHECK(std::get<Rational>(eval_blowup(gamma_edge(6, 7), loops, rats({Rational(1, 2), Rational(1, 2)}))) == Rational(15, 32));

    // single plain vertex: gamma of the empty graph times x0^kappa
    auto single = blowup_polynomial(gamma_edge(4, 0), Pattern(1));
    CHECK(single.coefficient({4}) == 1);
    CHECK(blowup_polynomial(gamma_edge(4, 1), Pattern(1)).is_zero());

    CounterRng rng(8);
    for (int t = 0; t < 30; ++t) {
        int m = 1 + static_cast<int>(rng.below(4));
        Pattern b = random_pattern(rng, m);
        int k = 2 + static_cast<int>(rng.below(3));
        int l = static_cast<int>(rng.below(k * (k - 1) / 2 + 1));
        CHECK(blowup_polynomial(gamma_edge(k, l), b) == blowup_polynomial_by_homs(gamma_edge(k, l), b));
    }
}

TEST_CASE("blowup polynomial symmetry and complement")
{
    CounterRng rng(12);
    for (int t = 0; t < 25; ++t) {
        int m = 2 + static_cast<int>(rng.below(3));
        Pattern b = random_pattern(rng, m);
        auto g = gamma_edge(4, static_cast<int>(rng.below(7)));
        auto p = blowup_polynomial(g, b);
        for (auto& s : pattern_automorphisms(b)) {
            Poly<Rational> q(p.variables());
            for (auto& [e, c] : p.terms()) {
                std::vector<int> f(m);
                for (int i = 0; i < m; ++i)
                    f[s[i]] = e[i];
                q.add_term(f, c);
            }
            CHECK(q == p);
        }
        CHECK(blowup_polynomial(complement_objective(g), b.complement()) == p);
    }
}

TEST_CASE("exact blowup values")
{
    // (7,10) on K2
    CHECK(exact_equal(eval_blowup(gamma_edge(7, 10), parse_pattern("K2"), rats({Rational(1, 3), Rational(2, 3)})),
                      Rational(28, 81)));
    // (5,5) on the path with end loops
    Rational q(1, 4);
    CHECK(exact_equal(eval_blowup(gamma_edge(5, 5), parse_pattern("4:00,01,12,23,33"), rats({q, q, q, q})),
                      Rational(45, 128)));
    // (5,3) on edge plus loop at alpha1 = (9 - sqrt17)/16
    QuadExt a1 = (QuadExt(9) - QuadExt::sqrt(17)) / QuadExt(16);
    std::vector<ExactValue> a{a1, a1, QuadExt(1) - QuadExt(2) * a1};
    auto v = eval_blowup(gamma_edge(5, 3), parse_pattern("3:01,22"), a);
    CHECK(exact_equal(v, (QuadExt(Rational(0), Rational(255), 17) - QuadExt(535)) / QuadExt(1024)));
    CHECK_THROWS(eval_blowup(gamma_edge(5, 3), parse_pattern("K2"), rats({Rational(1, 2), Rational(1, 3)})));
}

TEST_CASE("finite blowups converge to the polynomial value")
{
    struct Case
    {
        Objective g;
        Pattern b;
        std::vector<Rational> a;
    };
    std::vector<Case> cases{
        {gamma_edge(4, 3), parse_pattern("L2"), {Rational(1, 2), Rational(1, 2)}},
        {gamma_edge(4, 2), parse_pattern("3:01,22"), {Rational(1, 4), Rational(1, 4), Rational(1, 2)}},
    };
    for (auto& c : cases) {
        std::vector<ExactValue> ev(c.a.begin(), c.a.end());
        double limit = to_double(eval_blowup(c.g, c.b, ev));
        double prev = INFINITY;
        for (int n : {16, 32, 64}) {
            std::vector<int> sizes;
            int used = 0;
            for (size_t i = 0; i + 1 < c.a.size(); ++i) {
                sizes.push_back(static_cast<int>(std::floor(to_double(c.a[i]) * n)));
                used += sizes.back();
            }
            sizes.push_back(n - used);
            double err = std::abs(to_double(lambda_eval(c.g, blowup_build(c.b, sizes)).density) - limit);
            CHECK(err <= 6.0 / n);
            CHECK(err <= prev);
            prev = err;
        }
    }
}

TEST_CASE("maximizer verification")
{
    Pattern loops = parse_pattern("L2");
    auto r = verify_maximizer(gamma_edge(4, 3), loops, rats({Rational(1, 2), Rational(1, 2)}));
    CHECK(r.valid_point);
    CHECK(r.is_critical);
    CHECK(r.neighborhood_local_max);
    CHECK(! r.boundary_checked);

    // p(x) = 4(x^3(1-x) + x(1-x)^3) has derivative 4(1-2x)^3
    auto p = blowup_polynomial(gamma_edge(4, 3), loops).substitute(1, Poly<Rational>::constant(pattern_variables(2), 1) -
                                                                        Poly<Rational>::variable(pattern_variables(2), 0));
    auto dp = p.derivative(0).to_univariate(0);
    UPoly<Rational> lin(std::vector<Rational>{1, -2});
    CHECK(dp == (lin * lin * lin).scaled(4));

    auto off = verify_maximizer(gamma_edge(4, 3), loops, rats({Rational(1, 3), Rational(2, 3)}));
    CHECK(! off.is_critical);

    // identically zero objective at a simplex vertex
    auto zero = verify_maximizer(gamma_edge(3, 1), Pattern(2), rats({Rational(1), Rational(0)}));
    CHECK(zero.is_critical);
    CHECK(zero.boundary_checked);
    CHECK(zero.boundary_ok);
    CHECK(zero.neighborhood_local_max);

    // (6,5) on K2 at alpha2, in the quartic number field
    auto a2 = NumberFieldElem::generator(alpha2());
    std::vector<ExactValue> a{a2, NumberFieldElem(a2.field(), Rational(1)) - a2};
    auto r65 = verify_maximizer(gamma_edge(6, 5), parse_pattern("K2"), a);
    CHECK(r65.is_critical);
    CHECK(r65.neighborhood_local_max);
    CHECK(exact_equal(r65.value, (QuadExt(Rational(0), Rational(10), 10) - QuadExt(28)) / QuadExt(9)));

    CHECK(! verify_maximizer(gamma_edge(4, 3), loops, rats({Rational(1, 2), Rational(1, 3)})).valid_point);
}

TEST_CASE("minimality probe")
{
    auto g54 = gamma_edge(5, 4);
    auto probe = minimality_probe(g54, parse_pattern("L2"));
    CHECK(! probe.rigorous);
    CHECK(std::abs(probe.full_value - 0.625) < 1e-6);
    for (auto& d : probe.deleted)
        CHECK(d.value == doctest::Approx(0.0));

    auto g42 = gamma_edge(4, 2);
    Pattern b = parse_pattern("6:01,02,12,34,35,45");
    auto p42 = minimality_probe(g42, b, 8);
    CHECK(probe.full_value <= 0.625 + 1e-9);
    CHECK(p42.full_value <= 0.5 + 1e-9);
    for (auto& d : p42.deleted)
        CHECK(d.value < 0.5 - 1e-3);
}
