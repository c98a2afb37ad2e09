#include <doctest.h>

#include <flagalg/objectives.hpp>
#include <flagalg/rng.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>

using namespace flagalg;

namespace {

Graph cycle(int n)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

Graph path(int n)
{
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph complete(int n) { return Graph(n).complement(); }

Graph random_graph(CounterRng& rng, int n, double p = 0.5)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p)
                g.add_edge(i, j);
    return g;
}

// Oracle: count colour-respecting injections by trying every injection.
long brute_injections(const ColoredGraph& h, const Graph& g)
{
    int k = h.order, n = g.order();
    std::vector<int> phi(k);
    long count = 0;
    auto rec = [&](auto&& self, int pos, std::uint64_t used) -> void {
        if (pos == k) {
            bool ok = true;
            for (auto [a, b] : h.red)
                ok = ok && g.adjacent(phi[a], phi[b]);
            for (auto [a, b] : h.blue)
                ok = ok && ! g.adjacent(phi[a], phi[b]);
            count += ok;
            return;
        }
        for (int v = 0; v < n; ++v)
            if (! ((used >> v) & 1U)) {
                phi[pos] = v;
                self(self, pos + 1, used | (std::uint64_t{1} << v));
            }
    };
    rec(rec, 0, 0);
    return count;
}

Rational generic_lambda(const Objective& g, const Graph& G)
{
    return lambda_eval(gamma_custom(g.kappa, g.weights), G).density;
}

ColoredGraph alternating_p4() { return ColoredGraph(4, {{1, 2}}, {{0, 1}, {2, 3}}); }

} // namespace

TEST_CASE("edge objective weights")
{
    auto g = gamma_edge(4, 3);
    CHECK(g.weight(path(4)) == 1);
    CHECK(g.weight(cycle(4)) == 0);
    Rational s = 0;
    for (auto& w : g.weights)
        s += w;
    CHECK(s == 3);
    CHECK_THROWS(gamma_edge(4, 7));
    CHECK_THROWS(gamma_edge(1, 0));
}

TEST_CASE("lambda examples")
{
    auto g43 = gamma_edge(4, 3);
    CHECK(lambda_eval(g43, path(4)).density == 1);
    CHECK(lambda_eval(g43, cycle(5)).density == 1);
    CHECK(lambda_eval(g43, cycle(5)).total == 5);
    CHECK_THROWS(lambda_eval(g43, path(3)));

    // two disjoint copies of K_{10,10,10}: lambda_{4,2} = 1/2 + O(1/n)
    Graph tri(30);
    for (int i = 0; i < 30; ++i)
        for (int j = i + 1; j < 30; ++j)
            if (i / 10 != j / 10)
                tri.add_edge(i, j);
    Graph two = tri.disjoint_union(tri);
    auto v = lambda_eval(gamma_edge(4, 2), two).density;
    CHECK(std::abs(to_double(v) - 0.5) < 0.05);

    auto gp = gamma_graph(path(4));
    CHECK(lambda_eval(gp, path(4).relabelled(std::vector<int>{2, 0, 3, 1})).density == 1);
    CHECK(gp.weight(path(4).complement()) == 1); // P4 is self-complementary
    auto gk = gamma_graph(complete(3));
    CHECK(gk.weight(Graph(3)) == 0);
}

TEST_CASE("graph objective equals induced density")
{
    CounterRng rng(3);
    for (int t = 0; t < 40; ++t) {
        Graph f = random_graph(rng, 4);
        Graph g = random_graph(rng, 9);
        auto obj = gamma_graph(f);
        CHECK(lambda_eval(obj, g).density == induced_density(f, g));
        CHECK(generic_lambda(obj, g) == induced_density(f, g));
    }
}

TEST_CASE("semi objective")
{
    auto h = alternating_p4();
    auto obj = gamma_semi(h);
    CHECK(lambda_eval(obj, complete(6)).density == 0);
    auto single = gamma_semi(ColoredGraph(2, {{0, 1}}, {}));
    CounterRng rng(11);
    for (int t = 0; t < 20; ++t) {
        Graph g = random_graph(rng, 8);
        Rational ed = ratio(g.edge_count(), 28);
        CHECK(lambda_eval(single, g).density == ed);
        Rational inj(brute_injections(h, g), falling_factorial(8, 4));
        inj.canonicalize();
        CHECK(lambda_eval(obj, g).density == inj);
        CHECK(generic_lambda(obj, g) == inj);
    }
}

TEST_CASE("fully coloured semi objective matches scaled inducibility")
{
    CounterRng rng(17);
    for (int t = 0; t < 15; ++t) {
        Graph red = random_graph(rng, 4);
        ColoredGraph h(4, red.edges(), red.complement().edges());
        auto obj = gamma_semi(h);
        Graph g = random_graph(rng, 9);
        Rational expected = ratio(automorphism_count(red), factorial(4)) * induced_density(red, g);
        CHECK(lambda_eval(obj, g).density == expected);
    }
}

TEST_CASE("edge objective identities")
{
    CounterRng rng(21);
    for (int t = 0; t < 30; ++t) {
        int n = 4 + static_cast<int>(rng.below(5));
        Graph g = random_graph(rng, n, rng.uniform());
        for (int k = 2; k <= std::min(n, 5); ++k) {
            Rational sum = 0;
            int m = k * (k - 1) / 2;
            for (int l = 0; l <= m; ++l) {
                auto obj = gamma_edge(k, l);
                auto v = lambda_eval(obj, g).density;
                sum += v;
                CHECK(v == lambda_eval(gamma_edge(k, m - l), g.complement()).density);
                CHECK(v == generic_lambda(obj, g));
            }
            CHECK(sum == 1);
        }
    }
}

TEST_CASE("per-vertex contributions")
{
    auto g32 = gamma_edge(3, 2);
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(lambda_vertex(g32, star, 0) == 3);
    CHECK(lambda_vertex(g32, star, 1) == 2);
    for (int u = 1; u < 7; ++u)
        CHECK(lambda_vertex(g32, cycle(7), u) == lambda_vertex(g32, cycle(7), 0));
    CounterRng rng(5);
    for (int t = 0; t < 25; ++t) {
        int n = 5 + static_cast<int>(rng.below(6));
        Graph g = random_graph(rng, n);
        for (auto obj : {gamma_edge(4, 3), gamma_edge(5, 4), gamma_semi(alternating_p4())}) {
            Rational s = 0;
            for (int u = 0; u < n; ++u)
                s += lambda_vertex(obj, g, u);
            CHECK(s == obj.kappa * lambda_eval(obj, g).total);
        }
    }
}

TEST_CASE("embedding density")
{
    CHECK(embedding_density(complete(2), complete(3)) == 1);
    CHECK(embedding_density(path(3), cycle(4)) == Rational(1, 3));
    CounterRng rng(7);
    for (int t = 0; t < 20; ++t) {
        Graph f = random_graph(rng, 4), g = random_graph(rng, 8);
        Rational expected = ratio(automorphism_count(f), factorial(4)) * induced_density(f, g);
        CHECK(embedding_density(f, g) == expected);
    }
}

TEST_CASE("objective parsing and JSON")
{
    auto a = parse_objective("edge:5,4");
    CHECK(a.kind == ObjectiveKind::edge);
    CHECK(a.ell == 4);
    auto b = parse_objective("graph:" + graph6_encode(path(4)));
    CHECK(b.target == path(4));
    auto c = parse_objective("semi:" + graph6_encode(Graph(4, {{1, 2}})) + "/" + graph6_encode(Graph(4, {{0, 1}, {2, 3}})));
    CHECK(c.weights == gamma_semi(alternating_p4()).weights);
    for (auto& o : {a, b, c}) {
        auto r = objective_from_json(objective_to_json(o));
        CHECK(r.weights == o.weights);
        CHECK(r.descriptor == o.descriptor);
    }
    CHECK_THROWS(parse_objective("edge:4"));
    CHECK_THROWS(parse_objective("bogus:1"));
    CHECK_THROWS(parse_objective("semi:" + graph6_encode(Graph(3, {{0, 1}})) + "/" + graph6_encode(Graph(3, {{0, 1}}))));

    auto path_file = std::filesystem::temp_directory_path() / "flagalg_custom_obj.json";
    {
        std::ofstream out(path_file);
        out << R"({"kappa": 3, "weights": {"Bw": 1, "Bg": "1/2"}})";
    }
    auto d = parse_objective("custom:" + path_file.string());
    CHECK(d.kind == ObjectiveKind::custom);
    CHECK(d.weight(complete(3)) == 1);
    CHECK(d.weight(path(3)) == Rational(1, 2));
    CHECK(d.weight(Graph(3)) == 0);
    auto r = objective_from_json(objective_to_json(d));
    CHECK(r.weights == d.weights);
    std::filesystem::remove(path_file);
}

TEST_CASE("complement objective")
{
    CounterRng rng(2);
    auto semi = gamma_semi(alternating_p4());
    auto custom = gamma_custom(3, {1, 2, 3, 4});
    for (auto obj : {gamma_edge(4, 1), gamma_graph(path(3)), semi, custom}) {
        auto comp = complement_objective(obj);
        for (int t = 0; t < 5; ++t) {
            Graph g = random_graph(rng, 7);
            CHECK(lambda_eval(obj, g).density == lambda_eval(comp, g.complement()).density);
        }
    }
}
