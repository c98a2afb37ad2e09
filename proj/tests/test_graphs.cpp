#include <doctest.h>

#include <flagalg/graph.hpp>
#include <flagalg/rng.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

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

Graph permuted(const Graph& g, CounterRng& rng)
{
    std::vector<int> p(g.order());
    std::iota(p.begin(), p.end(), 0);
    for (int i = g.order() - 1; i > 0; --i)
        std::swap(p[i], p[rng.below(i + 1)]);
    return g.relabelled(p);
}

// Oracle: bucket all labelled graphs on n vertices by canonical key.
std::set<std::string> naive_classes(int n)
{
    std::set<std::string> keys;
    int m = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Graph g(n);
        int k = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i, ++k)
                if ((mask >> k) & 1U)
                    g.add_edge(i, j);
        keys.insert(canonical_key(g));
    }
    return keys;
}

// Oracle: count induced copies by checking every subset and every bijection.
long brute_induced(const Graph& f, const Graph& g)
{
    int k = f.order(), n = g.order();
    long count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) != k)
            continue;
        std::vector<int> sub;
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1U)
                sub.push_back(v);
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        bool found = false;
        do {
            bool ok = true;
            for (int a = 0; a < k && ok; ++a)
                for (int b = a + 1; b < k && ok; ++b)
                    ok = f.adjacent(a, b) == g.adjacent(sub[perm[a]], sub[perm[b]]);
            found = ok;
        } while (! found && std::next_permutation(perm.begin(), perm.end()));
        count += found;
    }
    return count;
}

long brute_aut(const Graph& g)
{
    int n = g.order();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = a + 1; b < n && ok; ++b)
                ok = g.adjacent(a, b) == g.adjacent(perm[a], perm[b]);
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace

TEST_CASE("canonical form is invariant under relabelling")
{
    CHECK(canonical_key(cycle(4)) == canonical_key(cycle(4).relabelled(std::vector<int>{2, 0, 3, 1})));
    CHECK(canonical_key(complete(3)) != canonical_key(path(3)));
    std::set<std::string> keys;
    std::vector<int> p{0, 1, 2, 3};
    do
        keys.insert(canonical_key(path(4).relabelled(p)));
    while (std::next_permutation(p.begin(), p.end()));
    CHECK(keys.size() == 1);

    CounterRng rng(1);
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng.below(12));
        auto g = random_graph(rng, n, rng.uniform());
        auto h = permuted(g, rng);
        auto cf = canonical_form(g);
        CHECK(cf.key == canonical_key(h));
        std::vector<int> sorted = cf.order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n; ++i)
            CHECK(sorted[i] == i);
        CHECK(graph6_encode(g.relabelled(cf.order)) == cf.key);
    }
}

TEST_CASE("canonical form distinguishes non-isomorphic regular graphs")
{
    // C6 and 2K3 are both 2-regular on 6 vertices
    Graph two_triangles = complete(3).disjoint_union(complete(3));
    CHECK(canonical_key(cycle(6)) != canonical_key(two_triangles));
    CHECK(cycle(6) != two_triangles);
    CHECK(cycle(5) == cycle(5).complement());
}

TEST_CASE("coloured canonical forms respect colours")
{
    Graph p3 = path(3); // 0-1-2
    std::vector<int> root_end{0, 1, 1}, root_mid{1, 0, 1}, root_other_end{1, 1, 0};
    CHECK(canonical_form(p3, root_end).key != canonical_form(p3, root_mid).key);
    CHECK(canonical_form(p3, root_end).key == canonical_form(p3, root_other_end).key);
}

TEST_CASE("enumeration counts")
{
    CHECK(enumerate_graphs(0).size() == 1);
    CHECK(enumerate_graphs(1).size() == 1);
    CHECK(enumerate_graphs(2).size() == 2);
    CHECK(enumerate_graphs(3).size() == 4);
    CHECK(enumerate_graphs(4).size() == 11);
    CHECK(enumerate_graphs(5).size() == 34);
    CHECK(enumerate_graphs(6).size() == 156);
    CHECK(enumerate_graphs(7).size() == 1044);
    for (int n = 0; n <= 7; ++n)
        CHECK(Integer(static_cast<long>(enumerate_graphs(n).size())) == count_graphs_burnside(n));
    CHECK(count_graphs_burnside(8) == 12346);
    CHECK_THROWS(enumerate_graphs(11));
}

TEST_CASE("enumeration agrees with naive bucketing for n <= 6")
{
    for (int n = 0; n <= 6; ++n) {
        auto oracle = naive_classes(n);
        const auto& list = enumerate_graphs(n);
        std::set<std::string> got;
        for (auto& g : list)
            got.insert(graph6_encode(g));
        CHECK(got == oracle);
        CHECK(got.size() == list.size());
        for (size_t i = 0; i + 1 < list.size(); ++i)
            CHECK(graph6_encode(list[i]) < graph6_encode(list[i + 1]));
    }
}

TEST_CASE("edge augmentation agrees with vertex augmentation")
{
    for (int n = 0; n <= 7; ++n) {
        auto a = enumerate_graphs_by_edges(n);
        const auto& b = enumerate_graphs(n);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i)
            CHECK(a[i].identical(b[i]));
    }
}

TEST_CASE("count_induced")
{
    CHECK(count_induced(complete(2), complete(3)) == 3);
    CHECK(count_induced(path(3), cycle(4)) == 4);
    CHECK(count_induced(path(4), cycle(5)) == 5);
    CHECK_THROWS(count_induced(complete(4), complete(3)));
    CHECK(induced_density(path(3), cycle(4)) == 1);
}

TEST_CASE("count_induced agrees with brute force and complements")
{
    CounterRng rng(4);
    for (int t = 0; t < 120; ++t) {
        int n = 3 + static_cast<int>(rng.below(5));
        int k = 1 + static_cast<int>(rng.below(n));
        auto f = random_graph(rng, k);
        auto g = random_graph(rng, n);
        auto c = count_induced(f, g);
        CHECK(c == brute_induced(f, g));
        CHECK(c == count_induced(f.complement(), g.complement()));
    }
}

TEST_CASE("induced profiles sum to binomials")
{
    CounterRng rng(8);
    for (int t = 0; t < 40; ++t) {
        int n = static_cast<int>(rng.below(8));
        auto g = random_graph(rng, n);
        for (int k = 0; k <= n; ++k) {
            auto prof = induced_profile(g, k);
            Integer s = 0;
            for (auto& x : prof)
                s += x;
            CHECK(s == binomial(n, k));
            const auto& classes = enumerate_graphs(k);
            for (size_t i = 0; i < classes.size(); ++i)
                if (rng.below(4) == 0)
                    CHECK(prof[i] == count_induced(classes[i], g));
        }
    }
    auto g = random_graph(rng, 10);
    auto prof8 = induced_profile(g, 8);
    Integer s = 0;
    for (auto& x : prof8)
        s += x;
    CHECK(s == binomial(10, 8));
}

TEST_CASE("automorphism counts")
{
    CHECK(automorphism_count(complete(3)) == 6);
    CHECK(automorphism_count(path(4)) == 2);
    Graph c4p(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
    CHECK(automorphism_count(c4p) == 2);
    CHECK(automorphism_count(Graph(10)) == factorial(10));
    CHECK(automorphism_count(Graph(0)) == 1);
    CHECK(automorphism_count(cycle(7)) == 14);
    Graph k33(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j)
            k33.add_edge(i, j);
    CHECK(automorphism_count(k33) == 72);
    CounterRng rng(12);
    for (int t = 0; t < 80; ++t) {
        int n = 1 + static_cast<int>(rng.below(7));
        auto g = random_graph(rng, n, rng.uniform());
        CHECK(automorphism_count(g) == brute_aut(g));
        for (auto& gen : automorphism_generators(g))
            for (auto [u, v] : g.edges())
                CHECK(g.adjacent(gen[u], gen[v]));
    }
}

TEST_CASE("complement")
{
    CHECK(complete(3).complement().identical(Graph(3)));
    CHECK(path(4).complement().complement().identical(path(4)));
    CHECK(canonical_key(cycle(5).complement()) == canonical_key(cycle(5)));
}

TEST_CASE("graph6")
{
    CHECK(graph6_encode(Graph(1)) == "@");
    CHECK(graph6_encode(Graph(0)) == "?");
    CHECK(graph6_decode(graph6_encode(complete(4))).identical(complete(4)));
    CHECK(graph6_encode(complete(4)) == "C~");
    CHECK(graph6_encode(path(4)) == "Ch");
    for (auto& g : enumerate_graphs(5))
        CHECK(graph6_decode(graph6_encode(g)).identical(g));
    CounterRng rng(2);
    auto big = random_graph(rng, 64);
    CHECK(graph6_decode(graph6_encode(big)).identical(big));
    CHECK_THROWS(graph6_decode("C"));
    CHECK_THROWS(graph6_decode("C~~"));
    CHECK_THROWS(graph6_decode(" "));
}

TEST_CASE("hereditary family")
{
    HereditaryFamily triangle_free({complete(3)});
    CHECK(triangle_free.contains(cycle(5)));
    CHECK(! triangle_free.contains(complete(4)));
    auto tf5 = enumerate_graphs(5, &triangle_free);
    CHECK(tf5.size() == 14);
    HereditaryFamily same({complete(3).relabelled(std::vector<int>{1, 2, 0})});
    CHECK(same.hash() == triangle_free.hash());
    CHECK(HereditaryFamily().hash() == "all");
}

TEST_CASE("labelled class table")
{
    for (int k = 0; k <= 6; ++k) {
        const auto& classes = enumerate_graphs(k);
        std::vector<int> all(k);
        std::iota(all.begin(), all.end(), 0);
        for (size_t i = 0; i < classes.size(); ++i)
            CHECK(labelled_class(k, pair_bits_of(classes[i], all)) == static_cast<int>(i));
    }
}
