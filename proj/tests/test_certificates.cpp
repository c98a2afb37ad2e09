#include <doctest.h>

#include <flagalg/certificates.hpp>
#include <flagalg/rng.hpp>

#include "oracles.hpp"

#include <filesystem>

using namespace flagalg;

namespace {

Graph random_graph(CounterRng& rng, int n, double p = 0.5)
{
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p)
                g.add_edge(i, j);
    return g;
}

// Right side of the identity rebuilt from expand_product, independent of the product table.
std::vector<Rational> oracle_quadratic(const Certificate& c, const ProductTable& table)
{
    std::vector<Rational> rhs(table.graphs.size(), 0);
    for (auto& blk : c.blocks) {
        Graph ct;
        FlagBasis basis = enumerate_flags(canonical_graph(blk.type), (c.N + blk.type.order()) / 2);
        auto y = aligned_matrix(blk, basis, &ct);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                const QuadExt& x = y(static_cast<int>(i), static_cast<int>(j));
                if (is_zero(x))
                    continue;
                auto coef = expand_product(basis.type(), basis[i], basis[j], c.N);
                for (size_t h = 0; h < rhs.size(); ++h)
                    rhs[h] += x.a() * coef[h];
            }
    }
    return rhs;
}

} // namespace

TEST_CASE("trivial certificates verify in both senses")
{
    for (int N : {4, 5, 6}) {
        auto up = trivial_certificate(gamma_edge(4, 3), N);
        CHECK(verify(up).verified());
        auto low = trivial_certificate(gamma_edge(4, 3), N, "lower");
        CHECK(verify(low).verified());
        CHECK(low.bound == 0);
    }
    auto up = trivial_certificate(gamma_edge(3, 1), 3);
    CHECK(up.bound == Rational(1));
    CHECK(verify(up).verified());
}

TEST_CASE("refutation kinds")
{
    auto table = build_product_table(5);
    auto c = oracle::random_certificate(gamma_edge(4, 3), 5, table, 3);
    REQUIRE(verify(c, &table).verified());

    auto neg = c;
    neg.slacks[7] = QuadExt(Rational(-1, 1000000));
    auto v = verify(neg, &table);
    CHECK(v.kind == RefutationKind::negative_slack);
    CHECK(v.index == 7);

    auto mismatch = c;
    mismatch.slacks[3] += QuadExt(Rational(1, 1000000));
    v = verify(mismatch, &table);
    CHECK(v.kind == RefutationKind::identity_mismatch);
    CHECK(v.index == 3);
    CHECK(v.graph6 == graph6_encode(table.graphs[3]));
    // the detail is enough to recheck by hand
    auto terms = identity_terms(mismatch, table);
    CHECK(parse_quadext(v.lhs) == mismatch.bound - terms.lambda[3]);
    CHECK(parse_quadext(v.rhs) == terms.quadratic[3] + mismatch.slacks[3]);

    auto npsd = c;
    npsd.blocks[0].matrix(0, 0) = QuadExt(-1);
    v = verify(npsd, &table);
    CHECK(v.kind == RefutationKind::not_psd);
    std::vector<QuadExt> w;
    for (auto& s : v.witness)
        w.push_back(parse_quadext(s));
    CHECK(quadratic_form(npsd.blocks[0].matrix, w) < QuadExt(0));
}

TEST_CASE("identity matches the independent expansion oracle")
{
    for (int N : {4, 5}) {
        auto table = build_product_table(N);
        auto c = oracle::random_certificate(gamma_edge(4, 2), N, table, 11 + N);
        auto terms = identity_terms(c, table);
        auto oracle = oracle_quadratic(c, table);
        for (size_t h = 0; h < oracle.size(); ++h)
            CHECK(terms.quadratic[h] == QuadExt(oracle[h]));
    }
}

TEST_CASE("mutations are detected")
{
    auto table = build_product_table(5);
    auto c = oracle::random_certificate(gamma_edge(5, 4), 5, table, 9);
    REQUIRE(verify(c, &table).verified());
    CounterRng rng(42);
    int refuted = 0, still_valid = 0;
    Rational delta(1, 1000000);
    for (int t = 0; t < 200; ++t) {
        auto m = c;
        Rational d = rng.below(2) ? delta : Rational(-delta);
        int what = static_cast<int>(rng.below(3));
        if (what == 0)
            m.bound += QuadExt(d);
        else if (what == 1)
            m.slacks[rng.below(m.slacks.size())] += QuadExt(d);
        else {
            auto& blk = m.blocks[rng.below(m.blocks.size())];
            int i = static_cast<int>(rng.below(blk.flags.size())), j = static_cast<int>(rng.below(blk.flags.size()));
            blk.matrix(i, j) += QuadExt(d);
            if (i != j)
                blk.matrix(j, i) += QuadExt(d);
        }
        if (! verify(m, &table).verified())
            ++refuted;
        else {
            // a mutation that survives must genuinely satisfy the identity
            auto s = implied_slacks(m, table);
            CHECK(s == m.slacks);
            ++still_valid;
        }
    }
    CHECK(refuted >= 198);
    CHECK(refuted + still_valid == 200);
}

TEST_CASE("certificate JSON round trip and malformed input")
{
    auto table = build_product_table(4);
    auto c = oracle::random_certificate(gamma_edge(3, 1), 4, table, 5);
    auto j = certificate_to_json(c);
    auto r = certificate_from_json(j);
    CHECK(verify(r, &table).verified());
    CHECK(r.bound == c.bound);
    CHECK(r.slacks == c.slacks);

    auto path = std::filesystem::temp_directory_path() / "flagalg_cert_test.json";
    save_certificate(c, path.string());
    CHECK(verify(load_certificate(path.string()), &table).verified());
    std::filesystem::remove(path);

    auto bad = j;
    bad["normalization"] = "other";
    CHECK_THROWS_AS(certificate_from_json(bad), CertificateError);
    bad = j;
    bad["slacks"].erase(0);
    CHECK_THROWS_AS(verify(certificate_from_json(bad), &table), CertificateError);
    bad = j;
    bad["types"][0]["matrix"][0].erase(0);
    CHECK_THROWS_AS(certificate_from_json(bad), CertificateError);
    bad = j;
    bad["bound"] = "1+sqrt(2)";
    CHECK_THROWS_AS(certificate_from_json(bad), CertificateError);
    bad = j;
    bad["types"][0]["matrix"][0][1] = "5";
    CHECK_THROWS_AS(certificate_from_json(bad), CertificateError);
    CHECK_THROWS_AS(load_certificate("/nonexistent/cert.json"), CertificateError);

    // LDL form: X = L D L^T
    auto ldl = j;
    int n = static_cast<int>(c.blocks[0].flags.size());
    nlohmann::json L = nlohmann::json::array(), D = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < n; ++k)
            row.push_back(i == k ? "1" : "0");
        L.push_back(row);
        D.push_back("1/3");
    }
    ldl["types"][0].erase("matrix");
    ldl["types"][0]["ldl"] = {{"L", L}, {"D", D}};
    auto lc = certificate_from_json(ldl);
    CHECK(lc.blocks[0].matrix(0, 0) == QuadExt(Rational(1, 3)));
}

TEST_CASE("relabelled types and flags are accepted")
{
    auto table = build_product_table(5);
    auto c = oracle::random_certificate(gamma_edge(4, 3), 5, table, 21);
    // relabel every q = 3 block type by a rotation and move the flags along
    for (auto& blk : c.blocks) {
        int q = blk.type.order();
        if (q != 3)
            continue;
        std::vector<int> rot{1, 2, 0};
        blk.type = blk.type.relabelled(rot);
        for (auto& f : blk.flags) {
            std::vector<int> roots(q);
            for (int i = 0; i < q; ++i)
                roots[i] = f.roots[rot[i]];
            f.roots = roots;
        }
    }
    CHECK(verify(c, &table).verified());
}

TEST_CASE("quadratic field certificates")
{
    auto c = trivial_certificate(gamma_edge(3, 1), 4);
    c.field_d = 2;
    QuadExt shift(Rational(0), Rational(1, 10), 2);
    c.bound += shift;
    for (auto& s : c.slacks)
        s += shift;
    CHECK(verify(c).verified());
    auto r = certificate_from_json(certificate_to_json(c));
    CHECK(verify(r).verified());
    c.slacks[0] -= shift * QuadExt(20);
    CHECK(verify(c).kind == RefutationKind::negative_slack);
}

TEST_CASE("slack queries")
{
    auto c = trivial_certificate(gamma_edge(4, 3), 5);
    auto all = slack_query(c, [](const Graph&) { return true; });
    REQUIRE(all.minimum);
    CHECK(*all.minimum == QuadExt(0));
    auto none = slack_query(c, [](const Graph&) { return false; });
    CHECK(! none.minimum);
    CHECK(none.matched == 0);
    auto dense = slack_query(c, [](const Graph& g) { return g.edge_count() == 10; });
    CHECK(dense.matched == 1);
    CHECK(*dense.minimum == c.bound);
}

TEST_CASE("degree functional")
{
    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(degree_functional(star, 0, 1) == 1);
    CHECK(degree_functional(star, 1, 0) == -1);
    Graph c6(6);
    for (int i = 0; i < 6; ++i)
        c6.add_edge(i, (i + 1) % 6);
    CHECK(degree_functional(c6, 0, 3) == 0);
    CHECK_THROWS(degree_functional(Graph(2), 0, 1));
    CHECK_THROWS(degree_functional(star, 2, 2));
    CounterRng rng(77);
    for (int t = 0; t < 500; ++t) {
        int n = 3 + static_cast<int>(rng.below(10));
        Graph g = random_graph(rng, n);
        int u0 = static_cast<int>(rng.below(n)), u1 = static_cast<int>(rng.below(n - 1));
        if (u1 >= u0)
            ++u1;
        CHECK(degree_functional(g, u0, u1) == ratio(g.degree(u0) - g.degree(u1), n - 2));
    }
}

TEST_CASE("diagnose")
{
    auto table = build_product_table(5);
    auto c = oracle::random_certificate(gamma_edge(4, 3), 5, table, 2);
    CHECK_THROWS(diagnose(c, Graph(6), 0, Rational(0)));
    CounterRng rng(5);
    Graph g = random_graph(rng, 8);
    auto big = diagnose(c, g, 0, Rational(1000));
    CHECK(big.empty());
    auto tiny = diagnose(c, g, 0, Rational(1, 1000000));
    CHECK(! tiny.empty());
    for (auto& h : tiny)
        CHECK(h.norm >= 1e-6);
}

TEST_CASE("construction kernel vectors")
{
    auto kv = construction_kernel_vectors(parse_pattern("K2"), {Rational(1, 2), Rational(1, 2)}, Graph(1), 2);
    REQUIRE(kv.vectors.size() == 2);
    for (auto& v : kv.vectors) {
        REQUIRE(v.size() == 2);
        CHECK(exact_equal(v[0], Rational(1, 2)));
        CHECK(exact_equal(v[1], Rational(1, 2)));
    }
    auto kv2 = construction_kernel_vectors(parse_pattern("3:01,22"), {Rational(1, 5), Rational(1, 5), Rational(3, 5)},
                                           Graph(3, {{0, 1}, {0, 2}}), 5);
    CHECK(kv2.assignments.size() == 2);
    for (auto& v : kv2.vectors) {
        Rational s = 0;
        for (auto& x : v)
            s += std::get<Rational>(x);
        CHECK(s == 1);
    }
    CHECK_THROWS(construction_kernel_vectors(parse_pattern("K2"), {Rational(1, 2)}, Graph(1), 2));
}

TEST_CASE("kernel subspace triviality")
{
    auto id = ExactMatrix<Rational>::identity(4);
    CHECK(kernel_subspace_triviality(id, {0, 2, 3}));
    ExactMatrix<Rational> zero(4, 4);
    CHECK(! kernel_subspace_triviality(zero, {1}));
    CHECK(kernel_subspace_triviality(zero, {}));
    ExactMatrix<Rational> m(3, 3);
    m(0, 0) = m(1, 1) = 1;
    m(0, 1) = m(1, 0) = 1; // kernel spanned by e0 - e1 and e2
    CHECK(! kernel_subspace_triviality(m, {0, 1}));
    CHECK(kernel_subspace_triviality(m, {0}));
    CHECK(! kernel_subspace_triviality(m, {2}));
}

TEST_CASE("stability finite checks")
{
    // (5,4): B two loops, tau = (3,{01})
    StabilityInput in;
    in.pattern = parse_pattern("L2");
    in.tau = Graph(3, {{0, 1}});
    auto rep = check_stability(in);
    CHECK(rep.get("2b").state == CheckState::pass);
    CHECK(rep.get("2c").state == CheckState::pass);
    CHECK(rep.get("1").state == CheckState::not_checked);
    CHECK(rep.get("theorem").state == CheckState::not_checked);

    // (5,3): edge plus loop, cherry
    in.pattern = parse_pattern("3:01,22");
    in.tau = Graph(3, {{0, 1}, {0, 2}});
    rep = check_stability(in);
    CHECK(rep.get("2b").state == CheckState::pass);
    CHECK(rep.get("2c").state == CheckState::pass);

    // (4,2): 2K3 with tau = K3 + K2
    in.pattern = parse_pattern("6:01,02,12,34,35,45");
    in.tau = Graph(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    rep = check_stability(in);
    CHECK(rep.get("2b").state == CheckState::pass);
    CHECK(rep.get("2c").state == CheckState::pass);

    // twin vertices: identical traces
    in.pattern = parse_pattern("3:02,12");
    in.tau = Graph(1);
    CHECK(check_stability(in).get("2c").state == CheckState::fail);

    // asymmetric pattern with several hom orbits for K2
    in.pattern = parse_pattern("3:00,01,22");
    in.tau = Graph(2, {{0, 1}});
    CHECK(check_stability(in).get("2b").state == CheckState::fail);

    // with a certificate: the trivial one for (5,4) does not have u = 5/8
    auto c = trivial_certificate(gamma_edge(5, 4), 5);
    in.cert = &c;
    in.pattern = parse_pattern("L2");
    in.ratios = {Rational(1, 2), Rational(1, 2)};
    in.tau = Graph(3, {{0, 1}});
    rep = check_stability(in);
    CHECK(rep.get("1").state == CheckState::fail);
    CHECK(rep.get("i").state == CheckState::fail);
}
