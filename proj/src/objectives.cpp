#include <flagalg/objectives.hpp>

#include <bit>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace flagalg {

namespace {

Integer to_integer(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

/// Number of bijections V(H) -> V(F) with red pairs to edges and blue pairs to non-edges.
Integer colored_bijections(const ColoredGraph& h, const Graph& f)
{
    std::vector<int> p(h.order);
    std::iota(p.begin(), p.end(), 0);
    Integer count = 0;
    do {
        bool ok = true;
        for (auto [a, b] : h.red)
            ok = ok && f.adjacent(p[a], p[b]);
        for (auto [a, b] : h.blue)
            ok = ok && ! f.adjacent(p[a], p[b]);
        if (ok)
            ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

std::vector<Rational> weights_from(int kappa, auto&& fn)
{
    const auto& graphs = enumerate_graphs(kappa);
    std::vector<Rational> w;
    w.reserve(graphs.size());
    for (auto& f : graphs)
        w.push_back(fn(f));
    return w;
}

void check_kappa(int kappa)
{
    if (kappa < 2 || kappa > 10)
        throw std::invalid_argument("objective: kappa must lie in [2, 10]");
}

/// Number of kappa-subsets of G spanning exactly ell edges.
Integer count_edge_subsets(const Graph& G, int kappa, int ell)
{
    int n = G.order();
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int pos, int start, std::uint64_t chosen, int edges) -> void {
        if (pos == kappa) {
            count += edges == ell;
            return;
        }
        for (int v = start; v <= n - (kappa - pos); ++v) {
            int e = edges + std::popcount(G.neighbours(v) & chosen);
            if (e > ell)
                continue;
            self(self, pos + 1, v + 1, chosen | bit(v), e);
        }
    };
    rec(rec, 0, 0, 0, 0);
    return to_integer(count);
}

std::pair<int, int> normalized(std::pair<int, int> e)
{
    if (e.first > e.second)
        std::swap(e.first, e.second);
    return e;
}

} // namespace

ColoredGraph::ColoredGraph(int n, std::vector<std::pair<int, int>> red_edges, std::vector<std::pair<int, int>> blue_edges)
    : order(n), red(std::move(red_edges)), blue(std::move(blue_edges))
{
    Graph r(n), b(n);
    for (auto& e : red) {
        e = normalized(e);
        r.add_edge(e.first, e.second);
    }
    for (auto& e : blue) {
        e = normalized(e);
        if (r.adjacent(e.first, e.second))
            throw std::invalid_argument("ColoredGraph: a pair cannot be both red and blue");
        b.add_edge(e.first, e.second);
    }
    red = r.edges();
    blue = b.edges();
}

Graph ColoredGraph::red_graph() const { return Graph(order, red); }
Graph ColoredGraph::blue_graph() const { return Graph(order, blue); }

const Rational& Objective::weight(const Graph& f) const
{
    if (f.order() != kappa)
        throw std::invalid_argument("Objective::weight: graph order differs from kappa");
    return weights[graph_index(f)];
}

Objective gamma_edge(int kappa, int ell)
{
    check_kappa(kappa);
    if (ell < 0 || ell > kappa * (kappa - 1) / 2)
        throw std::invalid_argument("gamma_edge: ell out of range");
    Objective g;
    g.kind = ObjectiveKind::edge;
    g.kappa = kappa;
    g.ell = ell;
    g.weights = weights_from(kappa, [&](const Graph& f) { return Rational(f.edge_count() == ell ? 1 : 0); });
    g.descriptor = "edge:" + std::to_string(kappa) + "," + std::to_string(ell);
    return g;
}

Objective gamma_graph(const Graph& f)
{
    check_kappa(f.order());
    Objective g;
    g.kind = ObjectiveKind::graph;
    g.kappa = f.order();
    g.target = canonical_graph(f);
    std::string key = graph6_encode(g.target);
    g.weights = weights_from(g.kappa, [&](const Graph& x) { return Rational(graph6_encode(x) == key ? 1 : 0); });
    g.descriptor = "graph:" + key;
    return g;
}

Objective gamma_semi(const ColoredGraph& h)
{
    check_kappa(h.order);
    Objective g;
    g.kind = ObjectiveKind::semi;
    g.kappa = h.order;
    g.colored = h;
    Integer kf = factorial(h.order);
    g.weights = weights_from(g.kappa, [&](const Graph& f) {
        Rational w(colored_bijections(h, f), kf);
        w.canonicalize();
        return w;
    });
    g.descriptor = "semi:" + graph6_encode(h.red_graph()) + "/" + graph6_encode(h.blue_graph());
    return g;
}

Objective gamma_custom(int kappa, std::vector<Rational> weights, std::string descriptor)
{
    check_kappa(kappa);
    if (weights.size() != enumerate_graphs(kappa).size())
        throw std::invalid_argument("gamma_custom: need one weight per graph on kappa vertices");
    Objective g;
    g.kind = ObjectiveKind::custom;
    g.kappa = kappa;
    g.weights = std::move(weights);
    g.descriptor = std::move(descriptor);
    return g;
}

Objective complement_objective(const Objective& g)
{
    switch (g.kind) {
    case ObjectiveKind::edge:
        return gamma_edge(g.kappa, g.kappa * (g.kappa - 1) / 2 - g.ell);
    case ObjectiveKind::graph:
        return gamma_graph(g.target.complement());
    case ObjectiveKind::semi:
        return gamma_semi(ColoredGraph(g.colored.order, g.colored.blue, g.colored.red));
    case ObjectiveKind::custom:
        break;
    }
    const auto& graphs = enumerate_graphs(g.kappa);
    std::vector<Rational> w;
    for (auto& f : graphs)
        w.push_back(g.weights[graph_index(f.complement())]);
    return gamma_custom(g.kappa, std::move(w), "complement(" + g.descriptor + ")");
}

Objective parse_objective(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("objective: expected kind:params, got '" + text + "'");
    std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
    if (kind == "edge") {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("objective: edge needs K,L");
        size_t p1 = 0, p2 = 0;
        int k = std::stoi(rest.substr(0, comma), &p1);
        int l = std::stoi(rest.substr(comma + 1), &p2);
        if (p1 != comma || p2 != rest.size() - comma - 1)
            throw std::invalid_argument("objective: malformed edge parameters");
        return gamma_edge(k, l);
    }
    if (kind == "graph")
        return gamma_graph(graph6_decode(rest));
    if (kind == "semi") {
        auto slash = rest.find('/');
        if (slash == std::string::npos)
            throw std::invalid_argument("objective: semi needs <red>/<blue>");
        Graph red = graph6_decode(rest.substr(0, slash));
        Graph blue = graph6_decode(rest.substr(slash + 1));
        if (red.order() != blue.order())
            throw std::invalid_argument("objective: red and blue graphs differ in order");
        return gamma_semi(ColoredGraph(red.order(), red.edges(), blue.edges()));
    }
    if (kind == "custom") {
        std::ifstream in(rest);
        if (! in)
            throw std::invalid_argument("objective: cannot open " + rest);
        nlohmann::json j = nlohmann::json::parse(in);
        if (! j.contains("kind"))
            j["kind"] = "custom";
        auto g = objective_from_json(j);
        if (g.kind == ObjectiveKind::custom)
            g.descriptor = text;
        return g;
    }
    throw std::invalid_argument("objective: unknown kind '" + kind + "'");
}

nlohmann::json objective_to_json(const Objective& g)
{
    nlohmann::json j;
    j["kappa"] = g.kappa;
    j["descriptor"] = g.descriptor;
    switch (g.kind) {
    case ObjectiveKind::edge:
        j["kind"] = "edge";
        j["params"] = {{"ell", g.ell}};
        break;
    case ObjectiveKind::graph:
        j["kind"] = "graph";
        j["params"] = {{"graph6", graph6_encode(g.target)}};
        break;
    case ObjectiveKind::semi:
        j["kind"] = "semi";
        j["params"] = {{"red", graph6_encode(g.colored.red_graph())}, {"blue", graph6_encode(g.colored.blue_graph())}};
        break;
    case ObjectiveKind::custom: {
        j["kind"] = "custom";
        j["params"] = nlohmann::json::object();
        auto& w = j["weights"] = nlohmann::json::array();
        for (auto& x : g.weights)
            w.push_back(to_string(x));
        break;
    }
    }
    return j;
}

Objective objective_from_json(const nlohmann::json& j)
{
    std::string kind = j.at("kind").get<std::string>();
    int kappa = j.at("kappa").get<int>();
    Objective g;
    if (kind == "edge")
        g = gamma_edge(kappa, j.at("params").at("ell").get<int>());
    else if (kind == "graph")
        g = gamma_graph(graph6_decode(j.at("params").at("graph6").get<std::string>()));
    else if (kind == "semi") {
        Graph red = graph6_decode(j.at("params").at("red").get<std::string>());
        Graph blue = graph6_decode(j.at("params").at("blue").get<std::string>());
        if (red.order() != blue.order())
            throw std::invalid_argument("objective: red and blue graphs differ in order");
        g = gamma_semi(ColoredGraph(red.order(), red.edges(), blue.edges()));
    }
    else if (kind == "custom") {
        const auto& w = j.at("weights");
        std::vector<Rational> weights;
        if (w.is_array()) {
            for (auto& x : w)
                weights.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
        }
        else if (w.is_object()) {
            check_kappa(kappa);
            weights.assign(enumerate_graphs(kappa).size(), 0);
            for (auto& [key, x] : w.items()) {
                Graph f = graph6_decode(key);
                if (f.order() != kappa)
                    throw std::invalid_argument("objective: weight key has wrong order");
                weights[graph_index(f)] = x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>());
            }
        }
        else
            throw std::invalid_argument("objective: weights must be a list or an object");
        g = gamma_custom(kappa, std::move(weights), j.value("descriptor", std::string("custom")));
    }
    else
        throw std::invalid_argument("objective: unknown kind '" + kind + "'");
    if (g.kappa != kappa)
        throw std::invalid_argument("objective: kappa does not match parameters");
    return g;
}

Integer count_colored_injections(const ColoredGraph& h, const Graph& G)
{
    int k = h.order, n = G.order();
    if (k > n)
        return 0;
    if (k == 0)
        return 1;
    Graph red = h.red_graph(), blue = h.blue_graph();
    std::vector<int> phi(k);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, int pos, std::uint64_t used) -> void {
        std::uint64_t cand = low_bits(n) & ~used;
        for (int i = 0; i < pos; ++i) {
            if (red.adjacent(i, pos))
                cand &= G.neighbours(phi[i]);
            else if (blue.adjacent(i, pos))
                cand &= ~G.neighbours(phi[i]);
        }
        if (pos == k - 1) {
            total += std::popcount(cand);
            return;
        }
        while (cand) {
            int v = std::countr_zero(cand);
            cand &= cand - 1;
            phi[pos] = v;
            self(self, pos + 1, used | bit(v));
        }
    };
    rec(rec, 0, 0);
    return to_integer(total);
}

LambdaValue lambda_eval(const Objective& g, const Graph& G)
{
    int n = G.order(), k = g.kappa;
    if (n < k)
        throw std::invalid_argument("lambda_eval: graph has fewer than kappa vertices");
    Integer subsets = binomial(n, k);
    LambdaValue out;
    switch (g.kind) {
    case ObjectiveKind::edge:
        out.total = Rational(count_edge_subsets(G, k, g.ell));
        break;
    case ObjectiveKind::graph:
        out.total = Rational(count_induced(g.target, G));
        break;
    case ObjectiveKind::semi: {
        // injections = sum_F P(F,G) * bijections(H,F) = kappa! * sum_F w(F) P(F,G)
        out.total = Rational(count_colored_injections(g.colored, G), factorial(k));
        out.total.canonicalize();
        break;
    }
    case ObjectiveKind::custom: {
        auto prof = induced_profile(G, k);
        out.total = 0;
        for (size_t i = 0; i < prof.size(); ++i)
            if (g.weights[i] != 0)
                out.total += g.weights[i] * prof[i];
        break;
    }
    }
    out.density = out.total / subsets;
    out.density.canonicalize();
    return out;
}

Rational lambda_vertex(const Objective& g, const Graph& G, int u)
{
    int n = G.order(), k = g.kappa;
    if (u < 0 || u >= n)
        throw std::invalid_argument("lambda_vertex: vertex out of range");
    if (n < k)
        throw std::invalid_argument("lambda_vertex: graph has fewer than kappa vertices");
    std::vector<int> sub(k);
    sub[0] = u;
    Rational total = 0;
    std::unordered_map<std::string, int> idx;
    if (k > 7) {
        const auto& classes = enumerate_graphs(k);
        for (size_t i = 0; i < classes.size(); ++i)
            idx.emplace(graph6_encode(classes[i]), static_cast<int>(i));
    }
    std::vector<Integer> counts(g.weights.size(), 0);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == k) {
            int c = k <= 7 ? labelled_class(k, pair_bits_of(G, sub)) : idx.at(canonical_key(G.induced(sub)));
            ++counts[c];
            return;
        }
        for (int v = start; v < n; ++v) {
            if (v == u)
                continue;
            sub[pos] = v;
            self(self, pos + 1, v + 1);
        }
    };
    rec(rec, 1, 0);
    for (size_t i = 0; i < counts.size(); ++i)
        if (g.weights[i] != 0)
            total += g.weights[i] * counts[i];
    return total;
}

Rational embedding_density(const Graph& f, const Graph& G)
{
    if (f.order() > G.order())
        throw std::invalid_argument("embedding_density: pattern larger than host");
    Rational r(count_embeddings(f, G), falling_factorial(G.order(), f.order()));
    r.canonicalize();
    return r;
}

} // namespace flagalg
