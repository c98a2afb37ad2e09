#include <flagalg/search.hpp>
#include <flagalg/rng.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace flagalg {

nlohmann::json ExtremalRecord::to_json() const
{
    nlohmann::json j;
    j["n"] = n;
    j["objective"] = objective;
    j["value"] = to_string(value);
    j["value_float"] = to_double(value);
    j["argmax"] = argmax;
    j["method"] = method;
    j["examined"] = examined;
    j["seed"] = seed;
    if (! extra.empty())
        j["extra"] = extra;
    return j;
}

ExtremalRecord ExtremalRecord::from_json(const nlohmann::json& j)
{
    ExtremalRecord r;
    r.n = j.at("n").get<int>();
    r.objective = j.at("objective").get<std::string>();
    r.value = parse_rational(j.at("value").get<std::string>());
    r.argmax = j.at("argmax").get<std::vector<std::string>>();
    r.method = j.at("method").get<std::string>();
    if (r.method != "exhaustive" && r.method != "heuristic")
        throw std::invalid_argument("ExtremalRecord: unknown method '" + r.method + "'");
    r.examined = j.value("examined", size_t{0});
    r.seed = j.value("seed", std::uint64_t{0});
    r.extra = j.value("extra", nlohmann::json::object());
    return r;
}

ExtremalRecord brute_max(const Objective& g, int n, const HereditaryFamily* family, int threads)
{
    if (n < g.kappa || n > 8)
        throw std::out_of_range("brute_max: n must satisfy kappa <= n <= 8");
    std::vector<Graph> graphs = family ? enumerate_graphs(n, family) : enumerate_graphs(n);
    std::vector<Rational> values(graphs.size());
    int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<int>(workers, static_cast<int>(std::max<size_t>(1, graphs.size() / 64)));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < graphs.size();)
            values[i] = lambda_eval(g, graphs[i]).total;
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();

    ExtremalRecord r;
    r.n = n;
    r.objective = g.descriptor;
    r.examined = graphs.size();
    if (graphs.empty())
        return r;
    r.value = *std::max_element(values.begin(), values.end());
    for (size_t i = 0; i < graphs.size(); ++i)
        if (values[i] == r.value)
            r.argmax.push_back(graph6_encode(graphs[i]));
    return r;
}

Integer split_formula_43(long n, long m)
{
    if (m < 0 || m > n)
        throw std::out_of_range("split_formula_43: need 0 <= m <= n");
    return Integer(m) * binomial(n - m, 3) + binomial(m, 3) * Integer(n - m);
}

Rational increment_formula(const Rational& n, const Rational& m)
{
    Rational r = (n - 2 * m - 1) * (4 * m * m - 4 * m * n + 4 * m + n * n - 5 * n + 6) / 6;
    r.canonicalize();
    return r;
}

std::vector<QuadExt> increment_roots(long n)
{
    Rational half(1, 2);
    QuadExt mid(Rational(n - 1) * half);
    QuadExt s(Rational(0), half, 3 * n - 5);
    std::vector<QuadExt> out{mid - s, mid, mid + s};
    std::sort(out.begin(), out.end());
    return out;
}

Graph sample_subgraph(const Graph& g, const Rational& p, std::uint64_t seed)
{
    if (p < 0 || p > 1)
        throw std::invalid_argument("sample_subgraph: p must lie in [0, 1]");
    // keep iff draw < ceil(p * 2^64)
    Integer scaled = Integer(p.get_num()) << 64;
    Integer threshold;
    mpz_cdiv_q(threshold.get_mpz_t(), scaled.get_mpz_t(), p.get_den_mpz_t());
    CounterRng rng(seed);
    Graph out(g.order());
    for (auto [u, v] : g.edges()) {
        Integer draw(static_cast<unsigned long>(rng.at(static_cast<std::uint64_t>(u) * 64 + v)));
        if (draw < threshold)
            out.add_edge(u, v);
    }
    return out;
}

nlohmann::json QuasirandomReport::to_json() const
{
    return {{"edge_density", to_string(edge_density)},
            {"c4_density", to_string(c4_density)},
            {"edge_deviation", edge_deviation},
            {"c4_deviation", c4_deviation},
            {"within", within}};
}

QuasirandomReport quasirandom_check(const Graph& g, const std::vector<int>& side, const Rational& c, double tol)
{
    int n = g.order();
    if (static_cast<int>(side.size()) != n)
        throw std::invalid_argument("quasirandom_check: one side label per vertex required");
    std::vector<int> a, b;
    std::uint64_t bmask = 0;
    for (int v = 0; v < n; ++v) {
        if (side[v] == 0)
            a.push_back(v);
        else if (side[v] == 1) {
            b.push_back(v);
            bmask |= bit(v);
        }
        else
            throw std::invalid_argument("quasirandom_check: sides must be 0 or 1");
    }
    if (a.empty() || b.empty())
        throw std::invalid_argument("quasirandom_check: both sides must be non-empty");
    // edges inside a side are invisible to part-preserving maps
    Integer cross = 0, c4 = 0;
    for (int x : a)
        cross += std::popcount(g.neighbours(x) & bmask);
    for (int x : a)
        for (int y : a) {
            long co = std::popcount(g.neighbours(x) & g.neighbours(y) & bmask);
            c4 += co * co;
        }
    Integer sa = static_cast<long>(a.size()), sb = static_cast<long>(b.size());
    QuasirandomReport r;
    r.edge_density = ratio(cross, sa * sb);
    r.c4_density = ratio(c4, sa * sa * sb * sb);
    Rational c4target = c * c * c * c;
    r.edge_deviation = std::abs(to_double(Rational(r.edge_density - c)));
    r.c4_deviation = std::abs(to_double(Rational(r.c4_density - c4target)));
    r.within = r.edge_deviation <= tol && r.c4_deviation <= tol;
    return r;
}

nlohmann::json EditResult::to_json() const
{
    return {{"value", value}, {"partition", partition}, {"exact", exact}, {"restarts", restarts}};
}

namespace {

bool target_pair(const Pattern& b, int pu, int pv)
{
    return pu == pv ? b.loop(pu) : b.adjacent(pu, pv);
}

struct BranchAndBound
{
    const Graph& g;
    const Pattern& b;
    int n, m;
    std::vector<int> cur, best;
    long best_cost = std::numeric_limits<long>::max();

    void run(int v, long cost)
    {
        if (cost >= best_cost)
            return;
        if (v == n) {
            best_cost = cost;
            best = cur;
            return;
        }
        for (int part = 0; part < m; ++part) {
            long add = 0;
            for (int u = 0; u < v; ++u)
                add += g.adjacent(u, v) != target_pair(b, cur[u], part);
            cur[v] = part;
            run(v + 1, cost + add);
        }
    }
};

} // namespace

long edit_cost(const Graph& g, const Pattern& b, const std::vector<int>& partition)
{
    int n = g.order();
    if (static_cast<int>(partition.size()) != n)
        throw std::invalid_argument("edit_cost: one part per vertex required");
    for (int p : partition)
        if (p < 0 || p >= b.order())
            throw std::invalid_argument("edit_cost: part index out of range");
    long cost = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            cost += g.adjacent(u, v) != target_pair(b, partition[u], partition[v]);
    return cost;
}

EditResult edit_distance_to_blowup(const Graph& g, const Pattern& b, EditMode mode, std::uint64_t seed)
{
    int n = g.order(), m = b.order();
    if (m < 1)
        throw std::invalid_argument("edit_distance_to_blowup: empty pattern");
    EditResult r;
    if (mode == EditMode::exact) {
        double space = std::pow(static_cast<double>(m), n);
        if (space > 1e7)
            throw std::out_of_range("edit_distance_to_blowup: exact mode needs m^n <= 10^7");
        BranchAndBound bb{g, b, n, m, std::vector<int>(n, 0), {}};
        bb.run(0, 0);
        r.value = bb.best_cost;
        r.partition = bb.best;
        r.exact = true;
        return r;
    }

    const int restarts = 32;
    CounterRng rng(seed);
    r.exact = false;
    r.restarts = restarts;
    r.value = std::numeric_limits<long>::max();
    for (int t = 0; t < restarts; ++t) {
        std::vector<int> part(n);
        for (auto& p : part)
            p = static_cast<int>(rng.below(m));
        long cost = edit_cost(g, b, part);
        for (bool moved = true; moved;) {
            moved = false;
            for (int v = 0; v < n; ++v) {
                auto local = [&](int pv) {
                    long c = 0;
                    for (int u = 0; u < n; ++u)
                        if (u != v)
                            c += g.adjacent(u, v) != target_pair(b, part[u], pv);
                    return c;
                };
                long here = local(part[v]);
                int best_part = part[v];
                long best = here;
                for (int p = 0; p < m; ++p) {
                    long c = local(p);
                    if (c < best)
                        best = c, best_part = p;
                }
                if (best < here) {
                    part[v] = best_part;
                    cost += best - here;
                    moved = true;
                }
            }
        }
        if (cost < r.value) {
            r.value = cost;
            r.partition = part;
        }
    }
    return r;
}

Rational flip_gain(const Objective& g, const Graph& G, int x, int y)
{
    int n = G.order(), k = g.kappa;
    if (x == y || x < 0 || y < 0 || x >= n || y >= n)
        throw std::invalid_argument("flip_gain: need two distinct vertices");
    if (k < 2 || n < k)
        return 0;
    Graph flipped = G;
    flipped.toggle_edge(x, y);
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (v != x && v != y)
            rest.push_back(v);
    // every kappa-subset containing both x and y
    Rational gain = 0;
    std::vector<int> pick(k - 2);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<int> verts(k);
    int r = static_cast<int>(rest.size()), t = k - 2;
    while (true) {
        verts[0] = x;
        verts[1] = y;
        for (int i = 0; i < t; ++i)
            verts[i + 2] = rest[pick[i]];
        int before = labelled_class(k, pair_bits_of(G, verts));
        int after = labelled_class(k, pair_bits_of(flipped, verts));
        if (before != after)
            gain += g.weights[after] - g.weights[before];
        int i = t - 1;
        while (i >= 0 && pick[i] == r - t + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < t; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return gain;
}

LocalSearchResult local_search(const Objective& g, const Graph& start, int budget, std::uint64_t seed)
{
    if (budget < 0)
        throw std::invalid_argument("local_search: budget must be non-negative");
    int n = start.order();
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    CounterRng rng(seed);
    for (size_t i = pairs.size(); i > 1; --i)
        std::swap(pairs[i - 1], pairs[rng.below(i)]);

    LocalSearchResult r;
    r.graph = start;
    r.start_value = lambda_eval(g, start).total;
    r.value = r.start_value;
    Graph cur = start;
    Rational value = r.value;
    // plateau moves are allowed, but a pair may not be flipped again within `tenure` moves
    int tenure = std::max(1, static_cast<int>(pairs.size()) / 4);
    std::vector<int> last(pairs.size(), -tenure - 1);
    const int kick = 3;
    int stale = 0;
    int moves = 0;
    while (moves < budget) {
        Rational best = 0;
        int improving = -1;
        std::vector<int> level;
        for (size_t i = 0; i < pairs.size(); ++i) {
            Rational d = flip_gain(g, cur, pairs[i].first, pairs[i].second);
            if (d > best)
                best = d, improving = static_cast<int>(i);
            else if (d == 0 && moves - last[i] > tenure)
                level.push_back(static_cast<int>(i));
        }
        int which = improving >= 0 ? improving : level.empty() ? -1 : level[rng.below(level.size())];
        if (which < 0) {
            // strict local maximum: restart from the best graph with a few random flips
            if (pairs.empty())
                break;
            cur = r.graph;
            value = r.value;
            int strength = std::min<int>(kick + stale, static_cast<int>(pairs.size()) / 2);
            for (int k = 0; k < strength && moves < budget; ++k) {
                size_t i = rng.below(pairs.size());
                value += flip_gain(g, cur, pairs[i].first, pairs[i].second);
                cur.toggle_edge(pairs[i].first, pairs[i].second);
                last[i] = moves++;
            }
            ++r.kicks;
            ++stale;
            continue;
        }
        cur.toggle_edge(pairs[which].first, pairs[which].second);
        value += best;
        last[which] = moves++;
        if (value > r.value) {
            r.value = value;
            r.graph = cur;
            r.flips = moves;
            stale = 0;
        }
    }
    bool improvable = false;
    for (auto [u, v] : pairs)
        if (flip_gain(g, r.graph, u, v) > 0) {
            improvable = true;
            break;
        }
    r.fixed_point = ! improvable;
    return r;
}

} // namespace flagalg
