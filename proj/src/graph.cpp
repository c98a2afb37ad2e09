#include <flagalg/graph.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace flagalg {

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

std::uint64_t low_bits(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

Graph::Graph(int n) : n_(n), adj_(n, 0)
{
    if (n < 0 || n > max_order)
        throw std::invalid_argument("Graph: order must lie in [0, 64]");
}

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : Graph(n)
{
    for (auto [u, v] : edges)
        add_edge(u, v);
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges) : Graph(n)
{
    for (auto [u, v] : edges)
        add_edge(u, v);
}

void Graph::check_pair(int u, int v) const
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("Graph: vertex out of range");
    if (u == v)
        throw std::invalid_argument("Graph: loops are not allowed");
}

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::edge_count() const
{
    int s = 0;
    for (auto a : adj_)
        s += std::popcount(a);
    return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v))
                out.emplace_back(u, v);
    return out;
}

void Graph::add_edge(int u, int v) { set_edge(u, v, true); }
void Graph::remove_edge(int u, int v) { set_edge(u, v, false); }

void Graph::set_edge(int u, int v, bool present)
{
    check_pair(u, v);
    if (present) {
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }
    else {
        adj_[u] &= ~bit(v);
        adj_[v] &= ~bit(u);
    }
}

void Graph::toggle_edge(int u, int v) { set_edge(u, v, ! adjacent(u, v)); }

Graph Graph::induced(std::span<const int> vertices) const
{
    Graph h(static_cast<int>(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (adjacent(vertices[i], vertices[j])) {
                h.adj_[i] |= bit(static_cast<int>(j));
                h.adj_[j] |= bit(static_cast<int>(i));
            }
    return h;
}

Graph Graph::relabelled(std::span<const int> order) const
{
    if (static_cast<int>(order.size()) != n_)
        throw std::invalid_argument("Graph::relabelled: order must be a permutation");
    return induced(order);
}

Graph Graph::complement() const
{
    Graph h(n_);
    for (int v = 0; v < n_; ++v)
        h.adj_[v] = ~adj_[v] & low_bits(n_) & ~bit(v);
    return h;
}

Graph Graph::disjoint_union(const Graph& other) const
{
    Graph h(n_ + other.n_);
    for (int v = 0; v < n_; ++v)
        h.adj_[v] = adj_[v];
    for (int v = 0; v < other.n_; ++v)
        h.adj_[n_ + v] = other.adj_[v] << n_;
    return h;
}

bool operator==(const Graph& a, const Graph& b)
{
    return a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b);
}

std::string graph6_encode(const Graph& g)
{
    int n = g.order();
    std::string out;
    if (n < 63)
        out.push_back(static_cast<char>(n + 63));
    else {
        out.push_back(126);
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, nb = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++nb == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = nb = 0;
            }
        }
    if (nb > 0)
        out.push_back(static_cast<char>((acc << (6 - nb)) + 63));
    return out;
}

Graph graph6_decode(std::string_view text)
{
    while (! text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.starts_with(">>graph6<<"))
        text.remove_prefix(10);
    if (text.empty())
        throw std::invalid_argument("graph6: empty string");
    for (char c : text)
        if (c < 63 || c > 126)
            throw std::invalid_argument("graph6: invalid character");
    size_t pos = 0;
    int n;
    if (text[0] != 126) {
        n = text[0] - 63;
        pos = 1;
    }
    else {
        if (text.size() < 4 || text[1] == 126)
            throw std::invalid_argument("graph6: unsupported order header");
        n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
        pos = 4;
    }
    if (n > Graph::max_order)
        throw std::invalid_argument("graph6: order exceeds 64");
    size_t nbits = static_cast<size_t>(n) * (n - 1) / 2;
    if (text.size() - pos != (nbits + 5) / 6)
        throw std::invalid_argument("graph6: wrong length for order " + std::to_string(n));
    Graph g(n);
    size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int byte = text[pos + k / 6] - 63;
            if ((byte >> (5 - k % 6)) & 1)
                g.add_edge(i, j);
        }
    return g;
}

namespace {

using Cells = std::vector<std::vector<int>>;

struct BitString
{
    std::vector<std::uint64_t> words;
    size_t nbits = 0;
};

// Column-ordered upper-triangle bits of the relabelled graph, first `limit` bits only.
BitString leaf_bits(const Graph& g, const std::vector<int>& order, size_t limit)
{
    BitString b;
    b.nbits = limit;
    b.words.assign((limit + 63) / 64, 0);
    size_t k = 0;
    int n = static_cast<int>(order.size());
    for (int j = 1; j < n && k < limit; ++j) {
        std::uint64_t row = g.neighbours(order[j]);
        for (int i = 0; i < j && k < limit; ++i, ++k)
            if ((row >> order[i]) & 1U)
                b.words[k / 64] |= std::uint64_t{1} << (63 - k % 64);
    }
    return b;
}

// Compares the first `limit` bits of two bit strings.
int compare_prefix(const BitString& a, const BitString& b, size_t limit)
{
    size_t full = limit / 64;
    for (size_t w = 0; w < full; ++w)
        if (a.words[w] != b.words[w])
            return a.words[w] < b.words[w] ? -1 : 1;
    size_t rest = limit % 64;
    if (rest) {
        std::uint64_t mask = ~std::uint64_t{0} << (64 - rest);
        std::uint64_t x = a.words[full] & mask, y = b.words[full] & mask;
        if (x != y)
            return x < y ? -1 : 1;
    }
    return 0;
}

void refine(const Graph& g, Cells& cells)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t w = 0; w < cells.size() && ! changed; ++w) {
            std::uint64_t mask = 0;
            for (int v : cells[w])
                mask |= bit(v);
            for (size_t c = 0; c < cells.size(); ++c) {
                auto& cell = cells[c];
                if (cell.size() == 1)
                    continue;
                int first = std::popcount(g.neighbours(cell[0]) & mask);
                bool uniform = true;
                for (size_t i = 1; i < cell.size() && uniform; ++i)
                    uniform = std::popcount(g.neighbours(cell[i]) & mask) == first;
                if (uniform)
                    continue;
                std::map<int, std::vector<int>> groups;
                for (int v : cell)
                    groups[std::popcount(g.neighbours(v) & mask)].push_back(v);
                Cells replacement;
                for (auto& [cnt, vs] : groups)
                    replacement.push_back(std::move(vs));
                cells.erase(cells.begin() + c);
                cells.insert(cells.begin() + c, replacement.begin(), replacement.end());
                changed = true;
                break;
            }
        }
    }
}

Cells initial_cells(int n, std::span<const int> colours)
{
    Cells cells;
    if (n == 0)
        return cells;
    if (colours.empty()) {
        cells.emplace_back(n);
        std::iota(cells[0].begin(), cells[0].end(), 0);
        return cells;
    }
    if (static_cast<int>(colours.size()) != n)
        throw std::invalid_argument("canonical_form: colour list has wrong length");
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < n; ++v)
        by[colours[v]].push_back(v);
    for (auto& [c, vs] : by)
        cells.push_back(std::move(vs));
    return cells;
}

int leading_singletons(const Cells& cells)
{
    int k = 0;
    for (auto& c : cells) {
        if (c.size() != 1)
            break;
        ++k;
    }
    return k;
}

bool discrete(const Cells& cells, int n) { return static_cast<int>(cells.size()) == n; }

int target_cell(const Cells& cells)
{
    int best = -1;
    for (size_t c = 0; c < cells.size(); ++c)
        if (cells[c].size() > 1 && (best < 0 || cells[c].size() < cells[best].size()))
            best = static_cast<int>(c);
    return best;
}

Cells individualize(const Cells& cells, int c, int v)
{
    Cells out;
    out.reserve(cells.size() + 1);
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        if (i != c) {
            out.push_back(cells[i]);
            continue;
        }
        out.push_back({v});
        std::vector<int> rest;
        for (int u : cells[i])
            if (u != v)
                rest.push_back(u);
        out.push_back(std::move(rest));
    }
    return out;
}

std::vector<int> flatten(const Cells& cells)
{
    std::vector<int> order;
    for (auto& c : cells)
        order.insert(order.end(), c.begin(), c.end());
    return order;
}

size_t pairs(int k) { return static_cast<size_t>(k) * (k - 1) / 2; }

struct Orbits
{
    std::vector<int> parent;
    explicit Orbits(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

Orbits orbits_fixing(int n, const std::vector<std::vector<int>>& gens, const std::vector<int>& fixed)
{
    Orbits o(n);
    for (auto& g : gens) {
        bool fixes = true;
        for (int f : fixed)
            if (g[f] != f) {
                fixes = false;
                break;
            }
        if (! fixes)
            continue;
        for (int v = 0; v < n; ++v)
            o.unite(v, g[v]);
    }
    return o;
}

class CanonSearch
{
    public:
        explicit CanonSearch(const Graph& g) : g_(g), n_(g.order()), total_(pairs(g.order())) {}

        void run(Cells cells)
        {
            std::vector<int> fixed;
            search(std::move(cells), fixed);
        }

        std::vector<int> best_order;
        std::vector<std::vector<int>> generators;

    private:
        void search(Cells cells, std::vector<int>& fixed)
        {
            refine(g_, cells);
            if (have_best_) {
                int k = leading_singletons(cells);
                size_t lim = pairs(k);
                if (lim > 0) {
                    auto pre = leaf_bits(g_, flatten(cells), lim);
                    if (compare_prefix(pre, best_bits_, lim) > 0)
                        return;
                }
            }
            if (discrete(cells, n_)) {
                auto order = flatten(cells);
                auto bits = leaf_bits(g_, order, total_);
                int c = have_best_ ? compare_prefix(bits, best_bits_, total_) : -1;
                if (c < 0) {
                    have_best_ = true;
                    best_bits_ = std::move(bits);
                    best_order = std::move(order);
                }
                else if (c == 0) {
                    std::vector<int> perm(n_);
                    bool identity = true;
                    for (int i = 0; i < n_; ++i) {
                        perm[best_order[i]] = order[i];
                        identity = identity && best_order[i] == order[i];
                    }
                    if (! identity)
                        generators.push_back(std::move(perm));
                }
                return;
            }
            int t = target_cell(cells);
            std::vector<int> explored;
            auto candidates = cells[t];
            for (int v : candidates) {
                if (! explored.empty()) {
                    auto orb = orbits_fixing(n_, generators, fixed);
                    bool skip = false;
                    for (int u : explored)
                        if (orb.find(u) == orb.find(v)) {
                            skip = true;
                            break;
                        }
                    if (skip)
                        continue;
                }
                fixed.push_back(v);
                search(individualize(cells, t, v), fixed);
                fixed.pop_back();
                explored.push_back(v);
            }
        }

        const Graph& g_;
        int n_;
        size_t total_;
        bool have_best_ = false;
        BitString best_bits_;
};

// Stabiliser-chain computation of |Aut| along the leftmost path.
class AutSearch
{
    public:
        explicit AutSearch(const Graph& g) : g_(g), n_(g.order()), total_(pairs(g.order())) {}

        Integer order(Cells cells)
        {
            std::vector<int> fixed;
            return level(std::move(cells), fixed);
        }

        std::vector<std::vector<int>> generators;

    private:
        std::vector<int> first_leaf(Cells cells)
        {
            while (true) {
                refine(g_, cells);
                if (discrete(cells, n_))
                    return flatten(cells);
                int t = target_cell(cells);
                cells = individualize(cells, t, cells[t][0]);
            }
        }

        // Looks for a leaf below `cells` with the same bits as target; returns its order.
        bool find_match(Cells cells, std::vector<int>& fixed, const BitString& target, std::vector<int>& found)
        {
            refine(g_, cells);
            int k = leading_singletons(cells);
            size_t lim = pairs(k);
            if (lim > 0 && compare_prefix(leaf_bits(g_, flatten(cells), lim), target, lim) != 0)
                return false;
            if (discrete(cells, n_)) {
                auto order = flatten(cells);
                if (compare_prefix(leaf_bits(g_, order, total_), target, total_) == 0) {
                    found = std::move(order);
                    return true;
                }
                return false;
            }
            int t = target_cell(cells);
            std::vector<int> explored;
            auto candidates = cells[t];
            for (int v : candidates) {
                if (! explored.empty()) {
                    auto orb = orbits_fixing(n_, generators, fixed);
                    bool skip = false;
                    for (int u : explored)
                        if (orb.find(u) == orb.find(v)) {
                            skip = true;
                            break;
                        }
                    if (skip)
                        continue;
                }
                fixed.push_back(v);
                bool ok = find_match(individualize(cells, t, v), fixed, target, found);
                fixed.pop_back();
                if (ok)
                    return true;
                explored.push_back(v);
            }
            return false;
        }

        Integer level(Cells cells, std::vector<int>& fixed)
        {
            refine(g_, cells);
            if (discrete(cells, n_))
                return 1;
            int t = target_cell(cells);
            int v = cells[t][0];
            Cells child = individualize(cells, t, v);
            fixed.push_back(v);
            Integer below = level(child, fixed);
            fixed.pop_back();

            auto leaf = first_leaf(child);
            auto leaf_bits_v = leaf_bits(g_, leaf, total_);
            for (size_t i = 1; i < cells[t].size(); ++i) {
                int w = cells[t][i];
                auto orb = orbits_fixing(n_, generators, fixed);
                if (orb.find(w) == orb.find(v))
                    continue;
                std::vector<int> found;
                fixed.push_back(w);
                bool ok = find_match(individualize(cells, t, w), fixed, leaf_bits_v, found);
                fixed.pop_back();
                if (ok) {
                    std::vector<int> perm(n_);
                    for (int i2 = 0; i2 < n_; ++i2)
                        perm[leaf[i2]] = found[i2];
                    generators.push_back(std::move(perm));
                }
            }
            auto orb = orbits_fixing(n_, generators, fixed);
            long size = 0;
            for (int w : cells[t])
                if (orb.find(w) == orb.find(v))
                    ++size;
            return below * size;
        }

        const Graph& g_;
        int n_;
        size_t total_;
};

} // namespace

CanonicalForm canonical_form(const Graph& g, std::span<const int> colours)
{
    CanonicalForm cf;
    int n = g.order();
    if (n == 0) {
        cf.key = graph6_encode(g);
        return cf;
    }
    CanonSearch s(g);
    s.run(initial_cells(n, colours));
    cf.order = s.best_order;
    cf.key = graph6_encode(g.relabelled(cf.order));
    return cf;
}

std::string canonical_key(const Graph& g) { return canonical_form(g).key; }

Graph canonical_graph(const Graph& g)
{
    auto cf = canonical_form(g);
    return g.relabelled(cf.order);
}

std::vector<std::vector<int>> automorphism_generators(const Graph& g, std::span<const int> colours)
{
    if (g.order() == 0)
        return {};
    AutSearch s(g);
    s.order(initial_cells(g.order(), colours));
    return s.generators;
}

Integer automorphism_count(const Graph& g, std::span<const int> colours)
{
    if (g.order() == 0)
        return 1;
    AutSearch s(g);
    return s.order(initial_cells(g.order(), colours));
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool has_induced(const Graph& f, const Graph& g)
{
    int k = f.order(), n = g.order();
    if (k > n)
        return false;
    if (k == 0)
        return true;
    std::vector<int> phi(k);
    auto rec = [&](auto&& self, int pos, std::uint64_t used) -> bool {
        std::uint64_t cand = low_bits(n) & ~used;
        for (int i = 0; i < pos; ++i)
            cand &= f.adjacent(i, pos) ? g.neighbours(phi[i]) : ~g.neighbours(phi[i]);
        if (pos == k - 1)
            return cand != 0;
        while (cand) {
            int v = std::countr_zero(cand);
            cand &= cand - 1;
            phi[pos] = v;
            if (self(self, pos + 1, used | bit(v)))
                return true;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

} // namespace

HereditaryFamily::HereditaryFamily(std::vector<Graph> forbidden) : forbidden_(std::move(forbidden))
{
    for (auto& f : forbidden_)
        keys_.push_back(canonical_key(f));
    std::vector<size_t> idx(forbidden_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return std::make_pair(forbidden_[a].order(), keys_[a]) < std::make_pair(forbidden_[b].order(), keys_[b]);
    });
    std::vector<Graph> f2;
    std::vector<std::string> k2;
    for (size_t i : idx)
        if (k2.empty() || k2.back() != keys_[i]) {
            f2.push_back(forbidden_[i]);
            k2.push_back(keys_[i]);
        }
    forbidden_ = std::move(f2);
    keys_ = std::move(k2);
}

bool HereditaryFamily::contains(const Graph& g) const
{
    for (auto& f : forbidden_)
        if (has_induced(f, g))
            return false;
    return true;
}

std::string HereditaryFamily::hash() const
{
    if (forbidden_.empty())
        return "all";
    std::uint64_t h = 1469598103934665603ULL;
    for (auto& k : keys_) {
        h = fnv1a(k, h);
        h = fnv1a(",", h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::vector<Graph> sorted_unique(std::unordered_map<std::string, Graph>& by_key)
{
    std::vector<std::pair<std::string, Graph>> items(by_key.begin(), by_key.end());
    std::sort(items.begin(), items.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<Graph> out;
    out.reserve(items.size());
    for (auto& [k, g] : items)
        out.push_back(std::move(g));
    return out;
}

std::vector<Graph> generate_by_vertices(int n)
{
    if (n == 0)
        return {Graph(0)};
    const auto& prev = enumerate_graphs(n - 1);
    std::unordered_map<std::string, Graph> found;
    for (auto& base : prev) {
        for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (n - 1)); ++nb) {
            Graph g(n);
            for (auto [u, v] : base.edges())
                g.add_edge(u, v);
            for (int u = 0; u < n - 1; ++u)
                if ((nb >> u) & 1U)
                    g.add_edge(u, n - 1);
            auto cf = canonical_form(g);
            if (! found.count(cf.key))
                found.emplace(cf.key, g.relabelled(cf.order));
        }
    }
    return sorted_unique(found);
}

std::mutex& enum_mutex()
{
    static std::mutex m;
    return m;
}

std::map<int, std::vector<Graph>>& enum_cache()
{
    static std::map<int, std::vector<Graph>> c;
    return c;
}

std::map<int, std::unordered_map<std::string, int>>& index_cache()
{
    static std::map<int, std::unordered_map<std::string, int>> c;
    return c;
}

} // namespace

const std::vector<Graph>& enumerate_graphs(int n)
{
    if (n < 0 || n > 10)
        throw std::out_of_range("enumerate_graphs: n must lie in [0, 10]");
    {
        std::lock_guard<std::mutex> lock(enum_mutex());
        auto it = enum_cache().find(n);
        if (it != enum_cache().end())
            return it->second;
    }
    if (n > 0)
        enumerate_graphs(n - 1);
    auto list = generate_by_vertices(n);
    std::lock_guard<std::mutex> lock(enum_mutex());
    auto [it, inserted] = enum_cache().emplace(n, std::move(list));
    return it->second;
}

std::vector<Graph> enumerate_graphs(int n, const HereditaryFamily* family)
{
    const auto& all = enumerate_graphs(n);
    if (! family || family->empty())
        return all;
    std::vector<Graph> out;
    for (auto& g : all)
        if (family->contains(g))
            out.push_back(g);
    return out;
}

int graph_index(const Graph& g)
{
    int n = g.order();
    const auto& list = enumerate_graphs(n);
    std::lock_guard<std::mutex> lock(enum_mutex());
    auto& idx = index_cache()[n];
    if (idx.empty())
        for (size_t i = 0; i < list.size(); ++i)
            idx.emplace(graph6_encode(list[i]), static_cast<int>(i));
    auto it = idx.find(canonical_key(g));
    if (it == idx.end())
        throw std::logic_error("graph_index: graph missing from enumeration");
    return it->second;
}

std::vector<Graph> enumerate_graphs_by_edges(int n)
{
    if (n < 0 || n > 10)
        throw std::out_of_range("enumerate_graphs_by_edges: n must lie in [0, 10]");
    std::unordered_map<std::string, Graph> all;
    std::vector<Graph> layer{Graph(n)};
    all.emplace(canonical_key(layer[0]), layer[0]);
    int maxe = static_cast<int>(pairs(n));
    for (int e = 1; e <= maxe; ++e) {
        std::unordered_map<std::string, Graph> next;
        for (auto& g : layer)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (g.adjacent(u, v))
                        continue;
                    Graph h = g;
                    h.add_edge(u, v);
                    auto cf = canonical_form(h);
                    if (! next.count(cf.key))
                        next.emplace(cf.key, h.relabelled(cf.order));
                }
        layer.clear();
        for (auto& [k, g] : next) {
            layer.push_back(g);
            all.emplace(k, g);
        }
    }
    return sorted_unique(all);
}

Integer count_graphs_burnside(int n)
{
    if (n < 0 || n > 12)
        throw std::out_of_range("count_graphs_burnside: n must lie in [0, 12]");
    // sum over integer partitions of n (cycle types of S_n)
    Integer total = 0;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (remaining == 0) {
            // number of permutations with this cycle type: n! / prod(k^{m_k} m_k!)
            std::map<int, int> mult;
            for (int p : parts)
                ++mult[p];
            Integer denom = 1;
            for (auto [k, m] : mult) {
                Integer kp;
                mpz_ui_pow_ui(kp.get_mpz_t(), k, m);
                denom *= kp * factorial(m);
            }
            long cycles = 0;
            for (size_t i = 0; i < parts.size(); ++i) {
                cycles += parts[i] / 2;
                for (size_t j = i + 1; j < parts.size(); ++j)
                    cycles += std::gcd(parts[i], parts[j]);
            }
            Integer fixed;
            mpz_ui_pow_ui(fixed.get_mpz_t(), 2, cycles);
            total += factorial(n) / denom * fixed;
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    rec(rec, n, n);
    return total / factorial(n);
}

namespace {

std::uint64_t count_embeddings_u64(const Graph& f, const Graph& g)
{
    int k = f.order(), n = g.order();
    if (k > n)
        return 0;
    if (k == 0)
        return 1;
    std::vector<int> phi(k);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, int pos, std::uint64_t used) -> void {
        std::uint64_t cand = low_bits(n) & ~used;
        for (int i = 0; i < pos; ++i)
            cand &= f.adjacent(i, pos) ? g.neighbours(phi[i]) : ~g.neighbours(phi[i]);
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
    return total;
}

struct ClassTable
{
    std::vector<std::int16_t> cls;
};

std::mutex& table_mutex()
{
    static std::mutex m;
    return m;
}

const ClassTable& class_table(int k)
{
    static std::map<int, ClassTable> tables;
    {
        std::lock_guard<std::mutex> lock(table_mutex());
        auto it = tables.find(k);
        if (it != tables.end())
            return it->second;
    }
    const auto& reps = enumerate_graphs(k);
    ClassTable t;
    t.cls.assign(std::size_t{1} << pairs(k), -1);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t c = 0; c < reps.size(); ++c) {
        auto edges = reps[c].edges();
        std::sort(perm.begin(), perm.end());
        do {
            // labelled graph L with L(perm[a], perm[b]) = rep(a, b)
            std::uint32_t bits = 0;
            for (auto [a, b] : edges) {
                int x = std::min(perm[a], perm[b]), y = std::max(perm[a], perm[b]);
                bits |= std::uint32_t{1} << (pairs(y) + x);
            }
            t.cls[bits] = static_cast<std::int16_t>(c);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::lock_guard<std::mutex> lock(table_mutex());
    auto [it, inserted] = tables.emplace(k, std::move(t));
    return it->second;
}

} // namespace

std::uint32_t pair_bits_of(const Graph& g, std::span<const int> vertices)
{
    std::uint32_t bits = 0;
    int k = static_cast<int>(vertices.size()), pos = 0;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i, ++pos)
            if (g.adjacent(vertices[i], vertices[j]))
                bits |= std::uint32_t{1} << pos;
    return bits;
}

int labelled_class(int k, std::uint32_t pair_bits)
{
    if (k < 0 || k > 7)
        throw std::out_of_range("labelled_class: k must lie in [0, 7]");
    return class_table(k).cls[pair_bits];
}

Integer count_embeddings(const Graph& f, const Graph& g)
{
    Integer r;
    std::uint64_t c = count_embeddings_u64(f, g);
    mpz_import(r.get_mpz_t(), 1, 1, sizeof c, 0, 0, &c);
    return r;
}

Integer count_induced(const Graph& f, const Graph& g)
{
    if (f.order() > g.order())
        throw std::invalid_argument("count_induced: pattern larger than host");
    return count_embeddings(f, g) / automorphism_count(f);
}

Rational induced_density(const Graph& f, const Graph& g)
{
    Rational r(count_induced(f, g), binomial(g.order(), f.order()));
    r.canonicalize();
    return r;
}

std::vector<Integer> induced_profile(const Graph& g, int kappa)
{
    int n = g.order();
    if (kappa < 0 || kappa > n)
        throw std::invalid_argument("induced_profile: kappa must lie in [0, n]");
    const auto& classes = enumerate_graphs(kappa);
    std::vector<std::uint64_t> counts(classes.size(), 0);
    std::vector<int> sub(kappa);
    if (kappa <= 7) {
        const auto& table = class_table(kappa).cls;
        // bits accumulate incrementally: adding vertex at position j contributes pairs (i, j), i < j
        auto rec = [&](auto&& self, int pos, int start, std::uint32_t bits) -> void {
            if (pos == kappa) {
                ++counts[table[bits]];
                return;
            }
            std::uint32_t offset = static_cast<std::uint32_t>(pairs(pos));
            for (int v = start; v <= n - (kappa - pos); ++v) {
                std::uint32_t add = 0;
                std::uint64_t nb = g.neighbours(v);
                for (int i = 0; i < pos; ++i)
                    if ((nb >> sub[i]) & 1U)
                        add |= std::uint32_t{1} << (offset + i);
                sub[pos] = v;
                self(self, pos + 1, v + 1, bits | add);
            }
        };
        rec(rec, 0, 0, 0);
    }
    else {
        std::unordered_map<std::string, int> idx;
        for (size_t i = 0; i < classes.size(); ++i)
            idx.emplace(graph6_encode(classes[i]), static_cast<int>(i));
        auto rec = [&](auto&& self, int pos, int start) -> void {
            if (pos == kappa) {
                ++counts[idx.at(canonical_key(g.induced(sub)))];
                return;
            }
            for (int v = start; v <= n - (kappa - pos); ++v) {
                sub[pos] = v;
                self(self, pos + 1, v + 1);
            }
        };
        rec(rec, 0, 0);
    }
    std::vector<Integer> out;
    out.reserve(counts.size());
    for (auto c : counts) {
        Integer r;
        mpz_import(r.get_mpz_t(), 1, 1, sizeof c, 0, 0, &c);
        out.push_back(r);
    }
    return out;
}

} // namespace flagalg
