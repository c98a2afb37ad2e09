#pragma once

#include <flagalg/rational.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagalg {

/// Simple graph on at most 64 vertices, one adjacency word per vertex.
class Graph
{
    public:
        static constexpr int max_order = 64;

        Graph() = default;
        explicit Graph(int n);
        Graph(int n, std::span<const std::pair<int, int>> edges);
        Graph(int n, std::initializer_list<std::pair<int, int>> edges);

        int order() const { return n_; }
        bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
        std::uint64_t neighbours(int v) const { return adj_[v]; }
        int degree(int v) const;
        int edge_count() const;
        std::vector<std::pair<int, int>> edges() const;

        void add_edge(int u, int v);
        void remove_edge(int u, int v);
        void set_edge(int u, int v, bool present);
        void toggle_edge(int u, int v);

        /// Subgraph induced on `vertices`, relabelled so vertices[i] becomes i.
        Graph induced(std::span<const int> vertices) const;
        /// Same graph with vertex order[i] renamed to i.
        Graph relabelled(std::span<const int> order) const;
        Graph complement() const;
        /// Disjoint union with `other` placed on the higher labels.
        Graph disjoint_union(const Graph& other) const;

        /// Label-exact equality.
        bool identical(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

        /// Equality up to isomorphism (canonical forms compared).
        friend bool operator==(const Graph& a, const Graph& b);
        friend bool operator!=(const Graph& a, const Graph& b) { return ! (a == b); }

    private:
        void check_pair(int u, int v) const;

        int n_ = 0;
        std::vector<std::uint64_t> adj_;
};

std::uint64_t bit(int i);
std::uint64_t low_bits(int n);

std::string graph6_encode(const Graph& g);
Graph graph6_decode(std::string_view text);

struct CanonicalForm
{
    /// order[i] = original vertex placed at canonical position i.
    std::vector<int> order;
    /// graph6 string of the canonically relabelled graph.
    std::string key;
};

/// Canonical labelling. `colours` (optional, one integer per vertex) must be
/// preserved; vertices of smaller colour come first in the canonical order.
CanonicalForm canonical_form(const Graph& g, std::span<const int> colours = {});
std::string canonical_key(const Graph& g);
Graph canonical_graph(const Graph& g);

/// Generators of the colour-preserving automorphism group (maps vertex -> vertex).
std::vector<std::vector<int>> automorphism_generators(const Graph& g, std::span<const int> colours = {});
Integer automorphism_count(const Graph& g, std::span<const int> colours = {});

class HereditaryFamily
{
    public:
        HereditaryFamily() = default;
        explicit HereditaryFamily(std::vector<Graph> forbidden);

        const std::vector<Graph>& forbidden() const { return forbidden_; }
        bool empty() const { return forbidden_.empty(); }
        bool contains(const Graph& g) const;
        /// Stable identifier built from the sorted canonical keys.
        std::string hash() const;

    private:
        std::vector<Graph> forbidden_;
        std::vector<std::string> keys_;
};

/// All graphs on n vertices up to isomorphism, as canonical representatives sorted
/// by canonical key. Cached; the returned reference stays valid.
const std::vector<Graph>& enumerate_graphs(int n);
std::vector<Graph> enumerate_graphs(int n, const HereditaryFamily* family);

/// Index of g in enumerate_graphs(g.order()).
int graph_index(const Graph& g);

/// Independent enumeration by edge augmentation (used as a cross-check).
std::vector<Graph> enumerate_graphs_by_edges(int n);
/// Number of isomorphism classes via Burnside's lemma over S_n (n <= 12).
Integer count_graphs_burnside(int n);

/// Number of injective maps phi: V(f) -> V(g) with f-edges to g-edges and f-non-edges to g-non-edges.
Integer count_embeddings(const Graph& f, const Graph& g);
/// P(f, g): number of v(f)-subsets of V(g) inducing a copy of f.
Integer count_induced(const Graph& f, const Graph& g);
Rational induced_density(const Graph& f, const Graph& g);

/// Counts P(F, g) for every F in enumerate_graphs(kappa), indexed accordingly.
std::vector<Integer> induced_profile(const Graph& g, int kappa);

/// Class index (into enumerate_graphs(k)) of the labelled graph on k <= 7
/// vertices whose pair bits are given in column order (0,1),(0,2),(1,2),(0,3)...
int labelled_class(int k, std::uint32_t pair_bits);
std::uint32_t pair_bits_of(const Graph& g, std::span<const int> vertices);

} // namespace flagalg
