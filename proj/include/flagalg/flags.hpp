#pragma once

#include <flagalg/graph.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace flagalg {

/// A graph with an ordered tuple of distinct root vertices.
struct Flag
{
    Graph graph;
    std::vector<int> roots;

    int q() const { return static_cast<int>(roots.size()); }
    int order() const { return graph.order(); }
    /// The labelled type: graph induced on the roots, root i becoming vertex i.
    Graph type() const { return graph.induced(roots); }
    /// Same flag relabelled to canonical form; roots end up at 0..q-1 in order.
    Flag canonical() const;
    /// Canonical byte string (root-preserving isomorphism invariant).
    std::string key() const;
};

/// Flags of a fixed labelled type on s vertices, one per root-preserving class,
/// sorted by canonical key. Every stored flag has roots 0..q-1.
class FlagBasis
{
    public:
        FlagBasis() = default;
        FlagBasis(Graph type, int s, std::vector<Flag> flags);

        const Graph& type() const { return type_; }
        int q() const { return type_.order(); }
        int s() const { return s_; }
        int free_count() const { return s_ - type_.order(); }
        size_t size() const { return flags_.size(); }
        const std::vector<Flag>& flags() const { return flags_; }
        const Flag& operator[](size_t i) const { return flags_[i]; }

        /// -1 when the flag is not in the basis (wrong type, size, or outside the family).
        int index_of(const Flag& f) const;
        /// Index of the flag with roots at `roots` and free vertices `free` (in this order) in g.
        int index_in(const Graph& g, std::span<const int> roots, std::span<const int> free) const;
        /// Index of the flag whose free part is described by `bits` (see flag_config_bits).
        int lookup_config(std::uint64_t bits) const;

    private:

        Graph type_;
        int s_ = 0;
        std::vector<Flag> flags_;
        std::unordered_map<std::string, int> index_;
        /// config bits -> flag index, present when the config space is small.
        std::vector<int> config_table_;
};

/// Bits describing the free part of a flag: bit j*q+r is the adjacency of free
/// vertex j to root r; free-free pairs follow at offset t*q in column order.
std::uint64_t flag_config_bits(const Graph& g, std::span<const int> roots, std::span<const int> free);
int flag_config_width(int q, int t);

FlagBasis enumerate_flags(const Graph& type, int s, const HereditaryFamily* family = nullptr);

/// P((F,f),(H,h)): number of (v(F)-q)-subsets of the non-roots of H extending to a copy of F.
Integer flag_count(const Flag& f, const Flag& h);
Rational flag_density(const Flag& f, const Flag& h);

/// Density vector of (H, rootmap) over `basis`; H[rootmap] must equal the basis type exactly.
std::vector<Rational> flag_vector(const FlagBasis& basis, const Graph& h, std::span<const int> rootmap);
std::vector<Integer> flag_count_vector(const FlagBasis& basis, const Graph& h, std::span<const int> rootmap);

/// One nonzero entry of the symmetric product matrix D^tau_H, i <= j:
/// D[i][j] = D[j][i] = count / denominator.
struct ProductEntry
{
    std::uint16_t i, j;
    std::uint32_t count;
};

struct TypeBlock
{
    Graph type;
    FlagBasis basis;
    /// (N)_q * C(N-q, s-q)
    Integer denominator;
    std::vector<std::uint32_t> row_start;
    std::vector<ProductEntry> entries;

    std::span<const ProductEntry> row(size_t h) const
    {
        return {entries.data() + row_start[h], entries.data() + row_start[h + 1]};
    }
};

struct ProductOptions
{
    /// 0 = hardware concurrency.
    int threads = 0;
    /// Empty = no disk cache.
    std::string cache_dir;
};

/// Everything the certificate identity needs at a fixed N: the basis graphs and,
/// for every type class with 1 <= q <= N-2 and q = N mod 2, the product matrices.
struct ProductTable
{
    int N = 0;
    std::string family_hash = "all";
    std::vector<Graph> graphs;
    std::vector<TypeBlock> blocks;

    /// Index of g (any labelling) in `graphs`, -1 if absent.
    int graph_index(const Graph& g) const;
    void build_index();

    std::unordered_map<std::string, int> index;
};

/// Type representatives (canonical graphs, canonical order) used at order N.
std::vector<Graph> certificate_types(int N, const HereditaryFamily* family = nullptr);

TypeBlock build_type_block(const Graph& type, int N, const std::vector<Graph>& graphs,
                           const HereditaryFamily* family = nullptr, const ProductOptions& opts = {});
ProductTable build_product_table(int N, const HereditaryFamily* family = nullptr, const ProductOptions& opts = {});

/// Coefficient vector over F_N (family-restricted) of the product F1*F2 of tau-flags:
/// at H, #(embedding f of tau, disjoint A, B covering the rest, (H[f+A],f)=F1, (H[f+B],f)=F2)
/// divided by (N)_q * C(N-q, v(F1)-q).
std::vector<Rational> expand_product(const Graph& type, const Flag& f1, const Flag& f2, int N,
                                     const HereditaryFamily* family = nullptr);

} // namespace flagalg
