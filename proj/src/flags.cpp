#include <flagalg/flags.hpp>

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace flagalg {

namespace {

int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

std::vector<int> range(int a, int b)
{
    std::vector<int> v(b - a);
    std::iota(v.begin(), v.end(), a);
    return v;
}

std::vector<int> members(std::uint64_t mask)
{
    std::vector<int> v;
    while (mask) {
        v.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return v;
}

/// Calls fn(subset) for every k-subset of `pool` (ascending within the subset).
template <class Fn>
void for_each_subset(const std::vector<int>& pool, int k, Fn&& fn)
{
    int n = static_cast<int>(pool.size());
    if (k > n)
        return;
    std::vector<int> idx = range(0, k), sub(k);
    while (true) {
        for (int i = 0; i < k; ++i)
            sub[i] = pool[idx[i]];
        fn(sub);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/// Flag graph on q+t vertices: type on 0..q-1, free vertex j at q+j, config bits as in flag_config_bits.
Graph flag_from_config(const Graph& type, int t, std::uint64_t bits)
{
    int q = type.order();
    Graph g(q + t);
    for (auto [a, b] : type.edges())
        g.add_edge(a, b);
    for (int j = 0; j < t; ++j)
        for (int r = 0; r < q; ++r)
            if ((bits >> (j * q + r)) & 1U)
                g.add_edge(q + j, r);
    int offset = t * q;
    for (int j = 1; j < t; ++j)
        for (int i = 0; i < j; ++i)
            if ((bits >> (offset + pair_index(i, j))) & 1U)
                g.add_edge(q + i, q + j);
    return g;
}

int hardware_threads(int requested)
{
    if (requested > 0)
        return requested;
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_path(const std::string& dir, const Graph& type, int N, const std::string& family_hash)
{
    std::ostringstream name;
    name << "product_N" << N << "_q" << type.order() << "_" << std::hex << fnv1a(graph6_encode(type)) << "_"
         << family_hash << ".bin";
    return (std::filesystem::path(dir) / name.str()).string();
}

std::string cache_header(const Graph& type, int N, const std::string& family_hash, size_t graphs, size_t flags)
{
    std::ostringstream h;
    h << "flagalg-product v1 " << graph6_encode(type) << " " << N << " " << family_hash << " " << graphs << " "
      << flags << "\n";
    return h.str();
}

bool read_cache(const std::string& path, const std::string& header, TypeBlock& block, size_t graphs)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        return false;
    std::string line;
    if (! std::getline(in, line) || line + "\n" != header)
        return false;
    block.row_start.resize(graphs + 1);
    in.read(reinterpret_cast<char*>(block.row_start.data()),
            static_cast<std::streamsize>(block.row_start.size() * sizeof(std::uint32_t)));
    if (! in || block.row_start.front() != 0)
        return false;
    block.entries.resize(block.row_start.back());
    in.read(reinterpret_cast<char*>(block.entries.data()),
            static_cast<std::streamsize>(block.entries.size() * sizeof(ProductEntry)));
    if (! in)
        return false;
    for (size_t h = 0; h < graphs; ++h)
        if (block.row_start[h] > block.row_start[h + 1])
            return false;
    for (auto& e : block.entries)
        if (e.i > e.j || e.j >= block.basis.size())
            return false;
    return true;
}

void write_cache(const std::string& path, const std::string& header, const TypeBlock& block)
{
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::string tmp = path + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (! out)
            return;
        out << header;
        out.write(reinterpret_cast<const char*>(block.row_start.data()),
                  static_cast<std::streamsize>(block.row_start.size() * sizeof(std::uint32_t)));
        out.write(reinterpret_cast<const char*>(block.entries.data()),
                  static_cast<std::streamsize>(block.entries.size() * sizeof(ProductEntry)));
        if (! out)
            return;
    }
    std::filesystem::rename(tmp, path, ec);
}

} // namespace

Flag Flag::canonical() const
{
    int n = graph.order(), q = this->q();
    std::vector<int> order(roots);
    std::vector<bool> is_root(n, false);
    for (int r : roots) {
        if (r < 0 || r >= n || is_root[r])
            throw std::invalid_argument("Flag: roots must be distinct vertices");
        is_root[r] = true;
    }
    for (int v = 0; v < n; ++v)
        if (! is_root[v])
            order.push_back(v);
    Graph g = graph.relabelled(order);
    std::vector<int> colours(n, q);
    for (int i = 0; i < q; ++i)
        colours[i] = i;
    auto cf = canonical_form(g, colours);
    return Flag{g.relabelled(cf.order), range(0, q)};
}

std::string Flag::key() const { return graph6_encode(canonical().graph); }

int flag_config_width(int q, int t) { return t * q + t * (t - 1) / 2; }

std::uint64_t flag_config_bits(const Graph& g, std::span<const int> roots, std::span<const int> free)
{
    int q = static_cast<int>(roots.size()), t = static_cast<int>(free.size());
    std::uint64_t bits = 0;
    for (int j = 0; j < t; ++j) {
        std::uint64_t nb = g.neighbours(free[j]);
        for (int r = 0; r < q; ++r)
            if ((nb >> roots[r]) & 1U)
                bits |= std::uint64_t{1} << (j * q + r);
    }
    int offset = t * q;
    for (int j = 1; j < t; ++j) {
        std::uint64_t nb = g.neighbours(free[j]);
        for (int i = 0; i < j; ++i)
            if ((nb >> free[i]) & 1U)
                bits |= std::uint64_t{1} << (offset + pair_index(i, j));
    }
    return bits;
}

FlagBasis::FlagBasis(Graph type, int s, std::vector<Flag> flags) : type_(std::move(type)), s_(s), flags_(std::move(flags))
{
    for (size_t i = 0; i < flags_.size(); ++i)
        index_.emplace(graph6_encode(flags_[i].graph), static_cast<int>(i));
    int width = flag_config_width(q(), free_count());
    if (width <= 12) {
        config_table_.assign(std::size_t{1} << width, -1);
        for (std::uint64_t bits = 0; bits < config_table_.size(); ++bits) {
            Flag f{flag_from_config(type_, free_count(), bits), range(0, q())};
            auto it = index_.find(f.key());
            if (it != index_.end())
                config_table_[bits] = it->second;
        }
    }
}

int FlagBasis::lookup_config(std::uint64_t bits) const
{
    if (! config_table_.empty())
        return config_table_[bits];
    Flag f{flag_from_config(type_, free_count(), bits), range(0, q())};
    auto it = index_.find(f.key());
    return it == index_.end() ? -1 : it->second;
}

int FlagBasis::index_of(const Flag& f) const
{
    if (f.order() != s_ || f.q() != q())
        return -1;
    Flag c = f.canonical();
    if (! c.type().identical(type_))
        return -1;
    auto it = index_.find(graph6_encode(c.graph));
    return it == index_.end() ? -1 : it->second;
}

int FlagBasis::index_in(const Graph& g, std::span<const int> roots, std::span<const int> free) const
{
    return lookup_config(flag_config_bits(g, roots, free));
}

FlagBasis enumerate_flags(const Graph& type, int s, const HereditaryFamily* family)
{
    int q = type.order();
    if (s < q)
        throw std::invalid_argument("enumerate_flags: s must be at least the type order");
    int t = s - q;
    int width = flag_config_width(q, t);
    if (width > 24)
        throw std::invalid_argument("enumerate_flags: flag configuration space too large");
    std::map<std::string, Flag> found;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << width); ++bits) {
        Graph g = flag_from_config(type, t, bits);
        if (family && ! family->contains(g))
            continue;
        Flag c = Flag{g, range(0, q)}.canonical();
        found.emplace(graph6_encode(c.graph), std::move(c));
    }
    std::vector<Flag> flags;
    flags.reserve(found.size());
    for (auto& [k, f] : found)
        flags.push_back(std::move(f));
    return FlagBasis(type, s, std::move(flags));
}

Integer flag_count(const Flag& f, const Flag& h)
{
    if (f.q() != h.q() || ! f.type().identical(h.type()))
        throw std::invalid_argument("flag_count: flags have different types");
    if (f.order() > h.order())
        throw std::invalid_argument("flag_count: first flag larger than second");
    int q = f.q(), t = f.order() - q;
    std::string target = f.key();
    std::vector<bool> is_root(h.order(), false);
    for (int r : h.roots)
        is_root[r] = true;
    std::vector<int> rest;
    for (int v = 0; v < h.order(); ++v)
        if (! is_root[v])
            rest.push_back(v);
    Integer count = 0;
    for_each_subset(rest, t, [&](const std::vector<int>& x) {
        std::vector<int> vs(h.roots);
        vs.insert(vs.end(), x.begin(), x.end());
        if (Flag{h.graph.induced(vs), range(0, q)}.key() == target)
            ++count;
    });
    return count;
}

Rational flag_density(const Flag& f, const Flag& h)
{
    Rational r(flag_count(f, h), binomial(h.order() - h.q(), f.order() - f.q()));
    r.canonicalize();
    return r;
}

std::vector<Integer> flag_count_vector(const FlagBasis& basis, const Graph& h, std::span<const int> rootmap)
{
    if (static_cast<int>(rootmap.size()) != basis.q() || ! h.induced(rootmap).identical(basis.type()))
        throw std::invalid_argument("flag_vector: root map is not an embedding of the type");
    if (h.order() < basis.s())
        throw std::invalid_argument("flag_vector: host graph smaller than the flag size");
    std::uint64_t used = 0;
    for (int r : rootmap)
        used |= bit(r);
    auto rest = members(low_bits(h.order()) & ~used);
    std::vector<Integer> v(basis.size(), 0);
    for_each_subset(rest, basis.free_count(), [&](const std::vector<int>& x) {
        int i = basis.index_in(h, rootmap, x);
        if (i < 0)
            throw std::invalid_argument("flag_vector: host contains a flag outside the basis");
        ++v[i];
    });
    return v;
}

std::vector<Rational> flag_vector(const FlagBasis& basis, const Graph& h, std::span<const int> rootmap)
{
    auto counts = flag_count_vector(basis, h, rootmap);
    Integer total = binomial(h.order() - basis.q(), basis.free_count());
    std::vector<Rational> v;
    v.reserve(counts.size());
    for (auto& c : counts) {
        Rational r(c, total);
        r.canonicalize();
        v.push_back(r);
    }
    return v;
}

std::vector<Graph> certificate_types(int N, const HereditaryFamily* family)
{
    std::vector<Graph> types;
    for (int q = 2 - N % 2; q <= N - 2; q += 2) {
        auto reps = enumerate_graphs(q, family);
        types.insert(types.end(), reps.begin(), reps.end());
    }
    return types;
}

TypeBlock build_type_block(const Graph& type, int N, const std::vector<Graph>& graphs, const HereditaryFamily* family,
                           const ProductOptions& opts)
{
    int q = type.order();
    if (q < 0 || q > 7 || (N - q) % 2 != 0 || N - q < 2)
        throw std::invalid_argument("build_type_block: need q <= 7, q = N mod 2, q <= N-2");
    int t = (N - q) / 2;
    TypeBlock block;
    block.type = type;
    block.basis = enumerate_flags(type, q + t, family);
    block.denominator = falling_factorial(N, q) * binomial(N - q, t);
    if (block.basis.size() > 65535)
        throw std::length_error("build_type_block: flag basis too large");

    std::string family_hash = family ? family->hash() : "all";
    std::string path, header;
    if (! opts.cache_dir.empty()) {
        path = cache_path(opts.cache_dir, type, N, family_hash);
        header = cache_header(type, N, family_hash, graphs.size(), block.basis.size());
        if (read_cache(path, header, block, graphs.size()))
            return block;
        block.row_start.clear();
        block.entries.clear();
    }

    // labelled q-graph (pair bits of a sorted subset) -> maps pi with type(a,b) = L(pi a, pi b)
    std::vector<std::vector<std::vector<int>>> embeds(std::size_t{1} << (q * (q - 1) / 2));
    {
        std::vector<int> pi = range(0, q);
        auto edges = type.edges();
        do {
            std::uint32_t bits = 0;
            for (auto [a, b] : edges) {
                int x = std::min(pi[a], pi[b]), y = std::max(pi[a], pi[b]);
                bits |= std::uint32_t{1} << pair_index(x, y);
            }
            embeds[bits].push_back(pi);
        } while (std::next_permutation(pi.begin(), pi.end()));
    }

    size_t nf = block.basis.size();
    auto compute_rows = [&](size_t lo, size_t hi, std::vector<std::vector<ProductEntry>>& rows) {
        std::vector<std::uint32_t> acc(nf * nf, 0);
        std::vector<std::uint32_t> touched;
        std::vector<int> f(q);
        for (size_t h = lo; h < hi; ++h) {
            const Graph& H = graphs[h];
            std::vector<int> all = range(0, N);
            for_each_subset(all, q, [&](const std::vector<int>& sub) {
                const auto& maps = embeds[pair_bits_of(H, sub)];
                if (maps.empty())
                    return;
                std::uint64_t sub_mask = 0;
                for (int v : sub)
                    sub_mask |= bit(v);
                auto rest = members(low_bits(N) & ~sub_mask);
                for (auto& pi : maps) {
                    for (int a = 0; a < q; ++a)
                        f[a] = sub[pi[a]];
                    for_each_subset(rest, t, [&](const std::vector<int>& A) {
                        std::uint64_t a_mask = 0;
                        for (int v : A)
                            a_mask |= bit(v);
                        auto B = members(low_bits(N) & ~sub_mask & ~a_mask);
                        int i = block.basis.index_in(H, f, A);
                        int j = block.basis.index_in(H, f, B);
                        if (i < 0 || j < 0)
                            throw std::logic_error("build_type_block: host graph outside the family");
                        if (i > j)
                            return;
                        std::uint32_t cell = static_cast<std::uint32_t>(i * nf + j);
                        if (acc[cell]++ == 0)
                            touched.push_back(cell);
                    });
                }
            });
            std::sort(touched.begin(), touched.end());
            auto& row = rows[h - lo];
            for (auto cell : touched) {
                row.push_back(ProductEntry{static_cast<std::uint16_t>(cell / nf), static_cast<std::uint16_t>(cell % nf),
                                           acc[cell]});
                acc[cell] = 0;
            }
            touched.clear();
        }
    };

    size_t count = graphs.size();
    int threads = std::min<int>(hardware_threads(opts.threads), std::max<size_t>(1, count / 64));
    std::vector<std::vector<ProductEntry>> rows(count);
    if (threads <= 1) {
        compute_rows(0, count, rows);
    }
    else {
        std::vector<std::vector<std::vector<ProductEntry>>> parts(threads);
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (int w = 0; w < threads; ++w) {
            size_t lo = count * w / threads, hi = count * (w + 1) / threads;
            parts[w].resize(hi - lo);
            pool.emplace_back([&, w, lo, hi] {
                try {
                    compute_rows(lo, hi, parts[w]);
                }
                catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
        size_t h = 0;
        for (auto& part : parts)
            for (auto& r : part)
                rows[h++] = std::move(r);
    }

    block.row_start.assign(1, 0);
    for (auto& r : rows) {
        block.entries.insert(block.entries.end(), r.begin(), r.end());
        block.row_start.push_back(static_cast<std::uint32_t>(block.entries.size()));
    }
    if (! path.empty())
        write_cache(path, header, block);
    return block;
}

int ProductTable::graph_index(const Graph& g) const
{
    auto it = index.find(canonical_key(g));
    return it == index.end() ? -1 : it->second;
}

void ProductTable::build_index()
{
    index.clear();
    for (size_t i = 0; i < graphs.size(); ++i)
        index.emplace(canonical_key(graphs[i]), static_cast<int>(i));
}

ProductTable build_product_table(int N, const HereditaryFamily* family, const ProductOptions& opts)
{
    ProductTable table;
    table.N = N;
    table.family_hash = family ? family->hash() : "all";
    table.graphs = enumerate_graphs(N, family);
    table.build_index();
    for (auto& type : certificate_types(N, family))
        table.blocks.push_back(build_type_block(type, N, table.graphs, family, opts));
    return table;
}

std::vector<Rational> expand_product(const Graph& type, const Flag& f1, const Flag& f2, int N,
                                     const HereditaryFamily* family)
{
    int q = type.order();
    int s1 = f1.order(), s2 = f2.order();
    if (f1.q() != q || f2.q() != q || s1 + s2 - q != N)
        throw std::invalid_argument("expand_product: dimension mismatch");
    if (! f1.type().identical(type) || ! f2.type().identical(type))
        throw std::invalid_argument("expand_product: flags are not of the given type");
    const auto graphs = enumerate_graphs(N, family);
    std::vector<Rational> out(graphs.size(), 0);
    FlagBasis b1 = enumerate_flags(type, s1, family);
    FlagBasis b2 = s2 == s1 ? b1 : enumerate_flags(type, s2, family);
    int i1 = b1.index_of(f1), i2 = b2.index_of(f2);
    if (i1 < 0 || i2 < 0)
        return out;
    Integer denom = falling_factorial(N, q) * binomial(N - q, s1 - q);
    std::vector<int> f(q);
    for (size_t h = 0; h < graphs.size(); ++h) {
        const Graph& H = graphs[h];
        Integer count = 0;
        auto rec = [&](auto&& self, int pos, std::uint64_t used) -> void {
            if (pos == q) {
                auto rest = members(low_bits(N) & ~used);
                for_each_subset(rest, s1 - q, [&](const std::vector<int>& A) {
                    std::uint64_t a_mask = used;
                    for (int v : A)
                        a_mask |= bit(v);
                    auto B = members(low_bits(N) & ~a_mask);
                    if (b1.index_in(H, f, A) == i1 && b2.index_in(H, f, B) == i2)
                        ++count;
                });
                return;
            }
            for (int v = 0; v < N; ++v) {
                if ((used >> v) & 1U)
                    continue;
                bool ok = true;
                for (int a = 0; a < pos && ok; ++a)
                    ok = type.adjacent(a, pos) == H.adjacent(f[a], v);
                if (! ok)
                    continue;
                f[pos] = v;
                self(self, pos + 1, used | bit(v));
            }
        };
        rec(rec, 0, 0);
        out[h] = Rational(count, denom);
        out[h].canonicalize();
    }
    return out;
}

} // namespace flagalg
