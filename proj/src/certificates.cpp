#include <flagalg/certificates.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <thread>

namespace flagalg {

using nlohmann::json;

std::optional<HereditaryFamily> Certificate::family() const
{
    if (forbidden.empty())
        return std::nullopt;
    return HereditaryFamily(forbidden);
}

std::string exact_to_string(const QuadExt& x) { return x.to_string(); }

QuadExt exact_from_json(const json& j)
{
    if (j.is_number_integer())
        return QuadExt(Rational(j.get<long>()));
    if (j.is_string())
        return parse_quadext(j.get<std::string>());
    throw CertificateError("exact value must be a string or an integer: " + j.dump());
}

namespace {

void check_field(const QuadExt& x, long d, const char* what)
{
    if (! x.is_rational() && x.d() != d)
        throw CertificateError(std::string(what) + ": entry outside the declared field");
}

json matrix_to_json(const ExactMatrix<QuadExt>& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(exact_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ExactMatrix<QuadExt> matrix_from_json(const json& j, int n, long d)
{
    if (! j.is_array() || static_cast<int>(j.size()) != n)
        throw CertificateError("matrix dimension does not match the flag basis");
    ExactMatrix<QuadExt> m(n, n);
    for (int i = 0; i < n; ++i) {
        if (! j[i].is_array() || static_cast<int>(j[i].size()) != n)
            throw CertificateError("matrix row has the wrong length");
        for (int k = 0; k < n; ++k) {
            m(i, k) = exact_from_json(j[i][k]);
            check_field(m(i, k), d, "matrix");
        }
    }
    return m;
}

// X = L diag(D) L^T
ExactMatrix<QuadExt> matrix_from_ldl(const json& j, int n, long d)
{
    auto l = matrix_from_json(j.at("L"), n, d);
    const auto& dj = j.at("D");
    if (! dj.is_array() || static_cast<int>(dj.size()) != n)
        throw CertificateError("ldl: D has the wrong length");
    ExactMatrix<QuadExt> ld(n, n);
    for (int k = 0; k < n; ++k) {
        QuadExt dk = exact_from_json(dj[k]);
        check_field(dk, d, "ldl");
        if (dk.sign() < 0)
            throw CertificateError("ldl: negative diagonal entry");
        for (int i = 0; i < n; ++i)
            ld(i, k) = l(i, k) * dk;
    }
    return ld * l.transpose();
}

template <class T>
T convert(const QuadExt& x);

template <>
Rational convert<Rational>(const QuadExt& x)
{
    if (! x.is_rational())
        throw CertificateError("irrational entry in a rational certificate");
    return x.a();
}

template <>
QuadExt convert<QuadExt>(const QuadExt& x)
{
    return x;
}

template <class T>
ExactMatrix<T> convert_matrix(const ExactMatrix<QuadExt>& m)
{
    ExactMatrix<T> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = convert<T>(m(i, j));
    return r;
}

int thread_count(int requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(begin, end) over [0, n) in contiguous chunks.
void parallel_chunks(size_t n, int threads, const std::function<void(size_t, size_t)>& fn)
{
    int t = std::min<int>(thread_count(threads), static_cast<int>(std::max<size_t>(1, n / 16)));
    if (t <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::future<void>> jobs;
    size_t chunk = (n + t - 1) / t;
    for (size_t b = 0; b < n; b += chunk)
        jobs.push_back(std::async(std::launch::async, fn, b, std::min(n, b + chunk)));
    for (auto& j : jobs)
        j.get();
}

int find_table_block(const ProductTable& table, const Graph& type)
{
    std::string key = canonical_key(type);
    for (size_t b = 0; b < table.blocks.size(); ++b)
        if (graph6_encode(table.blocks[b].type) == key)
            return static_cast<int>(b);
    return -1;
}

template <class T>
struct Aligned
{
    int block;
    ExactMatrix<T> y;
};

template <class T>
std::vector<Aligned<T>> align_all(const Certificate& cert, const ProductTable& table)
{
    std::vector<Aligned<T>> out;
    for (auto& blk : cert.blocks) {
        int b = find_table_block(table, blk.type);
        if (b < 0)
            throw CertificateError("type " + graph6_encode(blk.type) + " is not a certificate type at N = " +
                                   std::to_string(cert.N));
        out.push_back({b, convert_matrix<T>(aligned_matrix(blk, table.blocks[b].basis))});
    }
    return out;
}

template <class T>
std::vector<T> quadratic_terms(const Certificate& cert, const ProductTable& table, int threads)
{
    auto aligned = align_all<T>(cert, table);
    size_t n = table.graphs.size();
    std::vector<T> out(n, T(0));
    parallel_chunks(n, threads, [&](size_t lo, size_t hi) {
        for (size_t h = lo; h < hi; ++h) {
            T total(0);
            for (auto& a : aligned) {
                const auto& blk = table.blocks[a.block];
                T acc(0);
                for (auto& e : blk.row(h)) {
                    const T& x = a.y(e.i, e.j);
                    if (is_zero(x))
                        continue;
                    T term = x * T(Rational(e.count));
                    if (e.i != e.j)
                        term = term + term;
                    acc += term;
                }
                if (! is_zero(acc))
                    total += acc / T(Rational(blk.denominator));
            }
            out[h] = total;
        }
    });
    return out;
}

std::vector<Rational> lambda_values(const Objective& g, const ProductTable& table, int threads)
{
    std::vector<Rational> out(table.graphs.size());
    parallel_chunks(out.size(), threads, [&](size_t lo, size_t hi) {
        for (size_t h = lo; h < hi; ++h)
            out[h] = lambda_eval(g, table.graphs[h]).density;
    });
    return out;
}

void check_shape(const Certificate& cert, const ProductTable& table)
{
    if (table.N != cert.N)
        throw CertificateError("product table order differs from certificate N");
    if (cert.slacks.size() != table.graphs.size())
        throw CertificateError("expected " + std::to_string(table.graphs.size()) + " slacks, found " +
                               std::to_string(cert.slacks.size()));
}

template <class T>
Verdict verify_impl(const Certificate& cert, const ProductTable& table, int threads)
{
    Verdict v;
    auto refute = [&](RefutationKind k, int index, std::string detail) {
        v.status = VerdictStatus::refuted;
        v.kind = k;
        v.index = index;
        v.detail = std::move(detail);
        return v;
    };

    std::vector<T> slack;
    for (auto& s : cert.slacks)
        slack.push_back(convert<T>(s));
    for (size_t h = 0; h < slack.size(); ++h)
        if (sign(slack[h]) < 0) {
            v.graph6 = graph6_encode(table.graphs[h]);
            v.lhs = to_string(slack[h]);
            return refute(RefutationKind::negative_slack, static_cast<int>(h), "negative slack at graph " + v.graph6);
        }

    for (size_t b = 0; b < cert.blocks.size(); ++b) {
        auto m = convert_matrix<T>(cert.blocks[b].matrix);
        auto pv = psd_check(m);
        if (! pv.psd) {
            for (auto& x : pv.witness)
                v.witness.push_back(to_string(x));
            v.graph6 = graph6_encode(cert.blocks[b].type);
            v.lhs = to_string(quadratic_form(m, pv.witness));
            return refute(RefutationKind::not_psd, static_cast<int>(b),
                          "block " + std::to_string(b) + " (type " + v.graph6 + ") is not positive semidefinite");
        }
    }

    auto quad = quadratic_terms<T>(cert, table, threads);
    auto lam = lambda_values(cert.objective, table, threads);
    T u = convert<T>(cert.bound);
    for (size_t h = 0; h < quad.size(); ++h) {
        T lhs = cert.upper() ? u - T(lam[h]) : T(lam[h]) - u;
        T rhs = quad[h] + slack[h];
        if (lhs != rhs) {
            v.graph6 = graph6_encode(table.graphs[h]);
            v.lhs = to_string(lhs);
            v.rhs = to_string(rhs);
            return refute(RefutationKind::identity_mismatch, static_cast<int>(h),
                          "identity fails at graph " + v.graph6 + ": " + v.lhs + " != " + v.rhs);
        }
    }
    return v;
}

std::string kind_name(RefutationKind k)
{
    switch (k) {
        case RefutationKind::none: return "none";
        case RefutationKind::negative_slack: return "negative_slack";
        case RefutationKind::not_psd: return "not_psd";
        case RefutationKind::identity_mismatch: return "identity_mismatch";
    }
    return "?";
}

} // namespace

json certificate_to_json(const Certificate& c)
{
    json types = json::array();
    for (auto& b : c.blocks) {
        json basis = json::array();
        for (auto& f : b.flags)
            basis.push_back({{"graph6", graph6_encode(f.graph)}, {"roots", f.roots}});
        types.push_back({{"graph6", graph6_encode(b.type)},
                         {"q", b.type.order()},
                         {"flag_basis", basis},
                         {"matrix", matrix_to_json(b.matrix)}});
    }
    json slacks = json::array();
    for (auto& s : c.slacks)
        slacks.push_back(exact_to_string(s));
    json j = {{"version", c.version},
              {"normalization", c.normalization},
              {"sense", c.sense},
              {"objective", objective_to_json(c.objective)},
              {"N", c.N},
              {"bound", exact_to_string(c.bound)},
              {"types", types},
              {"slacks", slacks},
              {"meta", c.meta}};
    if (c.field_d != 0)
        j["field_d"] = c.field_d;
    if (! c.forbidden.empty()) {
        json fam = json::array();
        for (auto& g : c.forbidden)
            fam.push_back(graph6_encode(g));
        j["family"] = fam;
    }
    return j;
}

Certificate certificate_from_json(const json& j)
{
    try {
        Certificate c;
        c.version = j.at("version").get<int>();
        if (c.version != 1)
            throw CertificateError("unsupported certificate version " + std::to_string(c.version));
        c.normalization = j.at("normalization").get<std::string>();
        if (c.normalization != "coefficient-basis-v1")
            throw CertificateError("unsupported normalization '" + c.normalization + "'");
        c.sense = j.value("sense", std::string("upper"));
        if (c.sense != "upper" && c.sense != "lower")
            throw CertificateError("sense must be 'upper' or 'lower'");
        const auto& obj = j.at("objective");
        c.objective = obj.is_string() ? parse_objective(obj.get<std::string>()) : objective_from_json(obj);
        c.N = j.at("N").get<int>();
        if (c.N < c.objective.kappa || c.N > 10)
            throw CertificateError("N must lie in [kappa, 10]");
        c.field_d = j.value("field_d", 0L);
        if (c.field_d != 0) {
            long f;
            if (square_free_part(c.field_d, f) != c.field_d || c.field_d == 1)
                throw CertificateError("field_d must be a square-free integer other than 0, 1");
        }
        for (auto& g : j.value("family", json::array()))
            c.forbidden.push_back(graph6_decode(g.get<std::string>()));
        c.bound = exact_from_json(j.at("bound"));
        check_field(c.bound, c.field_d, "bound");
        for (auto& t : j.at("types")) {
            CertificateBlock b;
            b.type = graph6_decode(t.at("graph6").get<std::string>());
            int q = t.value("q", b.type.order());
            if (q != b.type.order())
                throw CertificateError("type order differs from q");
            int s = (c.N + q) / 2;
            for (auto& f : t.at("flag_basis")) {
                Flag fl{graph6_decode(f.at("graph6").get<std::string>()), f.at("roots").get<std::vector<int>>()};
                if (fl.order() != s || fl.q() != q)
                    throw CertificateError("flag " + f.dump() + " has the wrong size");
                std::set<int> distinct(fl.roots.begin(), fl.roots.end());
                if (static_cast<int>(distinct.size()) != q || *distinct.begin() < 0 || *distinct.rbegin() >= s)
                    throw CertificateError("flag roots must be distinct vertices");
                if (! fl.type().identical(b.type))
                    throw CertificateError("flag " + f.dump() + " does not carry the block type");
                b.flags.push_back(std::move(fl));
            }
            int n = static_cast<int>(b.flags.size());
            if (t.contains("matrix"))
                b.matrix = matrix_from_json(t.at("matrix"), n, c.field_d);
            else if (t.contains("ldl"))
                b.matrix = matrix_from_ldl(t.at("ldl"), n, c.field_d);
            else
                throw CertificateError("type block needs 'matrix' or 'ldl'");
            if (! b.matrix.is_symmetric())
                throw CertificateError("matrix for type " + graph6_encode(b.type) + " is not symmetric");
            c.blocks.push_back(std::move(b));
        }
        for (auto& s : j.at("slacks")) {
            c.slacks.push_back(exact_from_json(s));
            check_field(c.slacks.back(), c.field_d, "slack");
        }
        c.meta = j.value("meta", json::object());
        return c;
    }
    catch (const CertificateError&) {
        throw;
    }
    catch (const std::exception& e) {
        throw CertificateError(std::string("malformed certificate: ") + e.what());
    }
}

Certificate load_certificate(const std::string& path)
{
    std::ifstream in(path);
    if (! in)
        throw CertificateError("cannot open " + path);
    json j;
    try {
        in >> j;
    }
    catch (const std::exception& e) {
        throw CertificateError(std::string("invalid JSON: ") + e.what());
    }
    return certificate_from_json(j);
}

void save_certificate(const Certificate& c, const std::string& path)
{
    std::ofstream out(path);
    if (! out)
        throw std::runtime_error("cannot write " + path);
    out << certificate_to_json(c).dump(1) << "\n";
}

json Verdict::to_json() const
{
    json j = {{"status", verified() ? "verified" : "refuted"}};
    if (! verified()) {
        j["kind"] = kind_name(kind);
        j["index"] = index;
        j["graph6"] = graph6;
        j["detail"] = detail;
        if (! lhs.empty())
            j["lhs"] = lhs;
        if (! rhs.empty())
            j["rhs"] = rhs;
        if (! witness.empty())
            j["witness"] = witness;
    }
    return j;
}

ExactMatrix<QuadExt> aligned_matrix(const CertificateBlock& block, const FlagBasis& basis, Graph* canonical_type)
{
    auto cf = canonical_form(block.type);
    Graph ct = block.type.relabelled(cf.order);
    if (canonical_type)
        *canonical_type = ct;
    bool same = ct.identical(basis.type());
    if (! same && ! block.type.identical(basis.type()))
        throw CertificateError("block type does not match the basis type");
    int n = static_cast<int>(basis.size());
    std::vector<int> where;
    std::vector<bool> used(n, false);
    for (auto& f : block.flags) {
        Flag g = f;
        if (! block.type.identical(basis.type())) {
            for (size_t i = 0; i < cf.order.size(); ++i)
                g.roots[i] = f.roots[cf.order[i]];
        }
        int idx = basis.index_of(g);
        if (idx < 0)
            throw CertificateError("flag " + graph6_encode(f.graph) + " is not in the basis of its type");
        if (used[idx])
            throw CertificateError("flag " + graph6_encode(f.graph) + " listed twice");
        used[idx] = true;
        where.push_back(idx);
    }
    ExactMatrix<QuadExt> y(n, n);
    for (size_t i = 0; i < where.size(); ++i)
        for (size_t j = 0; j < where.size(); ++j)
            y(where[i], where[j]) = block.matrix(static_cast<int>(i), static_cast<int>(j));
    return y;
}

ProductTable product_table_for(const Certificate& cert, const VerifyOptions& opts)
{
    auto fam = cert.family();
    return build_product_table(cert.N, fam ? &*fam : nullptr, {opts.threads, opts.cache_dir});
}

Verdict verify(const Certificate& cert, const ProductTable* table, const VerifyOptions& opts)
{
    ProductTable local;
    if (! table) {
        local = product_table_for(cert, opts);
        table = &local;
    }
    check_shape(cert, *table);
    if (cert.field_d == 0) {
        bool rational = cert.bound.is_rational();
        for (auto& s : cert.slacks)
            rational = rational && s.is_rational();
        if (rational)
            return verify_impl<Rational>(cert, *table, opts.threads);
    }
    return verify_impl<QuadExt>(cert, *table, opts.threads);
}

IdentityTerms identity_terms(const Certificate& cert, const ProductTable& table)
{
    IdentityTerms t;
    t.quadratic = quadratic_terms<QuadExt>(cert, table, 0);
    for (auto& l : lambda_values(cert.objective, table, 0))
        t.lambda.emplace_back(l);
    return t;
}

std::vector<QuadExt> implied_slacks(const Certificate& cert, const ProductTable& table)
{
    auto t = identity_terms(cert, table);
    std::vector<QuadExt> out;
    for (size_t h = 0; h < t.lambda.size(); ++h) {
        QuadExt lhs = cert.upper() ? cert.bound - t.lambda[h] : t.lambda[h] - cert.bound;
        out.push_back(lhs - t.quadratic[h]);
    }
    return out;
}

Certificate trivial_certificate(const Objective& g, int N, const std::string& sense, const HereditaryFamily* family)
{
    Certificate c;
    c.objective = g;
    c.N = N;
    c.sense = sense;
    if (family)
        c.forbidden = family->forbidden();
    auto graphs = enumerate_graphs(N, family);
    std::vector<Rational> lam;
    for (auto& h : graphs)
        lam.push_back(lambda_eval(g, h).density);
    if (lam.empty())
        throw std::invalid_argument("trivial_certificate: empty basis");
    Rational u = sense == "upper" ? *std::max_element(lam.begin(), lam.end()) : *std::min_element(lam.begin(), lam.end());
    c.bound = QuadExt(u);
    for (auto& l : lam)
        c.slacks.emplace_back(sense == "upper" ? Rational(u - l) : Rational(l - u));
    c.meta = {{"construction", "trivial"}};
    return c;
}

SlackQueryResult slack_query(const Certificate& cert, const std::function<bool(const Graph&)>& predicate)
{
    auto fam = cert.family();
    auto graphs = enumerate_graphs(cert.N, fam ? &*fam : nullptr);
    if (graphs.size() != cert.slacks.size())
        throw CertificateError("slack count does not match the basis");
    SlackQueryResult r;
    for (size_t h = 0; h < graphs.size(); ++h) {
        if (! predicate(graphs[h]))
            continue;
        ++r.matched;
        const QuadExt& s = cert.slacks[h];
        if (! r.minimum || s < *r.minimum) {
            r.minimum = s;
            r.argmin = {static_cast<int>(h)};
        }
        else if (s == *r.minimum)
            r.argmin.push_back(static_cast<int>(h));
    }
    return r;
}

namespace {

void for_each_embedding(const Graph& type, const Graph& g, const std::function<void(const std::vector<int>&)>& fn)
{
    int q = type.order(), n = g.order();
    std::vector<int> phi(q);
    auto rec = [&](auto&& self, int pos, std::uint64_t used) -> void {
        if (pos == q) {
            fn(phi);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1U)
                continue;
            bool ok = true;
            for (int i = 0; i < pos && ok; ++i)
                ok = type.adjacent(i, pos) == g.adjacent(phi[i], v);
            if (! ok)
                continue;
            phi[pos] = v;
            self(self, pos + 1, used | bit(v));
        }
    };
    rec(rec, 0, 0);
}

QuadExt abs_value(const QuadExt& x) { return x.sign() < 0 ? -x : x; }

} // namespace

std::vector<DiagnoseHit> diagnose(const Certificate& cert, const Graph& G, int block_index, const Rational& eps)
{
    if (sgn(eps) <= 0)
        throw std::invalid_argument("diagnose: eps must be positive");
    if (block_index < 0 || block_index >= static_cast<int>(cert.blocks.size()))
        throw std::invalid_argument("diagnose: no such block");
    const auto& blk = cert.blocks[block_index];
    int q = blk.type.order(), s = (cert.N + q) / 2;
    if (G.order() < s)
        throw std::invalid_argument("diagnose: graph smaller than the flag size");
    auto fam = cert.family();
    FlagBasis basis = enumerate_flags(blk.type, s, fam ? &*fam : nullptr);
    auto y = aligned_matrix(blk, basis);
    std::vector<DiagnoseHit> hits;
    QuadExt threshold(eps);
    for_each_embedding(blk.type, G, [&](const std::vector<int>& f) {
        auto v = flag_vector(basis, G, f);
        std::vector<QuadExt> vq(v.begin(), v.end());
        auto w = y.apply(vq);
        QuadExt best(0);
        for (auto& x : w)
            if (abs_value(x) > best)
                best = abs_value(x);
        if (best >= threshold)
            hits.push_back({f, best.to_double()});
    });
    return hits;
}

std::vector<Rational> degree_functional_coefficients(const FlagBasis& basis)
{
    if (basis.q() != 2 || basis.s() != 3)
        throw std::invalid_argument("degree functional needs a 2-vertex type and 3-vertex flags");
    std::vector<Rational> c;
    for (auto& f : basis.flags()) {
        bool a0 = f.graph.adjacent(2, 0), a1 = f.graph.adjacent(2, 1);
        c.emplace_back(a0 && ! a1 ? 1 : (a1 && ! a0 ? -1 : 0));
    }
    return c;
}

Rational degree_functional(const Graph& G, int u0, int u1)
{
    if (G.order() < 3)
        throw std::invalid_argument("degree_functional: need at least 3 vertices");
    if (u0 == u1 || u0 < 0 || u1 < 0 || u0 >= G.order() || u1 >= G.order())
        throw std::invalid_argument("degree_functional: roots must be two distinct vertices");
    std::vector<int> roots{u0, u1};
    FlagBasis basis = enumerate_flags(G.induced(roots), 3);
    auto c = degree_functional_coefficients(basis);
    auto v = flag_vector(basis, G, roots);
    Rational r = 0;
    for (size_t i = 0; i < c.size(); ++i)
        r += c[i] * v[i];
    return r;
}

std::string to_string(CheckState s)
{
    switch (s) {
        case CheckState::pass: return "pass";
        case CheckState::fail: return "fail";
        case CheckState::not_checked: return "not checked";
    }
    return "?";
}

const StabilityCheck& StabilityReport::get(const std::string& name) const
{
    for (auto& c : checks)
        if (c.name == name)
            return c;
    throw std::out_of_range("StabilityReport: no check named " + name);
}

json StabilityReport::to_json() const
{
    json j = json::array();
    for (auto& c : checks)
        j.push_back({{"condition", c.name}, {"state", to_string(c.state)}, {"detail", c.detail}});
    return j;
}

int compare_exact(const QuadExt& a, const QuadExt& b)
{
    if (a.is_rational() || b.is_rational() || a.d() == b.d())
        return (a - b).sign();
    return AlgebraicReal::from_quadext(a).compare(b);
}

namespace {

bool forbids(const Certificate& c, const Graph& g)
{
    std::string key = canonical_key(g);
    for (auto& f : c.forbidden)
        if (canonical_key(f) == key)
            return true;
    return false;
}

StabilityCheck aux_check(const std::string& name, const Certificate* aux, const Graph& forbidden_graph,
                         const Certificate* main, const std::string& what)
{
    StabilityCheck c{name, CheckState::not_checked, "no auxiliary certificate over the " + what + "-free family supplied"};
    if (! aux)
        return c;
    if (! forbids(*aux, forbidden_graph)) {
        c.state = CheckState::fail;
        c.detail = "auxiliary certificate does not forbid " + what;
        return c;
    }
    auto v = verify(*aux);
    if (! v.verified()) {
        c.state = CheckState::fail;
        c.detail = "auxiliary certificate refuted: " + v.detail;
        return c;
    }
    if (! main) {
        c.state = CheckState::not_checked;
        c.detail = "auxiliary certificate verifies with bound " + aux->bound.to_string() + "; no main bound to compare";
        return c;
    }
    bool below = compare_exact(aux->bound, main->bound) < 0;
    c.state = below ? CheckState::pass : CheckState::fail;
    c.detail = "auxiliary bound " + aux->bound.to_string() + (below ? " < " : " >= ") + main->bound.to_string();
    return c;
}

} // namespace

StabilityReport check_stability(const StabilityInput& in, const ProductTable* table)
{
    StabilityReport rep;
    const Pattern& b = in.pattern;
    const Certificate* cert = in.cert;
    if (cert && in.tau.order() > cert->N - 2)
        throw std::invalid_argument("check_stability: tau must have at most N-2 vertices");

    ProductTable local;
    if (cert && ! table) {
        local = product_table_for(*cert);
        table = &local;
    }

    // (1) certificate verifies and its bound is the blowup value
    StabilityCheck c1{"1", CheckState::not_checked, "no certificate supplied"};
    if (cert) {
        auto v = verify(*cert, table);
        if (! v.verified()) {
            c1.state = CheckState::fail;
            c1.detail = "certificate refuted: " + v.detail;
        }
        else if (in.ratios.empty())
            c1.detail = "certificate verifies; no ratios supplied";
        else {
            auto val = eval_blowup(cert->objective, b, in.ratios);
            bool eq = exact_equal(val, ExactValue(cert->bound));
            c1.state = eq ? CheckState::pass : CheckState::fail;
            c1.detail = "blowup value " + to_string(val) + (eq ? " = " : " != ") + "bound " + cert->bound.to_string();
        }
    }
    rep.checks.push_back(c1);

    rep.checks.push_back(aux_check("2a", in.aux_tau_free, in.tau, cert, "tau"));

    auto homs = homomorphisms(in.tau, b);
    StabilityCheck c2b{"2b", CheckState::fail, ""};
    int orbits = homs.empty() ? 0 : homomorphism_orbits(in.tau, b);
    c2b.state = orbits == 1 ? CheckState::pass : CheckState::fail;
    c2b.detail = std::to_string(homs.size()) + " homomorphisms in " + std::to_string(orbits) + " Aut(B)-orbits";
    rep.checks.push_back(c2b);

    StabilityCheck c2c{"2c", CheckState::fail, "no homomorphism from tau to B"};
    if (! homs.empty()) {
        std::uint64_t image = 0;
        for (int x : homs.front())
            image |= bit(x);
        std::map<std::uint64_t, int> seen;
        c2c.state = CheckState::pass;
        c2c.detail = "traces pairwise distinct";
        for (int x = 0; x < b.order(); ++x) {
            std::uint64_t trace = b.row(x) & image;
            auto [it, fresh] = seen.emplace(trace, x);
            if (! fresh) {
                c2c.state = CheckState::fail;
                c2c.detail = "vertices " + std::to_string(it->second) + " and " + std::to_string(x) + " have the same trace";
                break;
            }
        }
    }
    rep.checks.push_back(c2c);

    StabilityCheck c3{"3", CheckState::not_checked, "no certificate supplied"};
    if (cert) {
        c3.state = CheckState::pass;
        int zero = 0;
        for (size_t h = 0; h < table->graphs.size(); ++h) {
            if (! is_zero(cert->slacks.at(h)))
                continue;
            ++zero;
            if (! has_homomorphism(table->graphs[h], b)) {
                c3.state = CheckState::fail;
                c3.detail = "zero-slack graph " + graph6_encode(table->graphs[h]) + " has no homomorphism to B";
                break;
            }
        }
        if (c3.state == CheckState::pass)
            c3.detail = std::to_string(zero) + " zero-slack graphs, all map to B";
    }
    rep.checks.push_back(c3);

    StabilityCheck ci{"i", CheckState::not_checked, "no certificate supplied"};
    if (cert) {
        ci.state = CheckState::fail;
        ci.detail = "tau is not a type of the certificate";
        std::string key = canonical_key(in.tau);
        for (auto& blk : cert->blocks)
            if (canonical_key(blk.type) == key) {
                int cr = corank(blk.matrix);
                ci.state = cr == 1 ? CheckState::pass : CheckState::fail;
                ci.detail = "corank " + std::to_string(cr);
                break;
            }
    }
    rep.checks.push_back(ci);

    rep.checks.push_back(aux_check("ii", in.aux_pattern_free, b.without_loops(), cert, "B°"));

    StabilityCheck all{"theorem", CheckState::pass, "all conditions hold"};
    auto state = [&](const std::string& n) { return rep.get(n).state; };
    for (auto n : {"1", "2a", "2b", "2c", "3"}) {
        if (state(n) == CheckState::fail)
            all.state = CheckState::fail;
        else if (state(n) == CheckState::not_checked && all.state == CheckState::pass)
            all.state = CheckState::not_checked;
    }
    CheckState alt = state("i") == CheckState::pass || state("ii") == CheckState::pass ? CheckState::pass
                     : state("i") == CheckState::fail && state("ii") == CheckState::fail ? CheckState::fail
                                                                                       : CheckState::not_checked;
    if (alt == CheckState::fail)
        all.state = CheckState::fail;
    else if (alt == CheckState::not_checked && all.state == CheckState::pass)
        all.state = CheckState::not_checked;
    if (all.state != CheckState::pass)
        all.detail = all.state == CheckState::fail ? "some condition fails" : "some condition was not checked";
    rep.checks.push_back(all);
    return rep;
}

KernelVectors construction_kernel_vectors(const Pattern& b, const std::vector<ExactValue>& a, const Graph& tau, int s)
{
    int m = b.order(), q = tau.order(), t = s - q;
    if (static_cast<int>(a.size()) != m || ! is_simplex_point(a))
        throw std::invalid_argument("construction_kernel_vectors: ratios must be a simplex point of the pattern's order");
    KernelVectors kv{enumerate_flags(tau, s), homomorphisms(tau, b), {}};
    auto vars = pattern_variables(m);
    std::vector<int> roots(q), free(t);
    for (int i = 0; i < q; ++i)
        roots[i] = i;
    for (int j = 0; j < t; ++j)
        free[j] = q + j;
    for (auto& g : kv.assignments) {
        std::vector<Poly<Rational>> polys(kv.basis.size(), Poly<Rational>(vars));
        std::vector<int> part(t, 0);
        long total = 1;
        for (int j = 0; j < t; ++j)
            total *= m;
        for (long code = 0; code < total; ++code) {
            long c = code;
            for (int j = 0; j < t; ++j) {
                part[j] = static_cast<int>(c % m);
                c /= m;
            }
            Graph h(s);
            for (auto [x, y] : tau.edges())
                h.add_edge(x, y);
            std::vector<int> e(m, 0);
            for (int j = 0; j < t; ++j) {
                ++e[part[j]];
                for (int r = 0; r < q; ++r)
                    if (b.adjacent(part[j], g[r]))
                        h.add_edge(q + j, r);
                for (int k = j + 1; k < t; ++k)
                    if (b.adjacent(part[j], part[k]))
                        h.add_edge(q + j, q + k);
            }
            int idx = kv.basis.index_in(h, roots, free);
            if (idx < 0)
                throw std::logic_error("construction_kernel_vectors: flag missing from basis");
            polys[idx].add_term(e, Rational(1));
        }
        std::vector<ExactValue> vec;
        for (auto& p : polys)
            vec.push_back(evaluate_exact(p, a));
        kv.vectors.push_back(std::move(vec));
    }
    return kv;
}

namespace {

template <class T>
bool triviality_impl(const ExactMatrix<T>& x, const std::vector<int>& subset)
{
    if (subset.empty())
        return true;
    ExactMatrix<T> cols(x.rows(), static_cast<int>(subset.size()));
    for (int i = 0; i < x.rows(); ++i)
        for (size_t k = 0; k < subset.size(); ++k)
            cols(i, static_cast<int>(k)) = x(i, subset[k]);
    return rank(cols) == static_cast<int>(subset.size());
}

} // namespace

bool kernel_subspace_triviality(const ExactMatrix<QuadExt>& x, const std::vector<int>& subset)
{
    return triviality_impl(x, subset);
}

bool kernel_subspace_triviality(const ExactMatrix<Rational>& x, const std::vector<int>& subset)
{
    return triviality_impl(x, subset);
}

} // namespace flagalg
