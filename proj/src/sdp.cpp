#include <flagalg/sdp.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

namespace flagalg {

std::vector<int> SdpProblem::block_sizes() const
{
    std::vector<int> s;
    for (auto& b : table.blocks)
        s.push_back(static_cast<int>(b.basis.size()));
    s.push_back(-static_cast<int>(table.graphs.size()));
    s.push_back(-1);
    return s;
}

SdpProblem assemble(const Objective& g, int N, const HereditaryFamily* family, const ProductOptions& opts,
                    const std::string& sense)
{
    if (N < g.kappa || N > 8)
        throw std::out_of_range("assemble: N must satisfy kappa <= N <= 8");
    if (sense != "upper" && sense != "lower")
        throw std::invalid_argument("assemble: sense must be upper or lower");
    SdpProblem p;
    p.sense = sense;
    p.objective = g;
    p.N = N;
    if (family)
        p.forbidden = family->forbidden();
    p.table = build_product_table(N, family, opts);
    p.lambda.reserve(p.table.graphs.size());
    for (auto& h : p.table.graphs)
        p.lambda.push_back(lambda_eval(g, h).density);
    return p;
}

namespace {

std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void export_sdpa(const SdpProblem& p, const std::string& path)
{
    std::ofstream out(path);
    if (! out)
        throw std::runtime_error("export_sdpa: cannot write " + path);
    int types = static_cast<int>(p.table.blocks.size());
    int lp = types + 1, ub = types + 2;
    out << "\"flagalg " << p.objective.descriptor << " N=" << p.N << "\n";
    out << p.constraints() << "\n" << p.block_count() << "\n";
    for (int s : p.block_sizes())
        out << s << " ";
    out << "\n";
    // lower sense: max u  s.t.  sum <D, X> + c_H + u = lambda(H)
    bool up = p.upper();
    for (size_t h = 0; h < p.constraints(); ++h)
        out << fmt17(up ? -to_double(p.lambda[h]) : to_double(p.lambda[h])) << (h + 1 < p.constraints() ? " " : "\n");
    if (p.constraints() == 0)
        out << "\n";
    out << "0 " << ub << " 1 1 " << (up ? "-1" : "1") << "\n";
    for (size_t h = 0; h < p.constraints(); ++h) {
        for (int b = 0; b < types; ++b) {
            const auto& blk = p.table.blocks[b];
            double den = blk.denominator.get_d();
            for (auto& e : blk.row(h))
                out << h + 1 << " " << b + 1 << " " << e.i + 1 << " " << e.j + 1 << " " << fmt17(e.count / den) << "\n";
        }
        out << h + 1 << " " << lp << " " << h + 1 << " " << h + 1 << " 1\n";
        out << h + 1 << " " << ub << " 1 1 " << (up ? "-1" : "1") << "\n";
    }
}

SdpaData read_sdpa(const std::string& path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("read_sdpa: cannot open " + path);
    std::string line, text;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '"' || line[0] == '*')
            continue;
        for (char& c : line)
            if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')')
                c = ' ';
        text += line + "\n";
    }
    std::istringstream is(text);
    SdpaData d;
    int nb;
    if (! (is >> d.m >> nb))
        throw std::runtime_error("read_sdpa: truncated header");
    d.block_sizes.resize(nb);
    for (auto& s : d.block_sizes)
        is >> s;
    d.c.resize(d.m);
    for (auto& x : d.c)
        is >> x;
    SdpaData::Entry e;
    while (is >> e.mat >> e.block >> e.i >> e.j >> e.value)
        d.entries.push_back(e);
    if (! is.eof())
        throw std::runtime_error("read_sdpa: malformed entry line");
    return d;
}

namespace {

void check_block(const SdpProblem& p, int blk, int i, int j)
{
    auto sizes = p.block_sizes();
    if (blk < 1 || blk > static_cast<int>(sizes.size()))
        throw std::runtime_error("import_solution: block index out of range");
    int n = std::abs(sizes[blk - 1]);
    if (i < 1 || j < 1 || i > n || j > n)
        throw std::runtime_error("import_solution: entry outside its block");
}

FloatSolution empty_solution(const SdpProblem& p)
{
    FloatSolution s;
    for (auto& b : p.table.blocks) {
        int n = static_cast<int>(b.basis.size());
        s.blocks.push_back(Eigen::MatrixXd::Zero(n, n));
    }
    s.slacks.assign(p.constraints(), 0.0);
    return s;
}

void put(const SdpProblem& p, FloatSolution& s, int blk, int i, int j, double v)
{
    check_block(p, blk, i, j);
    int types = static_cast<int>(p.table.blocks.size());
    if (blk <= types) {
        s.blocks[blk - 1](i - 1, j - 1) = v;
        s.blocks[blk - 1](j - 1, i - 1) = v;
    }
    else if (blk == types + 1) {
        if (i != j)
            throw std::runtime_error("import_solution: off-diagonal entry in the slack block");
        s.slacks[i - 1] = v;
    }
    else
        s.u = v;
}

std::vector<double> numbers_in(const std::string& text)
{
    static const std::regex num(R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)");
    std::vector<double> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it)
        out.push_back(std::stod(it->str()));
    return out;
}

FloatSolution import_sdpa_out(const SdpProblem& p, const std::string& text)
{
    FloatSolution s = empty_solution(p);
    s.layout = "sdpa";
    auto pos = text.find("yMat");
    if (pos == std::string::npos)
        throw std::runtime_error("import_solution: SDPA output without yMat");
    auto vals = numbers_in(text.substr(text.find('=', pos) + 1));
    size_t k = 0;
    auto sizes = p.block_sizes();
    for (size_t b = 0; b < sizes.size(); ++b) {
        int n = std::abs(sizes[b]);
        bool diag = sizes[b] < 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < (diag ? 1 : n); ++j) {
                if (k >= vals.size())
                    throw std::runtime_error("import_solution: yMat is too short");
                double v = vals[k++];
                int r = i + 1, c = diag ? i + 1 : j + 1;
                if (diag || r <= c)
                    put(p, s, static_cast<int>(b) + 1, r, c, v);
            }
    }
    if (auto xv = text.find("xVec"); xv != std::string::npos) {
        auto body = text.substr(text.find('=', xv) + 1);
        body = body.substr(0, body.find('}') + 1);
        s.y = numbers_in(body);
    }
    return s;
}

} // namespace

FloatSolution import_solution(const SdpProblem& p, const std::string& path)
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("import_solution: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (text.find("yMat") != std::string::npos)
        return import_sdpa_out(p, text);

    FloatSolution s = empty_solution(p);
    s.layout = "csdp";
    std::istringstream is(text);
    std::string line;
    if (! std::getline(is, line))
        throw std::runtime_error("import_solution: empty solution file");
    s.y = numbers_in(line);
    if (s.y.size() != p.constraints())
        throw std::runtime_error("import_solution: expected " + std::to_string(p.constraints()) + " multipliers, found " +
                                 std::to_string(s.y.size()));
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        int mat, blk, i, j;
        double v;
        if (! (ls >> mat >> blk >> i >> j >> v))
            continue;
        if (mat == 2)
            put(p, s, blk, i, j, v);
    }
    return s;
}

void write_csdp_solution(const SdpProblem& p, const FloatSolution& s, const std::string& path)
{
    std::ofstream out(path);
    for (size_t h = 0; h < p.constraints(); ++h)
        out << fmt17(h < s.y.size() ? s.y[h] : 0.0) << (h + 1 < p.constraints() ? " " : "");
    out << "\n";
    for (size_t b = 0; b < s.blocks.size(); ++b)
        for (int i = 0; i < s.blocks[b].rows(); ++i)
            for (int j = i; j < s.blocks[b].cols(); ++j)
                if (s.blocks[b](i, j) != 0.0)
                    out << "2 " << b + 1 << " " << i + 1 << " " << j + 1 << " " << fmt17(s.blocks[b](i, j)) << "\n";
    int lp = static_cast<int>(s.blocks.size()) + 1;
    for (size_t h = 0; h < s.slacks.size(); ++h)
        if (s.slacks[h] != 0.0)
            out << "2 " << lp << " " << h + 1 << " " << h + 1 << " " << fmt17(s.slacks[h]) << "\n";
    out << "2 " << lp + 1 << " 1 1 " << fmt17(s.u) << "\n";
}

int run_solver(const std::string& command_template, const std::string& problem_path, const std::string& solution_path)
{
    std::string cmd = command_template;
    auto replace = [&](const std::string& key, const std::string& value) {
        for (size_t pos; (pos = cmd.find(key)) != std::string::npos;)
            cmd.replace(pos, key.size(), value);
    };
    replace("{problem}", problem_path);
    replace("{solution}", solution_path);
    int status = std::system(cmd.c_str());
    return status;
}

KernelHints construction_hints(const SdpProblem& p, const Pattern& b, const std::vector<ExactValue>& a)
{
    KernelHints hints;
    for (auto& blk : p.table.blocks) {
        std::vector<std::vector<QuadExt>> list;
        auto kv = construction_kernel_vectors(b, a, blk.type, blk.basis.s());
        for (auto& vec : kv.vectors) {
            std::vector<QuadExt> h(blk.basis.size(), QuadExt(0));
            for (size_t i = 0; i < vec.size(); ++i) {
                QuadExt x;
                if (auto r = std::get_if<Rational>(&vec[i]))
                    x = QuadExt(*r);
                else if (auto q = std::get_if<QuadExt>(&vec[i]))
                    x = *q;
                else
                    throw std::invalid_argument("construction_hints: ratios must be rational or quadratic");
                if (is_zero(x))
                    continue;
                int idx = blk.basis.index_of(kv.basis[i]);
                if (idx < 0)
                    throw std::invalid_argument("construction_hints: construction leaves the family");
                h[idx] = x;
            }
            if (std::find(list.begin(), list.end(), h) == list.end())
                list.push_back(std::move(h));
        }
        hints.push_back(std::move(list));
    }
    return hints;
}

KernelHints quasirandom_hints(const SdpProblem& p, const Rational& density)
{
    if (density <= 0 || density >= 1)
        throw std::invalid_argument("quasirandom_hints: density must lie strictly between 0 and 1");
    Rational co = 1 - density;
    KernelHints hints;
    for (auto& blk : p.table.blocks) {
        const auto& basis = blk.basis;
        int width = flag_config_width(basis.q(), basis.free_count());
        std::vector<Rational> pw(width + 1, 1), cw(width + 1, 1);
        for (int k = 1; k <= width; ++k) {
            pw[k] = pw[k - 1] * density;
            cw[k] = cw[k - 1] * co;
        }
        // every configuration bit is one pair touching a free vertex
        std::vector<QuadExt> h(basis.size(), QuadExt(0));
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << width); ++bits) {
            int idx = basis.lookup_config(bits);
            if (idx < 0)
                throw std::invalid_argument("quasirandom_hints: the family excludes a quasirandom flag");
            int e = std::popcount(bits);
            h[idx] += QuadExt(pw[e] * cw[width - e]);
        }
        hints.push_back({std::move(h)});
    }
    return hints;
}

namespace {

using QMatrix = ExactMatrix<QuadExt>;

Eigen::MatrixXd to_eigen(const QMatrix& m)
{
    Eigen::MatrixXd r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j).to_double();
    return r;
}

// P^T D_H P for a symmetric sparse D_H given by its upper-triangular entries.
QMatrix congruence(const QMatrix& pm, const TypeBlock& blk, size_t h)
{
    int r = pm.cols();
    QMatrix out(r, r);
    QuadExt den{Rational(blk.denominator)};
    for (auto& e : blk.row(h)) {
        QuadExt d = QuadExt(Rational(e.count)) / den;
        for (int k = 0; k < r; ++k) {
            const QuadExt& pik = pm(e.i, k);
            const QuadExt& pjk = pm(e.j, k);
            if (is_zero(pik) && is_zero(pjk))
                continue;
            for (int l = 0; l < r; ++l) {
                QuadExt v = pik * pm(e.j, l);
                if (e.i != e.j)
                    v += pjk * pm(e.i, l);
                if (! is_zero(v))
                    out(k, l) += d * v;
            }
        }
    }
    return out;
}

// Rows spanning the eigenspace of the small eigenvalues of x, reduced to the identity on
// column-pivoted positions so that nice kernels come out with small entries.
std::vector<std::vector<double>> numerical_kernel(const Eigen::MatrixXd& x, double tol)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    const auto& w = es.eigenvalues();
    double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    std::vector<int> small;
    for (int i = 0; i < w.size(); ++i)
        if (w(i) < tol * scale)
            small.push_back(i);
    int k = static_cast<int>(small.size()), n = static_cast<int>(x.rows());
    if (k == 0)
        return {};
    Eigen::MatrixXd kt(k, n);
    for (int i = 0; i < k; ++i)
        kt.row(i) = es.eigenvectors().col(small[i]).transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(kt);
    Eigen::MatrixXd sq(k, k);
    for (int j = 0; j < k; ++j)
        sq.col(j) = kt.col(qr.colsPermutation().indices()(j));
    Eigen::MatrixXd r = sq.fullPivLu().solve(kt);
    std::vector<std::vector<double>> out(k, std::vector<double>(n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            out[i][j] = r(i, j);
    return out;
}

} // namespace

RoundResult round_solution(const SdpProblem& p, const FloatSolution& sol, const KernelHints& hints, const QuadExt& target,
                           const RoundOptions& opts)
{
    RoundResult res;
    auto fail = [&](std::string why) {
        res.success = false;
        res.failure = std::move(why);
        return res;
    };
    if (sgn(opts.denom_bound) <= 0)
        throw std::invalid_argument("round_solution: denominator bound must be positive");
    size_t nb = p.table.blocks.size();
    if (sol.blocks.size() != nb)
        throw std::invalid_argument("round_solution: solution block count does not match the problem");
    if (! hints.empty() && hints.size() != nb)
        throw std::invalid_argument("round_solution: one hint list per type block required");
    if (std::abs(sol.u - target.to_double()) > opts.bound_guard)
        return fail("solver bound " + std::to_string(sol.u) + " is not within the guard of the target " + target.to_string());

    std::vector<QMatrix> basis(nb);
    std::vector<QMatrix> z(nb);
    for (size_t b = 0; b < nb; ++b) {
        const auto& blk = p.table.blocks[b];
        int n = static_cast<int>(blk.basis.size());
        if (sol.blocks[b].rows() != n || sol.blocks[b].cols() != n)
            throw std::invalid_argument("round_solution: block dimension mismatch");
        const Eigen::MatrixXd& xf = sol.blocks[b];
        std::vector<std::vector<QuadExt>> kernel;
        if (! hints.empty()) {
            for (auto& h : hints[b]) {
                if (static_cast<int>(h.size()) != n)
                    throw std::invalid_argument("round_solution: hint length mismatch");
                Eigen::VectorXd hd(n);
                for (int i = 0; i < n; ++i)
                    hd(i) = h[i].to_double();
                double norm = (xf * hd).lpNorm<Eigen::Infinity>() / std::max(1.0, hd.lpNorm<Eigen::Infinity>());
                if (norm >= opts.hint_guard)
                    return fail("hint for type " + graph6_encode(blk.type) + " is not near the kernel (|Xh| = " +
                                std::to_string(norm) + ")");
                kernel.push_back(h);
            }
        }
        if (opts.detect_kernel) {
            for (auto& v : numerical_kernel(xf, opts.kernel_tol)) {
                std::vector<QuadExt> h;
                Eigen::VectorXd hd(n);
                for (int i = 0; i < n; ++i) {
                    h.push_back(QuadExt(limit_denominator(v[i], opts.kernel_denominator)));
                    hd(i) = h.back().to_double();
                }
                double norm = (xf * hd).lpNorm<Eigen::Infinity>() / std::max(1.0, hd.lpNorm<Eigen::Infinity>());
                if (norm >= opts.hint_guard)
                    return fail("detected kernel vector for type " + graph6_encode(blk.type) +
                                " does not rationalise (|Xh| = " + std::to_string(norm) + ")");
                kernel.push_back(std::move(h));
            }
        }
        // columns of P span the orthogonal complement of the hints
        QMatrix pm;
        if (kernel.empty())
            pm = QMatrix::identity(n);
        else {
            QMatrix hm(static_cast<int>(kernel.size()), n);
            for (size_t k = 0; k < kernel.size(); ++k)
                for (int i = 0; i < n; ++i)
                    hm(static_cast<int>(k), i) = kernel[k][i];
            auto comp = kernel_basis(hm);
            pm = QMatrix(n, static_cast<int>(comp.size()));
            for (size_t c = 0; c < comp.size(); ++c)
                for (int i = 0; i < n; ++i)
                    pm(i, static_cast<int>(c)) = comp[c][i];
        }
        int r = pm.cols();
        QMatrix zq(r, r);
        if (r > 0) {
            Eigen::MatrixXd pd = to_eigen(pm);
            Eigen::MatrixXd pinv = pd.completeOrthogonalDecomposition().pseudoInverse();
            Eigen::MatrixXd zf = pinv * xf * pinv.transpose();
            zf = (zf + zf.transpose()) / 2;
            for (int i = 0; i < r; ++i)
                for (int j = i; j < r; ++j) {
                    QuadExt v(round_to_denominator(zf(i, j), opts.denom_bound));
                    zq(i, j) = v;
                    zq(j, i) = v;
                }
        }
        basis[b] = std::move(pm);
        z[b] = std::move(zq);
    }

    Certificate cert;
    cert.sense = p.sense;
    cert.objective = p.objective;
    cert.N = p.N;
    cert.forbidden = p.forbidden;
    cert.field_d = opts.field_d;
    if (cert.field_d == 0 && ! target.is_rational())
        cert.field_d = target.d();
    for (auto& list : hints)
        for (auto& h : list)
            for (auto& x : h)
                if (cert.field_d == 0 && ! x.is_rational())
                    cert.field_d = x.d();
    cert.bound = target;
    cert.slacks.assign(p.constraints(), QuadExt(0));
    auto rebuild = [&]() {
        cert.blocks.clear();
        for (size_t b = 0; b < nb; ++b) {
            const auto& blk = p.table.blocks[b];
            cert.blocks.push_back({blk.type, blk.basis.flags(), basis[b] * z[b] * basis[b].transpose()});
        }
        cert.slacks = implied_slacks(cert, p.table);
    };
    rebuild();

    // force exactly zero slack on the (numerically) sharp graphs
    std::vector<size_t> sharp;
    for (size_t h = 0; h < cert.slacks.size(); ++h) {
        bool solver_zero = h < sol.slacks.size() && std::abs(sol.slacks[h]) < opts.zero_slack_tol;
        if (solver_zero || std::abs(cert.slacks[h].to_double()) < opts.zero_slack_tol)
            sharp.push_back(h);
    }
    bool needs = false;
    for (size_t h : sharp)
        needs = needs || ! is_zero(cert.slacks[h]);
    if (needs) {
        std::vector<std::pair<int, std::pair<int, int>>> cols;
        for (size_t b = 0; b < nb; ++b)
            for (int k = 0; k < z[b].rows(); ++k)
                for (int l = k; l < z[b].rows(); ++l)
                    cols.push_back({static_cast<int>(b), {k, l}});
        QMatrix a(static_cast<int>(sharp.size()), static_cast<int>(cols.size()));
        for (size_t row = 0; row < sharp.size(); ++row) {
            std::vector<QMatrix> m;
            for (size_t b = 0; b < nb; ++b)
                m.push_back(congruence(basis[b], p.table.blocks[b], sharp[row]));
            for (size_t c = 0; c < cols.size(); ++c) {
                auto [b, kl] = cols[c];
                auto [k, l] = kl;
                QuadExt v = m[b](k, l);
                if (k != l)
                    v += v;
                a(static_cast<int>(row), static_cast<int>(c)) = v;
            }
        }
        std::vector<QuadExt> rhs;
        for (size_t h : sharp)
            rhs.push_back(cert.slacks[h]);
        // basic solution on rows and columns picked by a pivoted float factorisation;
        // the remaining sharp rows are checked exactly after the update
        Eigen::MatrixXd af = to_eigen(a);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> by_rows(af.transpose());
        by_rows.setThreshold(1e-10);
        int r = static_cast<int>(by_rows.rank());
        std::vector<int> rows_used(r), cols_used(r);
        Eigen::MatrixXd ar(r, af.cols());
        for (int i = 0; i < r; ++i) {
            rows_used[i] = by_rows.colsPermutation().indices()(i);
            ar.row(i) = af.row(rows_used[i]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> by_cols(ar);
        for (int i = 0; i < r; ++i)
            cols_used[i] = by_cols.colsPermutation().indices()(i);
        std::vector<QuadExt> sub_delta;
        if (cert.field_d == 0) {
            ExactMatrix<Rational> sq(r, r);
            std::vector<Rational> sb(r);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j)
                    sq(i, j) = a(rows_used[i], cols_used[j]).a();
                sb[i] = rhs[rows_used[i]].a();
            }
            auto x = solve_bareiss(sq, sb);
            if (! x)
                return fail("cannot make the sharp graphs' slacks vanish (singular pivot block)");
            for (auto& v : *x)
                sub_delta.push_back(QuadExt(v));
        }
        else {
            QMatrix sq(r, r);
            std::vector<QuadExt> sb(r);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j)
                    sq(i, j) = a(rows_used[i], cols_used[j]);
                sb[i] = rhs[rows_used[i]];
            }
            auto x = solve_linear(sq, sb);
            if (! x)
                return fail("cannot make the sharp graphs' slacks vanish (singular pivot block)");
            sub_delta = std::move(*x);
        }
        std::vector<QuadExt> delta(cols.size(), QuadExt(0));
        for (int j = 0; j < r; ++j)
            delta[cols_used[j]] = sub_delta[j];
        for (size_t c = 0; c < cols.size(); ++c) {
            auto [b, kl] = cols[c];
            auto [k, l] = kl;
            z[b](k, l) += delta[c];
            if (k != l)
                z[b](l, k) += delta[c];
        }
        rebuild();
        for (size_t h : sharp)
            if (! is_zero(cert.slacks[h]))
                return fail("cannot make the sharp graphs' slacks vanish (inconsistent linear system at " +
                            graph6_encode(p.table.graphs[h]) + ")");
    }

    for (size_t b = 0; b < nb; ++b) {
        if (z[b].rows() == 0)
            continue;
        auto pv = psd_check(z[b]);
        if (! pv.psd)
            return fail("rounded matrix for type " + graph6_encode(p.table.blocks[b].type) + " is not positive semidefinite");
    }
    for (size_t h = 0; h < cert.slacks.size(); ++h)
        if (cert.slacks[h].sign() < 0)
            return fail("negative slack " + std::to_string(cert.slacks[h].to_double()) + " at graph " +
                        graph6_encode(p.table.graphs[h]));

    cert.meta = {{"rounding", {{"denom_bound", to_string(opts.denom_bound)}, {"sharp_graphs", sharp.size()}}}};
    res.certificate = cert;
    res.verdict = verify(cert, &p.table);
    if (! res.verdict.verified())
        return fail("rounded certificate refuted: " + res.verdict.detail);
    res.success = true;
    return res;
}

} // namespace flagalg
