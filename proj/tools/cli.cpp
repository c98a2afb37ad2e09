#include "cli.hpp"

#include <flagalg/certificates.hpp>
#include <flagalg/flags.hpp>
#include <flagalg/graph.hpp>
#include <flagalg/objectives.hpp>
#include <flagalg/patterns.hpp>
#include <flagalg/sdp.hpp>
#include <flagalg/search.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#ifndef FLAGALG_SOURCE_DIR
#define FLAGALG_SOURCE_DIR "."
#endif
#ifndef FLAGALG_PYTHON
#define FLAGALG_PYTHON "python3"
#endif

namespace flagalg::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[')
            ++depth;
        else if (ch == ')' || ch == ']')
            --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (! cur.empty() || ! out.empty())
        out.push_back(cur);
    return out;
}

std::string trim(std::string s)
{
    while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    return s.substr(i);
}

std::vector<Graph> parse_graph_list(const std::string& text)
{
    std::vector<Graph> out;
    for (auto& t : split(text, ','))
        if (! trim(t).empty())
            out.push_back(graph6_decode(trim(t)));
    return out;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (auto& t : split(text, ','))
        out.push_back(std::stoi(trim(t)));
    return out;
}

/// "<graph6>:r0,r1,..." ; no ':' means no roots.
Flag parse_flag(const std::string& text)
{
    Flag f;
    auto at = text.find(':');
    f.graph = graph6_decode(text.substr(0, at));
    if (at != std::string::npos && at + 1 < text.size())
        f.roots = parse_int_list(text.substr(at + 1));
    return f;
}

/// Generator given as "c0,c1,...,ck@lo,hi": the root of c0 + c1 x + ... in (lo, hi).
std::optional<AlgebraicReal> parse_alpha(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    auto at = text.find('@');
    if (at == std::string::npos)
        throw UsageError("--alpha needs COEFFS@LO,HI");
    std::vector<Rational> c;
    for (auto& t : split(text.substr(0, at), ','))
        c.push_back(parse_rational(trim(t)));
    auto iv = split(text.substr(at + 1), ',');
    if (iv.size() != 2)
        throw UsageError("--alpha interval must be LO,HI");
    return AlgebraicReal::from_interval(UPoly<Rational>(c), parse_rational(trim(iv[0])), parse_rational(trim(iv[1])));
}

/// "a+b*alpha" style linear form in the generator.
NumberFieldElem parse_alpha_form(const std::string& text, const AlgebraicReal& alpha)
{
    NumberFieldElem gen = NumberFieldElem::generator(alpha);
    NumberFieldElem acc = lift_like(gen, Rational(0));
    std::string s;
    for (char ch : text)
        if (! std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-')
            ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        bool neg = false;
        if (term[0] == '+' || term[0] == '-') {
            neg = term[0] == '-';
            term = term.substr(1);
        }
        NumberFieldElem v;
        auto pos = term.find("alpha");
        if (pos == std::string::npos) {
            v = lift_like(gen, parse_rational(term));
        } else {
            std::string coef = term.substr(0, pos);
            if (pos + 5 != term.size())
                throw UsageError("bad alpha term: " + term);
            if (! coef.empty()) {
                if (coef.back() != '*')
                    throw UsageError("bad alpha term: " + term);
                coef.pop_back();
            }
            v = gen * lift_like(gen, coef.empty() ? Rational(1) : parse_rational(coef));
        }
        acc = neg ? acc - v : acc + v;
    }
    return acc;
}

ExactValue parse_value(const std::string& text, const std::optional<AlgebraicReal>& alpha)
{
    if (text.find("alpha") != std::string::npos) {
        if (! alpha)
            throw UsageError("value uses alpha but --alpha is not set");
        return parse_alpha_form(text, *alpha);
    }
    QuadExt q = parse_quadext(text);
    if (q.d() == 0 || sgn(q.b()) == 0)
        return q.a();
    return q;
}

std::vector<ExactValue> parse_values(const std::string& text, const std::optional<AlgebraicReal>& alpha)
{
    std::vector<ExactValue> out;
    for (auto& t : split(text, ','))
        out.push_back(parse_value(trim(t), alpha));
    return out;
}

json values_json(const std::vector<ExactValue>& v)
{
    json a = json::array();
    for (auto& x : v)
        a.push_back(to_string(x));
    return a;
}

std::string decimal(double x)
{
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

std::string decimal(const ExactValue& v)
{
    if (auto* r = std::get_if<Rational>(&v))
        return decimal(Rational(*r).get_d());
    return to_algebraic(v).decimal(15);
}

struct Output
{
    json result = json::object();
    std::vector<std::string> lines;

    void line(std::string s) { lines.push_back(std::move(s)); }
};

struct Context
{
    JobConfig job;
    bool as_json = false;
    std::string cache_dir;
};

HereditaryFamily family_of(const std::vector<std::string>& forbid)
{
    std::vector<Graph> gs;
    for (auto& f : forbid)
        for (auto& g : parse_graph_list(f))
            gs.push_back(g);
    return HereditaryFamily(gs);
}

json graphs_json(const std::vector<Graph>& gs)
{
    json a = json::array();
    for (auto& g : gs)
        a.push_back(graph6_encode(g));
    return a;
}

void add_job_meta(Certificate& c, const Context& ctx)
{
    c.meta["tool"] = "flagalg";
    c.meta["version"] = FLAGALG_VERSION;
    c.meta["job"] = ctx.job.to_json();
}

void stamp_sdpa(const std::string& path, const Context& ctx)
{
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    in.close();
    std::ofstream out(path);
    out << "* flagalg " << FLAGALG_VERSION << "\n";
    out << "* job " << ctx.job.to_json().dump() << "\n";
    out << body.str();
}

Graph host_graph(const std::string& g6, const std::string& pattern, const std::string& sizes, int complete)
{
    int given = ! g6.empty() + ! pattern.empty() + (complete > 0);
    if (given != 1)
        throw UsageError("give exactly one of --graph, --pattern with --sizes, --complete");
    if (! g6.empty())
        return graph6_decode(g6);
    if (complete > 0) {
        Graph g(complete);
        for (int u = 0; u < complete; ++u)
            for (int v = u + 1; v < complete; ++v)
                g.add_edge(u, v);
        return g;
    }
    if (sizes.empty())
        throw UsageError("--pattern needs --sizes");
    auto sz = parse_int_list(sizes);
    return blowup_build(parse_pattern(pattern), sz);
}

std::string default_solver()
{
    if (const char* s = std::getenv("FLAGALG_SOLVER"))
        return s;
    return std::string(FLAGALG_PYTHON " ") + FLAGALG_SOURCE_DIR + "/tools/sdpa_solve.py {problem} {solution}";
}

} // namespace

json JobConfig::to_json() const
{
    json j;
    j["subcommand"] = subcommand;
    j["objective"] = objective;
    j["paths"] = paths;
    j["N"] = N;
    j["denom_bound"] = denom_bound;
    j["tol"] = tol;
    j["seed"] = seed;
    j["threads"] = threads;
    j["args"] = args;
    return j;
}

JobConfig JobConfig::from_json(const json& j)
{
    JobConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.objective = j.value("objective", "");
    c.paths = j.value("paths", std::map<std::string, std::string>{});
    c.N = j.value("N", 0);
    c.denom_bound = j.value("denom_bound", "");
    c.tol = j.value("tol", 0.0);
    c.seed = j.value("seed", std::uint64_t(1));
    c.threads = j.value("threads", 0);
    c.args = j.value("args", json::object());
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"flag algebra bounds: enumeration, blowups, certificates, search", "flagalg"};
    app.set_version_flag("--version", std::string(FLAGALG_VERSION));
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx;
    int threads = 0;
    std::uint64_t seed = 1;
    app.add_flag("--json", ctx.as_json, "Print one JSON object instead of text");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Random seed");

    // shared argument storage
    std::string obj, pattern, ratios, alpha, graph, host, tau, out_path, sol_path, solver, target, sense = "upper";
    std::string sizes, flag1, flag2, type, cert_path, aux_tau, aux_pat, eps = "1/100", p_text, qr_density, mode = "exact";
    std::string denom;
    std::vector<std::string> forbid, contains, avoids;
    int n = 0, N = 0, starts = 16, iters = 400, block = 0, complete = 0, count = 1, budget = 0;
    double tol = 1e-12;
    bool list = false, verify_max = false, probe = false, detect_kernel = false;

    std::function<int(Output&)> action;
    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    auto* c_enum = sub("enumerate", "Graphs on n vertices up to isomorphism");
    c_enum->add_option("--n", n, "Order")->required()->check(CLI::Range(0, 10));
    c_enum->add_option("--forbid", forbid, "Forbidden induced subgraphs (graph6, comma separated)");
    c_enum->add_flag("--list", list, "Print every graph6");

    auto* c_dens = sub("density", "Induced and embedding density of a graph in a host");
    c_dens->add_option("--sub", graph, "Small graph (graph6)")->required();
    c_dens->add_option("--host", host, "Host graph (graph6)")->required();

    auto* c_oeval = sub("objective-eval", "Lambda of a graph under an objective");
    c_oeval->add_option("--obj", obj, "Objective descriptor")->required();
    c_oeval->add_option("--graph", graph, "Graph (graph6)");
    c_oeval->add_option("--pattern", pattern, "Pattern, with --sizes");
    c_oeval->add_option("--sizes", sizes, "Part sizes");

    auto* c_beval = sub("blowup-eval", "Exact limit density of a blowup at given ratios");
    c_beval->add_option("--obj", obj, "Objective descriptor")->required();
    c_beval->add_option("--pattern", pattern, "Pattern")->required();
    c_beval->add_option("--ratios", ratios, "Part ratios: rationals, a+b*sqrt(d), or a+b*alpha")->required();
    c_beval->add_option("--alpha", alpha, "Algebraic generator COEFFS@LO,HI (coefficients low to high)");
    c_beval->add_flag("--check-max", verify_max, "Also run the local maximality checks");

    auto* c_bopt = sub("blowup-opt", "Numeric maximisation of a blowup polynomial");
    c_bopt->add_option("--obj", obj, "Objective descriptor")->required();
    c_bopt->add_option("--pattern", pattern, "Pattern")->required();
    c_bopt->add_option("--starts", starts, "Random starts");
    c_bopt->add_option("--iters", iters, "Iterations per start");
    c_bopt->add_flag("--probe", probe, "Also maximise with each part deleted");

    auto* c_expand = sub("expand", "Coefficients of a flag product over the N-vertex graphs");
    c_expand->add_option("--type", type, "Type (graph6)")->required();
    c_expand->add_option("--f1", flag1, "First flag GRAPH6:ROOTS")->required();
    c_expand->add_option("--f2", flag2, "Second flag GRAPH6:ROOTS")->required();
    c_expand->add_option("--N", N, "Order")->required();
    c_expand->add_option("--forbid", forbid, "Forbidden induced subgraphs");

    auto* c_export = sub("sdp-export", "Assemble the SDP at order N and write SDPA sparse format");
    c_export->add_option("--obj", obj, "Objective descriptor")->required();
    c_export->add_option("--N", N, "Order")->required();
    c_export->add_option("--forbid", forbid, "Forbidden induced subgraphs");
    c_export->add_option("--sense", sense, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
    c_export->add_option("--out", out_path, "Output .dat-s")->required();

    auto* c_round = sub("round", "Solve or import an SDP solution and round it to an exact certificate");
    c_round->add_option("--obj", obj, "Objective descriptor")->required();
    c_round->add_option("--N", N, "Order")->required();
    c_round->add_option("--forbid", forbid, "Forbidden induced subgraphs");
    c_round->add_option("--sense", sense, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
    c_round->add_option("--target", target, "Bound to certify")->required();
    c_round->add_option("--solution", sol_path, "Existing solver output (skips solving)");
    c_round->add_option("--solver", solver, "Command template with {problem} and {solution}");
    c_round->add_option("--pattern", pattern, "Construction pattern for kernel hints");
    c_round->add_option("--ratios", ratios, "Construction ratios");
    c_round->add_option("--alpha", alpha, "Algebraic generator COEFFS@LO,HI");
    c_round->add_option("--quasirandom", qr_density, "Quasirandom kernel hint with this edge density");
    c_round->add_flag("--detect-kernel", detect_kernel, "Also use the numerical kernel of the solution");
    c_round->add_option("--denom-bound", denom, "Rounding denominator (default 2^20)");
    c_round->add_option("--out", out_path, "Certificate JSON")->required();

    auto* c_verify = sub("verify", "Exact verification of a certificate");
    c_verify->add_option("cert", cert_path, "Certificate JSON")->required();

    auto* c_stab = sub("stability", "Finite stability checks for a pattern and type");
    c_stab->add_option("--pattern", pattern, "Pattern")->required();
    c_stab->add_option("--tau", tau, "Type (graph6)")->required();
    c_stab->add_option("--ratios", ratios, "Part ratios");
    c_stab->add_option("--alpha", alpha, "Algebraic generator COEFFS@LO,HI");
    c_stab->add_option("--cert", cert_path, "Certificate for the slack and kernel checks");
    c_stab->add_option("--aux-tau-free", aux_tau, "Certificate over the tau-free family");
    c_stab->add_option("--aux-pattern-free", aux_pat, "Certificate over the pattern-free family");

    auto* c_slack = sub("slack-query", "Minimum slack over basis graphs matching a predicate");
    c_slack->add_option("cert", cert_path, "Certificate JSON")->required();
    c_slack->add_option("--contains", contains, "Induced subgraphs that must appear");
    c_slack->add_option("--avoids", avoids, "Induced subgraphs that must not appear");

    auto* c_brute = sub("brute", "Exhaustive maximum of Lambda over n-vertex graphs");
    c_brute->add_option("--obj", obj, "Objective descriptor")->required();
    c_brute->add_option("--n", n, "Order")->required()->check(CLI::Range(1, 8));
    c_brute->add_option("--forbid", forbid, "Forbidden induced subgraphs");

    auto* c_sample = sub("sample", "Random subgraph R(G, p) of a host graph");
    c_sample->add_option("--graph", graph, "Host (graph6)");
    c_sample->add_option("--pattern", pattern, "Host blowup pattern, with --sizes");
    c_sample->add_option("--sizes", sizes, "Part sizes");
    c_sample->add_option("--complete", complete, "Host K_n");
    c_sample->add_option("--p", p_text, "Edge retention probability")->required();
    c_sample->add_option("--count", count, "Samples (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
    c_sample->add_option("--obj", obj, "Evaluate this objective on each sample");
    c_sample->add_option("--search", budget, "Local search flip budget from each sample (needs --obj)");
    c_sample->add_flag("--list", list, "Print every sampled graph6");

    auto* c_edit = sub("editdist", "Edit distance of a graph to the blowups of a pattern");
    c_edit->add_option("--graph", graph, "Graph (graph6)")->required();
    c_edit->add_option("--pattern", pattern, "Pattern")->required();
    c_edit->add_option("--mode", mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));

    auto* c_diag = sub("diagnose", "Embeddings of a type where the certificate matrix is far from the kernel");
    c_diag->add_option("cert", cert_path, "Certificate JSON")->required();
    c_diag->add_option("--graph", graph, "Graph (graph6)")->required();
    c_diag->add_option("--block", block, "Block index")->required();
    c_diag->add_option("--eps", eps, "Threshold");

    for (auto* s : app.get_subcommands({}))
        s->add_option("--tol", tol, "Numeric tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << FLAGALG_VERSION << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "flagalg: " << e.what() << "\n";
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    JobConfig& job = ctx.job;
    job.subcommand = chosen->get_name();
    job.objective = obj;
    job.N = N;
    job.denom_bound = denom;
    job.tol = tol;
    job.seed = seed;
    job.threads = threads;
    for (auto* opt : chosen->get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0)
            continue;
        std::string key = opt->get_name(false, true);
        while (! key.empty() && key[0] == '-')
            key.erase(0, 1);
        auto res = opt->results();
        json v = res.size() == 1 ? json(res[0]) : json(res);
        if (key == "out" || key == "solution" || key == "cert" || key == "aux-tau-free" || key == "aux-pattern-free")
            job.paths[key] = res.empty() ? "" : res[0];
        else if (key != "obj" && key != "N" && key != "denom-bound" && key != "tol")
            job.args[key] = v;
    }
    if (const char* c = std::getenv("FLAGALG_CACHE"))
        ctx.cache_dir = c;

    Output o;
    int code = 0;
    try {
        std::string name = job.subcommand;
        if (name == "enumerate") {
            HereditaryFamily fam = family_of(forbid);
            auto gs = fam.empty() ? enumerate_graphs(n) : enumerate_graphs(n, &fam);
            o.result["n"] = n;
            o.result["count"] = gs.size();
            o.line("count " + std::to_string(gs.size()));
            if (list) {
                o.result["graphs"] = graphs_json(gs);
                for (auto& g : gs)
                    o.line(graph6_encode(g));
            }
        } else if (name == "density") {
            Graph f = graph6_decode(graph), g = graph6_decode(host);
            if (f.order() > g.order())
                throw UsageError("--sub is larger than --host");
            Integer c = count_induced(f, g);
            Rational d = induced_density(f, g), t = embedding_density(f, g);
            o.result["induced_count"] = c.get_str();
            o.result["induced_density"] = d.get_str();
            o.result["embedding_density"] = t.get_str();
            o.line("induced_count " + c.get_str());
            o.line("induced_density " + d.get_str());
            o.line("embedding_density " + t.get_str());
        } else if (name == "objective-eval") {
            Objective g = parse_objective(obj);
            Graph G = host_graph(graph, pattern, sizes, 0);
            auto v = lambda_eval(g, G);
            o.result["n"] = G.order();
            o.result["total"] = v.total.get_str();
            o.result["density"] = v.density.get_str();
            o.line("total " + v.total.get_str());
            o.line("density " + v.density.get_str() + " ~ " + decimal(v.density.get_d()));
        } else if (name == "blowup-eval") {
            Objective g = parse_objective(obj);
            Pattern b = parse_pattern(pattern);
            auto a = parse_values(ratios, parse_alpha(alpha));
            if (static_cast<int>(a.size()) != b.order())
                throw UsageError("need one ratio per pattern vertex");
            if (! is_simplex_point(a))
                throw UsageError("ratios must be nonnegative and sum to 1");
            ExactValue v = eval_blowup(g, b, a);
            o.result["pattern"] = b.to_string();
            o.result["ratios"] = values_json(a);
            o.result["value"] = to_string(v);
            o.result["decimal"] = decimal(v);
            o.line(to_string(v));
            o.line("~ " + decimal(v));
            if (verify_max) {
                auto r = verify_maximizer(g, b, a, 1e-3, 2000, seed, tol);
                json m;
                m["critical"] = r.is_critical;
                m["boundary_ok"] = r.boundary_ok;
                m["boundary_checked"] = r.boundary_checked;
                m["neighborhood_local_max"] = r.neighborhood_local_max;
                m["max_gain"] = r.max_gain;
                m["samples"] = r.samples;
                m["partials"] = values_json(r.partials);
                o.result["maximizer"] = m;
                o.line(std::string("critical ") + (r.is_critical ? "yes" : "no"));
                o.line(std::string("boundary ") + (! r.boundary_checked ? "n/a" : r.boundary_ok ? "ok" : "violated"));
                o.line(std::string("local_max ") + (r.neighborhood_local_max ? "yes" : "no") + " (max gain " +
                       decimal(r.max_gain) + ")");
                if (! r.is_critical || (r.boundary_checked && ! r.boundary_ok) || ! r.neighborhood_local_max)
                    code = 1;
            }
        } else if (name == "blowup-opt") {
            Objective g = parse_objective(obj);
            Pattern b = parse_pattern(pattern);
            auto poly = blowup_polynomial(g, b);
            auto r = maximize_on_simplex(poly, starts, iters, seed);
            o.result["value"] = r.value;
            o.result["point"] = r.point;
            std::ostringstream pt;
            for (size_t i = 0; i < r.point.size(); ++i)
                pt << (i ? "," : "") << decimal(r.point[i]);
            o.line("value " + decimal(r.value));
            o.line("point " + pt.str());
            if (probe) {
                auto m = minimality_probe(g, b, starts, seed);
                json d = json::array();
                for (size_t i = 0; i < m.deleted.size(); ++i) {
                    d.push_back(m.deleted[i].value);
                    o.line("without " + std::to_string(i) + " " + decimal(m.deleted[i].value));
                }
                o.result["deleted"] = d;
            }
        } else if (name == "expand") {
            Graph t = graph6_decode(type);
            Flag f1 = parse_flag(flag1), f2 = parse_flag(flag2);
            HereditaryFamily fam = family_of(forbid);
            auto coeffs = expand_product(t, f1, f2, N, fam.empty() ? nullptr : &fam);
            auto gs = fam.empty() ? enumerate_graphs(N) : enumerate_graphs(N, &fam);
            json terms = json::object();
            for (size_t i = 0; i < coeffs.size(); ++i)
                if (sgn(coeffs[i]) != 0) {
                    terms[graph6_encode(gs[i])] = coeffs[i].get_str();
                    o.line(graph6_encode(gs[i]) + " " + coeffs[i].get_str());
                }
            o.result["basis_size"] = coeffs.size();
            o.result["terms"] = terms;
        } else if (name == "sdp-export") {
            Objective g = parse_objective(obj);
            HereditaryFamily fam = family_of(forbid);
            auto p = assemble(g, N, fam.empty() ? nullptr : &fam, {threads, ctx.cache_dir}, sense);
            export_sdpa(p, out_path);
            stamp_sdpa(out_path, ctx);
            o.result["constraints"] = p.constraints();
            o.result["block_sizes"] = p.block_sizes();
            o.result["out"] = out_path;
            o.line("constraints " + std::to_string(p.constraints()));
            o.line("blocks " + std::to_string(p.block_count()));
            o.line("wrote " + out_path);
        } else if (name == "round") {
            Objective g = parse_objective(obj);
            HereditaryFamily fam = family_of(forbid);
            auto p = assemble(g, N, fam.empty() ? nullptr : &fam, {threads, ctx.cache_dir}, sense);
            auto alpha_v = parse_alpha(alpha);
            std::string solution = sol_path;
            if (solution.empty()) {
                std::string base = out_path + ".sdp";
                std::string problem = base + ".dat-s";
                solution = base + ".sol";
                export_sdpa(p, problem);
                stamp_sdpa(problem, ctx);
                int st = run_solver(solver.empty() ? default_solver() : solver, problem, solution);
                if (st != 0) {
                    o.result["success"] = false;
                    o.result["failure"] = "solver exited with status " + std::to_string(st);
                    o.line("failure solver exited with status " + std::to_string(st));
                    code = 1;
                }
            }
            if (code == 0) {
                KernelHints hints(p.table.blocks.size());
                auto merge = [&](const KernelHints& h) {
                    for (size_t i = 0; i < h.size() && i < hints.size(); ++i)
                        hints[i].insert(hints[i].end(), h[i].begin(), h[i].end());
                };
                if (! pattern.empty()) {
                    if (ratios.empty())
                        throw UsageError("--pattern needs --ratios");
                    merge(construction_hints(p, parse_pattern(pattern), parse_values(ratios, alpha_v)));
                }
                if (! qr_density.empty())
                    merge(quasirandom_hints(p, parse_rational(qr_density)));
                RoundOptions ro;
                if (! denom.empty())
                    ro.denom_bound = Integer(denom);
                ro.detect_kernel = detect_kernel;
                QuadExt tgt = parse_quadext(target);
                ro.field_d = tgt.d();
                auto sol = import_solution(p, solution);
                auto r = round_solution(p, sol, hints, tgt, ro);
                o.result["success"] = r.success;
                o.result["solver_u"] = sol.u;
                if (r.success) {
                    add_job_meta(r.certificate, ctx);
                    save_certificate(r.certificate, out_path);
                    o.result["bound"] = exact_to_string(r.certificate.bound);
                    o.result["out"] = out_path;
                    o.line("verified " + exact_to_string(r.certificate.bound));
                    o.line("wrote " + out_path);
                } else {
                    o.result["failure"] = r.failure;
                    o.result["verdict"] = r.verdict.to_json();
                    o.line("failure " + r.failure);
                    code = 1;
                }
            }
        } else if (name == "verify") {
            Certificate c = load_certificate(cert_path);
            auto v = verify(c, nullptr, {threads, ctx.cache_dir});
            o.result["verdict"] = v.to_json();
            o.result["sense"] = c.sense;
            o.result["bound"] = exact_to_string(c.bound);
            if (v.verified()) {
                o.line("verified " + std::string(c.upper() ? "upper" : "lower") + " bound " + exact_to_string(c.bound));
            } else {
                o.line("refuted " + v.to_json().dump());
                code = 1;
            }
        } else if (name == "stability") {
            StabilityInput in;
            in.pattern = parse_pattern(pattern);
            in.tau = graph6_decode(tau);
            if (! ratios.empty())
                in.ratios = parse_values(ratios, parse_alpha(alpha));
            std::optional<Certificate> c, ct, cp;
            if (! cert_path.empty())
                in.cert = &c.emplace(load_certificate(cert_path));
            if (! aux_tau.empty())
                in.aux_tau_free = &ct.emplace(load_certificate(aux_tau));
            if (! aux_pat.empty())
                in.aux_pattern_free = &cp.emplace(load_certificate(aux_pat));
            auto rep = check_stability(in);
            o.result["report"] = rep.to_json();
            for (auto& ch : rep.checks) {
                o.line(ch.name + " " + to_string(ch.state) + (ch.detail.empty() ? "" : " " + ch.detail));
                if (ch.state == CheckState::fail)
                    code = 1;
            }
        } else if (name == "slack-query") {
            Certificate c = load_certificate(cert_path);
            std::vector<Graph> need, avoid;
            for (auto& s : contains)
                for (auto& g : parse_graph_list(s))
                    need.push_back(g);
            for (auto& s : avoids)
                for (auto& g : parse_graph_list(s))
                    avoid.push_back(g);
            auto pred = [&](const Graph& G) {
                for (auto& f : need)
                    if (f.order() > G.order() || sgn(count_induced(f, G)) == 0)
                        return false;
                for (auto& f : avoid)
                    if (f.order() <= G.order() && sgn(count_induced(f, G)) != 0)
                        return false;
                return true;
            };
            auto r = slack_query(c, pred);
            auto fam = c.family();
            auto gs = fam ? enumerate_graphs(c.N, &*fam) : enumerate_graphs(c.N);
            json arg = json::array();
            for (int i : r.argmin)
                arg.push_back(graph6_encode(gs.at(i)));
            o.result["matched"] = r.matched;
            o.result["minimum"] = r.minimum ? json(exact_to_string(*r.minimum)) : json("inf");
            o.result["argmin"] = arg;
            o.line("matched " + std::to_string(r.matched));
            o.line("minimum " + (r.minimum ? exact_to_string(*r.minimum) : std::string("inf")));
            for (auto& a : arg)
                o.line("argmin " + a.get<std::string>());
        } else if (name == "brute") {
            Objective g = parse_objective(obj);
            HereditaryFamily fam = family_of(forbid);
            auto rec = brute_max(g, n, fam.empty() ? nullptr : &fam, threads);
            rec.seed = seed;
            o.result["record"] = rec.to_json();
            o.line("max " + rec.value.get_str());
            o.line("examined " + std::to_string(rec.examined));
            for (auto& a : rec.argmax)
                o.line("argmax " + a);
        } else if (name == "sample") {
            Graph h = host_graph(graph, pattern, sizes, complete);
            Rational p = parse_rational(p_text);
            if (sgn(p) < 0 || p > 1)
                throw UsageError("--p must lie in [0,1]");
            std::optional<Objective> g;
            if (! obj.empty())
                g = parse_objective(obj);
            if (budget > 0 && ! g)
                throw UsageError("--search needs --obj");
            json samples = json::array();
            double sum = 0.0;
            for (int k = 0; k < count; ++k) {
                std::uint64_t s = seed + k;
                Graph G = sample_subgraph(h, p, s);
                json e;
                e["seed"] = s;
                e["edges"] = G.edge_count();
                if (list)
                    e["graph6"] = graph6_encode(G);
                std::string line = "seed " + std::to_string(s) + " edges " + std::to_string(G.edge_count());
                if (g) {
                    Rational d = lambda_eval(*g, G).density;
                    e["density"] = d.get_str();
                    sum += d.get_d();
                    line += " density " + decimal(d.get_d());
                    if (budget > 0) {
                        auto ls = local_search(*g, G, budget, s);
                        Rational dd = lambda_eval(*g, ls.graph).density;
                        e["search_density"] = dd.get_str();
                        line += " search " + decimal(dd.get_d());
                    }
                }
                samples.push_back(e);
                o.line(line);
                if (list)
                    o.line(graph6_encode(G));
            }
            o.result["samples"] = samples;
            if (g) {
                o.result["mean_density"] = sum / count;
                o.line("mean " + decimal(sum / count));
            }
        } else if (name == "editdist") {
            Graph G = graph6_decode(graph);
            Pattern b = parse_pattern(pattern);
            auto r = edit_distance_to_blowup(G, b, mode == "exact" ? EditMode::exact : EditMode::heuristic, seed);
            o.result["edit"] = r.to_json();
            o.line("distance " + std::to_string(r.value) + (r.exact ? " (exact)" : " (heuristic)"));
            std::ostringstream pt;
            for (size_t i = 0; i < r.partition.size(); ++i)
                pt << (i ? "," : "") << r.partition[i];
            o.line("partition " + pt.str());
        } else if (name == "diagnose") {
            Certificate c = load_certificate(cert_path);
            Graph G = graph6_decode(graph);
            auto hits = diagnose(c, G, block, parse_rational(eps));
            json a = json::array();
            for (auto& h : hits) {
                a.push_back({{"embedding", h.embedding}, {"norm", h.norm}});
                std::ostringstream e;
                for (size_t i = 0; i < h.embedding.size(); ++i)
                    e << (i ? "," : "") << h.embedding[i];
                o.line("embedding " + e.str() + " norm " + decimal(h.norm));
            }
            o.result["hits"] = a;
            o.line("hits " + std::to_string(hits.size()));
        }
    } catch (const UsageError& e) {
        err << "flagalg " << job.subcommand << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "flagalg " << job.subcommand << ": " << e.what() << "\n";
        return 2;
    }

    if (ctx.as_json) {
        json doc;
        doc["tool"] = "flagalg";
        doc["version"] = FLAGALG_VERSION;
        doc["job"] = job.to_json();
        doc["exit"] = code;
        doc["result"] = o.result;
        out << doc.dump() << "\n";
    } else {
        out << "# flagalg " << FLAGALG_VERSION << " " << job.to_json().dump() << "\n";
        for (auto& l : o.lines)
            out << l << "\n";
    }
    return code;
}

} // namespace flagalg::cli
