#pragma once

#include <flagalg/algebraic.hpp>
#include <flagalg/graph.hpp>
#include <flagalg/objectives.hpp>
#include <flagalg/poly.hpp>

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flagalg {

/// Graph on [m] that may carry loops. Bit i of row i is the loop at i.
class Pattern
{
    public:
        Pattern() = default;
        explicit Pattern(int m);
        Pattern(int m, std::initializer_list<std::pair<int, int>> pairs);
        Pattern(int m, std::span<const std::pair<int, int>> pairs);

        int order() const { return m_; }
        bool adjacent(int i, int j) const { return (adj_[i] >> j) & 1U; }
        bool loop(int i) const { return adjacent(i, i); }
        std::uint64_t row(int i) const { return adj_[i]; }
        /// Adds ij; i == j adds a loop.
        void add_edge(int i, int j);

        std::vector<std::pair<int, int>> edges() const; // i < j
        std::vector<int> loops() const;
        /// B with loops dropped.
        Graph without_loops() const;
        /// Flips every pair and every loop, so the complement of a blowup is the blowup of this.
        Pattern complement() const;
        Pattern remove_vertex(int v) const;
        /// Compact form "m:01,22" (digits when m <= 10, else "m:0-1,2-2").
        std::string to_string() const;

        friend bool operator==(const Pattern& a, const Pattern& b) { return a.m_ == b.m_ && a.adj_ == b.adj_; }

    private:
        int m_ = 0;
        std::vector<std::uint64_t> adj_;
};

/// Accepts "K<m>", "E<m>" (no edges, no loops), "L<m>" (m isolated loops),
/// "<m>:<pairs>" with pairs "ij" or "i-j" separated by commas, or a JSON object.
Pattern parse_pattern(const std::string& text);
nlohmann::json pattern_to_json(const Pattern& b);
Pattern pattern_from_json(const nlohmann::json& j);

/// The blowup with parts of the given sizes, parts laid out consecutively.
Graph blowup_build(const Pattern& b, std::span<const int> sizes);

/// All maps V(F) -> V(B) preserving edges and non-edges; identified vertices
/// need a loop when adjacent and no loop when not.
std::vector<std::vector<int>> homomorphisms(const Graph& f, const Pattern& b);
bool has_homomorphism(const Graph& f, const Pattern& b);

/// Every automorphism of B (loops act as a vertex colour).
std::vector<std::vector<int>> pattern_automorphisms(const Pattern& b);
/// Number of Aut(B)-orbits on homomorphisms F -> B (acting by composition).
int homomorphism_orbits(const Graph& f, const Pattern& b);

/// lambda_gamma(B(x)) as a homogeneous polynomial in x0..x{m-1}.
Poly<Rational> blowup_polynomial(const Objective& g, const Pattern& b);
/// Same polynomial from the homomorphism sum, used as a cross-check.
Poly<Rational> blowup_polynomial_by_homs(const Objective& g, const Pattern& b);

std::vector<std::string> pattern_variables(int m);

/// Exact: every coordinate >= 0 and the sum equals 1.
bool is_simplex_point(const std::vector<ExactValue>& a);
ExactValue eval_blowup(const Objective& g, const Pattern& b, const std::vector<ExactValue>& a);
double eval_blowup_numeric(const Poly<Rational>& p, std::span<const double> x);

struct MaximizerReport
{
    bool valid_point = false;
    /// All partials agree on the support of a.
    bool is_critical = false;
    /// Off-support partials do not exceed the common value (true when a has full support).
    bool boundary_ok = false;
    bool boundary_checked = false;
    /// No sampled point in the eps-ball beat lambda(a) by more than tol.
    bool neighborhood_local_max = false;
    double max_gain = 0.0;
    int samples = 0;
    ExactValue value;
    std::vector<ExactValue> partials;
};

MaximizerReport verify_maximizer(const Objective& g, const Pattern& b, const std::vector<ExactValue>& a,
                                 double eps = 1e-3, int samples = 2000, std::uint64_t seed = 1, double tol = 1e-12);

struct AscentResult
{
    double value = 0.0;
    std::vector<double> point;
};

/// Multi-start projected gradient ascent on the simplex (numeric, no guarantee).
AscentResult maximize_on_simplex(const Poly<Rational>& p, int starts = 16, int iterations = 400, std::uint64_t seed = 1);

struct MinimalityProbe
{
    double full_value = 0.0;
    /// Best value found with vertex i deleted.
    std::vector<AscentResult> deleted;
    bool rigorous = false;
};

MinimalityProbe minimality_probe(const Objective& g, const Pattern& b, int starts = 16, std::uint64_t seed = 1);

} // namespace flagalg
