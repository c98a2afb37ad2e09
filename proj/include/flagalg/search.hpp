#pragma once

#include <flagalg/objectives.hpp>
#include <flagalg/patterns.hpp>
#include <flagalg/quadext.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace flagalg {

struct ExtremalRecord
{
    int n = 0;
    std::string objective;
    /// Lambda_gamma(G) = sum gamma(F) P(F, G), exact.
    Rational value;
    std::vector<std::string> argmax;
    /// "exhaustive" or "heuristic"
    std::string method = "exhaustive";
    /// Graphs examined (every isomorphism class for exhaustive records).
    size_t examined = 0;
    std::uint64_t seed = 0;
    nlohmann::json extra = nlohmann::json::object();

    nlohmann::json to_json() const;
    static ExtremalRecord from_json(const nlohmann::json& j);
};

/// Exact maximum of Lambda_gamma over all classes of order n (n <= 8) and every maximizer.
ExtremalRecord brute_max(const Objective& g, int n, const HereditaryFamily* family = nullptr, int threads = 0);

/// Lambda_{4,3}(K_m + K_{n-m}) = m C(n-m,3) + C(m,3)(n-m).
Integer split_formula_43(long n, long m);
/// Lambda_{4,3}(K_{m+1} + K_{n-m-1}) - Lambda_{4,3}(K_m + K_{n-m})
///   = (1/6)(n-2m-1)(4m^2 - 4mn + 4m + n^2 - 5n + 6).
Rational increment_formula(const Rational& n, const Rational& m);
/// Zeros in m of the increment: (n-1)/2 and (n-1 -+ sqrt(3n-5))/2, increasing.
std::vector<QuadExt> increment_roots(long n);

/// R(G, p): every edge kept independently with probability p. The draw for pair {u,v} is
/// the counter-rng output at position u*64+v, kept iff draw < p * 2^64 (exact comparison).
Graph sample_subgraph(const Graph& g, const Rational& p, std::uint64_t seed);

struct QuasirandomReport
{
    /// Bipartite homomorphism densities between the two parts (part-preserving maps).
    Rational edge_density;
    Rational c4_density;
    double edge_deviation = 0.0;
    double c4_deviation = 0.0;
    bool within = false;

    nlohmann::json to_json() const;
};

/// `side[v]` in {0,1}; both sides non-empty. Deviations are |t(K2) - c| and |t(C4) - c^4|.
QuasirandomReport quasirandom_check(const Graph& g, const std::vector<int>& side, const Rational& c, double tol);

enum class EditMode { exact, heuristic };

struct EditResult
{
    long value = 0;
    /// Part of B assigned to each vertex.
    std::vector<int> partition;
    bool exact = true;
    int restarts = 0;

    nlohmann::json to_json() const;
};

/// Pair edits needed to turn g into B(partition) for the given assignment.
long edit_cost(const Graph& g, const Pattern& b, const std::vector<int>& partition);
/// Minimum number of pair edits making g a blowup of b. Exact mode requires m^n <= 10^7
/// and runs branch and bound; heuristic mode runs 32 restarts of single-vertex moves.
EditResult edit_distance_to_blowup(const Graph& g, const Pattern& b, EditMode mode, std::uint64_t seed = 1);

struct LocalSearchResult
{
    /// Best graph met; its value never drops below the start.
    Graph graph;
    Rational value;
    Rational start_value;
    /// Moves made up to reaching `graph`.
    int flips = 0;
    /// No single flip strictly improves `graph`.
    bool fixed_point = false;
    /// Random restarts taken from strict local maxima.
    int kicks = 0;
};

/// Change in Lambda_gamma when the pair {x,y} is flipped.
Rational flip_gain(const Objective& g, const Graph& G, int x, int y);
/// Single-pair flip search: the best strictly improving flip if any, otherwise a seeded random
/// zero-gain flip not used in the last |pairs|/4 moves; at a strict local maximum, 3 + j random
/// flips from the best graph so far (j = kicks since the last improvement). Every flip counts against `budget`. The returned graph
/// is the best met, so its value is non-decreasing in the budget and never below the start.
LocalSearchResult local_search(const Objective& g, const Graph& start, int budget, std::uint64_t seed = 1);

} // namespace flagalg
