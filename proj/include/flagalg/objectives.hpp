#pragma once

#include <flagalg/graph.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace flagalg {

/// Two-coloured pattern: red pairs must map to edges, blue pairs to non-edges.
struct ColoredGraph
{
    int order = 0;
    std::vector<std::pair<int, int>> red, blue;

    ColoredGraph() = default;
    ColoredGraph(int n, std::vector<std::pair<int, int>> red_edges, std::vector<std::pair<int, int>> blue_edges);
    Graph red_graph() const;
    Graph blue_graph() const;
};

enum class ObjectiveKind { edge, graph, semi, custom };

struct Objective
{
    ObjectiveKind kind = ObjectiveKind::custom;
    int kappa = 0;
    /// One weight per graph of enumerate_graphs(kappa), canonical order.
    std::vector<Rational> weights;
    /// Mini-language form, e.g. "edge:4,3", "graph:Ch", "semi:Ch/C?".
    std::string descriptor;

    // kind-specific parameters
    int ell = 0;
    Graph target;
    ColoredGraph colored;

    const Rational& weight(const Graph& f) const;
};

Objective gamma_edge(int kappa, int ell);
Objective gamma_graph(const Graph& f);
Objective gamma_semi(const ColoredGraph& h);
Objective gamma_custom(int kappa, std::vector<Rational> weights, std::string descriptor = "custom");
/// gamma'(F) = gamma(complement F).
Objective complement_objective(const Objective& g);

/// `edge:K,L` | `graph:<graph6>` | `semi:<graph6-red>/<graph6-blue>` | `custom:<file>`.
Objective parse_objective(const std::string& text);
nlohmann::json objective_to_json(const Objective& g);
Objective objective_from_json(const nlohmann::json& j);

struct LambdaValue
{
    /// Sum of gamma(F) P(F, G).
    Rational total;
    /// total / C(n, kappa).
    Rational density;
};

LambdaValue lambda_eval(const Objective& g, const Graph& G);
/// Lambda_gamma(G, u): the weight of kappa-subsets containing u.
Rational lambda_vertex(const Objective& g, const Graph& G, int u);
/// t(F, G): injective embeddings over (n)_k.
Rational embedding_density(const Graph& f, const Graph& G);
/// Number of injections V(H) -> V(G) respecting the colouring.
Integer count_colored_injections(const ColoredGraph& h, const Graph& G);

} // namespace flagalg
