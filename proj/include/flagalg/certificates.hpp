#pragma once

#include <flagalg/flags.hpp>
#include <flagalg/matrix.hpp>
#include <flagalg/objectives.hpp>
#include <flagalg/patterns.hpp>
#include <flagalg/quadext.hpp>

#include <json.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagalg {

/// Raised for malformed certificates (as opposed to refuted ones).
struct CertificateError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct CertificateBlock
{
    /// Labelled type; flags are stored with roots in the order of this labelling.
    Graph type;
    std::vector<Flag> flags;
    ExactMatrix<QuadExt> matrix;
};

/// Data of the identity  u - lambda(H) = sum_tau <X^tau, D^tau_H> + c_H  for every H in F_N
/// ("upper"); with sense "lower" the left side is lambda(H) - u.
struct Certificate
{
    int version = 1;
    std::string normalization = "coefficient-basis-v1";
    std::string sense = "upper";
    Objective objective;
    int N = 0;
    /// 0 when every entry is rational, otherwise the square-free d of Q(sqrt d).
    long field_d = 0;
    std::vector<Graph> forbidden;
    QuadExt bound;
    std::vector<CertificateBlock> blocks;
    /// One slack per graph of the (family-restricted) N-vertex basis, canonical order.
    std::vector<QuadExt> slacks;
    nlohmann::json meta = nlohmann::json::object();

    std::optional<HereditaryFamily> family() const;
    bool upper() const { return sense == "upper"; }
};

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
Certificate load_certificate(const std::string& path);
void save_certificate(const Certificate& c, const std::string& path);

/// Exact value as JSON string: "p/q" or "a+b*sqrt(d)".
std::string exact_to_string(const QuadExt& x);
QuadExt exact_from_json(const nlohmann::json& j);

enum class VerdictStatus { verified, refuted };
enum class RefutationKind { none, negative_slack, not_psd, identity_mismatch };

struct Verdict
{
    VerdictStatus status = VerdictStatus::verified;
    RefutationKind kind = RefutationKind::none;
    /// Slack / graph index, or block index for not_psd.
    int index = -1;
    std::string graph6;
    /// Identity mismatch: the two sides; negative slack: the value.
    std::string lhs, rhs;
    /// not_psd: vector v with v^T X v < 0 (in the certificate's flag order).
    std::vector<std::string> witness;
    std::string detail;

    bool verified() const { return status == VerdictStatus::verified; }
    nlohmann::json to_json() const;
};

/// Certificate blocks mapped onto the product table: matrices indexed by table flag order.
template <class T>
struct AlignedBlock
{
    int table_block = -1;
    ExactMatrix<T> matrix;
};

struct VerifyOptions
{
    int threads = 0;
    std::string cache_dir;
};

/// Throws CertificateError when the certificate does not fit the basis at N.
Verdict verify(const Certificate& cert, const ProductTable* table = nullptr, const VerifyOptions& opts = {});

/// lambda(H) and the assembled right side sum <X,D_H> for every basis graph, as exact values
/// (useful for re-deriving refutations and for rounding).
struct IdentityTerms
{
    std::vector<QuadExt> lambda;
    std::vector<QuadExt> quadratic;
};
IdentityTerms identity_terms(const Certificate& cert, const ProductTable& table);

/// Slacks implied by the identity for the certificate's matrices and bound.
std::vector<QuadExt> implied_slacks(const Certificate& cert, const ProductTable& table);

ProductTable product_table_for(const Certificate& cert, const VerifyOptions& opts = {});

/// Matrix of block b expressed in the flag order of `basis` (the canonical one for its type).
ExactMatrix<QuadExt> aligned_matrix(const CertificateBlock& block, const FlagBasis& basis, Graph* canonical_type = nullptr);

Certificate trivial_certificate(const Objective& g, int N, const std::string& sense = "upper",
                                const HereditaryFamily* family = nullptr);

struct SlackQueryResult
{
    /// nullopt means no basis graph satisfied the predicate (+infinity).
    std::optional<QuadExt> minimum;
    std::vector<int> argmin;
    int matched = 0;
};
SlackQueryResult slack_query(const Certificate& cert, const std::function<bool(const Graph&)>& predicate);

struct DiagnoseHit
{
    std::vector<int> embedding;
    double norm = 0.0;
};
/// Embeddings f of block `block_index`'s type into G with ||X v_{G,f}||_inf >= eps.
std::vector<DiagnoseHit> diagnose(const Certificate& cert, const Graph& G, int block_index, const Rational& eps);

/// Coefficients of p(tau0,F) - p(tau1,F) over enumerate_flags(type, 3), type of order 2.
std::vector<Rational> degree_functional_coefficients(const FlagBasis& basis);
/// The degree functional on the 3-vertex flag vector of (G, (u0, u1)); equals (deg u0 - deg u1)/(n-2).
Rational degree_functional(const Graph& G, int u0, int u1);

enum class CheckState { pass, fail, not_checked };
std::string to_string(CheckState s);

struct StabilityCheck
{
    std::string name;
    CheckState state = CheckState::not_checked;
    std::string detail;
};

struct StabilityReport
{
    std::vector<StabilityCheck> checks;
    const StabilityCheck& get(const std::string& name) const;
    nlohmann::json to_json() const;
};

struct StabilityInput
{
    const Certificate* cert = nullptr;
    Pattern pattern;
    std::vector<ExactValue> ratios;
    Graph tau;
    /// Certificate over the tau-free family for (2a).
    const Certificate* aux_tau_free = nullptr;
    /// Certificate over the B°-free family for (ii).
    const Certificate* aux_pattern_free = nullptr;
};

/// Conditions (1), (2a), (2b), (2c), (3), (i), (ii); pieces whose inputs are absent are not_checked.
StabilityReport check_stability(const StabilityInput& in, const ProductTable* table = nullptr);

struct KernelVectors
{
    FlagBasis basis;
    /// Homomorphisms tau -> B (roots to parts), one vector per homomorphism.
    std::vector<std::vector<int>> assignments;
    std::vector<std::vector<ExactValue>> vectors;
};

/// Limiting s-vertex tau-flag densities in B(a) for every consistent assignment of the roots.
KernelVectors construction_kernel_vectors(const Pattern& b, const std::vector<ExactValue>& a, const Graph& tau, int s);

/// True iff kernel(X) meets span{e_i : i in subset} only in 0.
bool kernel_subspace_triviality(const ExactMatrix<QuadExt>& x, const std::vector<int>& subset);
bool kernel_subspace_triviality(const ExactMatrix<Rational>& x, const std::vector<int>& subset);

/// Exact comparison of two field values that may live in different quadratic fields.
int compare_exact(const QuadExt& a, const QuadExt& b);

} // namespace flagalg
