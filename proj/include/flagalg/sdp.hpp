#pragma once

#include <flagalg/certificates.hpp>
#include <flagalg/flags.hpp>
#include <flagalg/objectives.hpp>

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace flagalg {

/// minimize u subject to X^tau >= 0 and c_H = u - lambda(H) - sum <X^tau, D^tau_H> >= 0.
///
/// Exported in SDPA form with Y = diag(X^tau..., c, u):
///   max -u   s.t.   sum_tau <D^tau_H, X^tau> + c_H - u = -lambda(H)   for every H.
/// Lower sense maximizes u with c_H = lambda(H) - u - sum <X^tau, D^tau_H>.
struct SdpProblem
{
    Objective objective;
    std::string sense = "upper";
    int N = 0;
    std::vector<Graph> forbidden;
    ProductTable table;
    std::vector<Rational> lambda;

    size_t constraints() const { return table.graphs.size(); }
    /// Types + slack block + u block.
    int block_count() const { return static_cast<int>(table.blocks.size()) + 2; }
    std::vector<int> block_sizes() const;
    bool upper() const { return sense == "upper"; }
};

SdpProblem assemble(const Objective& g, int N, const HereditaryFamily* family = nullptr, const ProductOptions& opts = {},
                    const std::string& sense = "upper");

void export_sdpa(const SdpProblem& p, const std::string& path);

/// Sparse SDPA data as read back from a .dat-s file.
struct SdpaData
{
    int m = 0;
    std::vector<int> block_sizes;
    std::vector<double> c;
    struct Entry
    {
        int mat, block, i, j;
        double value;
    };
    std::vector<Entry> entries;
};
SdpaData read_sdpa(const std::string& path);

struct FloatSolution
{
    double u = 0.0;
    std::vector<Eigen::MatrixXd> blocks;
    std::vector<double> slacks;
    /// Multipliers of the equality constraints (one per basis graph).
    std::vector<double> y;
    std::string layout;
};

/// Reads a CSDP-style solution (y line, then "matno block i j value" rows, matno 2 = Y)
/// or an SDPA .out file (yMat section).
FloatSolution import_solution(const SdpProblem& p, const std::string& path);
void write_csdp_solution(const SdpProblem& p, const FloatSolution& s, const std::string& path);

/// Replaces {problem} and {solution} in `command_template` and runs it; returns the exit status.
int run_solver(const std::string& command_template, const std::string& problem_path, const std::string& solution_path);

struct RoundOptions
{
    /// Entries of the free part are rounded to multiples of 1/denom_bound.
    Integer denom_bound = Integer(1) << 20;
    /// Kernel hints must satisfy ||X h||_inf < hint_guard * max(1, ||h||_inf).
    double hint_guard = 1e-3;
    /// The solver optimum must lie within this of the target bound.
    double bound_guard = 1e-4;
    /// Graphs whose rounded slack, or whose slack in the solver output, is below this
    /// are forced to zero slack.
    double zero_slack_tol = 1e-6;
    long field_d = 0;
    /// Also take the numerical kernel of each block: eigenvectors with eigenvalue below
    /// kernel_tol (relative to the largest), reduced on pivot columns and rationalised with
    /// denominators up to kernel_denominator. Each must pass the same guard as a hint.
    bool detect_kernel = false;
    double kernel_tol = 1e-4;
    long kernel_denominator = 12;
};

/// Hints per table block: exact vectors in the block's (canonical) flag order.
using KernelHints = std::vector<std::vector<std::vector<QuadExt>>>;

/// Hints for every type from a blowup construction.
KernelHints construction_hints(const SdpProblem& p, const Pattern& b, const std::vector<ExactValue>& a);

/// One hint per type: the rooted flag densities of the quasirandom graph with this edge density.
KernelHints quasirandom_hints(const SdpProblem& p, const Rational& density);

struct RoundResult
{
    bool success = false;
    std::string failure;
    Certificate certificate;
    Verdict verdict;
};

RoundResult round_solution(const SdpProblem& p, const FloatSolution& sol, const KernelHints& hints, const QuadExt& target,
                           const RoundOptions& opts = {});

} // namespace flagalg
