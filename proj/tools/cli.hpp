#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace flagalg::cli {

/// Everything a run depends on; echoed into every output.
struct JobConfig
{
    std::string subcommand;
    std::string objective;
    std::map<std::string, std::string> paths;
    int N = 0;
    std::string denom_bound;
    double tol = 0.0;
    std::uint64_t seed = 1;
    int threads = 0;
    /// Remaining subcommand arguments as given.
    nlohmann::json args = nlohmann::json::object();

    nlohmann::json to_json() const;
    static JobConfig from_json(const nlohmann::json& j);
};

/// Exit codes: 0 success or verified, 1 refuted or infeasible, 2 usage or malformed input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace flagalg::cli
