#ifndef DIAGEXT_RUNNER_HPP
#define DIAGEXT_RUNNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace diagext {

/* One CLI invocation. Inline sources take precedence over paths (used
 * by the python bindings and tests). */
struct RunConfig {
    std::string command;
    std::string algebra_path;
    std::vector<std::string> module_paths;
    std::optional<std::string> algebra_text;
    std::vector<std::string> module_texts;

    int n_max = 4;
    int window = 6;
    int depth = -1; // materialization depth; -1 = automatic
    std::string format = "json"; // "json" | "text"
    std::map<std::string, std::string> unit_overrides; // e.g. q -> "3"
    std::optional<std::string> field_override;         // "Q" or "GF(p)"

    // betti-compare arguments
    int arg_i = -1, arg_n = -1, arg_m = -1;

    // hochschild: mirror the rational run over GF(p) and compare dims
    long mirror_prime = 0;
};

struct RunResult {
    nlohmann::json report;
    std::string text; // human-readable rendering
    int exit_code = 0; // 0 ok, 2 hypothesis failure, 1 error
};

/* Dispatch a command; never throws (errors are folded into the report
 * and the exit code). */
RunResult run(const RunConfig& cfg);

/* The known subcommands, for the CLI front end. */
const std::vector<std::string>& known_commands();

} // namespace diagext

#endif
