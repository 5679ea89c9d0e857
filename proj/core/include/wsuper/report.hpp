#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace wsuper {

// Batch front end: parse a JobSpec, run the requested tasks in dependency
// order, assemble a canonical (deterministic) JSON report.
struct JobSpec {
    nlohmann::json algebra;
    nlohmann::json nilpotent;  // defaults to the zero element
    nlohmann::json character;  // optional, for the bounds task
    int degree_cap = 8;
    std::vector<long> primes;
    std::vector<std::string> tasks;

    static JobSpec parse(const nlohmann::json& j);
};

struct RunResult {
    nlohmann::json report;
    bool spec_error = false;
    bool task_failure = false;
    int exit_code() const { return spec_error ? 2 : (task_failure ? 3 : 0); }
};

RunResult run_job(const nlohmann::json& jobspec_json);

// structural diff of two reports; empty result means equal
std::vector<std::string> golden_compare(const nlohmann::json& report,
                                        const nlohmann::json& fixture);

// human-readable rendering of a report
std::string render_text(const nlohmann::json& report);

} // namespace wsuper
