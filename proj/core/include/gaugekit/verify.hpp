#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugekit/maps.hpp"
#include "gaugekit/rng.hpp"
#include "gaugekit/solver.hpp"

namespace gaugekit {

struct SuiteCase {
    std::string proposition_tag;
    bool pass = false;
    double worst_slack = 0.0;
    double runtime_ms = 0.0; // human table only; excluded from canonical JSON
    std::uint64_t seed = 0;
};

struct SuiteResult {
    std::string suite_name;
    std::vector<SuiteCase> cases;
    bool all_passed() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int trials = 0;    // 0: per-case defaults
    int max_level = 3; // cap for "completely" checks
    SolverConfig solver;
};

/// Suites: section2, mos-axioms, unitization, maps, quotients; "all" runs
/// them in that order.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);
std::vector<SuiteResult> run_all(const VerifyOptions& opts);

/// Canonical JSON: deterministic for identical (suite, seed, config);
/// volatile timing data is kept out of it.
std::string suite_results_to_json(const std::vector<SuiteResult>& results);
std::string suite_results_to_text(const std::vector<SuiteResult>& results);

/// Random polyhedral space generator shared by the suites and the
/// acceptance harness: proper cone, sup or polytope norm, dim <= max_dim.
PolySpace random_poly_space(Rng& rng, int max_dim);

} // namespace gaugekit
