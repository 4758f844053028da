#ifndef SGCALC_SUITE_HPP
#define SGCALC_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sgcalc {

struct CriterionResult {
    std::string id;           // "AC01".."AC16"
    std::string description;  // what was measured, with key numbers
    double residual = 0.0;
    double budget = 0.0;  // effective tolerance the residual is held against
    bool pass = false;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
};

// Runs acceptance criterion k (1..16).
CriterionResult run_criterion(int k, const SuiteConfig& cfg);

// All criteria in order.
std::vector<CriterionResult> run_suite(const SuiteConfig& cfg);

// Deterministic serialization: [{id, description, residual, budget, pass}].
std::string report_to_json(const std::vector<CriterionResult>& results);

}  // namespace sgcalc

#endif
