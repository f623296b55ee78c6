#pragma once

#include <string>
#include <vector>

// Verification suites over the exact identities and numeric checks.
// Each suite returns pass/fail plus a short human-readable detail line.

namespace primrow::verify {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Registered suite names, in execution order.
std::vector<std::string> suite_names();

// Runs one suite by name; throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name);

std::vector<SuiteResult> run_all();

}  // namespace primrow::verify
