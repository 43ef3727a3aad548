// The numbered acceptance criteria behind `varmult-lab selftest` and the
// acceptance binary: every tolerance is pinned here, one place, in code.
#pragma once

#include <string>
#include <vector>

namespace varmult {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

// Runs the requested criteria (1..10) in ascending order and returns one
// result per criterion. Criterion 10 gates the combined runtime of criteria
// 1-8, so requesting it forces those to run (and be reported) first. An
// empty list runs all ten.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& indices);

// "[PASS] criterion 3: closed forms (0.01 s) worst error 2.2e-16"
std::string format_criterion(const CriterionResult& r);

} // namespace varmult
