#include "varmult/acceptance.hpp"

#include <cstdio>
#include <exception>

int main() {
    try {
        const std::vector<varmult::CriterionResult> results = varmult::run_acceptance({});
        bool all = true;
        for (const varmult::CriterionResult& r : results) {
            std::puts(varmult::format_criterion(r).c_str());
            all = all && r.passed;
        }
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
}
