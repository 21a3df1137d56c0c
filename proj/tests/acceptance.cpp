// Acceptance gate: runs every cross-validation check with pinned tolerances
// and prints one PASS/FAIL line per criterion.  Exits nonzero if any fails.

#include <cstdio>
#include <exception>

#include "supra/validate.hpp"

int main() {
    constexpr unsigned seed = 20260825;
    std::vector<supra::checks::Check> results;
    try {
        results = supra::checks::run_all(seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance harness aborted: %s\n", e.what());
        return 1;
    }

    int failed = 0;
    int idx = 0;
    for (const auto& c : results) {
        ++idx;
        if (!c.pass) ++failed;
        std::printf("[%2d/%zu] %s %-21s value=%.6g tol=%.6g  %s\n", idx, results.size(),
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance,
                    c.note.c_str());
    }
    if (failed == 0)
        std::printf("all %zu acceptance checks passed\n", results.size());
    else
        std::printf("%d of %zu acceptance checks FAILED\n", failed, results.size());
    return failed == 0 ? 0 : 1;
}
