// Acceptance suite: runs every criterion at its stated runtime budget and
// prints one PASS/FAIL line each. Exit status is nonzero if any fails.

#include <cstdio>

#include "syracuse/verify.hpp"

int main() {
    using namespace syracuse;
    verify::Options opt;
    opt.full = true;
    int failed = 0;
    verify::run(opt, [&](const verify::CheckResult& r) {
        std::printf("%s [%d] %-18s %9.1f ms (budget %.0f ms)  %s\n", r.passed ? "PASS" : "FAIL", r.criterion,
                    r.name.c_str(), r.elapsed_ms, r.budget_ms, r.anchor.c_str());
        if (!r.passed) {
            std::printf("       %s\n", r.detail.c_str());
            ++failed;
        }
    });
    std::printf("%s: %d criterion(s) failed\n", failed == 0 ? "OK" : "FAILED", failed);
    return failed == 0 ? 0 : 1;
}
