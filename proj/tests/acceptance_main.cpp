// Runs the full acceptance suite and prints one pass/fail line per criterion.

#include <cstdio>
#include <cstdlib>

#include "rectdec/acceptance.hpp"

int main(int argc, char** argv) {
    uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260823ULL;
    bool all_passed = true;
    for (const rectdec::CriterionResult& r : rectdec::run_acceptance(seed)) {
        std::printf("[%s] %-26s %6.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.c_str());
        std::fflush(stdout);
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 1;
}
