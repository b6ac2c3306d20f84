#pragma once

// The verification suites behind `rectdec verify` and the acceptance test
// binary: one named criterion per suite, exact pass/fail.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rectdec {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;  // first failure, or a short success note
    double seconds = 0.0;
};

CriterionResult criterion_roundtrip_decomposition(uint64_t seed);
CriterionResult criterion_equivalence_triangle(uint64_t seed);
CriterionResult criterion_psi_suite();
CriterionResult criterion_hook_suite();
CriterionResult criterion_filtration_lemmas(uint64_t seed);
CriterionResult criterion_skeleton_suite(uint64_t seed);
CriterionResult criterion_appendix_suite(uint64_t seed);

// all seven, in order
std::vector<CriterionResult> run_acceptance(uint64_t seed);

}  // namespace rectdec
