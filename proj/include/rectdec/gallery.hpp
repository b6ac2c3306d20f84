#pragma once

// Constructors for the named witness modules and the verification suites
// around them.

#include <string>
#include <vector>

#include "rectdec/bimodule.hpp"

namespace rectdec {

// Indecomposable module over (m+1) x (m+1) whose strict subgrid restrictions
// are all interval-decomposable.
GridModule psi(int m, Field f = Field(2));

struct PsiSpec {
    int m = 2;
    GridShape shape{3, 3};
    std::vector<int> jx;  // strictly increasing column injection, size m+1
    std::vector<int> jy;  // strictly increasing row injection, size m+1
    int p = 2;
};

// Left Kan extension of psi(m) along the injections: the value at t is the
// value of psi at the maximum of the injected down-set, 0 when it is empty.
GridModule psi_embedded(const PsiSpec& spec);

struct HookSpec {
    GridShape shape{3, 2};
    int x1 = 1, x2 = 2, x3 = 3;
    int y1 = 1, y2 = 2;
    // row threshold of the carrier interval S = {x >= x2 or y >= s_row};
    // defaults to y2 (the minimal choice); lower values fatten the P1 region
    // so that every comparability pattern of the region table is realized
    int s_row = 0;  // 0 means y2
    bool dual = false;  // rotate into the bottom-hook counterexample
    int p = 2;

    int srow() const { return s_row == 0 ? y2 : s_row; }
    void check() const;
};

// Pullback of the 5-point diagram along the region classification, zero off
// the hull; weakly inexact, indecomposable, square-locally decomposable into
// rectangles plus top hooks.
GridModule hook_counterexample(const HookSpec& spec);

// Region of a grid point: 0..4 inside the hull, -1 outside. Regions follow
// the partition of the hull by the carrier interval S.
int hook_region(const HookSpec& spec, GridPoint t);

struct VerifyReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

VerifyReport verify_psi(int m);
VerifyReport verify_hook(const HookSpec& spec);

}  // namespace rectdec
