#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "rectdec/decomposer.hpp"
#include "rectdec/gallery.hpp"
#include "rectdec/shapes.hpp"

using namespace rectdec;

TEST_CASE("psi dimensions and maps") {
    CHECK_THROWS(psi(1));
    GridModule m2 = psi(2);
    CHECK(m2.shape() == GridShape{3, 3});
    int expect[3][3] = {{0, 0, 1}, {0, 1, 2}, {1, 2, 2}};  // rows y = 1..3
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) CHECK(m2.dim(x, y) == expect[y - 1][x - 1]);
    Field f2(2);
    // off-diagonal entry points inject into their own axis...
    CHECK(m2.hmap(2, 2) == Matrix(2, 1, f2, {0, 1}));
    CHECK(m2.vmap(2, 2) == Matrix(2, 1, f2, {0, 1}));
    CHECK(m2.hmap(1, 3) == Matrix(2, 1, f2, {1, 0}));
    // ...except the right-edge corner, which injects into the diagonal
    CHECK(m2.vmap(3, 1) == Matrix(2, 1, f2, {1, 1}));
    CHECK(m2.vmap(1, 2) == Matrix(1, 0, f2));  // nothing below the antidiagonal
    CHECK(m2.hmap(2, 3) == Matrix::identity(2, f2));

    GridModule m3 = psi(3, Field(5));
    CHECK(m3.shape() == GridShape{4, 4});
    CHECK(m3.dim(1, 4) == 1);
    CHECK(m3.dim(2, 4) == 3);
    CHECK(m3.dim(4, 4) == 3);
    CHECK(m3.dim(2, 2) == 0);
}

TEST_CASE("psi is indecomposable but locally interval-decomposable") {
    GridModule m = psi(2);
    CHECK(end_dim(m) == 1);
    CHECK_FALSE(interval_decompose(m).has_value());
    // one representative strict subgrid: drop the last column
    auto dec = interval_decompose(restrict_module(m, {1, 2}, {1, 2, 3}));
    CHECK(dec.has_value());
    VerifyReport rep = verify_psi(2);
    CHECK(rep.ok());
    CHECK_THROWS(verify_psi(4));
}

TEST_CASE("psi_embedded is a Kan extension along the injections") {
    PsiSpec spec;
    spec.shape = {4, 4};
    spec.jx = {1, 2, 4};
    spec.jy = {1, 3, 4};
    GridModule emb = psi_embedded(spec);
    emb.validate();
    // restriction to the injected subgrid gives psi back
    CHECK(restrict_module(emb, spec.jx, spec.jy) == psi(2));
    // non-injected nodes copy the value at the floor of their down-set
    CHECK(emb.dim(3, 1) == psi(2).dim(2, 1));
    CHECK(emb.dim(3, 2) == psi(2).dim(2, 1));
    CHECK(emb.hmap(2, 4) == Matrix::identity(emb.dim(2, 4), Field(2)));
    // rows/columns before the first injected index are zero
    PsiSpec shifted = spec;
    shifted.jx = {2, 3, 4};
    GridModule emb2 = psi_embedded(shifted);
    for (int y = 1; y <= 4; ++y) CHECK(emb2.dim(1, y) == 0);
    CHECK(end_dim(emb) == 1);
    // all 2x2 product subgrids stay interval-decomposable
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
            for (int c = 1; c <= 4; ++c)
                for (int d = c + 1; d <= 4; ++d)
                    CHECK(interval_decompose(restrict_module(emb, {a, b}, {c, d})).has_value());

    PsiSpec bad = spec;
    bad.jx = {1, 1, 4};
    CHECK_THROWS(psi_embedded(bad));
    bad.jx = {1, 2};
    CHECK_THROWS(psi_embedded(bad));
}

TEST_CASE("hook counterexample: minimal grid dimensions and maps") {
    HookSpec spec;  // 3x2 hull, x = (1,2,3), y = (1,2)
    GridModule m = hook_counterexample(spec);
    int expect[2][3] = {{0, 1, 1}, {1, 2, 1}};  // rows y = 1..2
    for (int y = 1; y <= 2; ++y)
        for (int x = 1; x <= 3; ++x) CHECK(m.dim(x, y) == expect[y - 1][x - 1]);
    Field f2(2);
    CHECK(m.hmap(1, 2) == Matrix(2, 1, f2, {1, 1}));  // region 1 -> 3
    CHECK(m.vmap(2, 1) == Matrix(2, 1, f2, {1, 0}));  // region 2 -> 3
    CHECK(m.hmap(2, 2) == Matrix(1, 2, f2, {1, 0}));  // region 3 -> 4
    CHECK(m.hmap(2, 1) == Matrix::identity(1, f2));   // region 2 -> 4
}

TEST_CASE("hook regions partition the hull") {
    HookSpec spec;
    CHECK(hook_region(spec, {1, 1}) == 0);
    CHECK(hook_region(spec, {1, 2}) == 1);
    CHECK(hook_region(spec, {2, 1}) == 2);
    CHECK(hook_region(spec, {2, 2}) == 3);
    CHECK(hook_region(spec, {3, 1}) == 4);
    CHECK(hook_region(spec, {3, 2}) == 4);

    // widened spec with a lower carrier row: region 1 fattens downward
    HookSpec wide;
    wide.shape = {6, 4};
    wide.x1 = 1;
    wide.x2 = 4;
    wide.x3 = 6;
    wide.y1 = 1;
    wide.y2 = 4;
    wide.s_row = 3;
    CHECK(hook_region(wide, {1, 2}) == 0);   // below the carrier row, left edge
    CHECK(hook_region(wide, {1, 3}) == 1);
    CHECK(hook_region(wide, {2, 2}) == 2);   // interior, outside S
    CHECK(hook_region(wide, {2, 3}) == 3);
    CHECK(hook_region(wide, {4, 1}) == 2);   // x >= x2 but bottom row
    CHECK(hook_region(wide, {4, 2}) == 3);
    CHECK(hook_region(wide, {6, 1}) == 4);
    CHECK(hook_region(wide, {2, 5}) == -1);  // outside the hull
    hook_counterexample(wide).validate();

    HookSpec bad;
    bad.x2 = 3;
    bad.x3 = 3;
    CHECK_THROWS(hook_counterexample(bad));
    bad = HookSpec{};
    bad.s_row = 1;  // must stay above y1
    CHECK_THROWS(hook_counterexample(bad));
}

TEST_CASE("hook module is weakly inexact yet locally tame") {
    HookSpec spec;
    GridModule m = hook_counterexample(spec);
    CHECK(end_dim(m) == 1);
    ExactnessReport rep = weak_exact(m);
    CHECK_FALSE(rep.verdict);
    CHECK(rep.witness.has_value());
    CHECK_FALSE(local_condition_check(m, LocalClass::rectangles));
    CHECK(local_condition_check(m, LocalClass::rectangles_plus_top_hooks));

    // the square on (x2,x3) x (y1,y2) splits as full square plus a point
    auto dec = interval_decompose(restrict_module(m, {2, 3}, {1, 2}));
    REQUIRE(dec.has_value());
    GridShape sq{2, 2};
    IntervalShape full = rectangle_to_interval(RectangleShape::from_ranges(sq, 1, 2, 1, 2));
    IntervalShape point = rectangle_to_interval(RectangleShape::from_ranges(sq, 1, 1, 2, 2));
    CHECK(dec->summands == std::vector<std::pair<IntervalShape, int>>{{full, 1}, {point, 1}});

    CHECK(verify_hook(spec).ok());
}

TEST_CASE("dual hook swaps the obstruction class") {
    HookSpec spec;
    spec.dual = true;
    GridModule m = hook_counterexample(spec);
    m.validate();
    CHECK(end_dim(m) == 1);
    CHECK_FALSE(weak_exact(m).verdict);
    CHECK_FALSE(local_condition_check(m, LocalClass::rectangles_plus_top_hooks));
    CHECK(local_condition_check(m, LocalClass::intervals));
    HookSpec plain;
    CHECK(m == rotate_dual(hook_counterexample(plain)));
}
