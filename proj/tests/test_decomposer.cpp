#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "rectdec/decomposer.hpp"
#include "rectdec/filtration.hpp"

using namespace rectdec;

namespace {

GridModule hook_module(bool top) {
    GridShape g{2, 2};
    auto [bottom_hook, top_hook] = hooks(Square{{1, 1}, {2, 2}});
    return indicator(g, top ? top_hook : bottom_hook, Field(2));
}

GridModule rect_pair() {
    GridShape g{3, 3};
    return direct_sum(indicator(RectangleShape::from_ranges(g, 1, 3, 2, 3), Field(2)),
                      indicator(RectangleShape::from_ranges(g, 2, 3, 2, 3), Field(2)));
}

}  // namespace

TEST_CASE("weak exactness verdicts and witnesses") {
    // rectangle indicators and their sums pass
    for (const auto& r : enumerate_rectangles({3, 3}))
        CHECK(weak_exact(indicator(r, Field(2))).verdict);
    CHECK(weak_exact(rect_pair()).verdict);

    // a top hook fails the image condition: nothing arrives from the corner,
    // but both one-step images meet in a line
    ExactnessReport top = weak_exact(hook_module(true));
    REQUIRE_FALSE(top.verdict);
    REQUIRE(top.witness.has_value());
    CHECK(top.witness->condition == ExactnessWitness::Condition::image);
    CHECK(top.witness->square.s == GridPoint{1, 1});
    CHECK(top.witness->square.t == GridPoint{2, 2});
    CHECK(top.witness->lhs.is_zero());
    CHECK(top.witness->rhs.dim() == 1);
    CHECK(top.witness->describe().find("image") != std::string::npos);

    // a bottom hook fails the kernel condition: the corner class dies along
    // the diagonal but along neither edge
    ExactnessReport bottom = weak_exact(hook_module(false));
    REQUIRE_FALSE(bottom.verdict);
    REQUIRE(bottom.witness.has_value());
    CHECK(bottom.witness->condition == ExactnessWitness::Condition::kernel);
    CHECK(bottom.witness->lhs.dim() == 1);
    CHECK(bottom.witness->rhs.is_zero());
}

TEST_CASE("strong exactness is strictly stronger") {
    GridShape g{3, 3};
    // blocks (bands and quadrants) are strongly exact
    for (const char* lit : {"1..3,2..2", "2..2,1..3", "1..2,1..2", "2..3,2..3"}) {
        GridModule m = indicator(parse_rectangle(g, lit), Field(5));
        CHECK(strong_exact(m).verdict);
        CHECK(weak_exact(m).verdict);
    }
    // an interior rectangle is weakly but not strongly exact
    GridModule inner = indicator(parse_rectangle(g, "2..2,2..2"), Field(5));
    CHECK(weak_exact(inner).verdict);
    ExactnessReport rep = strong_exact(inner);
    CHECK_FALSE(rep.verdict);
    CHECK(rep.witness.has_value());
    // hooks fail both
    CHECK_FALSE(strong_exact(hook_module(true)).verdict);
}

TEST_CASE("decompose_rectangles round trip with certificate") {
    for (uint64_t seed : {5ull, 17ull, 23ull, 71ull}) {
        auto sample = random_rectangle_decomposable({4, 4}, Field(seed % 2 ? 2 : 5), 5, seed);
        Decomposition dec = decompose_rectangles(sample.module, true);
        // exact ground-truth multiset
        std::map<IntervalShape, int> counts;
        for (const RectangleSummand& r : sample.summands)
            ++counts[rectangle_to_interval(
                RectangleShape::from_ranges({4, 4}, r.x1, r.x2, r.y1, r.y2))];
        std::vector<std::pair<IntervalShape, int>> expect(counts.begin(), counts.end());
        std::sort(expect.begin(), expect.end());
        CHECK(dec.summands == expect);
        // certificate: per-node change of basis is square and invertible, and
        // each filtrate block has the right width
        for (int y = 1; y <= 4; ++y)
            for (int x = 1; x <= 4; ++x) {
                GridPoint t{x, y};
                CHECK(dec.total_dim(t) == sample.module.dim(t));
                const Matrix& iso = dec.iso[static_cast<size_t>(y - 1) * 4 + (x - 1)];
                CHECK(iso.rows() == sample.module.dim(t));
                CHECK(rank(iso) == sample.module.dim(t));
            }
        for (const FiltrateFamily& fam : dec.bases) {
            SubmoduleFamily f = fam.as_family();
            CHECK(f.is_submodule());
            for (int y = 1; y <= 4; ++y)
                for (int x = 1; x <= 4; ++x)
                    CHECK(fam.at({x, y}).cols() ==
                          (fam.rect.member({x, y}) ? counting_dim(sample.module, fam.rect) : 0));
        }
    }
}

TEST_CASE("decompose_rectangles throws with a checkable witness") {
    GridModule m = hook_module(true);
    CHECK_THROWS_AS(decompose_rectangles(m), NotWeaklyExact);
    try {
        decompose_rectangles(m);
    } catch (const NotWeaklyExact& e) {
        // the carried witness matches an independent re-check of that square
        const ExactnessWitness& w = e.witness;
        Subspace im = image_basis(m.rho(w.square.s, w.square.t));
        Subspace cap = intersection(
            image_basis(m.rho({w.square.t.x, w.square.s.y}, w.square.t)),
            image_basis(m.rho({w.square.s.x, w.square.t.y}, w.square.t)));
        CHECK(w.condition == ExactnessWitness::Condition::image);
        CHECK(im != cap);
        CHECK(w.lhs == im);
        CHECK(w.rhs == cap);
    }
}

TEST_CASE("hom_space and end_dim") {
    GridShape g{3, 3};
    Field f2(2);
    GridModule r = indicator(RectangleShape::from_ranges(g, 1, 2, 1, 2), f2);
    CHECK(end_dim(r) == 1);
    CHECK(end_dim(direct_sum(r, r)) == 4);
    CHECK(end_dim(hook_module(true)) == 1);
    CHECK(end_dim(hook_module(false)) == 1);

    // maps only flow from later-born to earlier-born overlapping rectangles
    GridShape line{2, 1};
    GridModule longer = indicator(RectangleShape::from_ranges(line, 1, 2, 1, 1), f2);
    GridModule shorter = indicator(RectangleShape::from_ranges(line, 1, 1, 1, 1), f2);
    CHECK(hom_space(longer, shorter).dim() == 1);
    CHECK(hom_space(shorter, longer).dim() == 0);
    // disjoint supports: no morphisms
    GridModule late = indicator(RectangleShape::from_ranges(line, 2, 2, 1, 1), f2);
    CHECK(hom_space(shorter, late).dim() == 0);
    CHECK_THROWS(hom_space(longer, r));  // shape mismatch

    // every basis morphism is natural on every edge
    GridModule a = rect_pair();
    HomBasis h = hom_space(a, a);
    CHECK(h.dim() == 3);  // id, id, and the inclusion of the later summand
    for (const Morphism& mor : h.basis)
        for (int y = 1; y <= 3; ++y)
            for (int x = 1; x <= 3; ++x) {
                if (x < 3)
                    CHECK(morphism_at(mor, a, {x + 1, y}) * a.hmap(x, y) ==
                          a.hmap(x, y) * morphism_at(mor, a, {x, y}));
                if (y < 3)
                    CHECK(morphism_at(mor, a, {x, y + 1}) * a.vmap(x, y) ==
                          a.vmap(x, y) * morphism_at(mor, a, {x, y}));
            }
}

TEST_CASE("is_summand produces a split pair") {
    GridModule m = rect_pair();
    GridShape g = m.shape();
    IntervalShape wide = rectangle_to_interval(RectangleShape::from_ranges(g, 1, 3, 2, 3));
    auto pair = is_summand(m, wide);
    REQUIRE(pair.has_value());
    GridModule ind = indicator(g, wide, m.field());
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) {
            if (!wide.member({x, y})) continue;
            Matrix comp = morphism_at(pair->g, m, {x, y}) * morphism_at(pair->f, ind, {x, y});
            CHECK(comp == Matrix::identity(1, m.field()));
        }
    // not a summand: right shape, wrong lifespan
    IntervalShape absent = rectangle_to_interval(RectangleShape::from_ranges(g, 1, 1, 1, 1));
    CHECK_FALSE(is_summand(m, absent).has_value());
    CHECK_THROWS(is_summand(m, rectangle_to_interval(
                                   RectangleShape::from_ranges({2, 2}, 1, 1, 1, 1))));
}

TEST_CASE("split_by_idempotent") {
    GridShape g{2, 2};
    Field f2(2);
    GridModule a = indicator(RectangleShape::from_ranges(g, 1, 2, 1, 2), f2);
    GridModule b = indicator(RectangleShape::from_ranges(g, 2, 2, 1, 2), f2);
    GridModule m = direct_sum(a, b);
    Morphism e(4, Matrix());
    for (int y = 1; y <= 2; ++y)
        for (int x = 1; x <= 2; ++x) {
            int d = m.dim(x, y);
            Matrix proj(d, d, f2);
            if (a.dim(x, y) == 1) proj.set(0, 0, 1);  // project onto the first block
            morphism_at(e, m, {x, y}) = proj;
        }
    auto [ma, mb] = split_by_idempotent(m, e);
    CHECK(ma == a);
    CHECK(mb == b);

    Morphism bad = e;
    morphism_at(bad, m, {2, 1}).set(0, 0, 0);  // breaks naturality on (1,1)->(2,1)
    CHECK_THROWS(split_by_idempotent(m, bad));
    Morphism not_idem = e;
    morphism_at(not_idem, m, {2, 2}) = Matrix(2, 2, f2, {1, 1, 1, 1});
    CHECK_THROWS(split_by_idempotent(m, not_idem));
}

TEST_CASE("interval_decompose handles hooks and disconnected supports") {
    GridShape g{2, 2};
    auto [h1, h2] = hooks(Square{{1, 1}, {2, 2}});
    auto dec = interval_decompose(indicator(g, h2, Field(2)));
    REQUIRE(dec.has_value());
    CHECK(dec->summands == std::vector<std::pair<IntervalShape, int>>{{h2, 1}});

    // mixed sum: two rectangles plus a hook, exact multiset back
    GridModule m = direct_sum(direct_sum(indicator(g, h2, Field(2)),
                                         indicator(RectangleShape::from_ranges(g, 1, 2, 1, 2),
                                                   Field(2))),
                              indicator(g, h2, Field(2)));
    auto mixed = interval_decompose(m);
    REQUIRE(mixed.has_value());
    IntervalShape full = rectangle_to_interval(RectangleShape::from_ranges(g, 1, 2, 1, 2));
    CHECK(mixed->summands == std::vector<std::pair<IntervalShape, int>>{{full, 1}, {h2, 2}});

    // disconnected support splits into the two components
    GridShape wide{3, 1};
    GridModule apart = direct_sum(indicator(RectangleShape::from_ranges(wide, 1, 1, 1, 1),
                                            Field(5)),
                                  indicator(RectangleShape::from_ranges(wide, 3, 3, 1, 1),
                                            Field(5)));
    auto two = interval_decompose(apart);
    REQUIRE(two.has_value());
    CHECK(two->summands.size() == 2);

    // zero module: empty decomposition
    auto zero = interval_decompose(zero_module({2, 2}, Field(2)));
    REQUIRE(zero.has_value());
    CHECK(zero->summands.empty());
}

TEST_CASE("interval_decompose agrees with the rectangle decomposer") {
    for (uint64_t seed : {3ull, 9ull}) {
        auto sample = random_rectangle_decomposable({3, 3}, Field(2), 4, seed);
        Decomposition rects = decompose_rectangles(sample.module);
        auto intervals = interval_decompose(sample.module);
        REQUIRE(intervals.has_value());
        CHECK(intervals->summands == rects.summands);
    }
}

TEST_CASE("local_condition_check distinguishes the classes") {
    auto sample = random_rectangle_decomposable({3, 3}, Field(2), 4, 12);
    CHECK(local_condition_check(sample.module, LocalClass::rectangles));
    CHECK(local_condition_check(sample.module, LocalClass::intervals));

    // one global top hook: every 2x2 restriction needs at most a top hook
    GridModule top = hook_module(true);
    CHECK_FALSE(local_condition_check(top, LocalClass::rectangles));
    CHECK(local_condition_check(top, LocalClass::rectangles_plus_top_hooks));

    // the bottom hook is outside the allowed class
    GridModule bottom = hook_module(false);
    CHECK_FALSE(local_condition_check(bottom, LocalClass::rectangles_plus_top_hooks));
    CHECK(local_condition_check(bottom, LocalClass::intervals));
}
