#include "rectdec/gallery.hpp"

#include <algorithm>

#include "rectdec/decomposer.hpp"
#include "rectdec/shapes.hpp"

namespace rectdec {

GridModule psi(int m, Field f) {
    if (m < 2) throw std::invalid_argument("psi needs m >= 2");
    int n = m + 1;
    GridModule mod({n, n}, f);
    // dim m strictly above the antidiagonal x + y = m + 2, dim 1 on it
    auto d = [&](int x, int y) { return x + y > m + 2 ? m : (x + y == m + 2 ? 1 : 0); };
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x) mod.set_dim(x, y, d(x, y));
    auto iota = [&](int i) {  // injection into the i-th axis, m x 1
        Matrix c(m, 1, f);
        c.set(i - 1, 0, 1);
        return c;
    };
    Matrix delta(m, 1, f);  // injection into the diagonal
    for (int i = 0; i < m; ++i) delta.set(i, 0, 1);
    auto edge = [&](int x, int y, int tx, int ty) -> Matrix {
        int ds = d(x, y), dt = d(tx, ty);
        if (ds == 0) return Matrix(dt, 0, f);
        if (ds == m) return Matrix::identity(m, f);  // dt = m as well
        // source on the antidiagonal, x + y = m + 2
        if (dt == 0) return Matrix(0, 1, f);
        if (x == n) return delta;  // bottom-right corner going up
        return iota(x);
    };
    for (int y = 1; y <= n; ++y)
        for (int x = 1; x < n; ++x) mod.set_hmap(x, y, edge(x, y, x + 1, y));
    for (int y = 1; y < n; ++y)
        for (int x = 1; x <= n; ++x) mod.set_vmap(x, y, edge(x, y, x, y + 1));
    mod.validate();
    return mod;
}

GridModule psi_embedded(const PsiSpec& spec) {
    int n = spec.m + 1;
    if (static_cast<int>(spec.jx.size()) != n || static_cast<int>(spec.jy.size()) != n)
        throw std::invalid_argument("psi embedding injections must have m+1 indices");
    auto check_monotone = [](const std::vector<int>& v, int bound) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] < 1 || v[i] > bound || (i > 0 && v[i] <= v[i - 1]))
                throw std::invalid_argument("psi embedding injection not strictly monotone/in range");
    };
    check_monotone(spec.jx, spec.shape.nx);
    check_monotone(spec.jy, spec.shape.ny);
    Field f(spec.p);
    GridModule base = psi(spec.m, f);
    // ceiling of t under the injection, 0 when the down-set is empty
    auto floor_index = [](const std::vector<int>& v, int t) {
        int out = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] <= t) out = static_cast<int>(i) + 1;
        return out;
    };
    GridModule mod(spec.shape, f);
    auto source = [&](GridPoint t) -> GridPoint {
        return {floor_index(spec.jx, t.x), floor_index(spec.jy, t.y)};
    };
    for (int y = 1; y <= spec.shape.ny; ++y)
        for (int x = 1; x <= spec.shape.nx; ++x) {
            GridPoint s = source({x, y});
            mod.set_dim(x, y, s.x == 0 || s.y == 0 ? 0 : base.dim(s));
        }
    auto edge = [&](GridPoint a, GridPoint b) -> Matrix {
        GridPoint sa = source(a), sb = source(b);
        if (sa.x == 0 || sa.y == 0) return Matrix(mod.dim(b), 0, f);
        if (sb.x == 0 || sb.y == 0) return Matrix(0, mod.dim(a), f);
        return base.rho(sa, sb);
    };
    for (int y = 1; y <= spec.shape.ny; ++y)
        for (int x = 1; x < spec.shape.nx; ++x) mod.set_hmap(x, y, edge({x, y}, {x + 1, y}));
    for (int y = 1; y < spec.shape.ny; ++y)
        for (int x = 1; x <= spec.shape.nx; ++x) mod.set_vmap(x, y, edge({x, y}, {x, y + 1}));
    mod.validate();
    return mod;
}

void HookSpec::check() const {
    if (!(1 <= x1 && x1 < x2 && x2 < x3 && x3 <= shape.nx))
        throw std::invalid_argument("hook spec needs 1 <= x1 < x2 < x3 <= nx");
    if (!(1 <= y1 && y1 < y2 && y2 <= shape.ny))
        throw std::invalid_argument("hook spec needs 1 <= y1 < y2 <= ny");
    if (!(y1 < srow() && srow() <= y2))
        throw std::invalid_argument("hook spec needs y1 < s_row <= y2");
}

int hook_region(const HookSpec& spec, GridPoint t) {
    spec.check();
    if (t.x < spec.x1 || t.x > spec.x3 || t.y < spec.y1 || t.y > spec.y2) return -1;
    bool in_s = t.x >= spec.x2 || t.y >= spec.srow();
    if (t.x == spec.x3) return 4;
    if (t.x == spec.x1) return in_s ? 1 : 0;
    return in_s && t.y > spec.y1 ? 3 : 2;
}

GridModule hook_counterexample(const HookSpec& spec) {
    spec.check();
    Field f(spec.p);
    static const int region_dim[5] = {0, 1, 1, 2, 1};
    auto region_map = [&](int a, int b) -> Matrix {
        if (a == 0) return Matrix(region_dim[b], 0, f);
        if (a == b) return Matrix::identity(region_dim[a], f);
        if (a == 1 && b == 3) return Matrix(2, 1, f, {1, 1});
        if (a == 1 && b == 4) return Matrix::identity(1, f);
        if (a == 2 && b == 3) return Matrix(2, 1, f, {1, 0});
        if (a == 2 && b == 4) return Matrix::identity(1, f);
        if (a == 3 && b == 4) return Matrix(1, 2, f, {1, 0});
        throw std::logic_error("hook regions out of order: " + std::to_string(a) + " -> " +
                               std::to_string(b));
    };
    GridModule mod(spec.shape, f);
    for (int y = 1; y <= spec.shape.ny; ++y)
        for (int x = 1; x <= spec.shape.nx; ++x) {
            int r = hook_region(spec, {x, y});
            mod.set_dim(x, y, r < 0 ? 0 : region_dim[r]);
        }
    auto edge = [&](GridPoint a, GridPoint b) -> Matrix {
        int ra = hook_region(spec, a), rb = hook_region(spec, b);
        if (ra < 0) return Matrix(mod.dim(b), 0, f);
        if (rb < 0) return Matrix(0, mod.dim(a), f);
        return region_map(ra, rb);
    };
    for (int y = 1; y <= spec.shape.ny; ++y)
        for (int x = 1; x < spec.shape.nx; ++x) mod.set_hmap(x, y, edge({x, y}, {x + 1, y}));
    for (int y = 1; y < spec.shape.ny; ++y)
        for (int x = 1; x <= spec.shape.nx; ++x) mod.set_vmap(x, y, edge({x, y}, {x, y + 1}));
    mod.validate();
    return spec.dual ? rotate_dual(mod) : mod;
}

VerifyReport verify_psi(int m) {
    if (m < 2 || m > 3) throw std::invalid_argument("verify_psi covers m = 2, 3");
    VerifyReport rep;
    GridModule mod = psi(m);
    if (end_dim(mod) != 1) rep.failures.push_back("psi endomorphism space is not 1-dimensional");
    if (interval_decompose(mod))
        rep.failures.push_back("psi decomposed into intervals on its full grid");
    int n = m + 1;
    // every strict product subgrid with at most m columns and m rows
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > m) continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) idx.push_back(i + 1);
        subsets.push_back(std::move(idx));
    }
    for (const auto& cols : subsets)
        for (const auto& rows : subsets)
            if (!interval_decompose(restrict_module(mod, cols, rows))) {
                rep.failures.push_back("psi restriction not interval-decomposable on a strict subgrid");
                return rep;
            }
    return rep;
}

VerifyReport verify_hook(const HookSpec& spec) {
    VerifyReport rep;
    GridModule mod = hook_counterexample(spec);
    if (end_dim(mod) != 1) rep.failures.push_back("hook endomorphism space is not 1-dimensional");
    // the dual (rotated) module carries bottom hooks instead, so it is only
    // interval-local; the straight module stays within rectangles + top hooks
    if (spec.dual) {
        if (local_condition_check(mod, LocalClass::rectangles_plus_top_hooks))
            rep.failures.push_back("dual hook module unexpectedly stayed top-hook-local");
        if (!local_condition_check(mod, LocalClass::intervals))
            rep.failures.push_back("a square restriction of the dual hook module is not interval-decomposable");
    } else if (!local_condition_check(mod, LocalClass::rectangles_plus_top_hooks)) {
        rep.failures.push_back("a square restriction of the hook module needs more than rectangles and top hooks");
    }
    try {
        decompose_rectangles(mod);
        rep.failures.push_back("hook module unexpectedly passed rectangle decomposition");
    } catch (const NotWeaklyExact&) {
    }
    return rep;
}

}  // namespace rectdec
