#pragma once

// Combinatorics of supports: cuts, rectangles, general intervals, blocks,
// squares, hooks, and the sigma preorder on rectangles.

#include <optional>
#include <string>
#include <vector>

#include "rectdec/bimodule.hpp"

namespace rectdec {

// Partition of the axis {1..n} into lower {1..k} and upper {k+1..n}.
struct Cut {
    int n = 1;
    int k = 0;  // 0 <= k <= n

    bool operator==(const Cut& o) const { return n == o.n && k == o.k; }
    bool operator!=(const Cut& o) const { return !(*this == o); }
};

// Nonempty rectangle carried as four cuts; members are
// (lcut.k, rcut.k] x (bcut.k, tcut.k].
struct RectangleShape {
    GridShape grid;
    Cut lcut, rcut;  // X axis, lcut.k < rcut.k
    Cut bcut, tcut;  // Y axis, bcut.k < tcut.k

    static RectangleShape from_ranges(GridShape grid, int x1, int x2, int y1, int y2);

    int x1() const { return lcut.k + 1; }
    int x2() const { return rcut.k; }
    int y1() const { return bcut.k + 1; }
    int y2() const { return tcut.k; }

    bool member(GridPoint t) const {
        return x1() <= t.x && t.x <= x2() && y1() <= t.y && t.y <= y2();
    }
    // R+ = {t : exists s in R, s <= t}
    bool member_upset(GridPoint t) const { return x1() <= t.x && y1() <= t.y; }
    GridPoint min_corner() const { return {x1(), y1()}; }

    void check() const;
    std::string str() const;  // "x1..x2,y1..y2"

    bool operator==(const RectangleShape& o) const {
        return grid == o.grid && lcut == o.lcut && rcut == o.rcut && bcut == o.bcut &&
               tcut == o.tcut;
    }
    bool operator!=(const RectangleShape& o) const { return !(*this == o); }
    bool operator<(const RectangleShape& o) const;
};

RectangleShape parse_rectangle(GridShape grid, const std::string& literal);

// Nonempty convex connected cell set.
struct IntervalShape {
    GridShape grid;
    std::vector<GridPoint> cells;  // sorted, unique

    static IntervalShape from_cells(GridShape grid, std::vector<GridPoint> cells);

    bool member(GridPoint t) const;
    bool is_rectangle() const;
    std::optional<RectangleShape> as_rectangle() const;

    void check() const;       // throws on empty / non-convex / disconnected
    std::string str() const;  // semicolon-separated per-column row ranges

    bool operator==(const IntervalShape& o) const { return grid == o.grid && cells == o.cells; }
    bool operator!=(const IntervalShape& o) const { return !(*this == o); }
    bool operator<(const IntervalShape& o) const;
};

IntervalShape parse_interval(GridShape grid, const std::string& literal);
IntervalShape rectangle_to_interval(const RectangleShape& r);

struct BlockClass {
    bool birth_quadrant = false;
    bool death_quadrant = false;
    bool hband = false;
    bool vband = false;

    // first satisfied condition in the order birth, death, hband, vband
    std::string primary() const;
    bool is_block() const { return birth_quadrant || death_quadrant || hband || vband; }
};

std::vector<RectangleShape> enumerate_rectangles(GridShape shape);

// all convex connected subsets; guard nx*ny <= 36, deterministic order
// (decreasing cell count, then lexicographic)
std::vector<IntervalShape> enumerate_intervals(GridShape shape);

struct Square {
    GridPoint s;  // bottom-left
    GridPoint t;  // top-right, s <= t
    bool degenerate() const { return s.x == t.x || s.y == t.y; }
    GridPoint a() const { return s; }
    GridPoint b() const { return {s.x, t.y}; }  // top-left
    GridPoint c() const { return {t.x, s.y}; }  // bottom-right
    GridPoint d() const { return t; }
};

// (h1, h2) = ({a,b,c}, {b,c,d}) for a non-degenerate square, as intervals of
// the 2x2 restricted grid {s.x,t.x} x {s.y,t.y}
std::pair<IntervalShape, IntervalShape> hooks(const Square& q);

GridModule indicator(GridShape shape, const IntervalShape& s, Field f);
GridModule indicator(const RectangleShape& r, Field f);

struct SigmaResult {
    bool holds = false;
    bool strict = false;
};

// r1 sigma r2: (i) l1- subset l2-, (ii) b1- subset b2-, (iii) one of
// r1- strictly inside r2-, t1- strictly inside t2-, or both non-strictly
SigmaResult sigma(const RectangleShape& r1, const RectangleShape& r2);

BlockClass classify_block(const RectangleShape& r, GridShape shape);

// S restricted to cols x rows, reindexed to the subgrid, split into connected
// components; may be empty
std::vector<IntervalShape> restrict_interval(const IntervalShape& s, const std::vector<int>& cols,
                                             const std::vector<int>& rows);

}  // namespace rectdec
