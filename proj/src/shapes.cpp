#include "rectdec/shapes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rectdec {

namespace {

void check_cut(const Cut& c) {
    if (c.n < 1 || c.k < 0 || c.k > c.n)
        throw std::invalid_argument("invalid cut: n=" + std::to_string(c.n) +
                                    " k=" + std::to_string(c.k));
}

}  // namespace

RectangleShape RectangleShape::from_ranges(GridShape grid, int x1, int x2, int y1, int y2) {
    RectangleShape r;
    r.grid = grid;
    r.lcut = {grid.nx, x1 - 1};
    r.rcut = {grid.nx, x2};
    r.bcut = {grid.ny, y1 - 1};
    r.tcut = {grid.ny, y2};
    r.check();
    return r;
}

void RectangleShape::check() const {
    check_cut(lcut);
    check_cut(rcut);
    check_cut(bcut);
    check_cut(tcut);
    if (lcut.n != grid.nx || rcut.n != grid.nx || bcut.n != grid.ny || tcut.n != grid.ny)
        throw std::invalid_argument("rectangle cut axis sizes do not match the grid");
    if (lcut.k >= rcut.k || bcut.k >= tcut.k)
        throw std::invalid_argument("rectangle is empty: " + str());
}

std::string RectangleShape::str() const {
    std::ostringstream os;
    os << x1() << ".." << x2() << "," << y1() << ".." << y2();
    return os.str();
}

bool RectangleShape::operator<(const RectangleShape& o) const {
    return std::tie(lcut.k, rcut.k, bcut.k, tcut.k) <
           std::tie(o.lcut.k, o.rcut.k, o.bcut.k, o.tcut.k);
}

RectangleShape parse_rectangle(GridShape grid, const std::string& literal) {
    int x1, x2, y1, y2;
    char d1, d2, d3, d4, d5;
    std::istringstream is(literal);
    if (!(is >> x1 >> d1 >> d2 >> x2 >> d3 >> y1 >> d4 >> d5 >> y2) || d1 != '.' || d2 != '.' ||
        d3 != ',' || d4 != '.' || d5 != '.')
        throw std::invalid_argument("bad rectangle literal \"" + literal +
                                    "\", expected x1..x2,y1..y2");
    return RectangleShape::from_ranges(grid, x1, x2, y1, y2);
}

IntervalShape IntervalShape::from_cells(GridShape grid, std::vector<GridPoint> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    IntervalShape s{grid, std::move(cells)};
    s.check();
    return s;
}

bool IntervalShape::member(GridPoint t) const {
    return std::binary_search(cells.begin(), cells.end(), t);
}

void IntervalShape::check() const {
    if (cells.empty()) throw std::invalid_argument("interval must be nonempty");
    for (const auto& c : cells)
        if (c.x < 1 || c.x > grid.nx || c.y < 1 || c.y > grid.ny)
            throw std::invalid_argument("interval cell out of grid range");
    // convexity
    for (const auto& p : cells)
        for (const auto& q : cells)
            if (p.leq(q))
                for (int x = p.x; x <= q.x; ++x)
                    for (int y = p.y; y <= q.y; ++y)
                        if (!member({x, y}))
                            throw std::invalid_argument("interval not convex: hole at (" +
                                                        std::to_string(x) + "," +
                                                        std::to_string(y) + ")");
    // connectivity under comparability
    std::vector<bool> seen(cells.size(), false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        for (size_t j = 0; j < cells.size(); ++j)
            if (!seen[j] && (cells[i].leq(cells[j]) || cells[j].leq(cells[i]))) {
                seen[j] = true;
                stack.push_back(j);
            }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("interval not connected");
}

bool IntervalShape::is_rectangle() const { return as_rectangle().has_value(); }

std::optional<RectangleShape> IntervalShape::as_rectangle() const {
    int x1 = grid.nx + 1, x2 = 0, y1 = grid.ny + 1, y2 = 0;
    for (const auto& c : cells) {
        x1 = std::min(x1, c.x);
        x2 = std::max(x2, c.x);
        y1 = std::min(y1, c.y);
        y2 = std::max(y2, c.y);
    }
    if (static_cast<size_t>(x2 - x1 + 1) * (y2 - y1 + 1) != cells.size()) return std::nullopt;
    return RectangleShape::from_ranges(grid, x1, x2, y1, y2);
}

std::string IntervalShape::str() const {
    // per-column "x:ylo-yhi" segments, semicolon separated
    std::ostringstream os;
    bool first = true;
    for (int x = 1; x <= grid.nx; ++x) {
        int lo = 0, hi = 0;
        for (const auto& c : cells)
            if (c.x == x) {
                if (lo == 0) lo = c.y;
                hi = c.y;
            }
        if (lo == 0) continue;
        os << (first ? "" : ";") << x << ":" << lo << "-" << hi;
        first = false;
    }
    return os.str();
}

bool IntervalShape::operator<(const IntervalShape& o) const {
    if (cells.size() != o.cells.size()) return cells.size() > o.cells.size();
    return cells < o.cells;
}

IntervalShape parse_interval(GridShape grid, const std::string& literal) {
    std::vector<GridPoint> cells;
    std::istringstream is(literal);
    std::string seg;
    while (std::getline(is, seg, ';')) {
        int x, lo, hi;
        char c1, c2;
        std::istringstream ss(seg);
        if (!(ss >> x >> c1 >> lo >> c2 >> hi) || c1 != ':' || c2 != '-')
            throw std::invalid_argument("bad interval segment \"" + seg +
                                        "\", expected x:ylo-yhi");
        for (int y = lo; y <= hi; ++y) cells.push_back({x, y});
    }
    return IntervalShape::from_cells(grid, std::move(cells));
}

IntervalShape rectangle_to_interval(const RectangleShape& r) {
    std::vector<GridPoint> cells;
    for (int x = r.x1(); x <= r.x2(); ++x)
        for (int y = r.y1(); y <= r.y2(); ++y) cells.push_back({x, y});
    return IntervalShape::from_cells(r.grid, std::move(cells));
}

std::string BlockClass::primary() const {
    if (birth_quadrant) return "birth_quadrant";
    if (death_quadrant) return "death_quadrant";
    if (hband) return "hband";
    if (vband) return "vband";
    return "not_block";
}

std::vector<RectangleShape> enumerate_rectangles(GridShape shape) {
    std::vector<RectangleShape> out;
    for (int lk = 0; lk < shape.nx; ++lk)
        for (int rk = lk + 1; rk <= shape.nx; ++rk)
            for (int bk = 0; bk < shape.ny; ++bk)
                for (int tk = bk + 1; tk <= shape.ny; ++tk)
                    out.push_back({shape,
                                   {shape.nx, lk},
                                   {shape.nx, rk},
                                   {shape.ny, bk},
                                   {shape.ny, tk}});
    return out;
}

std::vector<IntervalShape> enumerate_intervals(GridShape shape) {
    if (shape.nx * shape.ny > 36)
        throw std::invalid_argument("interval enumeration limited to grids with at most 36 cells");
    // staircase profiles: per-column row ranges [lo_x, hi_x] over a contiguous
    // column span, with lo and hi non-increasing and adjacent overlap
    // lo_x <= hi_{x+1}; exactly the convex connected subsets
    std::vector<IntervalShape> out;
    std::vector<std::pair<int, int>> ranges;
    auto emit = [&](int a) {
        std::vector<GridPoint> cells;
        for (size_t i = 0; i < ranges.size(); ++i)
            for (int y = ranges[i].first; y <= ranges[i].second; ++y)
                cells.push_back({a + static_cast<int>(i), y});
        out.push_back(IntervalShape::from_cells(shape, std::move(cells)));
    };
    auto extend = [&](auto&& self, int a, int x) -> void {
        emit(a);
        if (x > shape.nx) return;
        auto [plo, phi] = ranges.back();
        for (int hi = plo; hi <= phi; ++hi)
            for (int lo = 1; lo <= plo; ++lo) {
                ranges.push_back({lo, hi});
                self(self, a, x + 1);
                ranges.pop_back();
            }
    };
    for (int a = 1; a <= shape.nx; ++a)
        for (int lo = 1; lo <= shape.ny; ++lo)
            for (int hi = lo; hi <= shape.ny; ++hi) {
                ranges.assign(1, {lo, hi});
                extend(extend, a, a + 1);
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<IntervalShape, IntervalShape> hooks(const Square& q) {
    if (q.degenerate()) throw std::invalid_argument("hooks need a non-degenerate square");
    GridShape g{2, 2};
    IntervalShape h1 = IntervalShape::from_cells(g, {{1, 1}, {1, 2}, {2, 1}});
    IntervalShape h2 = IntervalShape::from_cells(g, {{1, 2}, {2, 1}, {2, 2}});
    return {h1, h2};
}

GridModule indicator(GridShape shape, const IntervalShape& s, Field f) {
    if (s.grid != shape) throw std::invalid_argument("interval grid does not match target shape");
    s.check();
    GridModule m(shape, f);
    for (const auto& c : s.cells) m.set_dim(c.x, c.y, 1);
    Matrix one = Matrix::identity(1, f);
    for (const auto& c : s.cells) {
        if (c.x < shape.nx && s.member({c.x + 1, c.y})) m.set_hmap(c.x, c.y, one);
        if (c.y < shape.ny && s.member({c.x, c.y + 1})) m.set_vmap(c.x, c.y, one);
    }
    m.validate();
    return m;
}

GridModule indicator(const RectangleShape& r, Field f) {
    return indicator(r.grid, rectangle_to_interval(r), f);
}

SigmaResult sigma(const RectangleShape& r1, const RectangleShape& r2) {
    if (r1.grid != r2.grid) throw std::invalid_argument("sigma requires rectangles on one grid");
    bool i = r1.lcut.k <= r2.lcut.k;
    bool ii = r1.bcut.k <= r2.bcut.k;
    bool iii = r1.rcut.k < r2.rcut.k || r1.tcut.k < r2.tcut.k ||
               (r1.rcut.k <= r2.rcut.k && r1.tcut.k <= r2.tcut.k);
    SigmaResult res;
    res.holds = i && ii && iii;
    res.strict = res.holds && r1 != r2;
    return res;
}

BlockClass classify_block(const RectangleShape& r, GridShape shape) {
    if (r.grid != shape) throw std::invalid_argument("rectangle grid does not match shape");
    bool x_coinitial = r.lcut.k == 0;
    bool x_cofinal = r.rcut.k == shape.nx;
    bool y_coinitial = r.bcut.k == 0;
    bool y_cofinal = r.tcut.k == shape.ny;
    BlockClass b;
    b.birth_quadrant = x_coinitial && y_coinitial;
    b.death_quadrant = x_cofinal && y_cofinal;
    b.hband = x_coinitial && x_cofinal;
    b.vband = y_coinitial && y_cofinal;
    return b;
}

std::vector<IntervalShape> restrict_interval(const IntervalShape& s, const std::vector<int>& cols,
                                             const std::vector<int>& rows) {
    GridShape sub{static_cast<int>(cols.size()), static_cast<int>(rows.size())};
    std::vector<GridPoint> hits;
    for (size_t i = 0; i < cols.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            if (s.member({cols[i], rows[j]}))
                hits.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
    if (hits.empty()) return {};
    // split into comparability components
    std::vector<int> comp(hits.size(), -1);
    int ncomp = 0;
    for (size_t i = 0; i < hits.size(); ++i) {
        if (comp[i] != -1) continue;
        comp[i] = ncomp;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (size_t v = 0; v < hits.size(); ++v)
                if (comp[v] == -1 && (hits[u].leq(hits[v]) || hits[v].leq(hits[u]))) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    std::vector<IntervalShape> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<GridPoint> cells;
        for (size_t i = 0; i < hits.size(); ++i)
            if (comp[i] == c) cells.push_back(hits[i]);
        out.push_back(IntervalShape::from_cells(sub, std::move(cells)));
    }
    return out;
}

}  // namespace rectdec
