#pragma once

// Persistence bimodules over a finite grid [1,nx] x [1,ny]: per-node vector
// space dimensions plus commuting horizontal/vertical transition maps.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectdec/exactfield.hpp"

namespace rectdec {

struct GridShape {
    int nx = 1;
    int ny = 1;

    bool operator==(const GridShape& o) const { return nx == o.nx && ny == o.ny; }
    bool operator!=(const GridShape& o) const { return !(*this == o); }
};

struct GridPoint {
    int x = 1;  // 1..nx
    int y = 1;  // 1..ny

    bool operator==(const GridPoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const GridPoint& o) const { return !(*this == o); }
    bool operator<(const GridPoint& o) const {  // lexicographic, for containers
        return x != o.x ? x < o.x : y < o.y;
    }
    // componentwise product order
    bool leq(const GridPoint& o) const { return x <= o.x && y <= o.y; }
};

class GridModule {
public:
    GridModule(GridShape shape, Field f);

    const GridShape& shape() const { return shape_; }
    const Field& field() const { return field_; }
    int nx() const { return shape_.nx; }
    int ny() const { return shape_.ny; }

    int dim(int x, int y) const { return dims_[index(x, y)]; }
    int dim(GridPoint t) const { return dim(t.x, t.y); }
    void set_dim(int x, int y, int d);

    // map (x,y) -> (x+1,y); shape dim(x+1,y) x dim(x,y)
    const Matrix& hmap(int x, int y) const;
    void set_hmap(int x, int y, Matrix m);
    // map (x,y) -> (x,y+1); shape dim(x,y+1) x dim(x,y)
    const Matrix& vmap(int x, int y) const;
    void set_vmap(int x, int y, Matrix m);

    // composite transition map s -> t (any monotone path; validated modules
    // make all paths equal); rho(t,t) = identity
    Matrix rho(GridPoint s, GridPoint t) const;

    // throws std::invalid_argument naming the first failing square or edge
    void validate() const;

    bool operator==(const GridModule& o) const;

private:
    int index(int x, int y) const;
    GridShape shape_;
    Field field_;
    std::vector<int> dims_;
    std::vector<Matrix> hmaps_;  // (nx-1) * ny
    std::vector<Matrix> vmaps_;  // nx * (ny-1)
};

GridModule restrict_module(const GridModule& m, const std::vector<int>& cols,
                           const std::vector<int>& rows);
GridModule direct_sum(const GridModule& a, const GridModule& b);
GridModule zero_module(GridShape shape, Field f);

// isomorphic module with maps B_t * rho * B_s^{-1}
GridModule conjugate(const GridModule& m, const std::map<GridPoint, Matrix>& bases);

// 180-degree rotation with transposed maps (the dual module); used to turn
// top-hook constructions into bottom-hook ones
GridModule rotate_dual(const GridModule& m);

// JSON interchange per the CLI contract
GridModule load_module(const std::string& text);
std::string save_module(const GridModule& m);

// Deterministic seeded generators.
GridModule random_module(GridShape shape, Field f, int max_dim, uint64_t seed);

struct RectangleSummand {
    // inclusive member ranges [x1,x2] x [y1,y2]
    int x1, x2, y1, y2;
    bool operator<(const RectangleSummand& o) const {
        return std::tie(x1, x2, y1, y2) < std::tie(o.x1, o.x2, o.y1, o.y2);
    }
    bool operator==(const RectangleSummand& o) const {
        return x1 == o.x1 && x2 == o.x2 && y1 == o.y1 && y2 == o.y2;
    }
};

struct RectangleDecomposableSample {
    GridModule module;
    std::vector<RectangleSummand> summands;  // sorted ground truth, with repeats
};

RectangleDecomposableSample random_rectangle_decomposable(GridShape shape, Field f, int count,
                                                          uint64_t seed);

}  // namespace rectdec
