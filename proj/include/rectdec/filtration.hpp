#pragma once

// The functorial filtration engine: pointwise Ifilt/Kfilt spaces, the V+/V-
// submodule families, counting dimensions, the double filtration inside V+,
// rectangle filtrates, and t-skeleta with rectangle lifting.

#include <map>
#include <vector>

#include "rectdec/bimodule.hpp"
#include "rectdec/shapes.hpp"

namespace rectdec {

struct FiltSpaces {
    // horizontal cut spaces at t
    Subspace ifilt_l_plus, ifilt_l_minus;   // images across the left cut
    Subspace kfilt_r_plus, kfilt_r_minus;   // kernels across the right cut
    // vertical cut spaces at t
    Subspace ifilt_b_plus, ifilt_b_minus;
    Subspace kfilt_t_plus, kfilt_t_minus;
    // combined rectangle spaces
    Subspace im_plus, im_minus;
    Subspace ker_plus, ker_minus;
    // the filtration pair
    Subspace v_plus, v_minus;
};

// all eight cut spaces, the four combined spaces, and V+/V- at t in R
FiltSpaces pointwise_filtration(const GridModule& m, const RectangleShape& r, GridPoint t);

struct SubmoduleFamily {
    const GridModule* base = nullptr;
    std::vector<Subspace> spaces;  // per node, row-major by y

    const Subspace& at(GridPoint t) const;
    Subspace& at(GridPoint t);
    int dim(GridPoint t) const { return at(t).dim(); }
    // checks rho(spaces[s]) inside spaces[t] for all edges
    bool is_submodule() const;
};

enum class Sign { plus, minus };

// V(sign) on R, pushed forward over R+ = up-set of R, zero elsewhere; the
// module must be weakly exact (checked)
SubmoduleFamily filt_submodule(const GridModule& m, const RectangleShape& r, Sign sign);

// multiplicity of the rectangle summand: dim V+ - dim V- at the minimal
// corner of R; the module must be weakly exact (checked)
int counting_dim(const GridModule& m, const RectangleShape& r);

// V+ viewed as a grid module in its own (canonical-basis) coordinates,
// together with the per-node basis columns inside the ambient module
struct ViewedSubmodule {
    GridModule module;
    std::vector<Matrix> bases;  // dim M_t x dim V(t), per node row-major

    const Matrix& basis(GridPoint t) const;
};

ViewedSubmodule view_as_module(const SubmoduleFamily& fam);

// filtration of the V+ family viewed as its own module, verified against the
// closed forms (Im+ = everything, Im- = 0, Ker forms = ambient kernels
// intersected with V+); throws on any mismatch
std::map<std::pair<int, int>, FiltSpaces> double_filtration(const GridModule& m,
                                                            const RectangleShape& r);

struct FiltrateFamily {
    RectangleShape rect;
    const GridModule* base = nullptr;
    // transported basis columns per node (dim M_t x multiplicity inside R,
    // zero columns outside R); naturality: rho(s,t) maps column j at s to
    // column j at t inside R, and to 0 when leaving R
    std::vector<Matrix> columns;

    const Matrix& at(GridPoint t) const;
    int dim(GridPoint t) const { return at(t).cols(); }
    SubmoduleFamily as_family() const;
};

// explicit summand: complement W of V-(t0) in V+(t0) chosen inside the space
// of vectors whose transport stays in Kfilt_r+ cap Kfilt_t+ cap V+ at every
// node of R, then transported over R (zero columns outside R)
FiltrateFamily rectangle_filtrate(const GridModule& m, const RectangleShape& r);

struct Skeleton {
    std::vector<int> cols;  // sorted ambient column indices
    std::vector<int> rows;  // sorted ambient row indices
    int origin_col = 0;     // position of t.x in cols
    int origin_row = 0;     // position of t.y in rows
};

// finite subgrid through t realizing every kernel of maps out of M_t and
// every image of maps into M_t, along both axes
Skeleton t_skeleton(const GridModule& m, GridPoint t);

// unique rectangle of the full grid with the same cut spaces at t as r_sk has
// on the skeleton restriction; r_sk lives on the skeleton grid and contains
// the skeleton position of t
RectangleShape lift_rectangle(const GridModule& m, GridPoint t, const Skeleton& sk,
                              const RectangleShape& r_sk);

}  // namespace rectdec
