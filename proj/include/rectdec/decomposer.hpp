#pragma once

// Verdicts and certificates: weak/strong exactness with witnesses, rectangle
// decomposition with explicit summands, Hom/End spaces, the interval-peeling
// oracle, and the square-local condition checker.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rectdec/bimodule.hpp"
#include "rectdec/filtration.hpp"
#include "rectdec/shapes.hpp"

namespace rectdec {

struct ExactnessWitness {
    Square square;
    enum class Condition { image, kernel } condition;
    Subspace lhs, rhs;  // the two subspaces that differ

    std::string describe() const;
};

struct ExactnessReport {
    bool verdict = false;
    std::optional<ExactnessWitness> witness;  // present iff verdict is false
};

ExactnessReport weak_exact(const GridModule& m);
ExactnessReport strong_exact(const GridModule& m);

class NotWeaklyExact : public std::runtime_error {
public:
    explicit NotWeaklyExact(ExactnessWitness w)
        : std::runtime_error("module is not weakly exact: " + w.describe()),
          witness(std::move(w)) {}
    ExactnessWitness witness;
};

struct Decomposition {
    // sorted by shape, multiplicities >= 1
    std::vector<std::pair<IntervalShape, int>> summands;
    // present when a certificate was requested
    std::vector<FiltrateFamily> bases;
    std::vector<Matrix> iso;  // per node row-major: direct sum coords -> M_t

    int total_dim(GridPoint t) const;
};

// throws NotWeaklyExact on a weakly inexact input; with_certificate adds the
// filtrate bases and the assembled isomorphism, re-verified natural and
// pointwise invertible before returning
Decomposition decompose_rectangles(const GridModule& m, bool with_certificate = false);

// one natural transformation a -> b: a matrix per node
using Morphism = std::vector<Matrix>;

Matrix& morphism_at(Morphism& f, const GridModule& m, GridPoint t);
const Matrix& morphism_at(const Morphism& f, const GridModule& m, GridPoint t);

struct HomBasis {
    std::vector<Morphism> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

HomBasis hom_space(const GridModule& a, const GridModule& b);
int end_dim(const GridModule& m);

struct SummandPair {
    Morphism f;  // k_I -> m
    Morphism g;  // m -> k_I, with g after f = identity
};

// splitting criterion: k_I is a summand iff the composition pairing
// Hom(k_I, m) x Hom(m, k_I) -> End(k_I) = k is nonzero
std::optional<SummandPair> is_summand(const GridModule& m, const IntervalShape& i);

// pointwise images of e and 1-e with induced maps
std::pair<GridModule, GridModule> split_by_idempotent(const GridModule& m, const Morphism& e);

struct IntervalDecomposition {
    std::vector<std::pair<IntervalShape, int>> summands;  // sorted, with multiplicity
};

// greedy peeling oracle; absent when a nonzero residual has no interval
// summand
std::optional<IntervalDecomposition> interval_decompose(const GridModule& m);

enum class LocalClass { rectangles, intervals, rectangles_plus_top_hooks };

// every non-degenerate 2x2 restriction decomposes with summands in the class
bool local_condition_check(const GridModule& m, LocalClass cls);

}  // namespace rectdec
