#include "rectdec/decomposer.hpp"

#include <algorithm>
#include <sstream>

namespace rectdec {

std::string ExactnessWitness::describe() const {
    std::ostringstream os;
    os << (condition == Condition::image ? "image" : "kernel") << " condition fails on square ("
       << square.s.x << "," << square.s.y << ") -> (" << square.t.x << "," << square.t.y << ")";
    return os.str();
}

ExactnessReport weak_exact(const GridModule& m) {
    for (int sy = 1; sy <= m.ny(); ++sy)
        for (int sx = 1; sx <= m.nx(); ++sx)
            for (int ty = sy; ty <= m.ny(); ++ty)
                for (int tx = sx; tx <= m.nx(); ++tx) {
                    GridPoint s{sx, sy}, t{tx, ty}, b{sx, ty}, c{tx, sy};
                    Matrix st = m.rho(s, t);
                    Subspace im = image_basis(st);
                    Subspace im_cap =
                        intersection(image_basis(m.rho(c, t)), image_basis(m.rho(b, t)));
                    if (im != im_cap)
                        return {false,
                                ExactnessWitness{Square{s, t}, ExactnessWitness::Condition::image,
                                                 im, im_cap}};
                    Subspace ker = kernel_basis(st);
                    Subspace ker_sum =
                        sum(kernel_basis(m.rho(s, c)), kernel_basis(m.rho(s, b)));
                    if (ker != ker_sum)
                        return {false,
                                ExactnessWitness{Square{s, t}, ExactnessWitness::Condition::kernel,
                                                 ker, ker_sum}};
                }
    return {true, std::nullopt};
}

ExactnessReport strong_exact(const GridModule& m) {
    const Field& f = m.field();
    for (int sy = 1; sy <= m.ny(); ++sy)
        for (int sx = 1; sx <= m.nx(); ++sx)
            for (int ty = sy; ty <= m.ny(); ++ty)
                for (int tx = sx; tx <= m.nx(); ++tx) {
                    GridPoint s{sx, sy}, t{tx, ty}, b{sx, ty}, c{tx, sy};
                    // middle exactness of M_s -> M_b (+) M_c -> M_t
                    Matrix in = m.rho(s, b).vstack(m.rho(s, c));
                    Matrix neg = m.rho(c, t);
                    Matrix out = m.rho(b, t).hstack(
                        Matrix(neg.rows(), neg.cols(), f) - neg);
                    Subspace im = image_basis(in);
                    Subspace ker = kernel_basis(out);
                    if (im != ker)
                        return {false,
                                ExactnessWitness{Square{s, t}, ExactnessWitness::Condition::image,
                                                 im, ker}};
                }
    return {true, std::nullopt};
}

int Decomposition::total_dim(GridPoint t) const {
    int d = 0;
    for (const auto& [shape, mult] : summands)
        if (shape.member(t)) d += mult;
    return d;
}

Decomposition decompose_rectangles(const GridModule& m, bool with_certificate) {
    ExactnessReport rep = weak_exact(m);
    if (!rep.verdict) throw NotWeaklyExact(*rep.witness);
    Decomposition dec;
    std::vector<RectangleShape> positive;
    for (const RectangleShape& r : enumerate_rectangles(m.shape())) {
        FiltSpaces s = pointwise_filtration(m, r, r.min_corner());
        int mult = s.v_plus.dim() - s.v_minus.dim();
        if (mult > 0) {
            dec.summands.push_back({rectangle_to_interval(r), mult});
            positive.push_back(r);
        }
    }
    std::sort(dec.summands.begin(), dec.summands.end());
    if (!with_certificate) return dec;

    for (const RectangleShape& r : positive) dec.bases.push_back(rectangle_filtrate(m, r));
    dec.iso.assign(static_cast<size_t>(m.nx()) * m.ny(), Matrix());
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            GridPoint t{x, y};
            Matrix cols(m.dim(t), 0, m.field());
            for (const FiltrateFamily& fam : dec.bases) cols = cols.hstack(fam.at(t));
            if (cols.cols() != m.dim(t) || rank(cols) != m.dim(t))
                throw std::runtime_error("internal error: filtrate bases do not cover M at (" +
                                         std::to_string(x) + "," + std::to_string(y) + ")");
            dec.iso[static_cast<size_t>(y - 1) * m.nx() + (x - 1)] = cols;
        }
    // naturality: edge maps send each filtrate column to its counterpart, or
    // to zero where the summand's rectangle ends
    auto check_edge = [&](GridPoint s, GridPoint t, const Matrix& map) {
        for (const FiltrateFamily& fam : dec.bases) {
            if (fam.at(s).cols() == 0) continue;
            Matrix carried = map * fam.at(s);
            Matrix expect = fam.rect.member(t) ? fam.at(t)
                                               : Matrix(m.dim(t), fam.at(s).cols(), m.field());
            if (carried != expect)
                throw std::runtime_error("internal error: certificate is not natural on edge (" +
                                         std::to_string(s.x) + "," + std::to_string(s.y) + ")");
        }
    };
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x < m.nx(); ++x) check_edge({x, y}, {x + 1, y}, m.hmap(x, y));
    for (int y = 1; y < m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) check_edge({x, y}, {x, y + 1}, m.vmap(x, y));
    return dec;
}

Matrix& morphism_at(Morphism& f, const GridModule& m, GridPoint t) {
    return f[static_cast<size_t>(t.y - 1) * m.nx() + (t.x - 1)];
}

const Matrix& morphism_at(const Morphism& f, const GridModule& m, GridPoint t) {
    return f[static_cast<size_t>(t.y - 1) * m.nx() + (t.x - 1)];
}

HomBasis hom_space(const GridModule& a, const GridModule& b) {
    if (a.shape() != b.shape() || a.field() != b.field())
        throw std::invalid_argument("hom_space shape/field mismatch");
    const Field& f = a.field();
    // unknowns: entries of f_t (dim_b x dim_a per node), row-major
    std::vector<int> offset(static_cast<size_t>(a.nx()) * a.ny() + 1, 0);
    auto node_index = [&](GridPoint t) {
        return static_cast<size_t>(t.y - 1) * a.nx() + (t.x - 1);
    };
    for (int y = 1; y <= a.ny(); ++y)
        for (int x = 1; x <= a.nx(); ++x) {
            size_t i = node_index({x, y});
            offset[i + 1] = offset[i] + b.dim(x, y) * a.dim(x, y);
        }
    int unknowns = offset.back();
    std::vector<std::vector<int>> rows;
    auto add_edge = [&](GridPoint s, GridPoint t, const Matrix& ma, const Matrix& mb) {
        // constraint f_t * ma - mb * f_s = 0, one row per (i, j) entry
        for (int i = 0; i < b.dim(t); ++i)
            for (int j = 0; j < a.dim(s); ++j) {
                std::vector<int> row(unknowns, 0);
                for (int k = 0; k < a.dim(t); ++k)
                    row[offset[node_index(t)] + i * a.dim(t) + k] =
                        f.add(row[offset[node_index(t)] + i * a.dim(t) + k], ma.at(k, j));
                for (int k = 0; k < b.dim(s); ++k)
                    row[offset[node_index(s)] + k * a.dim(s) + j] =
                        f.sub(row[offset[node_index(s)] + k * a.dim(s) + j], mb.at(i, k));
                rows.push_back(std::move(row));
            }
    };
    for (int y = 1; y <= a.ny(); ++y)
        for (int x = 1; x < a.nx(); ++x)
            add_edge({x, y}, {x + 1, y}, a.hmap(x, y), b.hmap(x, y));
    for (int y = 1; y < a.ny(); ++y)
        for (int x = 1; x <= a.nx(); ++x)
            add_edge({x, y}, {x, y + 1}, a.vmap(x, y), b.vmap(x, y));
    Matrix sys(static_cast<int>(rows.size()), unknowns, f);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < unknowns; ++j) sys.set(static_cast<int>(i), j, rows[i][j]);
    Subspace ker = kernel_basis(sys);
    HomBasis out;
    for (int c = 0; c < ker.dim(); ++c) {
        Morphism mor(static_cast<size_t>(a.nx()) * a.ny(), Matrix());
        for (int y = 1; y <= a.ny(); ++y)
            for (int x = 1; x <= a.nx(); ++x) {
                GridPoint t{x, y};
                Matrix ft(b.dim(t), a.dim(t), f);
                for (int i = 0; i < b.dim(t); ++i)
                    for (int j = 0; j < a.dim(t); ++j)
                        ft.set(i, j, ker.basis().at(offset[node_index(t)] + i * a.dim(t) + j, c));
                morphism_at(mor, a, t) = ft;
            }
        out.basis.push_back(std::move(mor));
    }
    return out;
}

int end_dim(const GridModule& m) { return hom_space(m, m).dim(); }

std::optional<SummandPair> is_summand(const GridModule& m, const IntervalShape& i) {
    if (i.grid != m.shape()) throw std::invalid_argument("interval grid does not match module");
    GridModule ind = indicator(m.shape(), i, m.field());
    HomBasis into = hom_space(ind, m);
    if (into.dim() == 0) return std::nullopt;
    HomBasis from = hom_space(m, ind);
    GridPoint probe = i.cells.front();
    const Field& f = m.field();
    for (const Morphism& g : from.basis)
        for (const Morphism& fi : into.basis) {
            Matrix comp = morphism_at(g, m, probe) * morphism_at(fi, ind, probe);
            int c = comp.at(0, 0);
            if (c == 0) continue;
            SummandPair pair{fi, g};
            int inv = f.inv(c);
            for (Matrix& gm : pair.g) {
                Matrix scaled(gm.rows(), gm.cols(), f);
                for (int r = 0; r < gm.rows(); ++r)
                    for (int cc = 0; cc < gm.cols(); ++cc)
                        scaled.set(r, cc, f.mul(inv, gm.at(r, cc)));
                gm = scaled;
            }
            return pair;
        }
    return std::nullopt;
}

std::pair<GridModule, GridModule> split_by_idempotent(const GridModule& m, const Morphism& e) {
    const Field& f = m.field();
    auto edge_ok = [&](GridPoint s, GridPoint t, const Matrix& map) {
        return morphism_at(e, m, t) * map == map * morphism_at(e, m, s);
    };
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            GridPoint t{x, y};
            const Matrix& et = morphism_at(e, m, t);
            if (et.rows() != m.dim(t) || et.cols() != m.dim(t) || et * et != et)
                throw std::invalid_argument("split_by_idempotent: e is not a pointwise idempotent");
            if (x < m.nx() && !edge_ok(t, {x + 1, y}, m.hmap(x, y)))
                throw std::invalid_argument("split_by_idempotent: e is not natural");
            if (y < m.ny() && !edge_ok(t, {x, y + 1}, m.vmap(x, y)))
                throw std::invalid_argument("split_by_idempotent: e is not natural");
        }
    std::vector<Matrix> basis1, basis2;
    GridModule m1(m.shape(), f), m2(m.shape(), f);
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            GridPoint t{x, y};
            const Matrix& et = morphism_at(e, m, t);
            Matrix one_minus = Matrix::identity(m.dim(t), f) - et;
            basis1.push_back(image_basis(et).basis());
            basis2.push_back(image_basis(one_minus).basis());
            m1.set_dim(x, y, basis1.back().cols());
            m2.set_dim(x, y, basis2.back().cols());
        }
    auto at = [&](std::vector<Matrix>& v, GridPoint t) -> Matrix& {
        return v[static_cast<size_t>(t.y - 1) * m.nx() + (t.x - 1)];
    };
    auto induced = [&](std::vector<Matrix>& basis, GridPoint s, GridPoint t, const Matrix& map) {
        return coordinates_in(at(basis, t), map * at(basis, s));
    };
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x < m.nx(); ++x) {
            m1.set_hmap(x, y, induced(basis1, {x, y}, {x + 1, y}, m.hmap(x, y)));
            m2.set_hmap(x, y, induced(basis2, {x, y}, {x + 1, y}, m.hmap(x, y)));
        }
    for (int y = 1; y < m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            m1.set_vmap(x, y, induced(basis1, {x, y}, {x, y + 1}, m.vmap(x, y)));
            m2.set_vmap(x, y, induced(basis2, {x, y}, {x, y + 1}, m.vmap(x, y)));
        }
    m1.validate();
    m2.validate();
    return {std::move(m1), std::move(m2)};
}

std::optional<IntervalDecomposition> interval_decompose(const GridModule& m) {
    std::vector<IntervalShape> intervals = enumerate_intervals(m.shape());
    std::map<IntervalShape, int> counts;
    GridModule residual = m;
    auto is_zero = [&](const GridModule& mod) {
        for (int y = 1; y <= mod.ny(); ++y)
            for (int x = 1; x <= mod.nx(); ++x)
                if (mod.dim(x, y) > 0) return false;
        return true;
    };
    // once an interval stops being a summand it stays gone (Krull-Schmidt),
    // so the scan never needs to revisit earlier intervals
    for (const IntervalShape& i : intervals) {
        while (!is_zero(residual)) {
            auto pair = is_summand(residual, i);
            if (!pair) break;
            Morphism e(static_cast<size_t>(m.nx()) * m.ny(), Matrix());
            for (int y = 1; y <= m.ny(); ++y)
                for (int x = 1; x <= m.nx(); ++x)
                    morphism_at(e, residual, {x, y}) =
                        morphism_at(pair->f, residual, {x, y}) *
                        morphism_at(pair->g, residual, {x, y});
            residual = split_by_idempotent(residual, e).second;
            ++counts[i];
        }
        if (is_zero(residual)) break;
    }
    if (!is_zero(residual)) return std::nullopt;
    IntervalDecomposition out;
    for (const auto& [shape, mult] : counts) out.summands.push_back({shape, mult});
    std::sort(out.summands.begin(), out.summands.end());
    return out;
}

bool local_condition_check(const GridModule& m, LocalClass cls) {
    GridShape square{2, 2};
    IntervalShape top_hook = IntervalShape::from_cells(square, {{1, 2}, {2, 1}, {2, 2}});
    for (int x1 = 1; x1 <= m.nx(); ++x1)
        for (int x2 = x1 + 1; x2 <= m.nx(); ++x2)
            for (int y1 = 1; y1 <= m.ny(); ++y1)
                for (int y2 = y1 + 1; y2 <= m.ny(); ++y2) {
                    GridModule sub = restrict_module(m, {x1, x2}, {y1, y2});
                    auto dec = interval_decompose(sub);
                    if (!dec) return false;
                    for (const auto& [shape, mult] : dec->summands) {
                        bool ok = true;
                        switch (cls) {
                            case LocalClass::rectangles:
                                ok = shape.is_rectangle();
                                break;
                            case LocalClass::intervals:
                                ok = true;
                                break;
                            case LocalClass::rectangles_plus_top_hooks:
                                ok = shape.is_rectangle() || shape == top_hook;
                                break;
                        }
                        if (!ok) return false;
                    }
                }
    return true;
}

}  // namespace rectdec
