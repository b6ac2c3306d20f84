#include "rectdec/filtration.hpp"

#include <algorithm>

namespace rectdec {

namespace {

// light-weight weak exactness test; the witness-producing variant lives in
// the decomposer
bool weakly_exact(const GridModule& m) {
    for (int sy = 1; sy <= m.ny(); ++sy)
        for (int sx = 1; sx <= m.nx(); ++sx)
            for (int ty = sy; ty <= m.ny(); ++ty)
                for (int tx = sx; tx <= m.nx(); ++tx) {
                    GridPoint s{sx, sy}, t{tx, ty}, b{sx, ty}, c{tx, sy};
                    Matrix st = m.rho(s, t);
                    Subspace im = image_basis(st);
                    Subspace im_cap =
                        intersection(image_basis(m.rho(c, t)), image_basis(m.rho(b, t)));
                    if (im != im_cap) return false;
                    Subspace ker = kernel_basis(st);
                    Subspace ker_sum = sum(kernel_basis(m.rho(s, c)), kernel_basis(m.rho(s, b)));
                    if (ker != ker_sum) return false;
                }
    return true;
}

void require_weakly_exact(const GridModule& m, const char* who) {
    if (!weakly_exact(m))
        throw std::invalid_argument(std::string(who) + " requires a weakly exact module");
}

}  // namespace

FiltSpaces pointwise_filtration(const GridModule& m, const RectangleShape& r, GridPoint t) {
    if (r.grid != m.shape()) throw std::invalid_argument("rectangle grid does not match module");
    if (!r.member(t))
        throw std::invalid_argument("pointwise filtration needs t inside the rectangle");
    const Field& f = m.field();
    int n = m.dim(t);
    auto im_from_x = [&](int x) { return image_basis(m.rho({x, t.y}, t)); };
    auto im_from_y = [&](int y) { return image_basis(m.rho({t.x, y}, t)); };
    auto ker_to_x = [&](int x) { return kernel_basis(m.rho(t, {x, t.y})); };
    auto ker_to_y = [&](int y) { return kernel_basis(m.rho(t, {t.x, y})); };

    FiltSpaces s;
    // nested chains realize intersections at the least in-range index and
    // sums at the greatest; empty cut sides fall back to 0 / M_t
    s.ifilt_l_plus = im_from_x(r.lcut.k + 1);
    s.ifilt_l_minus = r.lcut.k == 0 ? Subspace::zero(n, f) : im_from_x(r.lcut.k);
    s.kfilt_r_plus = r.rcut.k == m.nx() ? Subspace::full(n, f) : ker_to_x(r.rcut.k + 1);
    s.kfilt_r_minus = ker_to_x(r.rcut.k);
    s.ifilt_b_plus = im_from_y(r.bcut.k + 1);
    s.ifilt_b_minus = r.bcut.k == 0 ? Subspace::zero(n, f) : im_from_y(r.bcut.k);
    s.kfilt_t_plus = r.tcut.k == m.ny() ? Subspace::full(n, f) : ker_to_y(r.tcut.k + 1);
    s.kfilt_t_minus = ker_to_y(r.tcut.k);

    s.im_plus = intersection(s.ifilt_l_plus, s.ifilt_b_plus);
    s.im_minus = intersection(sum(s.ifilt_l_minus, s.ifilt_b_minus), s.im_plus);
    s.ker_plus = intersection(sum(s.kfilt_r_plus, s.kfilt_t_minus),
                              sum(s.kfilt_r_minus, s.kfilt_t_plus));
    s.ker_minus = sum(s.kfilt_r_minus, s.kfilt_t_minus);

    s.v_plus = intersection(s.im_plus, s.ker_plus);
    s.v_minus = sum(intersection(s.im_plus, s.ker_minus), intersection(s.im_minus, s.ker_plus));
    return s;
}

const Subspace& SubmoduleFamily::at(GridPoint t) const {
    return spaces[static_cast<size_t>(t.y - 1) * base->nx() + (t.x - 1)];
}

Subspace& SubmoduleFamily::at(GridPoint t) {
    return spaces[static_cast<size_t>(t.y - 1) * base->nx() + (t.x - 1)];
}

bool SubmoduleFamily::is_submodule() const {
    for (int y = 1; y <= base->ny(); ++y)
        for (int x = 1; x <= base->nx(); ++x) {
            GridPoint s{x, y};
            if (x < base->nx() &&
                !contains(at({x + 1, y}), pushforward(base->hmap(x, y), at(s))))
                return false;
            if (y < base->ny() &&
                !contains(at({x, y + 1}), pushforward(base->vmap(x, y), at(s))))
                return false;
        }
    return true;
}

namespace detail_impl {

SubmoduleFamily filt_submodule_unchecked(const GridModule& m, const RectangleShape& r,
                                         Sign sign) {
    SubmoduleFamily fam;
    fam.base = &m;
    fam.spaces.assign(static_cast<size_t>(m.nx()) * m.ny(), Subspace());
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            GridPoint t{x, y};
            if (r.member(t)) {
                FiltSpaces s = pointwise_filtration(m, r, t);
                fam.at(t) = sign == Sign::plus ? s.v_plus : s.v_minus;
            } else if (r.member_upset(t)) {
                // the up-set of R has a maximal point of R below t; by
                // transportation the pushforward from there is the extension
                GridPoint s{std::min(t.x, r.x2()), std::min(t.y, r.y2())};
                FiltSpaces fs = pointwise_filtration(m, r, s);
                fam.at(t) =
                    pushforward(m.rho(s, t), sign == Sign::plus ? fs.v_plus : fs.v_minus);
            } else {
                fam.at(t) = Subspace::zero(m.dim(t), m.field());
            }
        }
    return fam;
}

}  // namespace detail_impl

SubmoduleFamily filt_submodule(const GridModule& m, const RectangleShape& r, Sign sign) {
    if (r.grid != m.shape()) throw std::invalid_argument("rectangle grid does not match module");
    require_weakly_exact(m, "filt_submodule");
    return detail_impl::filt_submodule_unchecked(m, r, sign);
}

int counting_dim(const GridModule& m, const RectangleShape& r) {
    if (r.grid != m.shape()) throw std::invalid_argument("rectangle grid does not match module");
    require_weakly_exact(m, "counting_dim");
    FiltSpaces s = pointwise_filtration(m, r, r.min_corner());
    return s.v_plus.dim() - s.v_minus.dim();
}

const Matrix& ViewedSubmodule::basis(GridPoint t) const {
    return bases[static_cast<size_t>(t.y - 1) * module.nx() + (t.x - 1)];
}

ViewedSubmodule view_as_module(const SubmoduleFamily& fam) {
    const GridModule& m = *fam.base;
    ViewedSubmodule v{GridModule(m.shape(), m.field()), {}};
    v.bases.reserve(fam.spaces.size());
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            v.module.set_dim(x, y, fam.at({x, y}).dim());
            v.bases.push_back(fam.at({x, y}).basis());
        }
    auto edge = [&](GridPoint s, GridPoint t, const Matrix& map) {
        // carried columns stay inside the family space at t; express them in
        // its basis
        return coordinates_in(fam.at(t).basis(), map * fam.at(s).basis());
    };
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x < m.nx(); ++x)
            v.module.set_hmap(x, y, edge({x, y}, {x + 1, y}, m.hmap(x, y)));
    for (int y = 1; y < m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x)
            v.module.set_vmap(x, y, edge({x, y}, {x, y + 1}, m.vmap(x, y)));
    v.module.validate();
    return v;
}

namespace {

Subspace through_basis(const Matrix& basis, const Subspace& inner) {
    return Subspace::span(basis.rows(), basis * inner.basis());
}

}  // namespace

std::map<std::pair<int, int>, FiltSpaces> double_filtration(const GridModule& m,
                                                            const RectangleShape& r) {
    SubmoduleFamily vplus = filt_submodule(m, r, Sign::plus);
    ViewedSubmodule viewed = view_as_module(vplus);
    if (!weakly_exact(viewed.module))
        throw std::runtime_error("internal error: V+ family is not weakly exact");
    std::map<std::pair<int, int>, FiltSpaces> out;
    for (int y = r.y1(); y <= r.y2(); ++y)
        for (int x = r.x1(); x <= r.x2(); ++x) {
            GridPoint t{x, y};
            FiltSpaces inner = pointwise_filtration(viewed.module, r, t);
            // closed forms of the double filtration, verified exactly
            const Matrix& b = viewed.basis(t);
            int vdim = viewed.module.dim(t);
            FiltSpaces ambient_spaces = pointwise_filtration(m, r, t);
            auto check = [&](const Subspace& got_inner, const Subspace& expect_ambient,
                             const char* what) {
                if (through_basis(b, got_inner) != expect_ambient)
                    throw std::runtime_error(std::string("double filtration mismatch for ") +
                                             what);
            };
            if (inner.im_plus != Subspace::full(vdim, m.field()))
                throw std::runtime_error("double filtration mismatch for Im+ (expected all of V+)");
            if (!inner.im_minus.is_zero())
                throw std::runtime_error("double filtration mismatch for Im- (expected 0)");
            check(inner.kfilt_r_plus, intersection(ambient_spaces.kfilt_r_plus, vplus.at(t)),
                  "Kfilt_r+");
            check(inner.kfilt_r_minus, intersection(ambient_spaces.kfilt_r_minus, vplus.at(t)),
                  "Kfilt_r-");
            check(inner.kfilt_t_plus, intersection(ambient_spaces.kfilt_t_plus, vplus.at(t)),
                  "Kfilt_t+");
            check(inner.kfilt_t_minus, intersection(ambient_spaces.kfilt_t_minus, vplus.at(t)),
                  "Kfilt_t-");
            // report in ambient coordinates
            FiltSpaces amb;
            amb.ifilt_l_plus = through_basis(b, inner.ifilt_l_plus);
            amb.ifilt_l_minus = through_basis(b, inner.ifilt_l_minus);
            amb.kfilt_r_plus = through_basis(b, inner.kfilt_r_plus);
            amb.kfilt_r_minus = through_basis(b, inner.kfilt_r_minus);
            amb.ifilt_b_plus = through_basis(b, inner.ifilt_b_plus);
            amb.ifilt_b_minus = through_basis(b, inner.ifilt_b_minus);
            amb.kfilt_t_plus = through_basis(b, inner.kfilt_t_plus);
            amb.kfilt_t_minus = through_basis(b, inner.kfilt_t_minus);
            amb.im_plus = through_basis(b, inner.im_plus);
            amb.im_minus = through_basis(b, inner.im_minus);
            amb.ker_plus = through_basis(b, inner.ker_plus);
            amb.ker_minus = through_basis(b, inner.ker_minus);
            amb.v_plus = through_basis(b, inner.v_plus);
            amb.v_minus = through_basis(b, inner.v_minus);
            out[{x, y}] = amb;
        }
    return out;
}

const Matrix& FiltrateFamily::at(GridPoint t) const {
    return columns[static_cast<size_t>(t.y - 1) * base->nx() + (t.x - 1)];
}

SubmoduleFamily FiltrateFamily::as_family() const {
    SubmoduleFamily fam;
    fam.base = base;
    fam.spaces.reserve(columns.size());
    for (int y = 1; y <= base->ny(); ++y)
        for (int x = 1; x <= base->nx(); ++x)
            fam.spaces.push_back(Subspace::span(base->dim(x, y), at({x, y})));
    return fam;
}

FiltrateFamily rectangle_filtrate(const GridModule& m, const RectangleShape& r) {
    if (r.grid != m.shape()) throw std::invalid_argument("rectangle grid does not match module");
    require_weakly_exact(m, "rectangle_filtrate");
    GridPoint t0 = r.min_corner();
    FiltSpaces corner = pointwise_filtration(m, r, t0);
    // the filtrate is a complement of V-(t0) in V+(t0), picked inside the
    // space of vectors whose transport lies in Kfilt_r+ cap Kfilt_t+ cap V+
    // at every node of R: such vectors die across both upper cuts, so the
    // transported family vanishes outside R and is closed under the maps
    Subspace lim_d = Subspace::full(m.dim(t0), m.field());
    for (int y = r.y1(); y <= r.y2(); ++y)
        for (int x = r.x1(); x <= r.x2(); ++x) {
            GridPoint s{x, y};
            FiltSpaces fs = pointwise_filtration(m, r, s);
            Subspace dead =
                intersection(intersection(fs.kfilt_r_plus, fs.kfilt_t_plus), fs.v_plus);
            lim_d = intersection(lim_d, preimage(m.rho(t0, s), dead));
        }
    Matrix w = complement_within_columns(corner.v_minus, corner.v_plus, lim_d);
    FiltrateFamily out;
    out.rect = r;
    out.base = &m;
    out.columns.assign(static_cast<size_t>(m.nx()) * m.ny(), Matrix());
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) {
            GridPoint t{x, y};
            size_t idx = static_cast<size_t>(y - 1) * m.nx() + (x - 1);
            if (r.member(t))
                out.columns[idx] = m.rho(t0, t) * w;
            else
                out.columns[idx] = Matrix(m.dim(t), 0, m.field());
        }
    return out;
}

namespace {

std::vector<int> jump_indices(const GridModule& m, GridPoint t, bool horizontal) {
    int n = horizontal ? m.nx() : m.ny();
    int start = horizontal ? t.x : t.y;
    auto ker_at = [&](int i) {
        GridPoint u = horizontal ? GridPoint{i, t.y} : GridPoint{t.x, i};
        return kernel_basis(m.rho(t, u));
    };
    auto im_at = [&](int i) {
        GridPoint u = horizontal ? GridPoint{i, t.y} : GridPoint{t.x, i};
        return image_basis(m.rho(u, t));
    };
    std::vector<int> idx{start};
    // rightward: smallest index realizing each new kernel
    int last = ker_at(start).dim();
    for (int i = start + 1; i <= n; ++i) {
        int d = ker_at(i).dim();
        if (d > last) {
            idx.push_back(i);
            last = d;
        }
    }
    // leftward: largest index realizing each new image
    last = im_at(start).dim();
    for (int i = start - 1; i >= 1; --i) {
        int d = im_at(i).dim();
        if (d < last) {
            idx.push_back(i);
            last = d;
        }
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

Skeleton t_skeleton(const GridModule& m, GridPoint t) {
    Skeleton sk;
    sk.cols = jump_indices(m, t, true);
    sk.rows = jump_indices(m, t, false);
    sk.origin_col = static_cast<int>(
        std::lower_bound(sk.cols.begin(), sk.cols.end(), t.x) - sk.cols.begin());
    sk.origin_row = static_cast<int>(
        std::lower_bound(sk.rows.begin(), sk.rows.end(), t.y) - sk.rows.begin());
    return sk;
}

RectangleShape lift_rectangle(const GridModule& m, GridPoint t, const Skeleton& sk,
                              const RectangleShape& r_sk) {
    GridShape sk_shape{static_cast<int>(sk.cols.size()), static_cast<int>(sk.rows.size())};
    if (r_sk.grid != sk_shape)
        throw std::invalid_argument("skeleton rectangle grid does not match the skeleton");
    GridPoint t_sk{sk.origin_col + 1, sk.origin_row + 1};
    if (!r_sk.member(t_sk))
        throw std::invalid_argument("lift_rectangle needs t inside the skeleton rectangle");

    auto ker_h = [&](int x) { return kernel_basis(m.rho(t, {x, t.y})); };
    auto im_h = [&](int x) { return image_basis(m.rho({x, t.y}, t)); };
    auto ker_v = [&](int y) { return kernel_basis(m.rho(t, {t.x, y})); };
    auto im_v = [&](int y) { return image_basis(m.rho({t.x, y}, t)); };

    // upper-side cuts: extend the lower part rightward/upward while the
    // kernel stays equal to the one at the skeleton index
    auto lift_upper = [&](const std::vector<int>& axis, int k_sk, int n, auto ker) {
        int x_k = axis[k_sk - 1];
        int bound = k_sk < static_cast<int>(axis.size()) ? axis[k_sk] - 1 : n;
        Subspace ref = ker(x_k);
        int threshold = x_k;
        for (int x = x_k + 1; x <= bound; ++x) {
            if (ker(x) != ref) break;
            threshold = x;
        }
        return threshold;
    };
    // lower-side cuts: extend the upper part leftward/downward while the
    // image stays equal to the one at the skeleton index
    auto lift_lower = [&](const std::vector<int>& axis, int l_sk, auto im) {
        int x_u = axis[l_sk];  // first upper element, 0-based access
        int bound = l_sk > 0 ? axis[l_sk - 1] + 1 : 1;
        Subspace ref = im(x_u);
        int first = x_u;
        for (int x = x_u - 1; x >= bound; --x) {
            if (im(x) != ref) break;
            first = x;
        }
        return first - 1;
    };

    RectangleShape r;
    r.grid = m.shape();
    r.lcut = {m.nx(), lift_lower(sk.cols, r_sk.lcut.k, im_h)};
    r.rcut = {m.nx(), lift_upper(sk.cols, r_sk.rcut.k, m.nx(), ker_h)};
    r.bcut = {m.ny(), lift_lower(sk.rows, r_sk.bcut.k, im_v)};
    r.tcut = {m.ny(), lift_upper(sk.rows, r_sk.tcut.k, m.ny(), ker_v)};
    r.check();
    return r;
}

}  // namespace rectdec
