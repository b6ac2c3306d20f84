#include "rectdec/bimodule.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

namespace rectdec {

namespace {

std::string pt(int x, int y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

}  // namespace

GridModule::GridModule(GridShape shape, Field f) : shape_(shape), field_(f) {
    if (shape.nx < 1 || shape.ny < 1) throw std::invalid_argument("grid shape must be at least 1x1");
    dims_.assign(static_cast<size_t>(shape.nx) * shape.ny, 0);
    hmaps_.assign(static_cast<size_t>(shape.nx - 1) * shape.ny, Matrix(0, 0, f));
    vmaps_.assign(static_cast<size_t>(shape.nx) * (shape.ny - 1), Matrix(0, 0, f));
}

int GridModule::index(int x, int y) const {
    if (x < 1 || x > shape_.nx || y < 1 || y > shape_.ny)
        throw std::out_of_range("grid point " + pt(x, y) + " out of range");
    return (y - 1) * shape_.nx + (x - 1);
}

void GridModule::set_dim(int x, int y, int d) {
    if (d < 0) throw std::invalid_argument("negative dimension at " + pt(x, y));
    dims_[index(x, y)] = d;
    // keep edge matrices shape-consistent (zero maps) until set explicitly
    auto fix = [&](int ex, int ey) {
        if (ex >= 1 && ex < shape_.nx && ey >= 1 && ey <= shape_.ny)
            hmaps_[(ey - 1) * (shape_.nx - 1) + (ex - 1)] =
                Matrix(dim(ex + 1, ey), dim(ex, ey), field_);
    };
    fix(x, y);
    fix(x - 1, y);
    auto fixv = [&](int ex, int ey) {
        if (ex >= 1 && ex <= shape_.nx && ey >= 1 && ey < shape_.ny)
            vmaps_[(ey - 1) * shape_.nx + (ex - 1)] = Matrix(dim(ex, ey + 1), dim(ex, ey), field_);
    };
    fixv(x, y);
    fixv(x, y - 1);
}

const Matrix& GridModule::hmap(int x, int y) const {
    if (x < 1 || x >= shape_.nx || y < 1 || y > shape_.ny)
        throw std::out_of_range("no horizontal edge at " + pt(x, y));
    return hmaps_[(y - 1) * (shape_.nx - 1) + (x - 1)];
}

void GridModule::set_hmap(int x, int y, Matrix m) {
    if (x < 1 || x >= shape_.nx || y < 1 || y > shape_.ny)
        throw std::out_of_range("no horizontal edge at " + pt(x, y));
    if (m.rows() != dim(x + 1, y) || m.cols() != dim(x, y) || m.field() != field_)
        throw std::invalid_argument("horizontal map shape mismatch at " + pt(x, y));
    hmaps_[(y - 1) * (shape_.nx - 1) + (x - 1)] = std::move(m);
}

const Matrix& GridModule::vmap(int x, int y) const {
    if (x < 1 || x > shape_.nx || y < 1 || y >= shape_.ny)
        throw std::out_of_range("no vertical edge at " + pt(x, y));
    return vmaps_[(y - 1) * shape_.nx + (x - 1)];
}

void GridModule::set_vmap(int x, int y, Matrix m) {
    if (x < 1 || x > shape_.nx || y < 1 || y >= shape_.ny)
        throw std::out_of_range("no vertical edge at " + pt(x, y));
    if (m.rows() != dim(x, y + 1) || m.cols() != dim(x, y) || m.field() != field_)
        throw std::invalid_argument("vertical map shape mismatch at " + pt(x, y));
    vmaps_[(y - 1) * shape_.nx + (x - 1)] = std::move(m);
}

Matrix GridModule::rho(GridPoint s, GridPoint t) const {
    if (!s.leq(t))
        throw std::invalid_argument("rho requires s <= t, got " + pt(s.x, s.y) + " to " +
                                    pt(t.x, t.y));
    Matrix acc = Matrix::identity(dim(s), field_);
    for (int x = s.x; x < t.x; ++x) acc = hmap(x, s.y) * acc;
    for (int y = s.y; y < t.y; ++y) acc = vmap(t.x, y) * acc;
    return acc;
}

void GridModule::validate() const {
    for (int y = 1; y <= shape_.ny; ++y)
        for (int x = 1; x < shape_.nx; ++x) {
            const Matrix& h = hmap(x, y);
            if (h.rows() != dim(x + 1, y) || h.cols() != dim(x, y))
                throw std::invalid_argument("horizontal map shape mismatch at " + pt(x, y));
        }
    for (int y = 1; y < shape_.ny; ++y)
        for (int x = 1; x <= shape_.nx; ++x) {
            const Matrix& v = vmap(x, y);
            if (v.rows() != dim(x, y + 1) || v.cols() != dim(x, y))
                throw std::invalid_argument("vertical map shape mismatch at " + pt(x, y));
        }
    for (int y = 1; y < shape_.ny; ++y)
        for (int x = 1; x < shape_.nx; ++x)
            if (vmap(x + 1, y) * hmap(x, y) != hmap(x, y + 1) * vmap(x, y))
                throw std::invalid_argument("non-commuting unit square at " + pt(x, y));
}

bool GridModule::operator==(const GridModule& o) const {
    return shape_ == o.shape_ && field_ == o.field_ && dims_ == o.dims_ && hmaps_ == o.hmaps_ &&
           vmaps_ == o.vmaps_;
}

GridModule restrict_module(const GridModule& m, const std::vector<int>& cols,
                           const std::vector<int>& rows) {
    if (cols.empty() || rows.empty())
        throw std::invalid_argument("restriction needs nonempty index subsets");
    if (!std::is_sorted(cols.begin(), cols.end()) || !std::is_sorted(rows.begin(), rows.end()))
        throw std::invalid_argument("restriction index subsets must be sorted");
    GridModule r({static_cast<int>(cols.size()), static_cast<int>(rows.size())}, m.field());
    for (size_t j = 0; j < rows.size(); ++j)
        for (size_t i = 0; i < cols.size(); ++i)
            r.set_dim(static_cast<int>(i) + 1, static_cast<int>(j) + 1, m.dim(cols[i], rows[j]));
    for (size_t j = 0; j < rows.size(); ++j)
        for (size_t i = 0; i + 1 < cols.size(); ++i)
            r.set_hmap(static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                       m.rho({cols[i], rows[j]}, {cols[i + 1], rows[j]}));
    for (size_t j = 0; j + 1 < rows.size(); ++j)
        for (size_t i = 0; i < cols.size(); ++i)
            r.set_vmap(static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                       m.rho({cols[i], rows[j]}, {cols[i], rows[j + 1]}));
    return r;
}

namespace {

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return r;
}

}  // namespace

GridModule direct_sum(const GridModule& a, const GridModule& b) {
    if (a.shape() != b.shape() || a.field() != b.field())
        throw std::invalid_argument("direct sum shape/field mismatch");
    GridModule r(a.shape(), a.field());
    for (int y = 1; y <= a.ny(); ++y)
        for (int x = 1; x <= a.nx(); ++x) r.set_dim(x, y, a.dim(x, y) + b.dim(x, y));
    for (int y = 1; y <= a.ny(); ++y)
        for (int x = 1; x < a.nx(); ++x) r.set_hmap(x, y, block_diag(a.hmap(x, y), b.hmap(x, y)));
    for (int y = 1; y < a.ny(); ++y)
        for (int x = 1; x <= a.nx(); ++x) r.set_vmap(x, y, block_diag(a.vmap(x, y), b.vmap(x, y)));
    return r;
}

GridModule zero_module(GridShape shape, Field f) { return GridModule(shape, f); }

GridModule conjugate(const GridModule& m, const std::map<GridPoint, Matrix>& bases) {
    auto basis_at = [&](GridPoint t) -> Matrix {
        auto it = bases.find(t);
        if (it == bases.end()) return Matrix::identity(m.dim(t), m.field());
        if (it->second.rows() != m.dim(t) || it->second.cols() != m.dim(t))
            throw std::invalid_argument("conjugation basis size mismatch at (" +
                                        std::to_string(t.x) + "," + std::to_string(t.y) + ")");
        return it->second;
    };
    GridModule r(m.shape(), m.field());
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x) r.set_dim(x, y, m.dim(x, y));
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x < m.nx(); ++x)
            r.set_hmap(x, y,
                       basis_at({x + 1, y}) * m.hmap(x, y) * inverse(basis_at({x, y})));
    for (int y = 1; y < m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x)
            r.set_vmap(x, y,
                       basis_at({x, y + 1}) * m.vmap(x, y) * inverse(basis_at({x, y})));
    return r;
}

GridModule rotate_dual(const GridModule& m) {
    GridModule r(m.shape(), m.field());
    int nx = m.nx(), ny = m.ny();
    for (int y = 1; y <= ny; ++y)
        for (int x = 1; x <= nx; ++x) r.set_dim(x, y, m.dim(nx + 1 - x, ny + 1 - y));
    for (int y = 1; y <= ny; ++y)
        for (int x = 1; x < nx; ++x)
            r.set_hmap(x, y, m.hmap(nx - x, ny + 1 - y).transpose());
    for (int y = 1; y < ny; ++y)
        for (int x = 1; x <= nx; ++x)
            r.set_vmap(x, y, m.vmap(nx + 1 - x, ny - y).transpose());
    return r;
}

GridModule load_module(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("module document must be a JSON object");
    for (const char* key : {"p", "nx", "ny", "dims"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("missing required field \"") + key + "\"");
    int p = j.at("p").get<int>();
    if (!is_prime(p)) throw std::invalid_argument("field modulus p must be prime");
    Field f(p);
    GridShape shape{j.at("nx").get<int>(), j.at("ny").get<int>()};
    GridModule m(shape, f);
    const auto& dims = j.at("dims");
    if (!dims.is_array() || static_cast<int>(dims.size()) != shape.ny)
        throw std::invalid_argument("dims must have ny rows");
    for (int y = 1; y <= shape.ny; ++y) {
        const auto& row = dims.at(y - 1);
        if (!row.is_array() || static_cast<int>(row.size()) != shape.nx)
            throw std::invalid_argument("dims row " + std::to_string(y) + " must have nx entries");
        for (int x = 1; x <= shape.nx; ++x) m.set_dim(x, y, row.at(x - 1).get<int>());
    }
    auto parse_key = [](const std::string& k) -> GridPoint {
        auto comma = k.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("edge key must be \"x,y\", got \"" + k + "\"");
        return {std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))};
    };
    auto parse_matrix = [&](const nlohmann::json& mj, int rows, int cols,
                            const std::string& where) -> Matrix {
        if (!mj.is_array() || static_cast<int>(mj.size()) != rows)
            throw std::invalid_argument("matrix at " + where + " must have " +
                                        std::to_string(rows) + " rows");
        Matrix out(rows, cols, f);
        for (int i = 0; i < rows; ++i) {
            const auto& rj = mj.at(i);
            if (!rj.is_array() || static_cast<int>(rj.size()) != cols)
                throw std::invalid_argument("matrix row length mismatch at " + where);
            for (int c = 0; c < cols; ++c) out.set(i, c, rj.at(c).get<int>());
        }
        return out;
    };
    if (j.contains("hmaps"))
        for (auto it = j.at("hmaps").begin(); it != j.at("hmaps").end(); ++it) {
            GridPoint e = parse_key(it.key());
            m.set_hmap(e.x, e.y,
                       parse_matrix(it.value(), m.dim(e.x + 1, e.y), m.dim(e.x, e.y),
                                    "hmaps[" + it.key() + "]"));
        }
    if (j.contains("vmaps"))
        for (auto it = j.at("vmaps").begin(); it != j.at("vmaps").end(); ++it) {
            GridPoint e = parse_key(it.key());
            m.set_vmap(e.x, e.y,
                       parse_matrix(it.value(), m.dim(e.x, e.y + 1), m.dim(e.x, e.y),
                                    "vmaps[" + it.key() + "]"));
        }
    // absent edge keys are legal only for zero maps forced by a 0 endpoint
    for (int y = 1; y <= shape.ny; ++y)
        for (int x = 1; x < shape.nx; ++x)
            if (m.dim(x, y) > 0 && m.dim(x + 1, y) > 0 &&
                (!j.contains("hmaps") || !j.at("hmaps").contains(std::to_string(x) + "," +
                                                                 std::to_string(y))))
                throw std::invalid_argument("missing hmaps entry for edge (" + std::to_string(x) +
                                            "," + std::to_string(y) + ")");
    for (int y = 1; y < shape.ny; ++y)
        for (int x = 1; x <= shape.nx; ++x)
            if (m.dim(x, y) > 0 && m.dim(x, y + 1) > 0 &&
                (!j.contains("vmaps") || !j.at("vmaps").contains(std::to_string(x) + "," +
                                                                 std::to_string(y))))
                throw std::invalid_argument("missing vmaps entry for edge (" + std::to_string(x) +
                                            "," + std::to_string(y) + ")");
    m.validate();
    return m;
}

std::string save_module(const GridModule& m) {
    nlohmann::json j;
    j["p"] = m.field().p();
    j["nx"] = m.nx();
    j["ny"] = m.ny();
    nlohmann::json dims = nlohmann::json::array();
    for (int y = 1; y <= m.ny(); ++y) {
        nlohmann::json row = nlohmann::json::array();
        for (int x = 1; x <= m.nx(); ++x) row.push_back(m.dim(x, y));
        dims.push_back(row);
    }
    j["dims"] = dims;
    auto to_json = [](const Matrix& mat) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < mat.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < mat.cols(); ++c) row.push_back(mat.at(i, c));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json hmaps = nlohmann::json::object();
    for (int y = 1; y <= m.ny(); ++y)
        for (int x = 1; x < m.nx(); ++x)
            if (m.dim(x, y) > 0 && m.dim(x + 1, y) > 0)
                hmaps[std::to_string(x) + "," + std::to_string(y)] = to_json(m.hmap(x, y));
    nlohmann::json vmaps = nlohmann::json::object();
    for (int y = 1; y < m.ny(); ++y)
        for (int x = 1; x <= m.nx(); ++x)
            if (m.dim(x, y) > 0 && m.dim(x, y + 1) > 0)
                vmaps[std::to_string(x) + "," + std::to_string(y)] = to_json(m.vmap(x, y));
    j["hmaps"] = hmaps;
    j["vmaps"] = vmaps;
    return j.dump(2) + "\n";
}

namespace {

// mt19937_64 is fully specified, so seeded generation is platform-stable;
// avoid std::uniform_int_distribution, whose mapping is not
int draw(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); }

Matrix random_invertible(int n, Field f, std::mt19937_64& rng) {
    // product of elementary operations, invertible by construction
    Matrix b = Matrix::identity(n, f);
    int ops = 2 * n + 2;
    for (int o = 0; o < ops; ++o) {
        if (n < 1) break;
        int kind = draw(rng, 3);
        int i = draw(rng, n);
        int j = draw(rng, n);
        if (kind == 0 && n >= 2 && i != j) {
            int c = 1 + draw(rng, f.p() - 1);
            for (int col = 0; col < n; ++col) b.set(i, col, b.at(i, col) + f.mul(c, b.at(j, col)));
        } else if (kind == 1) {
            int c = 1 + draw(rng, f.p() - 1);
            for (int col = 0; col < n; ++col) b.set(i, col, f.mul(c, b.at(i, col)));
        } else if (i != j) {
            for (int col = 0; col < n; ++col) {
                int tmp = b.at(i, col);
                b.set(i, col, b.at(j, col));
                b.set(j, col, tmp);
            }
        }
    }
    return b;
}

}  // namespace

namespace {

GridModule random_module_attempt(GridShape shape, Field f, int max_dim, uint64_t seed) {
    // cokernel of a random map between upset-indicator projectives: commuting
    // squares come for free and the family covers non-weakly-exact modules
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    int gens = 1 + draw(rng, std::max(1, max_dim * 2));
    int rels = draw(rng, gens + 1);
    std::vector<GridPoint> gen_at(gens), rel_at(rels);
    for (auto& g : gen_at) g = {1 + draw(rng, shape.nx), 1 + draw(rng, shape.ny)};
    for (auto& r : rel_at) r = {1 + draw(rng, shape.nx), 1 + draw(rng, shape.ny)};
    // phi: P1 -> P0 with entries in Hom(P(rel), P(gen)) = k when rel >= gen
    Matrix phi(gens, rels, f);
    for (int i = 0; i < gens; ++i)
        for (int j = 0; j < rels; ++j)
            if (gen_at[i].leq(rel_at[j])) phi.set(i, j, draw(rng, f.p()));
    // pointwise: P0_t = span of generators with gen_at <= t; coker via an
    // echelon complement of the image of phi_t
    auto live_gens = [&](GridPoint t) {
        std::vector<int> out;
        for (int i = 0; i < gens; ++i)
            if (gen_at[i].leq(t)) out.push_back(i);
        return out;
    };
    auto live_rels = [&](GridPoint t) {
        std::vector<int> out;
        for (int j = 0; j < rels; ++j)
            if (rel_at[j].leq(t)) out.push_back(j);
        return out;
    };
    struct NodeData {
        std::vector<int> gens;
        Subspace im;       // image of phi_t inside the live-generator coordinates
        Matrix comp;       // complement columns representing the cokernel basis
    };
    std::vector<NodeData> nodes(static_cast<size_t>(shape.nx) * shape.ny);
    auto node = [&](GridPoint t) -> NodeData& {
        return nodes[static_cast<size_t>(t.y - 1) * shape.nx + (t.x - 1)];
    };
    for (int y = 1; y <= shape.ny; ++y)
        for (int x = 1; x <= shape.nx; ++x) {
            GridPoint t{x, y};
            NodeData& nd = node(t);
            nd.gens = live_gens(t);
            int n = static_cast<int>(nd.gens.size());
            std::vector<int> rl = live_rels(t);
            Matrix phit(n, static_cast<int>(rl.size()), f);
            for (int i = 0; i < n; ++i)
                for (size_t j = 0; j < rl.size(); ++j)
                    phit.set(i, static_cast<int>(j), phi.at(nd.gens[i], rl[j]));
            nd.im = image_basis(phit);
            nd.comp = complement_within_columns(nd.im, Subspace::full(n, f),
                                                Subspace::full(n, f));
        }
    GridModule m(shape, f);
    for (int y = 1; y <= shape.ny; ++y)
        for (int x = 1; x <= shape.nx; ++x) m.set_dim(x, y, node({x, y}).comp.cols());
    // induced map on cokernels: include, transport, project along the image
    auto induced = [&](GridPoint s, GridPoint t) -> Matrix {
        const NodeData& ns = node(s);
        const NodeData& nt = node(t);
        int n_t = static_cast<int>(nt.gens.size());
        // generator inclusion matrix from s-coordinates into t-coordinates
        Matrix incl(n_t, static_cast<int>(ns.gens.size()), f);
        for (size_t i = 0; i < ns.gens.size(); ++i)
            for (int k = 0; k < n_t; ++k)
                if (nt.gens[k] == ns.gens[i]) incl.set(k, static_cast<int>(i), 1);
        Matrix carried = incl * ns.comp;
        if (nt.comp.cols() == 0) return Matrix(0, ns.comp.cols(), f);
        // solve [im_basis | comp] * (u, w) = carried and keep w
        Matrix full_basis = nt.im.basis().hstack(nt.comp);
        Matrix coords = coordinates_in(full_basis, carried);
        Matrix w(nt.comp.cols(), carried.cols(), f);
        for (int i = 0; i < nt.comp.cols(); ++i)
            for (int c = 0; c < carried.cols(); ++c) w.set(i, c, coords.at(nt.im.dim() + i, c));
        return w;
    };
    for (int y = 1; y <= shape.ny; ++y)
        for (int x = 1; x < shape.nx; ++x) m.set_hmap(x, y, induced({x, y}, {x + 1, y}));
    for (int y = 1; y < shape.ny; ++y)
        for (int x = 1; x <= shape.nx; ++x) m.set_vmap(x, y, induced({x, y}, {x, y + 1}));
    m.validate();
    return m;
}

}  // namespace

GridModule random_module(GridShape shape, Field f, int max_dim, uint64_t seed) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    // deterministic rejection keeps every pointwise dimension within max_dim
    for (uint64_t attempt = 0;; ++attempt) {
        GridModule m = random_module_attempt(shape, f, max_dim,
                                             seed + attempt * 0x632be59bd9b4e019ULL);
        bool ok = true;
        for (int y = 1; y <= shape.ny && ok; ++y)
            for (int x = 1; x <= shape.nx && ok; ++x) ok = m.dim(x, y) <= max_dim;
        if (ok) return m;
    }
}

RectangleDecomposableSample random_rectangle_decomposable(GridShape shape, Field f, int count,
                                                          uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x7f4a7c159e3779b9ULL);
    RectangleDecomposableSample out{GridModule(shape, f), {}};
    for (int i = 0; i < count; ++i) {
        int x1 = 1 + draw(rng, shape.nx);
        int x2 = x1 + draw(rng, shape.nx - x1 + 1);
        int y1 = 1 + draw(rng, shape.ny);
        int y2 = y1 + draw(rng, shape.ny - y1 + 1);
        out.summands.push_back({x1, x2, y1, y2});
        GridModule ind(shape, f);
        for (int y = y1; y <= y2; ++y)
            for (int x = x1; x <= x2; ++x) ind.set_dim(x, y, 1);
        Matrix one = Matrix::identity(1, f);
        for (int y = y1; y <= y2; ++y)
            for (int x = x1; x < x2; ++x) ind.set_hmap(x, y, one);
        for (int y = y1; y < y2; ++y)
            for (int x = x1; x <= x2; ++x) ind.set_vmap(x, y, one);
        out.module = direct_sum(out.module, ind);
    }
    std::sort(out.summands.begin(), out.summands.end());
    std::map<GridPoint, Matrix> bases;
    for (int y = 1; y <= shape.ny; ++y)
        for (int x = 1; x <= shape.nx; ++x)
            bases.emplace(GridPoint{x, y},
                          random_invertible(out.module.dim(x, y), f, rng));
    out.module = conjugate(out.module, bases);
    out.module.validate();
    return out;
}

}  // namespace rectdec
