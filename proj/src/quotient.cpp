#include "dext/quotient.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "dext/errors.hpp"

namespace dext {

namespace {

Matrix unit(std::size_t n, std::size_t j) {
    Matrix v(n, 1);
    v(j, 0) = Scalar(1);
    return v;
}

}  // namespace

QuotientCategory::QuotientCategory(const ClusterCategory& base, std::vector<ObjectId> m, bool force)
    : base_(&base) {
    for (ObjectId x : m)
        if (x >= base.size()) throw UnknownObject("object id out of range");
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    m_ = m;
    m_set_ = std::set<ObjectId>(m.begin(), m.end());
    if (!force && !base.is_cluster_tilting(m_)) throw NotClusterTilting("M is not a cluster-tilting object");
    for (ObjectId x = 0; x < base.size(); ++x)
        if (!in_add_m(x)) surviving_.push_back(x);
}

// ---------------------------------------------------------------------------
// Degree 0: factoring subspace

Matrix QuotientCategory::factoring_subspace(ObjectId x, ObjectId y) const {
    auto key = std::make_pair(x, y);
    auto it = fac_cache_.find(key);
    if (it != fac_cache_.end()) return it->second;
    const ClusterCategory& c = *base_;
    const std::size_t total = c.hom_dim(x, y, 0);
    std::vector<Matrix> cols;
    for (ObjectId mj : m_) {
        auto fs = c.hom_basis(x, mj, 0);
        auto gs = c.hom_basis(mj, y, 0);
        for (const auto& f : fs)
            for (const auto& g : gs) cols.push_back(c.coords(c.compose(g, f)));
    }
    Matrix basis = cols.empty() ? Matrix(total, 0) : column_space_basis(hstack(cols, total));
    fac_cache_.emplace(key, basis);
    return basis;
}

std::size_t QuotientCategory::quotient_hom0(ObjectId x, ObjectId y) const {
    return base_->hom_dim(x, y, 0) - factoring_subspace(x, y).cols();
}

const SplicingTower& QuotientCategory::tower(ObjectId y) const {
    auto it = towers_.find(y);
    if (it != towers_.end()) return it->second;
    return towers_.emplace(y, base_->splicing_tower(m_, y)).first->second;
}

const std::vector<ObjectId>& QuotientCategory::loop_object(ObjectId y, int i) const {
    if (i < 0 || i > d()) throw DimensionError("loop index outside 0..d");
    return tower(y).k.at(static_cast<std::size_t>(i));
}

std::size_t QuotientCategory::quotient_hom(ObjectId x, ObjectId y, int degree) const {
    if (degree > 0) return 0;  // connective
    const int i = -degree;
    if (i >= d()) {
        // d-truncated: Omega^i Y lies in add M for i >= d.
        std::size_t total = 0;
        for (ObjectId z : loop_object(y, d())) total += quotient_hom0(x, z);
        require(total == 0, "K_d has a nonzero quotient image");
        return 0;
    }
    std::size_t total = 0;
    for (ObjectId z : loop_object(y, i)) total += quotient_hom0(x, z);
    return total;
}

bool QuotientCategory::in_c0(ObjectId y, int n) const {
    if (n < 0) throw DimensionError("C_0^n needs n >= 0");
    if (n >= d()) return true;  // the whole category
    return tower(y).in_add_m.at(static_cast<std::size_t>(n));
}

std::vector<ObjectId> QuotientCategory::c0_objects(int n) const {
    std::vector<ObjectId> out;
    for (ObjectId y = 0; y < base_->size(); ++y)
        if (in_c0(y, n)) out.push_back(y);
    return out;
}

// ---------------------------------------------------------------------------
// Bar oracle
//
// The two-sided bar construction B(X, T) over the graded category add M:
// words t | a_1 | ... | a_n | c with c in Hom(X, M_{j_n}), a_k in the reduced
// hom space Hom(M_{j_k}, M_{j_{k-1}}) (identity removed from End^0) and
// t in Hom(M_{j_0}, T). Internal degrees q are <= 0 and the total degree is
// sum(q) - n. The differential is the alternating sum of adjacent
// compositions (signs (-1)^i); it maps onto Hom(X, T) by full composition.

struct QuotientCategory::BarData {
    const QuotientCategory* q;
    ObjectId x, t;
    int bar_length, lowest;

    struct Cell {
        std::vector<std::size_t> objs;  // indices into m_: j_0..j_n
        std::vector<int> degs;          // q_0 (t), q_1..q_n (a_k), q_{n+1} (c)
        std::vector<std::size_t> dims;  // factor dimensions (reduced where needed)
        std::size_t size = 1;
        std::size_t offset = 0;
    };
    std::map<int, std::vector<Cell>> cells;  // total degree -> cells
    std::map<int, std::map<std::pair<std::vector<std::size_t>, std::vector<int>>, std::size_t>> lookup;
    std::map<int, std::size_t> dims;

    mutable std::map<std::tuple<ObjectId, ObjectId, ObjectId, int, int>, Matrix> comp_cache;
    mutable std::map<ObjectId, std::pair<std::size_t, Matrix>> ident;  // pivot, id coordinates

    const ClusterCategory& c() const { return q->base(); }

    // Source and target object of factor position pos in a word.
    ObjectId factor_source(const Cell& cell, std::size_t pos) const {
        const std::size_t n = cell.objs.size() - 1;
        if (pos == n + 1) return x;
        return q->m_[cell.objs[pos]];
    }
    ObjectId factor_target(const Cell& cell, std::size_t pos) const {
        if (pos == 0) return t;
        return q->m_[cell.objs[pos - 1]];
    }
    static bool middle(std::size_t pos, std::size_t n) { return pos >= 1 && pos <= n; }

    bool reduced(ObjectId a, ObjectId b, int deg) const { return a == b && deg == 0; }

    const std::pair<std::size_t, Matrix>& identity_data(ObjectId a) const {
        auto it = ident.find(a);
        if (it != ident.end()) return it->second;
        Matrix id = c().coords(c().identity(a));
        std::size_t piv = 0;
        while (piv < id.rows() && id(piv, 0).is_zero()) ++piv;
        require(piv < id.rows(), "identity has zero coordinates");
        return ident.emplace(a, std::make_pair(piv, id)).first->second;
    }

    std::size_t factor_dim(ObjectId src, ObjectId tgt, int deg, bool is_middle) const {
        std::size_t dim = c().hom_dim(src, tgt, deg);
        if (is_middle && reduced(src, tgt, deg)) --dim;
        return dim;
    }

    Matrix lift_reduced(ObjectId a, std::size_t r) const {
        const auto& [piv, id] = identity_data(a);
        return unit(id.rows(), r < piv ? r : r + 1);
    }
    Matrix reduce(ObjectId a, const Matrix& v) const {
        const auto& [piv, id] = identity_data(a);
        Matrix w = v - id * (v(piv, 0) / id(piv, 0));
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < w.rows(); ++i)
            if (i != piv) keep.push_back(i);
        return w.select_rows(keep);
    }

    // Column i * dim(B,C,qd) + j holds coords(g_j o f_i).
    const Matrix& composition(ObjectId a, ObjectId b, ObjectId cc, int p, int qd) const {
        auto key = std::make_tuple(a, b, cc, p, qd);
        auto it = comp_cache.find(key);
        if (it != comp_cache.end()) return it->second;
        auto fs = c().hom_basis(a, b, p);
        auto gs = c().hom_basis(b, cc, qd);
        const std::size_t out = c().hom_dim(a, cc, p + qd);
        Matrix table(out, fs.size() * gs.size());
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = 0; j < gs.size(); ++j)
                table.set_block(0, i * gs.size() + j, c().coords(c().compose(gs[j], fs[i])));
        return comp_cache.emplace(key, std::move(table)).first->second;
    }

    void enumerate() {
        const std::size_t r = q->m_.size();
        // Recursive enumeration of words by length n and degrees.
        for (int n = 0; n <= bar_length; ++n) {
            if (-n < lowest) break;
            std::vector<std::size_t> objs(static_cast<std::size_t>(n) + 1, 0);
            std::function<void(std::size_t)> choose_objs = [&](std::size_t k) {
                if (k == objs.size()) {
                    Cell cell;
                    cell.objs = objs;
                    std::vector<int> degs(objs.size() + 1, 0);
                    std::function<void(std::size_t, int)> choose_deg = [&](std::size_t pos, int partial) {
                        if (pos == degs.size()) {
                            const int total = partial - n;
                            if (total < lowest || total > 0) return;
                            Cell cl = cell;
                            cl.degs = degs;
                            cl.size = 1;
                            for (std::size_t f = 0; f < degs.size(); ++f) {
                                const std::size_t dm =
                                    factor_dim(factor_source(cl, f), factor_target(cl, f), degs[f],
                                               middle(f, static_cast<std::size_t>(n)));
                                cl.dims.push_back(dm);
                                cl.size *= dm;
                            }
                            if (cl.size == 0) return;
                            cl.offset = dims[total];
                            dims[total] += cl.size;
                            lookup[total][{cl.objs, cl.degs}] = cells[total].size();
                            cells[total].push_back(std::move(cl));
                            return;
                        }
                        // Remaining factors contribute <= 0, so partial - n >= lowest is needed.
                        for (int qd = 0; partial + qd - n >= lowest; --qd) {
                            degs[pos] = qd;
                            choose_deg(pos + 1, partial + qd);
                        }
                    };
                    choose_deg(0, 0);
                    return;
                }
                for (std::size_t j = 0; j < r; ++j) {
                    objs[k] = j;
                    choose_objs(k + 1);
                }
            };
            choose_objs(0);
        }
    }

    // Multi-index of basis element e within a cell (row-major in factor order).
    static std::vector<std::size_t> unflatten(const Cell& cell, std::size_t e) {
        std::vector<std::size_t> idx(cell.dims.size());
        for (std::size_t f = cell.dims.size(); f-- > 0;) {
            idx[f] = e % cell.dims[f];
            e /= cell.dims[f];
        }
        return idx;
    }
    static std::size_t flatten(const Cell& cell, const std::vector<std::size_t>& idx) {
        std::size_t e = 0;
        for (std::size_t f = 0; f < idx.size(); ++f) e = e * cell.dims[f] + idx[f];
        return e;
    }

    // Full coordinates of factor f of a basis word.
    Matrix factor_vector(const Cell& cell, std::size_t f, std::size_t idx) const {
        const std::size_t n = cell.objs.size() - 1;
        ObjectId src = factor_source(cell, f), tgt = factor_target(cell, f);
        if (middle(f, n) && reduced(src, tgt, cell.degs[f])) return lift_reduced(src, idx);
        return unit(c().hom_dim(src, tgt, cell.degs[f]), idx);
    }

    Matrix differential(int k) const {
        auto itk = cells.find(k);
        const std::size_t rows = dims.count(k + 1) ? dims.at(k + 1) : 0;
        const std::size_t cols = dims.count(k) ? dims.at(k) : 0;
        Matrix dm(rows, cols);
        if (itk == cells.end() || rows == 0) return dm;
        for (const Cell& cell : itk->second) {
            const std::size_t n = cell.objs.size() - 1;
            if (n == 0) continue;
            for (std::size_t e = 0; e < cell.size; ++e) {
                auto idx = unflatten(cell, e);
                for (std::size_t i = 0; i <= n; ++i) {
                    // Merge factor i (outer) with factor i + 1 (inner).
                    ObjectId a = factor_source(cell, i + 1), b = factor_target(cell, i + 1),
                             cc = factor_target(cell, i);
                    const int p = cell.degs[i + 1], qd = cell.degs[i];
                    const std::size_t db = c().hom_dim(b, cc, qd);
                    Matrix fv = factor_vector(cell, i + 1, idx[i + 1]);
                    Matrix gv = factor_vector(cell, i, idx[i]);
                    const Matrix& table = composition(a, b, cc, p, qd);
                    Matrix merged(table.rows(), 1);
                    for (std::size_t fi = 0; fi < fv.rows(); ++fi) {
                        if (fv(fi, 0).is_zero()) continue;
                        for (std::size_t gj = 0; gj < gv.rows(); ++gj) {
                            if (gv(gj, 0).is_zero()) continue;
                            merged += table.col(fi * db + gj) * (fv(fi, 0) * gv(gj, 0));
                        }
                    }
                    // New word: object j_i disappears, degrees merge.
                    Cell key;
                    key.objs = cell.objs;
                    key.objs.erase(key.objs.begin() + static_cast<long>(i));
                    key.degs = cell.degs;
                    key.degs[i] = p + qd;
                    key.degs.erase(key.degs.begin() + static_cast<long>(i) + 1);
                    const std::size_t n2 = n - 1;
                    if (middle(i, n2) && reduced(a, cc, p + qd)) merged = reduce(a, merged);
                    if (merged.is_zero()) continue;
                    auto lk = lookup.at(k + 1).find({key.objs, key.degs});
                    require(lk != lookup.at(k + 1).end(), "bar differential leaves the enumerated words");
                    const Cell& target = cells.at(k + 1)[lk->second];
                    const Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
                    std::vector<std::size_t> tidx;
                    for (std::size_t f = 0; f < idx.size(); ++f) {
                        if (f == i) tidx.push_back(0);
                        else if (f != i + 1) tidx.push_back(idx[f]);
                    }
                    for (std::size_t v = 0; v < merged.rows(); ++v) {
                        if (merged(v, 0).is_zero()) continue;
                        tidx[i] = v;
                        dm(target.offset + flatten(target, tidx), cell.offset + e) += sign * merged(v, 0);
                    }
                }
            }
        }
        return dm;
    }

    // Augmentation on degree k: words of length 0 map to full composites.
    Matrix augmentation(int k) const {
        const std::size_t rows = c().hom_dim(x, t, k);
        const std::size_t cols = dims.count(k) ? dims.at(k) : 0;
        Matrix em(rows, cols);
        auto itk = cells.find(k);
        if (itk == cells.end()) return em;
        for (const Cell& cell : itk->second) {
            if (cell.objs.size() != 1) continue;
            ObjectId mj = q->m_[cell.objs[0]];
            const Matrix& table = composition(x, mj, t, cell.degs[1], cell.degs[0]);
            const std::size_t db = cell.dims[0];
            for (std::size_t e = 0; e < cell.size; ++e) {
                auto idx = unflatten(cell, e);
                em.set_block(0, cell.offset + e, table.col(idx[1] * db + idx[0]));
            }
        }
        return em;
    }

    CochainComplex bar_complex() const {
        std::map<int, std::size_t> ds;
        std::map<int, Matrix> diffs;
        for (int k = lowest; k <= 0; ++k) {
            ds[k] = dims.count(k) ? dims.at(k) : 0;
            if (k < 0) diffs[k] = differential(k);
        }
        return CochainComplex(ds, diffs);
    }
};

namespace {

void check_bar_args(int bar_length, int lowest) {
    if (bar_length < 2) throw WindowTooSmall("bar length must be at least 2");
    if (lowest > 0) throw DimensionError("lowest degree must be <= 0");
}

}  // namespace

std::map<int, std::size_t> QuotientCategory::bar_quotient_homs(ObjectId x, ObjectId t, int bar_length,
                                                               int lowest) const {
    check_bar_args(bar_length, lowest);
    BarData bd{this, x, t, bar_length, lowest, {}, {}, {}, {}, {}};
    bd.enumerate();
    CochainComplex b = bd.bar_complex();
    std::map<int, std::size_t> hd;
    for (int k = lowest - 1; k <= 0; ++k) hd[k] = base_->hom_dim(x, t, k);
    CochainComplex h(hd, {});
    ChainMap eps{b, h, 0, {}};
    for (int k = lowest; k <= 0; ++k) eps.blocks[k] = bd.augmentation(k);
    require(eps.is_closed(), "bar augmentation is not a chain map");
    CochainComplex cn = cone(eps);
    std::map<int, std::size_t> out;
    for (int k = lowest; k <= 0; ++k) out[k] = cohomology(cn, k).dim;
    return out;
}

std::size_t QuotientCategory::bar_quotient_hom0(ObjectId x, ObjectId t, int bar_length) const {
    return bar_quotient_homs(x, t, bar_length, 0).at(0);
}

std::size_t QuotientCategory::bar_complex_size(ObjectId x, ObjectId t, int bar_length, int lowest) const {
    check_bar_args(bar_length, lowest);
    BarData bd{this, x, t, bar_length, lowest, {}, {}, {}, {}, {}};
    bd.enumerate();
    return bd.bar_complex().total_dim();
}

// ---------------------------------------------------------------------------
// Projectives, injectives, Frobenius

namespace {

std::vector<ObjectId> shifted(const ClusterCategory& c, const std::vector<ObjectId>& m, int k) {
    std::vector<ObjectId> out;
    for (ObjectId x : m) out.push_back(c.shift_object(x, k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<ObjectId> QuotientCategory::projectives() const { return shifted(*base_, m_, -d()); }
std::vector<ObjectId> QuotientCategory::injectives() const { return shifted(*base_, m_, d()); }

bool QuotientCategory::is_projective(ObjectId x) const {
    auto p = projectives();
    return std::binary_search(p.begin(), p.end(), x);
}

bool QuotientCategory::is_injective(ObjectId x) const {
    auto p = injectives();
    return std::binary_search(p.begin(), p.end(), x);
}

bool frobenius_check(const ClusterCategory& c, const std::vector<ObjectId>& m) {
    return shifted(c, m, c.d()) == shifted(c, m, -c.d());
}

// ---------------------------------------------------------------------------
// d-monomorphisms and d-epimorphisms

DMorphismWitness QuotientCategory::d_mono_witness(const ProjectiveMap& f) const {
    const ClusterCategory& c = *base_;
    // Bicartesian square X -> C (left approximation), X -> Y, with triangle
    // X -> Y (+) C -> Z -> X[1].
    LeftApproximation iota = c.left_approximation(m_, f.source);
    ProjectiveComplex yc = direct_sum({f.target, iota.target});
    ChainMap psi = dext::compose(sum_inclusion({f.target, iota.target}, 0), f).map +
                   dext::compose(sum_inclusion({f.target, iota.target}, 1), iota.map).map;
    ProjectiveMap psi_map{f.source, yc, psi};
    DMorphismWitness w;
    w.via_restricted_homs = c.is_epic_for(m_, cone_inclusion(psi_map));
    ProjectiveMap delta = shift(cone_projection(psi_map), -1);
    w.via_factorization = c.factors_through(delta, c0_objects(d() - 1));
    if (w.via_restricted_homs != w.via_factorization)
        throw EquivalenceViolation("d-mono characterizations disagree");
    return w;
}

DMorphismWitness QuotientCategory::d_epi_witness(const ProjectiveMap& g) const {
    const ClusterCategory& c = *base_;
    // Bicartesian square with a right approximation C -> Z of the target:
    // X -> Y (+) C -> Z -> X[1] with X the cocone.
    RightApproximation pi = c.right_approximation_of(m_, g.target);
    ProjectiveComplex yc = direct_sum({g.source, pi.source});
    ChainMap phi = dext::compose(g, sum_projection({g.source, pi.source}, 0)).map +
                   dext::compose(pi.map, sum_projection({g.source, pi.source}, 1)).map;
    ProjectiveMap phi_map{yc, g.target, phi};
    DMorphismWitness w;
    w.via_restricted_homs = c.is_monic_for(m_, cocone_projection(phi_map));
    std::vector<ObjectId> band;  // objects of C_{-d+1}^0
    for (ObjectId y = 0; y < c.size(); ++y)
        if (in_c0(c.shift_object(y, d() - 1), d() - 1)) band.push_back(y);
    w.via_factorization = c.factors_through(cone_inclusion(phi_map), band);
    if (w.via_restricted_homs != w.via_factorization)
        throw EquivalenceViolation("d-epi characterizations disagree");
    return w;
}

ProjectiveMap QuotientCategory::lift_morphism(const ClusterMorphism& f) const {
    const ClusterCategory& c = *base_;
    std::vector<int> support;
    for (const auto& [m, v] : f.components)
        if (!v.is_zero()) support.push_back(m);
    if (support.size() > 1) throw DimensionError("morphism has several orbit components; no single lift");
    const int m = support.empty() ? 0 : support.front();
    const StalkKey ky = c.orbit_key(f.target, m);
    const ProjectiveHom& h = c.db_hom(c.key(f.source), ky);
    Matrix v = support.empty() ? Matrix(h.dim(f.degree), 1) : f.components.at(m);
    return h.representative(f.degree, v);
}

DMorphismWitness QuotientCategory::d_mono_witness(const ClusterMorphism& f) const {
    if (f.degree != 0) throw DimensionError("d-mono witness needs a degree-0 morphism");
    return d_mono_witness(lift_morphism(f));
}

DMorphismWitness QuotientCategory::d_epi_witness(const ClusterMorphism& g) const {
    if (g.degree != 0) throw DimensionError("d-epi witness needs a degree-0 morphism");
    return d_epi_witness(lift_morphism(g));
}

// ---------------------------------------------------------------------------
// AR quiver of the quotient and tables

QuiverGraph QuotientCategory::quotient_ar_quiver() const {
    const ClusterCategory& c = *base_;
    QuiverGraph g;
    std::map<ObjectId, std::size_t> pos;
    for (ObjectId x : surviving_) {
        pos[x] = g.vertices.size();
        g.vertices.push_back(c.name(x));
    }
    for (ObjectId x : surviving_)
        for (ObjectId y : surviving_) {
            Matrix rad = c.radical(x, y);
            Matrix fac = factoring_subspace(x, y);
            const std::size_t total = c.hom_dim(x, y, 0);
            // rad_Q = (rad + Fac) / Fac, rad^2_Q = (rad^2 + Fac) / Fac.
            const std::size_t rq = rank(hstack(rad, fac)) - fac.cols();
            if (rq == 0) continue;
            std::vector<Matrix> cols{fac};
            for (ObjectId z : surviving_) {
                Matrix r1 = c.radical(x, z), r2 = c.radical(z, y);
                for (std::size_t i = 0; i < r1.cols(); ++i)
                    for (std::size_t j = 0; j < r2.cols(); ++j)
                        cols.push_back(c.coords(c.compose(c.from_coords(z, y, 0, r2.col(j)),
                                                          c.from_coords(x, z, 0, r1.col(i)))));
            }
            const std::size_t r2q = rank(hstack(cols, total)) - fac.cols();
            if (rq > r2q) g.arrows[{pos[x], pos[y]}] = rq - r2q;
        }
    for (ObjectId x : surviving_) {
        ObjectId t = c.tau_object(x);
        if (pos.count(t)) g.tau.push_back({pos[x], pos[t]});
    }
    return g;
}

Json QuotientCategory::hom_table_json() const {
    const ClusterCategory& c = *base_;
    Json arr = Json::array();
    for (ObjectId x : surviving_)
        for (ObjectId y : surviving_) {
            Json e;
            e["source"] = c.name(x);
            e["target"] = c.name(y);
            Json dims = Json::object();
            for (int i = 0; i < d(); ++i) dims[std::to_string(-i)] = quotient_hom(x, y, -i);
            e["dims"] = dims;
            arr.push_back(e);
        }
    return arr;
}

}  // namespace dext
