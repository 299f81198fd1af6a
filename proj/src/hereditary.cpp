#include "dext/hereditary.hpp"

#include <algorithm>
#include <set>

#include "dext/errors.hpp"

namespace dext {

namespace {

int sign(int k) { return (k % 2 == 0) ? 1 : -1; }

const std::vector<int>& empty_labels() {
    static const std::vector<int> e;
    return e;
}

std::map<int, std::size_t> dims_of(const std::map<int, std::vector<int>>& labels) {
    std::map<int, std::size_t> dims;
    for (const auto& [i, l] : labels)
        if (!l.empty()) dims[i] = l.size();
    return dims;
}

std::map<int, std::vector<int>> drop_empty(std::map<int, std::vector<int>> labels) {
    for (auto it = labels.begin(); it != labels.end();)
        it = it->second.empty() ? labels.erase(it) : std::next(it);
    return labels;
}

std::map<int, Matrix> all_diffs(const ProjectiveComplex& x) {
    std::map<int, Matrix> d;
    for (const auto& [i, l] : x.all_labels())
        if (!x.labels(i + 1).empty()) d[i] = x.d(i);
    return d;
}

ProjectiveMap wrap(const ProjectiveComplex& x, const ProjectiveComplex& y, ChainMap m) {
    return ProjectiveMap{x, y, std::move(m)};
}

// Offsets of each part inside the direct sum, per degree.
std::map<int, std::vector<std::size_t>> sum_offsets(const std::vector<ProjectiveComplex>& parts) {
    std::map<int, std::vector<std::size_t>> off;
    std::set<int> deg;
    for (const auto& p : parts)
        for (const auto& [i, l] : p.all_labels()) deg.insert(i);
    for (int i : deg) {
        std::size_t o = 0;
        for (const auto& p : parts) {
            off[i].push_back(o);
            o += p.labels(i).size();
        }
        off[i].push_back(o);
    }
    return off;
}

}  // namespace

std::string StalkKey::str() const {
    return "M[" + std::to_string(a) + "," + std::to_string(b) + "][" + std::to_string(s) + "]";
}

ProjectiveComplex::ProjectiveComplex(int n, std::map<int, std::vector<int>> labels,
                                     std::map<int, Matrix> diffs)
    : n_(n), labels_(drop_empty(std::move(labels))) {
    for (const auto& [i, l] : labels_)
        for (int v : l)
            if (v < 1 || v > n_) throw DimensionError("projective label out of range");
    for (auto it = diffs.begin(); it != diffs.end();) {
        const int i = it->first;
        const Matrix& m = it->second;
        const auto& src = this->labels(i);
        const auto& tgt = this->labels(i + 1);
        if (m.rows() != tgt.size() || m.cols() != src.size())
            throw DimensionError("differential shape does not match projective labels");
        for (std::size_t s = 0; s < m.rows(); ++s)
            for (std::size_t t = 0; t < m.cols(); ++t)
                if (!m(s, t).is_zero() && !has_path(src[t], tgt[s]))
                    throw DimensionError("differential entry between projectives without a path");
        it = (src.empty() || tgt.empty()) ? diffs.erase(it) : std::next(it);
    }
    scalar_ = CochainComplex(dims_of(labels_), std::move(diffs));
}

const std::vector<int>& ProjectiveComplex::labels(int i) const {
    auto it = labels_.find(i);
    return it == labels_.end() ? empty_labels() : it->second;
}

bool ProjectiveComplex::is_minimal() const {
    for (const auto& [i, l] : labels_) {
        const Matrix d = this->d(i);
        const auto& tgt = labels(i + 1);
        for (std::size_t s = 0; s < d.rows(); ++s)
            for (std::size_t t = 0; t < d.cols(); ++t)
                if (tgt[s] == l[t] && !d(s, t).is_zero()) return false;
    }
    return true;
}

CochainComplex ProjectiveComplex::at_vertex(int v) const {
    std::map<int, std::vector<std::size_t>> keep;
    std::map<int, std::size_t> dims;
    for (const auto& [i, l] : labels_) {
        for (std::size_t t = 0; t < l.size(); ++t)
            if (l[t] <= v) keep[i].push_back(t);
        if (!keep[i].empty()) dims[i] = keep[i].size();
    }
    std::map<int, Matrix> diffs;
    for (const auto& [i, k] : keep) {
        auto nx = keep.find(i + 1);
        if (k.empty() || nx == keep.end() || nx->second.empty()) continue;
        diffs[i] = d(i).select_rows(nx->second).select_cols(k);
    }
    return CochainComplex(dims, diffs);
}

bool ProjectiveMap::respects_paths() const {
    for (const auto& [i, m] : map.blocks) {
        const auto& src = source.labels(i);
        const auto& tgt = target.labels(i + map.degree);
        for (std::size_t s = 0; s < m.rows(); ++s)
            for (std::size_t t = 0; t < m.cols(); ++t)
                if (!m(s, t).is_zero() && !has_path(src[t], tgt[s])) return false;
    }
    return true;
}

ProjectiveMap identity_map(const ProjectiveComplex& x) { return wrap(x, x, identity_map(x.scalar())); }

ProjectiveMap compose(const ProjectiveMap& g, const ProjectiveMap& f) {
    return wrap(f.source, g.target, compose(g.map, f.map));
}

ProjectiveComplex projective_stalk(int n, int i, int degree) {
    return ProjectiveComplex(n, {{degree, {i}}}, {});
}

ProjectiveComplex stalk(int n, const StalkKey& k) {
    if (k.a < 1 || k.a > k.b || k.b > n) throw DimensionError("invalid interval " + k.str());
    if (k.b == n) return projective_stalk(n, k.a, -k.s);
    return ProjectiveComplex(n, {{-k.s - 1, {k.b + 1}}, {-k.s, {k.a}}}, {{-k.s - 1, Matrix{{1}}}});
}

ProjectiveComplex shift(const ProjectiveComplex& x, int k) {
    std::map<int, std::vector<int>> labels;
    for (const auto& [i, l] : x.all_labels()) labels[i - k] = l;
    std::map<int, Matrix> diffs;
    const Scalar s(sign(k));
    for (const auto& [i, m] : all_diffs(x)) diffs[i - k] = s * m;
    return ProjectiveComplex(x.n(), labels, diffs);
}

ProjectiveMap shift(const ProjectiveMap& f, int k) {
    return wrap(shift(f.source, k), shift(f.target, k), shift(f.map, k));
}

ProjectiveComplex direct_sum(const std::vector<ProjectiveComplex>& parts) {
    if (parts.empty()) return ProjectiveComplex();
    int n = 0;
    for (const auto& p : parts) {
        if (n != 0 && p.n() != 0 && p.n() != n) throw DimensionError("direct sum over different quivers");
        n = std::max(n, p.n());
    }
    auto off = sum_offsets(parts);
    std::map<int, std::vector<int>> labels;
    for (const auto& [i, o] : off)
        for (const auto& p : parts) {
            const auto& l = p.labels(i);
            labels[i].insert(labels[i].end(), l.begin(), l.end());
        }
    std::map<int, Matrix> diffs;
    for (const auto& [i, o] : off) {
        auto nx = off.find(i + 1);
        if (nx == off.end()) continue;
        Matrix m(nx->second.back(), o.back());
        for (std::size_t j = 0; j < parts.size(); ++j) m.set_block(nx->second[j], o[j], parts[j].d(i));
        diffs[i] = m;
    }
    return ProjectiveComplex(n, labels, diffs);
}

ProjectiveMap sum_inclusion(const std::vector<ProjectiveComplex>& parts, std::size_t which) {
    ProjectiveComplex sum = direct_sum(parts);
    auto off = sum_offsets(parts);
    const ProjectiveComplex& x = parts.at(which);
    ChainMap m{x.scalar(), sum.scalar(), 0, {}};
    for (const auto& [i, l] : x.all_labels()) {
        Matrix b(off[i].back(), l.size());
        b.set_block(off[i][which], 0, Matrix::identity(l.size()));
        m.blocks[i] = b;
    }
    return wrap(x, sum, m);
}

ProjectiveMap sum_projection(const std::vector<ProjectiveComplex>& parts, std::size_t which) {
    ProjectiveComplex sum = direct_sum(parts);
    auto off = sum_offsets(parts);
    const ProjectiveComplex& x = parts.at(which);
    ChainMap m{sum.scalar(), x.scalar(), 0, {}};
    for (const auto& [i, l] : x.all_labels()) {
        Matrix b(l.size(), off[i].back());
        b.set_block(0, off[i][which], Matrix::identity(l.size()));
        m.blocks[i] = b;
    }
    return wrap(sum, x, m);
}

ProjectiveComplex cone(const ProjectiveMap& f) {
    if (!f.respects_paths()) throw DimensionError("map does not respect paths");
    CochainComplex c = cone(f.map);
    std::map<int, std::vector<int>> labels;
    std::set<int> deg;
    for (const auto& [i, l] : f.source.all_labels()) deg.insert(i - 1);
    for (const auto& [i, l] : f.target.all_labels()) deg.insert(i);
    for (int i : deg) {
        auto l = f.source.labels(i + 1);
        const auto& y = f.target.labels(i);
        l.insert(l.end(), y.begin(), y.end());
        labels[i] = l;
    }
    std::map<int, Matrix> diffs;
    for (int i : c.support())
        if (c.dim(i + 1) > 0) diffs[i] = c.d(i);
    return ProjectiveComplex(std::max(f.source.n(), f.target.n()), labels, diffs);
}

ProjectiveComplex cocone(const ProjectiveMap& f) { return shift(cone(f), -1); }

ProjectiveMap cone_inclusion(const ProjectiveMap& f) {
    return wrap(f.target, cone(f), cone_inclusion(f.map));
}

ProjectiveMap cone_projection(const ProjectiveMap& f) {
    return wrap(cone(f), shift(f.source, 1), cone_projection(f.map));
}

ProjectiveMap cocone_projection(const ProjectiveMap& f) {
    ProjectiveMap p = shift(cone_projection(f), -1);
    p.target = f.source;
    p.map.target = f.source.scalar();
    return p;
}

ProjectiveComplex minimize(const ProjectiveComplex& x0) {
    std::map<int, std::vector<int>> labels = x0.all_labels();
    std::map<int, Matrix> diffs = all_diffs(x0);
    auto lab = [&](int i) -> std::vector<int>& { return labels[i]; };
    for (;;) {
        bool found = false;
        for (auto& [i, d] : diffs) {
            const auto& src = lab(i);
            const auto& tgt = lab(i + 1);
            for (std::size_t s = 0; s < d.rows() && !found; ++s)
                for (std::size_t t = 0; t < d.cols() && !found; ++t) {
                    if (d(s, t).is_zero() || src[t] != tgt[s]) continue;
                    found = true;
                    // d^i = [[e, b], [c, phi]] with phi : t -> s invertible.
                    std::vector<std::size_t> rows, cols;
                    for (std::size_t r = 0; r < d.rows(); ++r)
                        if (r != s) rows.push_back(r);
                    for (std::size_t c = 0; c < d.cols(); ++c)
                        if (c != t) cols.push_back(c);
                    const Scalar phi_inv = d(s, t).inverse();
                    Matrix e = d.select_rows(rows).select_cols(cols);
                    Matrix b = d.select_rows(rows).select_cols({t});
                    Matrix c = d.select_rows({s}).select_cols(cols);
                    Matrix nd = e - (b * c) * phi_inv;
                    const int deg = i;
                    diffs[deg] = nd;
                    if (diffs.count(deg - 1)) diffs[deg - 1] = diffs[deg - 1].select_rows(cols);
                    if (diffs.count(deg + 1)) diffs[deg + 1] = diffs[deg + 1].select_cols(rows);
                    std::vector<int> ns, nt;
                    for (auto cix : cols) ns.push_back(src[cix]);
                    for (auto rix : rows) nt.push_back(tgt[rix]);
                    labels[deg] = ns;
                    labels[deg + 1] = nt;
                }
            if (found) break;
        }
        if (!found) break;
        for (auto it = diffs.begin(); it != diffs.end();)
            it = (it->second.rows() == 0 || it->second.cols() == 0) ? diffs.erase(it) : std::next(it);
    }
    return ProjectiveComplex(x0.n(), labels, diffs);
}

// ---------------------------------------------------------------------------
// Hom complex

ProjectiveHom::ProjectiveHom(const ProjectiveComplex& x, const ProjectiveComplex& y) : x_(x), y_(y) {
    std::map<int, std::size_t> dims;
    // index grid per (p, source degree): rows x cols, -1 when no path
    std::map<std::pair<int, int>, std::vector<long>> grid;
    if (!x.is_zero() && !y.is_zero()) {
        for (int p = y.scalar().min_degree() - x.scalar().max_degree();
             p <= y.scalar().max_degree() - x.scalar().min_degree(); ++p) {
            auto& list = coords_[p];
            for (const auto& [i, src] : x.all_labels()) {
                const auto& tgt = y.labels(i + p);
                if (tgt.empty()) continue;
                auto& g = grid[{p, i}];
                g.assign(tgt.size() * src.size(), -1);
                for (std::size_t s = 0; s < tgt.size(); ++s)
                    for (std::size_t t = 0; t < src.size(); ++t)
                        if (has_path(src[t], tgt[s])) {
                            g[s * src.size() + t] = static_cast<long>(list.size());
                            list.push_back({i, s, t});
                        }
            }
            if (!list.empty()) dims[p] = list.size();
        }
    }
    std::map<int, Matrix> diffs;
    for (const auto& [p, list] : coords_) {
        auto nx = coords_.find(p + 1);
        if (list.empty() || nx == coords_.end() || nx->second.empty()) continue;
        Matrix dm(nx->second.size(), list.size());
        const Scalar sg(-sign(p));
        for (std::size_t c = 0; c < list.size(); ++c) {
            const Entry& e = list[c];
            const auto& src = x.labels(e.degree);
            // d_Y^{i+p} E_{st}: column t of the block at source degree i.
            Matrix dy = y.d(e.degree + p);
            if (dy.rows() > 0) {
                auto git = grid.find({p + 1, e.degree});
                for (std::size_t r = 0; r < dy.rows(); ++r) {
                    if (dy(r, e.row).is_zero()) continue;
                    require(git != grid.end(), "hom differential leaves the path pattern");
                    long idx = git->second[r * src.size() + e.col];
                    require(idx >= 0, "hom differential leaves the path pattern");
                    dm(static_cast<std::size_t>(idx), c) += dy(r, e.row);
                }
            }
            // -(-1)^p E_{st} d_X^{i-1}: row s of the block at source degree i-1.
            Matrix dx = x.d(e.degree - 1);
            if (dx.cols() > 0) {
                const auto& src1 = x.labels(e.degree - 1);
                auto git = grid.find({p + 1, e.degree - 1});
                for (std::size_t q = 0; q < dx.cols(); ++q) {
                    if (dx(e.col, q).is_zero()) continue;
                    require(git != grid.end(), "hom differential leaves the path pattern");
                    long idx = git->second[e.row * src1.size() + q];
                    require(idx >= 0, "hom differential leaves the path pattern");
                    dm(static_cast<std::size_t>(idx), c) += sg * dx(e.col, q);
                }
            }
        }
        diffs[p] = dm;
    }
    complex_ = CochainComplex(dims, diffs);
}

ProjectiveMap ProjectiveHom::to_map(int p, const Matrix& coords) const {
    ChainMap m{x_.scalar(), y_.scalar(), p, {}};
    auto it = coords_.find(p);
    if (it != coords_.end()) {
        if (coords.rows() != it->second.size()) throw DimensionError("hom coordinates have wrong length");
        for (std::size_t c = 0; c < it->second.size(); ++c) {
            const Entry& e = it->second[c];
            auto bit = m.blocks.find(e.degree);
            if (bit == m.blocks.end())
                bit = m.blocks.emplace(e.degree, Matrix(y_.labels(e.degree + p).size(),
                                                        x_.labels(e.degree).size())).first;
            bit->second(e.row, e.col) = coords(c, 0);
        }
    }
    return wrap(x_, y_, m);
}

Matrix ProjectiveHom::to_coords(const ProjectiveMap& f) const {
    auto it = coords_.find(f.degree());
    if (it == coords_.end()) return Matrix(0, 1);
    Matrix v(it->second.size(), 1);
    for (std::size_t c = 0; c < it->second.size(); ++c) {
        const Entry& e = it->second[c];
        auto bit = f.map.blocks.find(e.degree);
        if (bit != f.map.blocks.end()) v(c, 0) = bit->second(e.row, e.col);
    }
    return v;
}

const Cohomology& ProjectiveHom::cohomology(int p) const {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(p, dext::cohomology(complex_, p)).first->second;
}

ProjectiveMap ProjectiveHom::representative(int p, const Matrix& class_coords) const {
    const Cohomology& h = cohomology(p);
    if (h.dim == 0) return to_map(p, Matrix(complex_.dim(p), 1));
    return to_map(p, h.reps * class_coords);
}

ProjectiveMap ProjectiveHom::basis_map(int p, std::size_t j) const {
    const Cohomology& h = cohomology(p);
    return to_map(p, h.reps.col(j));
}

Matrix ProjectiveHom::class_of(const ProjectiveMap& f) const {
    const int p = f.degree();
    const Cohomology& h = cohomology(p);
    if (h.dim == 0) return Matrix(0, 1);
    Matrix v = to_coords(f);
    require((complex_.d(p) * v).is_zero(), "class_of applied to a non-closed map");
    return h.projector * v;
}

bool ProjectiveHom::is_null_homotopic(const ProjectiveMap& f) const {
    Matrix v = to_coords(f);
    if (v.rows() == 0) return true;
    return in_column_space(complex_.d(f.degree() - 1), v);
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Rank of the structure map H_a -> H_b of H^k(X) for a <= b.
struct RankTable {
    int n;
    std::vector<std::vector<long>> r;  // r[a][b], 1-based, 0 outside
    long at(int a, int b) const {
        if (a < 1 || b > n || a > b) return 0;
        return r[a][b];
    }
};

RankTable rank_table(const ProjectiveComplex& x, int k) {
    const int n = x.n();
    const auto& lab = x.labels(k);
    const auto& lab_prev = x.labels(k - 1);
    const Matrix dk = x.d(k);
    const Matrix dprev = x.d(k - 1);
    RankTable t{n, std::vector<std::vector<long>>(n + 2, std::vector<long>(n + 2, 0))};
    std::vector<Matrix> z(n + 1), bnd(n + 1);
    std::vector<std::size_t> rank_b(n + 1);
    for (int v = 1; v <= n; ++v) {
        std::vector<std::size_t> cols, pcols;
        for (std::size_t c = 0; c < lab.size(); ++c)
            if (lab[c] <= v) cols.push_back(c);
        for (std::size_t c = 0; c < lab_prev.size(); ++c)
            if (lab_prev[c] <= v) pcols.push_back(c);
        Matrix kb = kernel_basis(dk.select_cols(cols));
        Matrix emb(lab.size(), kb.cols());
        for (std::size_t j = 0; j < kb.cols(); ++j)
            for (std::size_t r = 0; r < cols.size(); ++r) emb(cols[r], j) = kb(r, j);
        z[v] = emb;
        bnd[v] = pcols.empty() ? Matrix(lab.size(), 0) : dprev.select_cols(pcols);
        rank_b[v] = rank(bnd[v]);
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b)
            t.r[a][b] = static_cast<long>(rank(hstack(bnd[b], z[a]))) - static_cast<long>(rank_b[b]);
    return t;
}

}  // namespace

std::vector<StalkKey> decompose(const ProjectiveComplex& x) {
    std::vector<StalkKey> out;
    const int n = x.n();
    for (int k : x.scalar().support()) {
        RankTable t = rank_table(x, k);
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) {
                long m = t.at(a, b) - t.at(a - 1, b) - t.at(a, b + 1) + t.at(a - 1, b + 1);
                require(m >= 0, "negative interval multiplicity");
                for (long j = 0; j < m; ++j) out.push_back({a, b, -k});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> cohomology_dimension_vector(const ProjectiveComplex& x, int i) {
    std::vector<long> v(x.n(), 0);
    for (int u = 1; u <= x.n(); ++u) v[u - 1] = static_cast<long>(dext::cohomology(x.at_vertex(u), i).dim);
    return v;
}

bool isomorphic(const ProjectiveComplex& x, const ProjectiveComplex& y) {
    return x.n() == y.n() && decompose(x) == decompose(y);
}

// ---------------------------------------------------------------------------
// Nakayama functors

namespace {

// An additive functor on projectives whose value on each P_l has at most
// one summand per degree and whose value on every nonzero map P_l -> P_l'
// is the identity scalar in each degree where both sides are nonzero.
struct UnitFunctor {
    int n;
    std::vector<ProjectiveComplex> image;  // index l (1-based)
};

UnitFunctor nu_functor(int n) {
    UnitFunctor g{n, {ProjectiveComplex(n)}};
    for (int l = 1; l <= n; ++l) {
        if (l == n)
            g.image.push_back(projective_stalk(n, 1, 0));
        else
            g.image.push_back(ProjectiveComplex(n, {{-1, {l + 1}}, {0, {1}}}, {{-1, Matrix{{1}}}}));
    }
    return g;
}

UnitFunctor nu_inverse_functor(int n) {
    UnitFunctor g{n, {ProjectiveComplex(n)}};
    for (int l = 1; l <= n; ++l) {
        if (l == 1)
            g.image.push_back(projective_stalk(n, n, 0));
        else
            g.image.push_back(ProjectiveComplex(n, {{0, {n}}, {1, {l - 1}}}, {{0, Matrix{{1}}}}));
    }
    return g;
}

struct Totalization {
    ProjectiveComplex complex;
    // index[(k, t, j)] = position inside Tot^{k+j}
    std::map<std::tuple<int, std::size_t, int>, std::size_t> index;
};

Totalization totalize(const UnitFunctor& g, const ProjectiveComplex& x) {
    Totalization out;
    std::map<int, std::vector<int>> labels;
    for (const auto& [k, l] : x.all_labels())
        for (std::size_t t = 0; t < l.size(); ++t)
            for (const auto& [j, gl] : g.image[l[t]].all_labels()) {
                out.index[{k, t, j}] = labels[k + j].size();
                labels[k + j].push_back(gl[0]);
            }
    std::map<int, Matrix> diffs;
    for (const auto& [m, l] : labels)
        if (labels.count(m + 1)) diffs[m] = Matrix(labels[m + 1].size(), l.size());
    for (const auto& [key, pos] : out.index) {
        const auto [k, t, j] = key;
        const ProjectiveComplex& gt = g.image[x.labels(k)[t]];
        // internal differential with sign (-1)^k
        if (!gt.labels(j + 1).empty()) {
            const Scalar c = gt.d(j)(0, 0);
            diffs[k + j](out.index.at({k, t, j + 1}), pos) += Scalar(sign(k)) * c;
        }
        // G(d_X)
        const Matrix dx = x.d(k);
        for (std::size_t s = 0; s < dx.rows(); ++s) {
            if (dx(s, t).is_zero()) continue;
            auto it = out.index.find({k + 1, s, j});
            if (it == out.index.end()) continue;
            diffs[k + j](it->second, pos) += dx(s, t);
        }
    }
    out.complex = ProjectiveComplex(x.n(), labels, diffs);
    return out;
}

ProjectiveMap totalize(const UnitFunctor& g, const ProjectiveMap& f) {
    Totalization tx = totalize(g, f.source);
    Totalization ty = totalize(g, f.target);
    const int p = f.degree();
    ChainMap m{tx.complex.scalar(), ty.complex.scalar(), p, {}};
    for (const auto& [key, pos] : tx.index) {
        const auto [k, t, j] = key;
        const Matrix b = f.map.at(k);
        for (std::size_t s = 0; s < b.rows(); ++s) {
            if (b(s, t).is_zero()) continue;
            auto it = ty.index.find({k + p, s, j});
            if (it == ty.index.end()) continue;
            auto bit = m.blocks.find(k + j);
            if (bit == m.blocks.end())
                bit = m.blocks.emplace(k + j, Matrix(ty.complex.labels(k + j + p).size(),
                                                     tx.complex.labels(k + j).size())).first;
            bit->second(it->second, pos) += b(s, t);
        }
    }
    return ProjectiveMap{tx.complex, ty.complex, m};
}

}  // namespace

ProjectiveComplex nakayama(const ProjectiveComplex& x) { return totalize(nu_functor(x.n()), x).complex; }
ProjectiveComplex nakayama_inverse(const ProjectiveComplex& x) {
    return totalize(nu_inverse_functor(x.n()), x).complex;
}
ProjectiveMap nakayama(const ProjectiveMap& f) {
    return totalize(nu_functor(std::max(f.source.n(), f.target.n())), f);
}
ProjectiveMap nakayama_inverse(const ProjectiveMap& f) {
    return totalize(nu_inverse_functor(std::max(f.source.n(), f.target.n())), f);
}
ProjectiveComplex ar_translate(const ProjectiveComplex& x) { return shift(nakayama(x), -1); }
ProjectiveComplex ar_translate_inverse(const ProjectiveComplex& x) { return shift(nakayama_inverse(x), 1); }

Json to_json(const ProjectiveComplex& x) {
    Json j;
    j["n"] = x.n();
    Json terms = Json::object(), diffs = Json::object();
    for (const auto& [i, l] : x.all_labels()) {
        terms[std::to_string(i)] = l;
        if (!x.labels(i + 1).empty()) diffs[std::to_string(i)] = to_json(x.d(i));
    }
    j["terms"] = terms;
    j["differentials"] = diffs;
    return j;
}

}  // namespace dext
