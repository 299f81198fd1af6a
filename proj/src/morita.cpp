#include "dext/morita.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dext/errors.hpp"

namespace dext {

// ---- algebra isomorphism ------------------------------------------------------

namespace {

std::vector<std::string> split_path(const std::string& label) {
    std::vector<std::string> out;
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, '*')) out.push_back(part);
    return out;
}

Matrix unit(std::size_t n, std::size_t j) {
    Matrix m(n, 1);
    m(j, 0) = Scalar(1);
    return m;
}

Matrix sparse_column(std::size_t n, const FinDimGradedAlgebra::SparseVec& v) {
    Matrix m(n, 1);
    for (const auto& [k, c] : v) m(k, 0) += c;
    return m;
}

// Complement of rad^2 inside the (source, target, degree) radical block.
std::vector<Matrix> arrow_space(const FinDimGradedAlgebra& a, int s, int t, int degree) {
    const std::size_t n = a.dim();
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& e = a.element(j);
        if (e.source == s && e.target == t && e.degree == degree && j != a.idempotent(static_cast<std::size_t>(s)))
            block.push_back(j);
    }
    std::vector<std::size_t> rad;
    for (std::size_t j = 0; j < n; ++j) {
        bool idem = false;
        for (std::size_t v = 0; v < a.num_vertices(); ++v) idem = idem || a.idempotent(v) == j;
        if (!idem) rad.push_back(j);
    }
    Matrix sq(n, 0);
    for (std::size_t i : rad)
        for (std::size_t j : rad) {
            const Matrix c = sparse_column(n, a.product(i, j));
            if (!c.is_zero()) sq = hstack(sq, c);
        }
    std::vector<Matrix> out;
    Matrix span = sq;
    std::size_t r = rank(span);
    for (std::size_t j : block) {
        Matrix cand = hstack(span, unit(n, j));
        const std::size_t rc = rank(cand);
        if (rc == r) continue;
        span = cand;
        r = rc;
        out.push_back(unit(n, j));
    }
    return out;
}

}  // namespace

std::optional<AlgebraIsomorphism> find_algebra_isomorphism(const GradedQuiverPresentation& p,
                                                           const FinDimGradedAlgebra& target) {
    const std::size_t nv = p.vertices.size();
    if (nv != target.num_vertices()) return std::nullopt;
    const FinDimGradedAlgebra src = enumerate_basis(p, static_cast<int>(target.dim()) + 2);
    if (src.dim() != target.dim() || src.graded_dims() != target.graded_dims()) return std::nullopt;
    std::map<std::string, std::size_t> vertex_of;
    for (std::size_t i = 0; i < nv; ++i) vertex_of[p.vertices[i]] = i;
    std::vector<int> sigma(nv);
    std::iota(sigma.begin(), sigma.end(), 0);
    const std::size_t n = target.dim();
    do {
        // Arrow images: arrows sharing (source, target, degree) take the
        // complement basis in order.
        std::map<std::tuple<int, int, int>, std::vector<Matrix>> spaces;
        std::map<std::tuple<int, int, int>, std::size_t> used;
        std::map<std::string, Matrix> image;
        std::vector<std::string> labels;
        bool ok = true;
        for (const auto& ar : p.arrows) {
            const int s = sigma[vertex_of.at(ar.source)], t = sigma[vertex_of.at(ar.target)];
            const auto key = std::make_tuple(s, t, ar.degree);
            if (!spaces.count(key)) spaces[key] = arrow_space(target, s, t, ar.degree);
            const auto& sp = spaces[key];
            std::size_t& k = used[key];
            if (k >= sp.size()) {
                ok = false;
                break;
            }
            image[ar.name] = sp[k];
            for (std::size_t j = 0; j < n; ++j)
                if (!sp[k](j, 0).is_zero()) labels.push_back(target.element(j).label);
            ++k;
        }
        if (!ok) continue;
        for (const auto& [key, sp] : spaces)
            if (used[key] != sp.size()) ok = false;
        if (!ok) continue;
        Matrix phi(n, src.dim());
        for (std::size_t b = 0; b < src.dim(); ++b) {
            const auto& e = src.element(b);
            bool idem = false;
            for (std::size_t v = 0; v < nv; ++v)
                if (src.idempotent(v) == b) {
                    phi.set_block(0, b, unit(n, target.idempotent(static_cast<std::size_t>(sigma[v]))));
                    idem = true;
                }
            if (idem) continue;
            const auto letters = split_path(e.label);
            Matrix x = image.at(letters.back());
            for (std::size_t l = letters.size() - 1; l-- > 0;) x = target.multiply(image.at(letters[l]), x);
            phi.set_block(0, b, x);
        }
        if (rank(phi) != n) continue;
        for (std::size_t i = 0; i < src.dim() && ok; ++i)
            for (std::size_t j = 0; j < src.dim() && ok; ++j) {
                const Matrix lhs = phi * sparse_column(src.dim(), src.product(i, j));
                const Matrix rhs = target.multiply(phi.col(i), phi.col(j));
                ok = lhs == rhs;
            }
        for (std::size_t b = 0; b < src.dim() && ok; ++b)
            for (std::size_t r = 0; r < n && ok; ++r)
                if (!phi(r, b).is_zero())
                    ok = target.element(r).degree == src.element(b).degree &&
                         target.element(r).source == sigma[static_cast<std::size_t>(src.element(b).source)] &&
                         target.element(r).target == sigma[static_cast<std::size_t>(src.element(b).target)];
        if (!ok) continue;
        return AlgebraIsomorphism{sigma, labels, phi};
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

// ---- derived hom calculus --------------------------------------------------------

DerivedHomCalculus::DerivedHomCalculus(const DemCategory& c, std::vector<DGModule> objects)
    : c_(&c), objects_(std::move(objects)) {
    const int d = c.d();
    for (const auto& x : objects_) {
        if (!x.in_dem(d)) throw DimensionError("derived hom calculus needs objects of dem");
        res_.push_back(c.resolve(x, d + 3));
        sub_.push_back(res_.back().p.generators_from(-d - 1));
    }
    h0_.resize(objects_.size());
    for (std::size_t i = 0; i < objects_.size(); ++i)
        for (std::size_t j = 0; j < objects_.size(); ++j)
            h0_[i].push_back(SemiFreeHom(sub_[i], objects_[j]).cohomology(0));
}

std::map<int, std::size_t> DerivedHomCalculus::dims(std::size_t i, std::size_t j) const {
    SemiFreeHom h(res_[i].p, objects_[j]);
    std::map<int, std::size_t> out;
    for (int p = -c_->d() + 1; p <= 0; ++p) out[p] = h.cohomology(p).dim;
    return out;
}

const std::vector<Matrix>& DerivedHomCalculus::lifts(std::size_t i, std::size_t j) const {
    const auto key = std::make_pair(i, j);
    auto it = lifts_.find(key);
    if (it != lifts_.end()) return it->second;
    const Cohomology& h = h0_[i][j];
    std::vector<Matrix> out;
    if (h.dim > 0) {
        const SemiFreeHom to_p(sub_[i], res_[j].p.module());
        const SemiFreeHom to_x(sub_[i], objects_[j]);
        const std::size_t nu = to_p.dim(0), nh = to_x.dim(-1), nf = to_x.dim(0), nc = to_p.dim(1);
        // [ D_P      0     ] [u]   [0]
        // [ phi_*   -D_X   ] [h] = [f]
        Matrix a(nc + nf, nu + nh);
        if (nc > 0 && nu > 0) a.set_block(0, 0, to_p.differential(0));
        for (std::size_t t = 0; t < nu; ++t) {
            const ModuleMap u = to_p.to_map(0, unit(nu, t));
            a.set_block(nc, t, to_x.to_coords(dext::compose(res_[j].comparison, u)));
        }
        if (nh > 0 && nf > 0) a.set_block(nc, nu, -to_x.differential(-1));
        for (std::size_t b = 0; b < h.dim; ++b) {
            Matrix rhs(nc + nf, 1);
            rhs.set_block(nc, 0, h.reps.col(b));
            const auto sol = solve(a, rhs);
            if (!sol) throw InvariantViolation("a derived morphism does not lift through the resolution");
            out.push_back(to_p.to_map(0, sol->block(0, 0, nu, 1)).matrix);
        }
    }
    return lifts_.emplace(key, std::move(out)).first->second;
}

Matrix DerivedHomCalculus::compose(std::size_t i, std::size_t j, std::size_t k, const Matrix& g,
                                   const Matrix& f) const {
    const auto& l = lifts(i, j);
    Matrix lifted(res_[j].p.module().dim(), sub_[i].module().dim());
    for (std::size_t b = 0; b < l.size(); ++b)
        if (!f(b, 0).is_zero()) lifted += l[b] * f(b, 0);
    const Cohomology& hjk = h0_[j][k];
    if (hjk.dim == 0) return Matrix(h0_[i][k].dim, 1);
    const ModuleMap gmap = SemiFreeHom(res_[j].p, objects_[k]).to_map(0, hjk.reps * g);
    const ModuleMap comp{sub_[i].module(), objects_[k], 0, gmap.matrix * lifted};
    return h0_[i][k].projector * SemiFreeHom(sub_[i], objects_[k]).to_coords(comp);
}

Matrix DerivedHomCalculus::identity(std::size_t i) const {
    const Matrix full = SemiFreeHom(res_[i].p, objects_[i]).to_coords(res_[i].comparison);
    return h0_[i][i].projector * full;
}

Scalar DerivedHomCalculus::trace(std::size_t i, const Matrix& f) const {
    const SemiFreeHom h(sub_[i], objects_[i]);
    const ChainMap fm = h.to_map(0, h0_[i][i].reps * f).chain_map();
    const ChainMap id = h.to_map(0, h0_[i][i].reps * identity(i)).chain_map();
    Scalar t(0);
    for (int p = -c_->d() + 1; p <= 0; ++p) {
        const Cohomology hx = dext::cohomology(fm.source, p);
        const Cohomology hy = dext::cohomology(fm.target, p);
        if (hy.dim == 0) continue;
        const Matrix a = induced_map(fm, p, hx, hy);
        const Matrix b = induced_map(id, p, hx, hy);
        const Matrix m = a * inverse(b);
        for (std::size_t r = 0; r < m.rows(); ++r) t += m(r, r);
    }
    return t;
}

Scalar DerivedHomCalculus::scalar_part(std::size_t i, const Matrix& f) const {
    const SemiFreeHom h(sub_[i], objects_[i]);
    const ChainMap fm = h.to_map(0, h0_[i][i].reps * f).chain_map();
    const ChainMap id = h.to_map(0, h0_[i][i].reps * identity(i)).chain_map();
    const DGModule& x = objects_[i];
    for (int p = -c_->d() + 1; p <= 0; ++p) {
        const Cohomology hx = dext::cohomology(fm.source, p);
        const Cohomology hy = dext::cohomology(fm.target, p);
        if (hy.dim == 0) continue;
        const Matrix m = induced_map(fm, p, hx, hy) * inverse(induced_map(id, p, hx, hy));
        const auto idx = x.indices(p);
        for (std::size_t v = 0; v < x.algebra().num_vertices(); ++v) {
            // e_v acts on X^p as the coordinate projection onto vertex v.
            Matrix ev(idx.size(), idx.size());
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (x.vertex(idx[k]) == static_cast<int>(v)) ev(k, k) = Scalar(1);
            const Matrix e = hy.projector * ev * hy.reps;
            const Scalar r(static_cast<long long>(rank(e)));
            if (r.is_zero()) continue;
            const Matrix em = e * m;
            Scalar t(0);
            for (std::size_t k = 0; k < em.rows(); ++k) t += em(k, k);
            return t / r;
        }
    }
    throw DimensionError("no cohomology block of invertible dimension in the field");
}

Matrix DerivedHomCalculus::radical(std::size_t i, std::size_t j) const {
    const std::size_t n = h0_[i][j].dim;
    if (i != j) return Matrix::identity(n);
    Matrix tr(1, n);
    for (std::size_t b = 0; b < n; ++b) tr(0, b) = scalar_part(i, unit(n, b));
    return kernel_basis(tr);
}

bool DerivedHomCalculus::local_endomorphisms(std::size_t i) const {
    const std::size_t n = h0_[i][i].dim;
    if (n == 0 || scalar_part(i, identity(i)).is_zero()) return false;
    const Matrix rad = radical(i, i);
    if (rad.cols() + 1 != n) return false;
    // Two-sided ideal.
    for (std::size_t r = 0; r < rad.cols(); ++r)
        for (std::size_t b = 0; b < n; ++b) {
            if (!scalar_part(i, compose(i, i, i, rad.col(r), unit(n, b))).is_zero()) return false;
            if (!scalar_part(i, compose(i, i, i, unit(n, b), rad.col(r))).is_zero()) return false;
        }
    // Nilpotent.
    Matrix power = rad;
    for (std::size_t step = 0; step <= n && power.cols() > 0; ++step) {
        std::vector<Matrix> next;
        for (std::size_t r = 0; r < rad.cols(); ++r)
            for (std::size_t q = 0; q < power.cols(); ++q) next.push_back(compose(i, i, i, rad.col(r), power.col(q)));
        const Matrix span = hstack(next, n);
        power = span.cols() == 0 ? Matrix(n, 0) : column_space_basis(span);
    }
    return power.cols() == 0;
}

bool DerivedHomCalculus::isomorphic(std::size_t i, std::size_t j) const {
    if (i == j) return true;
    const std::size_t a = h0_[i][j].dim, b = h0_[j][i].dim;
    for (std::size_t x = 0; x < a; ++x)
        for (std::size_t y = 0; y < b; ++y)
            if (!scalar_part(i, compose(i, j, i, unit(b, y), unit(a, x))).is_zero()) return true;
    return false;
}

QuiverGraph DerivedHomCalculus::ar_quiver(const std::vector<std::string>& names) const {
    QuiverGraph g;
    g.vertices = names;
    const std::size_t n = objects_.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Matrix rad = radical(x, y);
            if (rad.cols() == 0) continue;
            std::vector<Matrix> cols;
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix r1 = radical(x, z), r2 = radical(z, y);
                for (std::size_t a = 0; a < r1.cols(); ++a)
                    for (std::size_t b = 0; b < r2.cols(); ++b) cols.push_back(compose(x, z, y, r2.col(b), r1.col(a)));
            }
            const std::size_t r2 = rank(hstack(cols, h0_[x][y].dim));
            if (rad.cols() > r2) g.arrows[{x, y}] = rad.cols() - r2;
        }
    return g;
}

// ---- the context ----------------------------------------------------------------

AlgebraPtr MoritaContext::build_lambda(const QuotientCategory& q, std::vector<ClusterMorphism>& elements) {
    const ClusterCategory& c = q.base();
    const int d = c.d();
    const auto& m = q.m();
    const std::size_t k = m.size();
    std::vector<std::string> vertices;
    for (std::size_t v = 0; v < k; ++v) vertices.push_back(std::to_string(v + 1));
    std::vector<BasisElement> basis;
    std::vector<std::size_t> idem(k);
    // Block (u, v, a): basis morphisms M_u -> M_v[-a] and the change of
    // coordinates from hom_basis.
    std::map<std::tuple<std::size_t, std::size_t, int>, std::pair<std::vector<std::size_t>, Matrix>> blocks;
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            for (int a = 0; a < d; ++a) {
                std::vector<ClusterMorphism> mors;
                Matrix coords;
                if (a == 0 && u == v) {
                    const Matrix rad = c.radical(m[u], m[u]);
                    coords = hstack(c.coords(c.identity(m[u])), rad);
                    for (std::size_t j = 0; j < coords.cols(); ++j)
                        mors.push_back(c.from_coords(m[u], m[u], 0, coords.col(j)));
                } else {
                    mors = c.hom_basis(m[u], m[v], -a);
                    coords = Matrix::identity(mors.size());
                }
                if (rank(coords) != coords.cols() || coords.rows() != coords.cols())
                    throw InvariantViolation("endomorphism block basis is not a basis");
                std::vector<std::size_t> idx;
                for (std::size_t j = 0; j < mors.size(); ++j) {
                    idx.push_back(basis.size());
                    std::string label;
                    if (a == 0 && u == v && j == 0) {
                        label = "e" + vertices[u];
                        idem[u] = basis.size();
                    } else {
                        label = "m" + vertices[u] + vertices[v] + "_" + std::to_string(a) + "_" + std::to_string(j);
                    }
                    basis.push_back({label, static_cast<int>(u), static_cast<int>(v), -a});
                    elements.push_back(mors[j]);
                }
                if (!mors.empty()) blocks[{u, v, a}] = {idx, inverse(coords)};
            }
    FinDimGradedAlgebra lam(vertices, basis, idem);
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& bi = basis[i];
            const auto& bj = basis[j];
            if (bi.source != bj.target) continue;
            const int a = -(bi.degree + bj.degree);
            if (a >= d) continue;  // truncated away
            const auto it = blocks.find({static_cast<std::size_t>(bj.source), static_cast<std::size_t>(bi.target), a});
            const ClusterMorphism prod = c.compose(elements[i], elements[j]);
            if (it == blocks.end()) {
                if (!prod.is_zero() && !c.coords(prod).is_zero())
                    throw InvariantViolation("composite lands in an empty hom block");
                continue;
            }
            const Matrix x = it->second.second * c.coords(prod);
            FinDimGradedAlgebra::SparseVec sv;
            for (std::size_t t = 0; t < x.rows(); ++t)
                if (!x(t, 0).is_zero()) sv.push_back({it->second.first[t], x(t, 0)});
            if (!sv.empty()) lam.set_product(i, j, sv);
        }
    lam.set_differential(Matrix(n, n));
    const ValidationReport rep = validate(lam);
    if (!rep.ok()) throw InvariantViolation("extracted algebra fails validation: " + rep.failures.front());
    return std::make_shared<const FinDimGradedAlgebra>(std::move(lam));
}

MoritaContext::MoritaContext(const QuotientCategory& q)
    : q_(&q), lambda_(build_lambda(q, elements_)), dem_(lambda_, q.d()) {}

std::vector<ClusterMorphism> MoritaContext::component_basis(ObjectId x, std::size_t v, int j) const {
    return base().hom_basis(q_->m()[v], x, d() - j);
}

DGModule MoritaContext::transport(ObjectId x) const {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const ClusterCategory& c = base();
    const std::size_t k = q_->m().size();
    const int d = this->d();
    std::map<std::pair<std::size_t, int>, std::size_t> offset;
    std::vector<int> deg, vert;
    std::vector<ClusterMorphism> elems;
    for (std::size_t v = 0; v < k; ++v)
        for (int j = 0; j < d; ++j) {
            offset[{v, j}] = deg.size();
            for (const auto& f : component_basis(x, v, j)) {
                deg.push_back(-j);
                vert.push_back(static_cast<int>(v));
                elems.push_back(f);
            }
        }
    const std::size_t n = deg.size();
    std::vector<Matrix> act(lambda_->dim(), Matrix(n, n));
    for (std::size_t l = 0; l < lambda_->dim(); ++l) {
        const BasisElement& e = lambda_->element(l);
        for (std::size_t s = 0; s < n; ++s) {
            if (vert[s] != e.target) continue;
            const int j = -deg[s] - e.degree;  // degree -j of phi * lambda
            if (j >= d) continue;
            const ClusterMorphism prod = c.compose(elems[s], elements_[l]);
            const Matrix x = c.coords(prod);
            const std::size_t off = offset.at({static_cast<std::size_t>(e.source), j});
            for (std::size_t t = 0; t < x.rows(); ++t) act[l](off + t, s) = x(t, 0);
        }
    }
    DGModule m(lambda_, deg, vert, Matrix(n, n), act);
    return cache_.emplace(x, std::move(m)).first->second;
}

ModuleMap MoritaContext::transport(const ClusterMorphism& f) const {
    if (f.degree != 0) throw DimensionError("transport of a morphism needs degree 0");
    const ClusterCategory& c = base();
    const DGModule fx = transport(f.source), fy = transport(f.target);
    const std::size_t k = q_->m().size();
    Matrix mat(fy.dim(), fx.dim());
    std::size_t col = 0, row = 0;
    for (std::size_t v = 0; v < k; ++v)
        for (int j = 0; j < d(); ++j) {
            const auto src = component_basis(f.source, v, j);
            const std::size_t tgt = c.hom_dim(q_->m()[v], f.target, d() - j);
            for (std::size_t s = 0; s < src.size(); ++s) {
                const Matrix x = c.coords(c.compose(f, src[s]));
                for (std::size_t t = 0; t < x.rows(); ++t) mat(row + t, col + s) = x(t, 0);
            }
            col += src.size();
            row += tgt;
        }
    return {fx, fy, 0, mat};
}

Json MoritaContext::lambda_json() const {
    const ClusterCategory& c = base();
    Json objs = Json::array();
    for (ObjectId x : q_->m()) objs.push_back(c.name(x));
    Json dims = Json::object();
    for (const auto& [deg, n] : lambda_->graded_dims()) dims[std::to_string(deg)] = n;
    return Json{{"d", d()},
                {"summands", objs},
                {"graded_dims", dims},
                {"zero_differential", lambda_->has_zero_differential()},
                {"algebra", lambda_->to_json()}};
}

// ---- verification ------------------------------------------------------------------

Json VerificationReport::to_json() const {
    Json arr = Json::array();
    for (const auto& p : pairs) {
        Json q = Json::object(), l = Json::object();
        for (const auto& [i, n] : p.quotient_dims) q[std::to_string(i)] = n;
        for (const auto& [i, n] : p.lambda_dims) l[std::to_string(i)] = n;
        arr.push_back({{"source", p.source}, {"target", p.target}, {"quotient", q}, {"lambda", l}, {"agree", p.agree()}});
    }
    return Json{{"pairs", arr},
                {"hom_dims_agree", hom_dims_agree},
                {"images_indecomposable", images_indecomposable},
                {"images_pairwise_nonisomorphic", images_pairwise_nonisomorphic},
                {"add_m_killed", add_m_killed},
                {"functorial", functorial},
                {"functoriality_samples", functoriality_samples},
                {"projectives_match", projectives_match},
                {"injectives_match", injectives_match},
                {"ar_quiver_matches", ar_quiver_matches},
                {"round_trip", round_trip},
                {"failures", failures},
                {"ok", ok()}};
}

VerificationReport verify_equivalence(const MoritaContext& ctx) {
    VerificationReport rep;
    const QuotientCategory& q = ctx.quotient();
    const ClusterCategory& c = ctx.base();
    const DemCategory& dem = ctx.dem();
    const int d = ctx.d();
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        rep.failures.push_back(msg);
    };

    for (ObjectId x : q.m())
        if (ctx.transport(x).dim() != 0) fail(rep.add_m_killed, "F(" + c.name(x) + ") != 0");

    const auto& surv = q.surviving();
    std::vector<DGModule> images;
    std::vector<std::string> names;
    for (ObjectId x : surv) {
        images.push_back(ctx.transport(x));
        names.push_back(c.name(x));
    }
    const DerivedHomCalculus calc(dem, images);

    for (std::size_t i = 0; i < surv.size(); ++i)
        for (std::size_t j = 0; j < surv.size(); ++j) {
            BridgePair p{names[i], names[j], {}, calc.dims(i, j)};
            for (int k = -d + 1; k <= 0; ++k) p.quotient_dims[k] = q.quotient_hom(surv[i], surv[j], k);
            if (!p.agree()) fail(rep.hom_dims_agree, "hom dims differ for " + names[i] + " -> " + names[j]);
            rep.pairs.push_back(p);
        }

    for (std::size_t i = 0; i < surv.size(); ++i) {
        if (!calc.local_endomorphisms(i)) fail(rep.images_indecomposable, "F(" + names[i] + ") is not indecomposable");
        for (std::size_t j = i + 1; j < surv.size(); ++j)
            if (calc.isomorphic(i, j))
                fail(rep.images_pairwise_nonisomorphic, "F(" + names[i] + ") ~ F(" + names[j] + ")");
    }

    // Functoriality on basis morphisms X -> Y -> Z over all objects.
    for (ObjectId x = 0; x < c.size(); ++x)
        for (ObjectId y = 0; y < c.size(); ++y) {
            const auto fs = c.hom_basis(x, y, 0);
            if (fs.empty()) continue;
            for (ObjectId z = 0; z < c.size(); ++z) {
                const auto gs = c.hom_basis(y, z, 0);
                for (const auto& f : fs)
                    for (const auto& g : gs) {
                        const ModuleMap ff = ctx.transport(f), fg = ctx.transport(g);
                        const ModuleMap fgf = ctx.transport(c.compose(g, f));
                        ++rep.functoriality_samples;
                        if (!ff.is_linear() || fgf.matrix != fg.matrix * ff.matrix)
                            fail(rep.functorial, "F(g o f) != F(g) F(f) for " + c.name(x) + " -> " + c.name(y) +
                                                     " -> " + c.name(z));
                    }
            }
        }

    const auto& m = q.m();
    std::vector<DGModule> inj;
    for (std::size_t v = 0; v < m.size(); ++v) {
        const DGModule pv = ctx.transport(c.shift_object(m[v], -d));
        if (!dem.is_quasi_isomorphic(pv, dem.free(static_cast<int>(v))))
            fail(rep.projectives_match, "F(" + c.name(m[v]) + "[-d]) is not e_" + std::to_string(v + 1) + " Lambda");
        inj.push_back(ctx.transport(c.shift_object(m[v], d)));
    }
    const DGModule dl = shift(dual_regular(ctx.lambda()), d - 1);
    if (!dem.is_quasi_isomorphic(direct_sum(inj), dl)) fail(rep.injectives_match, "(+) F(M_v[d]) is not D(Lambda)[d-1]");

    const QuiverGraph lam_ar = calc.ar_quiver(names);
    if (lam_ar.arrows != q.quotient_ar_quiver().arrows)
        fail(rep.ar_quiver_matches, "Lambda-side AR quiver differs from the quotient AR quiver");

    for (std::size_t i = 0; i < surv.size(); ++i) {
        const ProjectivePresentation pr = dem.projective_presentation(images[i]);
        const IteratedResult cok = dem.iterated_cokernel(pr.band);
        if (!cok.agree || !dem.is_quasi_isomorphic(cok.direct, images[i]))
            fail(rep.round_trip, "presentation round trip fails for " + names[i]);
    }
    return rep;
}

SurjectivityReport essential_surjectivity(const MoritaContext& ctx, int bound) {
    SurjectivityReport rep;
    const auto found = enumerate_indecomposables(ctx.lambda(), ctx.d(), bound);
    rep.found = found.size();
    const auto& surv = ctx.quotient().surviving();
    for (const auto& m : found) {
        std::string match;
        for (ObjectId x : surv) {
            const DGModule fx = ctx.transport(x);
            if (fx.dim() == m.dim() && graded_isomorphic(m, fx)) {
                match = ctx.base().name(x);
                break;
            }
        }
        if (!match.empty()) ++rep.matched;
        rep.matches.push_back(match);
    }
    return rep;
}

}  // namespace dext
