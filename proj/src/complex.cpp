#include "dext/complex.hpp"

#include <algorithm>
#include <set>

#include "dext/errors.hpp"

namespace dext {

namespace {

int sign(int k) { return (k % 2 == 0) ? 1 : -1; }

std::set<int> degrees_of(const CochainComplex& x) {
    std::set<int> s;
    for (int i : x.support()) s.insert(i);
    return s;
}

}  // namespace

CochainComplex::CochainComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> diffs) {
    for (auto [i, n] : dims)
        if (n > 0) dims_[i] = n;
    for (auto& [i, m] : diffs) {
        if (m.rows() != dim(i + 1) || m.cols() != dim(i))
            throw DimensionError("differential d^" + std::to_string(i) + " has shape " + std::to_string(m.rows()) +
                                 "x" + std::to_string(m.cols()) + ", expected " + std::to_string(dim(i + 1)) + "x" +
                                 std::to_string(dim(i)));
        if (!m.empty() && !m.is_zero()) diffs_[i] = std::move(m);
    }
    validate();
}

std::size_t CochainComplex::dim(int i) const {
    auto it = dims_.find(i);
    return it == dims_.end() ? 0 : it->second;
}

Matrix CochainComplex::d(int i) const {
    auto it = diffs_.find(i);
    return it == diffs_.end() ? Matrix(dim(i + 1), dim(i)) : it->second;
}

std::vector<int> CochainComplex::support() const {
    std::vector<int> s;
    for (auto [i, n] : dims_) s.push_back(i);
    return s;
}

int CochainComplex::min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }

int CochainComplex::max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

std::size_t CochainComplex::total_dim() const {
    std::size_t t = 0;
    for (auto [i, n] : dims_) t += n;
    return t;
}

void CochainComplex::validate() const {
    for (const auto& [i, m] : diffs_) {
        auto next = diffs_.find(i + 1);
        if (next == diffs_.end()) continue;
        if (!(next->second * m).is_zero()) throw NotClosed("d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " != 0");
    }
}

Matrix ChainMap::at(int i) const {
    auto it = blocks.find(i);
    if (it != blocks.end()) return it->second;
    return Matrix(target.dim(i + degree), source.dim(i));
}

bool ChainMap::is_closed() const {
    std::set<int> deg = degrees_of(source);
    for (int j : target.support()) deg.insert(j - degree);
    std::set<int> check;
    for (int i : deg) {
        check.insert(i);
        check.insert(i - 1);
    }
    for (int i : check) {
        // d_Y^{i+p} f^i  vs  (-1)^p f^{i+1} d_X^i
        Matrix lhs = target.d(i + degree) * at(i);
        Matrix rhs = at(i + 1) * source.d(i);
        if (lhs != Scalar(sign(degree)) * rhs) return false;
    }
    return true;
}

bool ChainMap::is_zero() const {
    for (const auto& [i, m] : blocks)
        if (!m.is_zero()) return false;
    return true;
}

ChainMap identity_map(const CochainComplex& x) {
    ChainMap f{x, x, 0, {}};
    for (int i : x.support()) f.blocks[i] = Matrix::identity(x.dim(i));
    return f;
}

ChainMap zero_map(const CochainComplex& x, const CochainComplex& y, int degree) { return ChainMap{x, y, degree, {}}; }

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap h{f.source, g.target, f.degree + g.degree, {}};
    for (int i : f.source.support()) {
        if (g.target.dim(i + h.degree) == 0) continue;
        Matrix m = g.at(i + f.degree) * f.at(i);
        if (!m.is_zero()) h.blocks[i] = std::move(m);
    }
    return h;
}

ChainMap operator+(const ChainMap& f, const ChainMap& g) {
    if (f.degree != g.degree) throw DimensionError("adding chain maps of different degree");
    ChainMap h{f.source, f.target, f.degree, {}};
    for (int i : f.source.support()) {
        Matrix m = f.at(i) + g.at(i);
        if (!m.is_zero()) h.blocks[i] = std::move(m);
    }
    return h;
}

ChainMap operator*(const Scalar& s, const ChainMap& f) {
    ChainMap h = f;
    for (auto& [i, m] : h.blocks) m = m * s;
    return h;
}

Cohomology cohomology(const CochainComplex& x, int i) {
    Cohomology h;
    const std::size_t n = x.dim(i);
    if (n == 0) {
        h.reps = Matrix(0, 0);
        h.projector = Matrix(0, 0);
        return h;
    }
    const Matrix z = kernel_basis(x.d(i));
    const Matrix b = column_space_basis(x.d(i - 1));
    // Extend a basis of the boundaries to a basis of the cocycles.
    std::vector<std::size_t> extra;
    for (auto c : independent_columns(hstack(b, z)))
        if (c >= b.cols()) extra.push_back(c - b.cols());
    h.reps = z.select_cols(extra);
    h.dim = extra.size();
    const Matrix l = left_inverse(hstack(b, h.reps));
    h.projector = l.block(b.cols(), 0, h.dim, n);
    return h;
}

std::map<int, std::size_t> cohomology_dims(const CochainComplex& x) {
    std::map<int, std::size_t> out;
    for (int i : x.support()) {
        std::size_t h = x.dim(i) - rank(x.d(i)) - rank(x.d(i - 1));
        if (h > 0) out[i] = h;
    }
    return out;
}

Matrix induced_map(const ChainMap& f, int i, const Cohomology& hx, const Cohomology& hy) {
    if (hx.dim == 0 || hy.dim == 0) return Matrix(hy.dim, hx.dim);
    return hy.projector * (f.at(i) * hx.reps);
}

Matrix induced_map(const ChainMap& f, int i) {
    return induced_map(f, i, cohomology(f.source, i), cohomology(f.target, i + f.degree));
}

CochainComplex shift(const CochainComplex& x, int k) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    for (int i : x.support()) {
        dims[i - k] = x.dim(i);
        Matrix m = x.d(i);
        if (x.dim(i + 1) > 0) diffs[i - k] = Scalar(sign(k)) * m;
    }
    return CochainComplex(dims, diffs);
}

ChainMap shift(const ChainMap& f, int k) {
    ChainMap g{shift(f.source, k), shift(f.target, k), f.degree, {}};
    const Scalar s(sign(f.degree * k));
    for (const auto& [i, m] : f.blocks) g.blocks[i - k] = s * m;
    return g;
}

CochainComplex cone(const ChainMap& f) {
    if (f.degree != 0) throw DimensionError("cone requires a degree-0 map");
    if (!f.is_closed()) throw NotClosed("cone of a non-closed map");
    const CochainComplex& x = f.source;
    const CochainComplex& y = f.target;
    std::set<int> deg;
    for (int i : x.support()) deg.insert(i - 1);
    for (int i : y.support()) deg.insert(i);
    std::map<int, std::size_t> dims;
    for (int i : deg) dims[i] = x.dim(i + 1) + y.dim(i);
    std::map<int, Matrix> diffs;
    for (int i : deg) {
        if (!deg.count(i + 1)) continue;
        const std::size_t xa = x.dim(i + 1), ya = y.dim(i), xb = x.dim(i + 2), yb = y.dim(i + 1);
        Matrix m(xb + yb, xa + ya);
        m.set_block(0, 0, -x.d(i + 1));
        m.set_block(xb, 0, f.at(i + 1));
        m.set_block(xb, xa, y.d(i));
        diffs[i] = std::move(m);
    }
    return CochainComplex(dims, diffs);
}

CochainComplex cocone(const ChainMap& f) { return shift(cone(f), -1); }

ChainMap cone_inclusion(const ChainMap& f) {
    CochainComplex c = cone(f);
    ChainMap g{f.target, c, 0, {}};
    for (int i : f.target.support()) {
        Matrix m(c.dim(i), f.target.dim(i));
        m.set_block(f.source.dim(i + 1), 0, Matrix::identity(f.target.dim(i)));
        g.blocks[i] = std::move(m);
    }
    return g;
}

ChainMap cone_projection(const ChainMap& f) {
    CochainComplex c = cone(f);
    ChainMap g{c, shift(f.source, 1), 0, {}};
    for (int i : c.support()) {
        const std::size_t xa = f.source.dim(i + 1);
        if (xa == 0) continue;
        Matrix m(xa, c.dim(i));
        m.set_block(0, 0, Matrix::identity(xa));
        g.blocks[i] = std::move(m);
    }
    return g;
}

Truncation tau_le(const CochainComplex& x, int m) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    const Matrix k = kernel_basis(x.d(m));
    for (int i : x.support())
        if (i < m) dims[i] = x.dim(i);
    dims[m] = k.cols();
    for (int i : x.support())
        if (i < m - 1) diffs[i] = x.d(i);
    if (k.cols() > 0 && x.dim(m - 1) > 0) diffs[m - 1] = left_inverse(k) * x.d(m - 1);
    CochainComplex t(dims, diffs);
    ChainMap inc{t, x, 0, {}};
    for (int i : t.support()) inc.blocks[i] = (i == m) ? k : Matrix::identity(x.dim(i));
    return {t, inc};
}

Truncation tau_gt(const CochainComplex& x, int m) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix> diffs;
    const std::size_t n = x.dim(m + 1);
    const Matrix b = column_space_basis(x.d(m));
    const Matrix c = complement_columns(b);
    Matrix q(c.cols(), n);
    if (n > 0) {
        const Matrix inv = inverse(hstack(b, c));
        q = inv.block(b.cols(), 0, c.cols(), n);
    }
    for (int i : x.support())
        if (i > m + 1) dims[i] = x.dim(i);
    dims[m + 1] = c.cols();
    for (int i : x.support())
        if (i > m + 1) diffs[i] = x.d(i);
    if (c.cols() > 0 && x.dim(m + 2) > 0) diffs[m + 1] = x.d(m + 1) * c;
    CochainComplex t(dims, diffs);
    ChainMap proj{x, t, 0, {}};
    for (int i : t.support()) proj.blocks[i] = (i == m + 1) ? q : Matrix::identity(x.dim(i));
    return {t, proj};
}

namespace {

// Source degrees contributing to Hom^p(X, Y), ascending.
std::vector<int> hom_blocks(const CochainComplex& x, const CochainComplex& y, int p) {
    std::vector<int> out;
    for (int i : x.support())
        if (y.dim(i + p) > 0) out.push_back(i);
    return out;
}

}  // namespace

ChainMap HomComplex::to_map(int p, const Matrix& coords) const {
    ChainMap f{source, target, p, {}};
    std::size_t off = 0;
    for (int i : hom_blocks(source, target, p)) {
        const std::size_t r = target.dim(i + p), c = source.dim(i);
        Matrix m(r, c);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b) m(a, b) = coords(off + a * c + b, 0);
        off += r * c;
        if (!m.is_zero()) f.blocks[i] = std::move(m);
    }
    return f;
}

Matrix HomComplex::to_coords(const ChainMap& f) const {
    Matrix v(complex.dim(f.degree), 1);
    std::size_t off = 0;
    for (int i : hom_blocks(source, target, f.degree)) {
        const Matrix m = f.at(i);
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) v(off + a * m.cols() + b, 0) = m(a, b);
        off += m.rows() * m.cols();
    }
    return v;
}

HomComplex hom_complex(const CochainComplex& x, const CochainComplex& y) {
    std::set<int> degrees;
    for (int i : x.support())
        for (int j : y.support()) degrees.insert(j - i);
    std::map<int, std::size_t> dims;
    for (int p : degrees)
        for (int i : hom_blocks(x, y, p)) dims[p] += y.dim(i + p) * x.dim(i);
    HomComplex h{x, y, {}};
    h.complex = CochainComplex(dims, {});
    std::map<int, Matrix> diffs;
    for (int p : degrees) {
        if (!dims.count(p + 1)) continue;
        Matrix dm(dims[p + 1], dims[p]);
        for (std::size_t k = 0; k < dims[p]; ++k) {
            Matrix e(dims[p], 1);
            e(k, 0) = Scalar(1);
            const ChainMap f = h.to_map(p, e);
            ChainMap df{x, y, p + 1, {}};
            for (int i : hom_blocks(x, y, p + 1)) {
                Matrix m = y.d(i + p) * f.at(i) - Scalar(sign(p)) * (f.at(i + 1) * x.d(i));
                if (!m.is_zero()) df.blocks[i] = std::move(m);
            }
            dm.set_block(0, k, h.to_coords(df));
        }
        diffs[p] = std::move(dm);
    }
    h.complex = CochainComplex(dims, diffs);
    return h;
}

bool is_quasi_iso(const ChainMap& f, int lo, int hi) {
    if (f.degree != 0) throw DimensionError("quasi-isomorphism test needs a degree-0 map");
    for (int i = lo; i <= hi; ++i) {
        const Cohomology hx = cohomology(f.source, i);
        const Cohomology hy = cohomology(f.target, i);
        if (hx.dim != hy.dim) return false;
        if (hx.dim == 0) continue;
        if (rank(induced_map(f, i, hx, hy)) != hx.dim) return false;
    }
    return true;
}

bool is_quasi_iso(const ChainMap& f) {
    if (f.source.is_zero() && f.target.is_zero()) return true;
    int lo = std::min(f.source.is_zero() ? f.target.min_degree() : f.source.min_degree(),
                      f.target.is_zero() ? f.source.min_degree() : f.target.min_degree());
    int hi = std::max(f.source.is_zero() ? f.target.max_degree() : f.source.max_degree(),
                      f.target.is_zero() ? f.source.max_degree() : f.target.max_degree());
    return is_quasi_iso(f, lo, hi);
}

}  // namespace dext
