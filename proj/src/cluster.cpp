#include "dext/cluster.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "dext/errors.hpp"

namespace dext {

namespace {

Matrix unit(std::size_t n, std::size_t j) {
    Matrix v(n, 1);
    v(j, 0) = Scalar(1);
    return v;
}

int s_min(const std::vector<StalkKey>& ks) {
    int s = ks.front().s;
    for (const auto& k : ks) s = std::min(s, k.s);
    return s;
}

int s_max(const std::vector<StalkKey>& ks) {
    int s = ks.front().s;
    for (const auto& k : ks) s = std::max(s, k.s);
    return s;
}

}  // namespace

bool ClusterMorphism::is_zero() const {
    for (const auto& [m, v] : components)
        if (!v.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// QuiverGraph

Json QuiverGraph::to_json() const {
    std::vector<std::pair<std::string, std::string>> arr, tw;
    for (const auto& [e, mult] : arrows)
        for (std::size_t i = 0; i < mult; ++i) arr.push_back({vertices[e.first], vertices[e.second]});
    for (const auto& [x, t] : tau) tw.push_back({vertices[x], vertices[t]});
    std::sort(arr.begin(), arr.end());
    std::sort(tw.begin(), tw.end());
    std::vector<std::string> vs = vertices;
    std::sort(vs.begin(), vs.end());
    Json j;
    j["arrows"] = Json::array();
    for (const auto& [a, b] : arr) j["arrows"].push_back({a, b});
    j["tau"] = Json::array();
    for (const auto& [a, b] : tw) j["tau"].push_back({a, b});
    j["vertices"] = vs;
    return j;
}

std::string QuiverGraph::to_dot(const std::string& name) const {
    Json j = to_json();
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (const auto& v : j["vertices"]) os << "  \"" << v.get<std::string>() << "\";\n";
    for (const auto& e : j["arrows"])
        os << "  \"" << e[0].get<std::string>() << "\" -> \"" << e[1].get<std::string>() << "\";\n";
    for (const auto& e : j["tau"])
        os << "  \"" << e[0].get<std::string>() << "\" -> \"" << e[1].get<std::string>()
           << "\" [style=dashed, constraint=false];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Construction and object-level operations

ClusterCategory::ClusterCategory(int n, int d, int scan_cap) : n_(n), d_(d), cap_(scan_cap) {
    if (n < 1 || d < 1) throw DimensionError("cluster category needs n >= 1 and d >= 1");
    std::vector<StalkKey> domain;
    for (int s = 0; s < d; ++s)
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) domain.push_back({a, b, s});
    for (int a = 1; a <= n; ++a) domain.push_back({a, n, d});
    keys_ = domain;
    for (ObjectId i = 0; i < keys_.size(); ++i) index_[keys_[i]] = i;

    // Name by walking tau^{-1} from the projectives: P(0,k) = P_{n+1-k}.
    // When a tau-orbit contains several projectives (this happens for d = 1)
    // the orbit keeps the row of its first projective and later rows are
    // skipped, so row numbers need not be contiguous.
    std::map<StalkKey, std::pair<int, int>> jk;
    for (int k = 1; k <= n; ++k) {
        const StalkKey start{n + 1 - k, n, 0};
        if (jk.count(start)) continue;
        StalkKey cur = start;
        for (int j = 0;; ++j) {
            if (j > static_cast<int>(keys_.size())) throw ScanWindowExceeded("tau-orbit does not close");
            if (j > 0 && cur == start) break;
            if (jk.count(cur)) throw InvariantViolation("tau-orbit of " + start.str() + " is not periodic");
            jk[cur] = {j, k};
            cur = keys_[tau_inverse_object(index_.at(cur))];
        }
    }
    if (jk.size() != keys_.size()) throw InvariantViolation("tau^{-1}-walk from the projectives misses objects");
    std::sort(keys_.begin(), keys_.end(),
              [&](const StalkKey& x, const StalkKey& y) { return jk.at(x) < jk.at(y); });
    index_.clear();
    names_.clear();
    for (ObjectId i = 0; i < keys_.size(); ++i) {
        index_[keys_[i]] = i;
        auto [j, k] = jk.at(keys_[i]);
        names_.push_back("P(" + std::to_string(j) + "," + std::to_string(k) + ")");
    }

    // Local endomorphism rings in degree 0.
    for (ObjectId x = 0; x < keys_.size(); ++x)
        for (int m : hom_orbits(x, x, 0)) {
            if (m < 0) throw InvariantViolation("End^0 of " + names_[x] + " has a component at m < 0");
            if (m == 0 && db_hom(keys_[x], keys_[x]).dim(0) != 1)
                throw InvariantViolation("End^0 of " + names_[x] + " is not local");
        }
}

ObjectId ClusterCategory::find(const std::string& name) const {
    for (ObjectId i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    // Accept P_j^k as an alias.
    static const std::regex alt(R"(P_?\{?(\d+)\}?\^\{?(\d+)\}?)");
    std::smatch m;
    if (std::regex_match(name, m, alt)) return find("P(" + m[1].str() + "," + m[2].str() + ")");
    throw UnknownObject("no object named '" + name + "'");
}

std::vector<ObjectId> ClusterCategory::parse_objects(const std::string& spec) const {
    std::vector<ObjectId> out;
    std::string cur;
    auto flush = [&] {
        std::string t;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (!t.empty()) out.push_back(find(t));
        cur.clear();
    };
    int depth = 0;
    for (char c : spec) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || (c == ',' && depth == 0))) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    return out;
}

bool ClusterCategory::in_domain(const StalkKey& k) const {
    return (k.s >= 0 && k.s < d_) || (k.s == d_ && k.b == n_);
}

StalkKey ClusterCategory::apply_f(const StalkKey& k) const {
    auto it = f_cache_.find(k);
    if (it != f_cache_.end()) return it->second;
    auto ks = decompose(shift(nakayama_inverse(stalk(n_, k)), d_ + 1));
    require(ks.size() == 1, "F of an indecomposable stalk is not indecomposable");
    return f_cache_[k] = ks.front();
}

StalkKey ClusterCategory::apply_f_inverse(const StalkKey& k) const {
    auto it = finv_cache_.find(k);
    if (it != finv_cache_.end()) return it->second;
    auto ks = decompose(shift(nakayama(stalk(n_, k)), -d_ - 1));
    require(ks.size() == 1, "F^{-1} of an indecomposable stalk is not indecomposable");
    return finv_cache_[k] = ks.front();
}

std::pair<ObjectId, int> ClusterCategory::canonical(const StalkKey& k0) const {
    StalkKey k = k0;
    int m = 0;
    for (int iter = 0; iter <= 4 * cap_ + 8; ++iter) {
        if (in_domain(k)) return {index_.at(k), m};
        if (k.s >= d_) {
            k = apply_f_inverse(k);
            ++m;
        } else {
            k = apply_f(k);
            --m;
        }
    }
    throw ScanWindowExceeded("orbit folding of " + k0.str() + " does not reach the domain");
}

std::vector<ObjectId> ClusterCategory::objects_of(const ProjectiveComplex& x) const {
    std::vector<ObjectId> out;
    for (const auto& k : decompose(x)) out.push_back(canonical(k).first);
    std::sort(out.begin(), out.end());
    return out;
}

StalkKey ClusterCategory::orbit_key(ObjectId y, int m) const {
    if (std::abs(m) > cap_) throw ScanWindowExceeded("orbit power " + std::to_string(m) + " beyond the cap");
    StalkKey k = keys_.at(y);
    for (int i = 0; i < m; ++i) k = apply_f(k);
    for (int i = 0; i > m; --i) k = apply_f_inverse(k);
    return k;
}

ObjectId ClusterCategory::shift_object(ObjectId x, int k) const {
    const StalkKey& a = keys_.at(x);
    return canonical({a.a, a.b, a.s + k}).first;
}

ObjectId ClusterCategory::tau_object(ObjectId x) const {
    auto ks = decompose(ar_translate(lift(x)));
    require(ks.size() == 1, "tau of an indecomposable");
    return canonical(ks.front()).first;
}

ObjectId ClusterCategory::tau_inverse_object(ObjectId x) const {
    auto ks = decompose(ar_translate_inverse(lift(x)));
    require(ks.size() == 1, "tau^{-1} of an indecomposable");
    return canonical(ks.front()).first;
}

// ---------------------------------------------------------------------------
// Morphisms

const ProjectiveHom& ClusterCategory::db_hom(const StalkKey& a, const StalkKey& b) const {
    auto key = std::make_pair(a, b);
    auto it = hom_cache_.find(key);
    if (it != hom_cache_.end()) return *it->second;
    auto h = std::make_unique<ProjectiveHom>(stalk(n_, a), stalk(n_, b));
    return *hom_cache_.emplace(key, std::move(h)).first->second;
}

// Orbit powers m with s(S_m(y)) in [s_lo, s_hi]; s(S_m) is strictly
// increasing in m.
std::vector<int> ClusterCategory::orbit_range(ObjectId y, int s_lo, int s_hi) const {
    std::vector<int> out;
    for (int m = 0;; ++m) {
        const int s = orbit_key(y, m).s;
        if (s > s_hi) break;
        if (s >= s_lo) out.push_back(m);
    }
    for (int m = -1;; --m) {
        const int s = orbit_key(y, m).s;
        if (s < s_lo) break;
        if (s <= s_hi) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> ClusterCategory::hom_orbits(ObjectId x, ObjectId y, int p) const {
    // Hom(M[s_x], N[t][p]) = Ext^{t + p - s_x}(M, N) needs t in [s_x - p, s_x - p + 1].
    const StalkKey& kx = keys_.at(x);
    const int lo = kx.s - p, hi = kx.s - p + 1;
    std::vector<int> cand = orbit_range(y, lo, hi);
    std::vector<int> out;
    for (int m : cand)
        if (db_hom(kx, orbit_key(y, m)).dim(p) > 0) out.push_back(m);
    // Emptiness witness just outside the candidate range.
    int below = cand.empty() ? 0 : cand.front() - 1;
    int above = cand.empty() ? 0 : cand.back() + 1;
    if (cand.empty()) {
        while (orbit_key(y, above).s <= hi) ++above;
        below = above - 1;
    }
    for (int m : {below, above})
        if (db_hom(kx, orbit_key(y, m)).dim(p) != 0)
            throw ScanWindowExceeded("nonzero hom at the scan-window boundary");
    return out;
}

std::size_t ClusterCategory::hom_dim(ObjectId x, ObjectId y, int p) const {
    std::size_t total = 0;
    for (int m : hom_orbits(x, y, p)) total += db_hom(keys_.at(x), orbit_key(y, m)).dim(p);
    return total;
}

std::vector<ClusterMorphism> ClusterCategory::hom_basis(ObjectId x, ObjectId y, int p) const {
    std::vector<ClusterMorphism> out;
    for (int m : hom_orbits(x, y, p)) {
        const std::size_t dm = db_hom(keys_.at(x), orbit_key(y, m)).dim(p);
        for (std::size_t j = 0; j < dm; ++j) out.push_back({x, y, p, {{m, unit(dm, j)}}});
    }
    return out;
}

Matrix ClusterCategory::coords(const ClusterMorphism& f) const {
    auto orbits = hom_orbits(f.source, f.target, f.degree);
    std::vector<Matrix> parts;
    for (int m : orbits) {
        const std::size_t dm = db_hom(keys_.at(f.source), orbit_key(f.target, m)).dim(f.degree);
        auto it = f.components.find(m);
        parts.push_back(it == f.components.end() ? Matrix(dm, 1) : it->second);
    }
    for (const auto& [m, v] : f.components)
        if (std::find(orbits.begin(), orbits.end(), m) == orbits.end())
            require(v.rows() == 0 || v.is_zero(), "component outside the hom support");
    return parts.empty() ? Matrix(0, 1) : vstack(parts, 1);
}

ClusterMorphism ClusterCategory::from_coords(ObjectId x, ObjectId y, int p, const Matrix& c) const {
    ClusterMorphism f{x, y, p, {}};
    std::size_t off = 0;
    for (int m : hom_orbits(x, y, p)) {
        const std::size_t dm = db_hom(keys_.at(x), orbit_key(y, m)).dim(p);
        f.components[m] = c.block(off, 0, dm, 1);
        off += dm;
    }
    if (off != c.rows()) throw DimensionError("coordinate vector has the wrong length");
    return f;
}

ClusterMorphism ClusterCategory::identity(ObjectId x) const {
    const ProjectiveHom& h = db_hom(keys_.at(x), keys_.at(x));
    return {x, x, 0, {{0, h.class_of(identity_map(lift(x)))}}};
}

ClusterMorphism ClusterCategory::zero(ObjectId x, ObjectId y, int p) const { return {x, y, p, {}}; }

ClusterMorphism ClusterCategory::add(const ClusterMorphism& f, const ClusterMorphism& g) const {
    require(f.source == g.source && f.target == g.target && f.degree == g.degree, "adding incompatible morphisms");
    ClusterMorphism h = f;
    for (const auto& [m, v] : g.components) {
        auto it = h.components.find(m);
        if (it == h.components.end())
            h.components[m] = v;
        else
            it->second += v;
    }
    return h;
}

ClusterMorphism ClusterCategory::scale(const Scalar& s, const ClusterMorphism& f) const {
    ClusterMorphism h = f;
    for (auto& [m, v] : h.components) v = s * v;
    return h;
}

ProjectiveMap ClusterCategory::component_map(const ClusterMorphism& f, int m) const {
    const ProjectiveHom& h = db_hom(keys_.at(f.source), orbit_key(f.target, m));
    auto it = f.components.find(m);
    if (it == f.components.end() || h.dim(f.degree) == 0)
        return h.to_map(f.degree, Matrix(h.complex().dim(f.degree), 1));
    return h.representative(f.degree, it->second);
}

const ClusterCategory::Identification& ClusterCategory::identification(const StalkKey& a) const {
    auto it = ident_cache_.find(a);
    if (it != ident_cache_.end()) return it->second;
    const StalkKey fa = apply_f(a);
    ProjectiveComplex fs = shift(nakayama_inverse(stalk(n_, a)), d_ + 1);
    ProjectiveComplex sfa = stalk(n_, fa);
    ProjectiveHom he(sfa, fs), hr(fs, sfa);
    require(he.dim(0) == 1 && hr.dim(0) == 1, "F-identification is not one-dimensional");
    ProjectiveMap e = he.basis_map(0, 0);
    ProjectiveMap r = hr.basis_map(0, 0);
    const ProjectiveHom& end = db_hom(fa, fa);
    const Scalar c = end.class_of(dext::compose(r, e))(0, 0);
    const Scalar id = end.class_of(identity_map(sfa))(0, 0);
    require(!c.is_zero(), "F-identification maps are not inverse isomorphisms");
    r.map = (id / c) * r.map;
    return ident_cache_.emplace(a, Identification{fs, e, r}).first->second;
}

Matrix ClusterCategory::phi_step(const StalkKey& a, const StalkKey& b, int p) const {
    auto key = std::make_tuple(a, b, p);
    auto it = phi_cache_.find(key);
    if (it != phi_cache_.end()) return it->second;
    const ProjectiveHom& src = db_hom(a, b);
    const StalkKey fa = apply_f(a), fb = apply_f(b);
    const ProjectiveHom& tgt = db_hom(fa, fb);
    const std::size_t n = src.dim(p);
    require(tgt.dim(p) == n, "F does not preserve hom dimensions");
    Matrix phi(n, n);
    if (n > 0) {
        const Identification& ia = identification(a);
        const Identification& ib = identification(b);
        for (std::size_t j = 0; j < n; ++j) {
            ProjectiveMap f = src.basis_map(p, j);
            ProjectiveMap ff = shift(nakayama_inverse(f), d_ + 1);
            ProjectiveMap composite = dext::compose(ib.r, dext::compose(ff, ia.e));
            phi.set_block(0, j, tgt.class_of(composite));
        }
        require(rank(phi) == n, "transport along F is not invertible");
    }
    return phi_cache_[key] = phi;
}

Matrix ClusterCategory::transport(const StalkKey& a0, const StalkKey& b0, int p, int steps) const {
    StalkKey a = a0, b = b0;
    const std::size_t n = db_hom(a, b).dim(p);
    Matrix t = Matrix::identity(n);
    if (n == 0) return t;
    for (int i = 0; i < steps; ++i) {
        t = phi_step(a, b, p) * t;
        a = apply_f(a);
        b = apply_f(b);
    }
    for (int i = 0; i > steps; --i) {
        StalkKey pa = apply_f_inverse(a), pb = apply_f_inverse(b);
        t = inverse(phi_step(pa, pb, p)) * t;
        a = pa;
        b = pb;
    }
    return t;
}

ClusterMorphism ClusterCategory::compose(const ClusterMorphism& g, const ClusterMorphism& f) const {
    if (f.target != g.source) throw DimensionError("composing non-composable morphisms");
    const int p = f.degree, q = g.degree;
    ClusterMorphism out{f.source, g.target, p + q, {}};
    const StalkKey& kx = keys_.at(f.source);
    const StalkKey& ky = keys_.at(f.target);
    for (const auto& [a, fa] : f.components) {
        if (fa.is_zero()) continue;
        const StalkKey say = orbit_key(f.target, a);
        const ProjectiveMap rf = db_hom(kx, say).representative(p, fa);
        for (const auto& [b, gb] : g.components) {
            if (gb.is_zero()) continue;
            const StalkKey sbz = orbit_key(g.target, b);
            const StalkKey sabz = orbit_key(g.target, a + b);
            Matrix moved = transport(ky, sbz, q, a) * gb;
            const ProjectiveMap rg = db_hom(say, sabz).representative(q, moved);
            const ProjectiveHom& hx = db_hom(kx, sabz);
            if (hx.dim(p + q) == 0) continue;
            Matrix c = hx.class_of(dext::compose(rg, rf));
            auto it = out.components.find(a + b);
            if (it == out.components.end())
                out.components[a + b] = c;
            else
                it->second += c;
        }
    }
    return out;
}

std::vector<int> ClusterCategory::source_orbits(ObjectId x, const ProjectiveComplex& t, int p) const {
    auto kt = decompose(t);
    if (kt.empty()) return {};
    // Hom(M[u], N[t][p]) needs u in [t + p - 1, t + p]; u = s(S_j(x)), j = -m.
    const int lo = s_min(kt) + p - 1, hi = s_max(kt) + p;
    std::vector<int> js = orbit_range(x, lo, hi);
    std::vector<int> out;
    for (int j : js)
        if (ProjectiveHom(stalk(n_, orbit_key(x, j)), t).dim(p) > 0) out.push_back(-j);
    int below = js.empty() ? 0 : js.front() - 1;
    int above = js.empty() ? 0 : js.back() + 1;
    if (js.empty()) {
        while (orbit_key(x, above).s <= hi) ++above;
        below = above - 1;
    }
    for (int j : {below, above})
        if (ProjectiveHom(stalk(n_, orbit_key(x, j)), t).dim(p) != 0)
            throw ScanWindowExceeded("nonzero hom at the scan-window boundary");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> ClusterCategory::target_orbits(ObjectId x, const ProjectiveComplex& t, int p) const {
    auto kt = decompose(t);
    if (kt.empty()) return {};
    // Hom(N[t], M[u][p]) needs u in [t - p, t - p + 1].
    const int lo = s_min(kt) - p, hi = s_max(kt) - p + 1;
    std::vector<int> js = orbit_range(x, lo, hi);
    std::vector<int> out;
    for (int j : js)
        if (ProjectiveHom(t, stalk(n_, orbit_key(x, j))).dim(p) > 0) out.push_back(j);
    int below = js.empty() ? 0 : js.front() - 1;
    int above = js.empty() ? 0 : js.back() + 1;
    if (js.empty()) {
        while (orbit_key(x, above).s <= hi) ++above;
        below = above - 1;
    }
    for (int j : {below, above})
        if (ProjectiveHom(t, stalk(n_, orbit_key(x, j))).dim(p) != 0)
            throw ScanWindowExceeded("nonzero hom at the scan-window boundary");
    return out;
}

// ---------------------------------------------------------------------------
// Cluster tilting, approximations, towers

ClusterTiltingReport ClusterCategory::cluster_tilting_report(const std::vector<ObjectId>& m) const {
    ClusterTiltingReport rep;
    std::set<ObjectId> ms(m.begin(), m.end());
    for (ObjectId x = 0; x < size(); ++x) {
        const bool in_m = ms.count(x) > 0;
        bool right_vanish = true, left_vanish = true;
        for (int i = 1; i <= d_; ++i)
            for (ObjectId mj : ms) {
                if (hom_dim(x, mj, i) != 0) {
                    right_vanish = false;
                    if (in_m) rep.violations.push_back({x, i, "right", "Hom(X, M[i]) != 0 inside add M"});
                }
                if (hom_dim(mj, x, i) != 0) {
                    left_vanish = false;
                    if (in_m) rep.violations.push_back({x, i, "left", "Hom(M, X[i]) != 0 inside add M"});
                }
            }
        if (!in_m && right_vanish)
            rep.violations.push_back({x, 0, "right", "outside add M but Hom(X, M[i]) = 0 for 1 <= i <= d"});
        if (!in_m && left_vanish)
            rep.violations.push_back({x, 0, "left", "outside add M but Hom(M, X[i]) = 0 for 1 <= i <= d"});
    }
    rep.ok = rep.violations.empty();
    return rep;
}

namespace {

ProjectiveMap assemble(const std::vector<ProjectiveComplex>& parts, const std::vector<ProjectiveMap>& maps,
                       const ProjectiveComplex& target) {
    ProjectiveComplex src = direct_sum(parts);
    ChainMap total = zero_map(src.scalar(), target.scalar(), 0);
    for (std::size_t c = 0; c < parts.size(); ++c)
        total = total + dext::compose(maps[c], sum_projection(parts, c)).map;
    return ProjectiveMap{src, target, total};
}

}  // namespace

bool ClusterCategory::is_epic_for(const std::vector<ObjectId>& m, const ProjectiveMap& f) const {
    if (f.target.is_zero()) return true;
    std::set<ObjectId> ms(m.begin(), m.end());
    for (ObjectId mj : ms)
        for (int mm : source_orbits(mj, f.target, 0)) {
            ProjectiveComplex s = stalk(n_, orbit_key(mj, -mm));
            ProjectiveHom ht(s, f.target);
            ProjectiveHom hs(s, f.source);
            std::vector<Matrix> cols;
            for (std::size_t i = 0; i < hs.dim(0); ++i)
                cols.push_back(ht.class_of(dext::compose(f, hs.basis_map(0, i))));
            if (rank(hstack(cols, ht.dim(0))) != ht.dim(0)) return false;
        }
    return true;
}

bool ClusterCategory::is_monic_for(const std::vector<ObjectId>& m, const ProjectiveMap& f) const {
    if (f.source.is_zero()) return true;
    std::set<ObjectId> ms(m.begin(), m.end());
    for (ObjectId mj : ms)
        for (int mm : target_orbits(mj, f.source, 0)) {
            ProjectiveComplex s = stalk(n_, orbit_key(mj, mm));
            ProjectiveHom hs(f.source, s);
            ProjectiveHom ht(f.target, s);
            std::vector<Matrix> cols;
            for (std::size_t i = 0; i < ht.dim(0); ++i)
                cols.push_back(hs.class_of(dext::compose(ht.basis_map(0, i), f)));
            if (rank(hstack(cols, hs.dim(0))) != hs.dim(0)) return false;
        }
    return true;
}

bool ClusterCategory::factors_through(const ProjectiveMap& h, const std::vector<ObjectId>& objects) const {
    ProjectiveHom hab(h.source, h.target);
    const Matrix target = hab.class_of(h);
    if (target.is_zero()) return true;
    std::vector<Matrix> cols;
    std::set<ObjectId> ws(objects.begin(), objects.end());
    for (ObjectId w : ws)
        for (int a : target_orbits(w, h.source, 0)) {
            ProjectiveComplex s = stalk(n_, orbit_key(w, a));
            ProjectiveHom into(h.source, s), out(s, h.target);
            for (std::size_t i = 0; i < into.dim(0); ++i)
                for (std::size_t j = 0; j < out.dim(0); ++j)
                    cols.push_back(hab.class_of(dext::compose(out.basis_map(0, j), into.basis_map(0, i))));
        }
    if (cols.empty()) return false;
    return in_column_space(hstack(cols, hab.dim(0)), target);
}

bool ClusterCategory::approximation_is_surjective(const std::vector<ObjectId>& m,
                                                  const RightApproximation& a) const {
    return is_epic_for(m, a.map);
}

RightApproximation ClusterCategory::right_approximation(const std::vector<ObjectId>& m,
                                                        const std::vector<ObjectId>& targets, bool prune) const {
    std::vector<ProjectiveComplex> tparts;
    for (ObjectId t : targets) tparts.push_back(lift(t));
    return right_approximation_of(m, tparts.empty() ? ProjectiveComplex(n_) : direct_sum(tparts), prune);
}

RightApproximation ClusterCategory::right_approximation_of(const std::vector<ObjectId>& m,
                                                           const ProjectiveComplex& target, bool prune) const {
    RightApproximation a;
    a.target = target;
    if (a.target.is_zero()) {
        a.source = ProjectiveComplex(n_);
        a.map = ProjectiveMap{a.source, a.target, zero_map(a.source.scalar(), a.target.scalar())};
        return a;
    }
    std::vector<ProjectiveComplex> parts;
    std::vector<ProjectiveMap> maps;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (std::find(m.begin(), m.begin() + j, m[j]) != m.begin() + j) continue;  // repeated summand
        for (int mm : source_orbits(m[j], a.target, 0)) {
            ProjectiveComplex s = stalk(n_, orbit_key(m[j], -mm));
            ProjectiveHom h(s, a.target);
            for (std::size_t c = 0; c < h.dim(0); ++c) {
                a.terms.push_back({j, mm});
                parts.push_back(s);
                maps.push_back(h.basis_map(0, c));
            }
        }
    }
    if (parts.empty()) {
        a.source = ProjectiveComplex(n_);
        a.map = ProjectiveMap{a.source, a.target, zero_map(a.source.scalar(), a.target.scalar())};
    } else {
        a.map = assemble(parts, maps, a.target);
        a.source = a.map.source;
    }
    require(approximation_is_surjective(m, a), "full-basis approximation is not surjective");
    if (prune) {
        for (std::size_t c = parts.size(); c-- > 0;) {
            std::vector<ProjectiveComplex> p2 = parts;
            std::vector<ProjectiveMap> m2 = maps;
            p2.erase(p2.begin() + static_cast<long>(c));
            m2.erase(m2.begin() + static_cast<long>(c));
            if (p2.empty()) continue;
            RightApproximation trial = a;
            trial.map = assemble(p2, m2, a.target);
            trial.source = trial.map.source;
            trial.terms.erase(trial.terms.begin() + static_cast<long>(c));
            if (approximation_is_surjective(m, trial)) {
                a = trial;
                parts = p2;
                maps = m2;
            }
        }
    }
    a.cocone = objects_of(cocone(a.map));
    return a;
}

LeftApproximation ClusterCategory::left_approximation(const std::vector<ObjectId>& m,
                                                      const ProjectiveComplex& source) const {
    LeftApproximation a;
    a.source = source;
    std::vector<ProjectiveComplex> parts;
    std::vector<ProjectiveMap> maps;
    if (!source.is_zero())
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (std::find(m.begin(), m.begin() + j, m[j]) != m.begin() + j) continue;
            for (int mm : target_orbits(m[j], source, 0)) {
                ProjectiveComplex t = stalk(n_, orbit_key(m[j], mm));
                ProjectiveHom h(source, t);
                for (std::size_t c = 0; c < h.dim(0); ++c) {
                    a.terms.push_back({j, mm});
                    parts.push_back(t);
                    maps.push_back(h.basis_map(0, c));
                }
            }
        }
    if (parts.empty()) {
        a.target = ProjectiveComplex(n_);
        a.map = ProjectiveMap{a.source, a.target, zero_map(a.source.scalar(), a.target.scalar())};
        return a;
    }
    a.target = direct_sum(parts);
    ChainMap total = zero_map(a.source.scalar(), a.target.scalar(), 0);
    for (std::size_t c = 0; c < parts.size(); ++c)
        total = total + dext::compose(sum_inclusion(parts, c), maps[c]).map;
    a.map = ProjectiveMap{a.source, a.target, total};
    require(is_monic_for(m, a.map), "full-basis left approximation is not surjective");
    return a;
}

SplicingTower ClusterCategory::splicing_tower(const std::vector<ObjectId>& m, ObjectId y, bool prune) const {
    std::set<ObjectId> ms(m.begin(), m.end());
    auto in_m = [&](const std::vector<ObjectId>& k) {
        return std::all_of(k.begin(), k.end(), [&](ObjectId o) { return ms.count(o) > 0; });
    };
    SplicingTower t;
    t.k.push_back({y});
    t.in_add_m.push_back(in_m(t.k.back()));
    for (int i = 1; i <= d_; ++i) {
        RightApproximation a = right_approximation(m, t.k.back(), prune);
        t.k.push_back(a.cocone);
        t.in_add_m.push_back(in_m(a.cocone));
        t.approximations.push_back(std::move(a));
    }
    if (!t.in_add_m.back())
        throw SplicingFailure("K_d of " + names_.at(y) + " does not lie in add M");
    return t;
}

// ---------------------------------------------------------------------------
// AR quiver

Matrix ClusterCategory::radical(ObjectId x, ObjectId y) const {
    const std::size_t n = hom_dim(x, y, 0);
    if (x != y) return Matrix::identity(n);
    std::vector<std::size_t> keep;
    std::size_t off = 0;
    for (int m : hom_orbits(x, y, 0)) {
        const std::size_t dm = db_hom(keys_.at(x), orbit_key(y, m)).dim(0);
        if (m != 0)
            for (std::size_t j = 0; j < dm; ++j) keep.push_back(off + j);
        off += dm;
    }
    return Matrix::identity(n).select_cols(keep);
}

QuiverGraph ClusterCategory::ar_quiver() const {
    QuiverGraph g;
    g.vertices = names_;
    const std::size_t N = size();
    std::vector<std::vector<std::vector<ClusterMorphism>>> rad(N, std::vector<std::vector<ClusterMorphism>>(N));
    for (ObjectId x = 0; x < N; ++x)
        for (ObjectId y = 0; y < N; ++y) {
            Matrix r = radical(x, y);
            for (std::size_t c = 0; c < r.cols(); ++c) rad[x][y].push_back(from_coords(x, y, 0, r.col(c)));
        }
    for (ObjectId x = 0; x < N; ++x)
        for (ObjectId y = 0; y < N; ++y) {
            const std::size_t dr = rad[x][y].size();
            if (dr == 0) continue;
            std::vector<Matrix> cols;
            for (ObjectId z = 0; z < N; ++z)
                for (const auto& f : rad[x][z])
                    for (const auto& h : rad[z][y]) cols.push_back(coords(compose(h, f)));
            const std::size_t total = hom_dim(x, y, 0);
            Matrix span = hstack(cols, total);
            if (x == y) {
                // Composites of radical maps stay radical.
                Matrix r = radical(x, y);
                require(span.cols() == 0 || in_column_space(r, span), "radical composites leave the radical");
            }
            const std::size_t r2 = rank(span);
            if (dr > r2) g.arrows[{x, y}] = dr - r2;
        }
    for (ObjectId x = 0; x < N; ++x) g.tau.push_back({x, tau_object(x)});
    return g;
}

Json ClusterCategory::objects_json() const {
    Json arr = Json::array();
    for (ObjectId x = 0; x < size(); ++x) {
        const StalkKey& k = keys_[x];
        std::vector<int> dv(n_, 0);
        for (int u = k.a; u <= k.b; ++u) dv[u - 1] = 1;
        Json o;
        o["name"] = names_[x];
        o["interval"] = {k.a, k.b};
        o["shift"] = k.s;
        o["dimension_vector"] = dv;
        o["lift"] = to_json(lift(x));
        arr.push_back(o);
    }
    return arr;
}

}  // namespace dext
