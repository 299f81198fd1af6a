#include "dext/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <toml.hpp>

#include "dext/errors.hpp"

namespace dext {

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

namespace {

int vertex_index(const GradedQuiverPresentation& p, const std::string& v) {
    auto it = std::find(p.vertices.begin(), p.vertices.end(), v);
    if (it == p.vertices.end()) throw ParseError("unknown vertex '" + v + "'");
    return static_cast<int>(it - p.vertices.begin());
}

int arrow_index(const GradedQuiverPresentation& p, const std::string& a) {
    for (std::size_t i = 0; i < p.arrows.size(); ++i)
        if (p.arrows[i].name == a) return static_cast<int>(i);
    throw ParseError("unknown arrow '" + a + "'");
}

struct TermShape {
    int source, target, degree;
    std::size_t length;
};

TermShape shape_of(const GradedQuiverPresentation& p, const PathTerm& t) {
    if (t.path.empty()) {
        int v = vertex_index(p, t.vertex);
        return {v, v, 0, 0};
    }
    int deg = 0;
    for (std::size_t k = 0; k < t.path.size(); ++k) {
        const Arrow& a = p.arrows[arrow_index(p, t.path[k])];
        deg += a.degree;
        if (k + 1 < t.path.size()) {
            const Arrow& prev = p.arrows[arrow_index(p, t.path[k + 1])];
            if (prev.target != a.source)
                throw ParseError("path is not composable at '" + t.path[k + 1] + "' -> '" + a.name + "'");
        }
    }
    return {vertex_index(p, p.arrows[arrow_index(p, t.path.back())].source),
            vertex_index(p, p.arrows[arrow_index(p, t.path.front())].target), deg, t.path.size()};
}

PathTerm term_from_json(const Json& j) {
    PathTerm t;
    t.coef = j.contains("coef") ? scalar_from_json(j.at("coef")) : Scalar(1);
    if (j.contains("path"))
        for (const auto& a : j.at("path")) t.path.push_back(a.get<std::string>());
    if (j.contains("vertex")) t.vertex = j.at("vertex").is_string() ? j.at("vertex").get<std::string>()
                                                                     : std::to_string(j.at("vertex").get<long long>());
    if (t.path.empty() && t.vertex.empty()) throw ParseError("trivial path term needs a 'vertex'");
    return t;
}

Json term_to_json(const PathTerm& t) {
    Json j{{"coef", t.coef.str()}, {"path", t.path}};
    if (t.path.empty()) j["vertex"] = t.vertex;
    return j;
}

std::string name_of(const Json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()); }

}  // namespace

void GradedQuiverPresentation::check() const {
    std::set<std::string> names;
    for (const auto& v : vertices)
        if (!names.insert("v:" + v).second) throw ParseError("duplicate vertex '" + v + "'");
    for (const auto& a : arrows) {
        if (!names.insert("a:" + a.name).second) throw ParseError("duplicate arrow '" + a.name + "'");
        if (a.degree > 0) throw ParseError("arrow '" + a.name + "' has positive degree");
        vertex_index(*this, a.source);
        vertex_index(*this, a.target);
    }
    for (const auto& r : relations) {
        if (r.empty()) throw ParseError("empty relation");
        TermShape s0 = shape_of(*this, r.front());
        for (const auto& t : r) {
            TermShape s = shape_of(*this, t);
            if (s.source != s0.source || s.target != s0.target || s.degree != s0.degree)
                throw ParseError("relation is not homogeneous");
        }
    }
    for (const auto& [arrow, comb] : differential) {
        const Arrow& a = arrows[arrow_index(*this, arrow)];
        for (const auto& t : comb) {
            TermShape s = shape_of(*this, t);
            if (s.degree != a.degree + 1 || s.source != vertex_index(*this, a.source) ||
                s.target != vertex_index(*this, a.target))
                throw ParseError("differential of '" + arrow + "' has the wrong degree or endpoints");
        }
    }
}

GradedQuiverPresentation presentation_from_json(const Json& j) {
    GradedQuiverPresentation p;
    try {
        for (const auto& v : j.at("vertices")) p.vertices.push_back(name_of(v));
        for (const auto& a : j.at("arrows"))
            p.arrows.push_back(Arrow{a.at("name").get<std::string>(), name_of(a.at("from")), name_of(a.at("to")),
                                     a.contains("degree") ? a.at("degree").get<int>() : 0});
        if (j.contains("relations"))
            for (const auto& r : j.at("relations")) {
                PathCombination c;
                for (const auto& t : r) c.push_back(term_from_json(t));
                p.relations.push_back(std::move(c));
            }
        if (j.contains("differential"))
            for (const auto& [arrow, comb] : j.at("differential").items()) {
                PathCombination c;
                for (const auto& t : comb) c.push_back(term_from_json(t));
                p.differential[arrow] = std::move(c);
            }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("presentation schema: ") + e.what());
    }
    p.check();
    return p;
}

GradedQuiverPresentation presentation_from_toml(const std::string& text) {
    try {
        toml::table tbl = toml::parse(text);
        std::ostringstream os;
        os << toml::json_formatter{tbl};
        return presentation_from_json(Json::parse(os.str()));
    } catch (const toml::parse_error& e) {
        throw ParseError(std::string("TOML: ") + std::string(e.description()));
    }
}

GradedQuiverPresentation load_presentation(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    if (file.size() >= 5 && file.substr(file.size() - 5) == ".toml") return presentation_from_toml(ss.str());
    try {
        return presentation_from_json(Json::parse(ss.str()));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
}

Json to_json(const GradedQuiverPresentation& p) {
    Json arrows = Json::array();
    for (const auto& a : p.arrows) arrows.push_back({{"name", a.name}, {"from", a.source}, {"to", a.target}, {"degree", a.degree}});
    Json rels = Json::array();
    for (const auto& r : p.relations) {
        Json c = Json::array();
        for (const auto& t : r) c.push_back(term_to_json(t));
        rels.push_back(c);
    }
    Json diff = Json::object();
    for (const auto& [a, comb] : p.differential) {
        Json c = Json::array();
        for (const auto& t : comb) c.push_back(term_to_json(t));
        diff[a] = c;
    }
    return Json{{"vertices", p.vertices}, {"arrows", arrows}, {"relations", rels}, {"differential", diff}};
}

GradedQuiverPresentation linear_a_presentation(int n) {
    GradedQuiverPresentation p;
    for (int i = 1; i <= n; ++i) p.vertices.push_back(std::to_string(i));
    for (int i = 1; i < n; ++i) p.arrows.push_back(Arrow{"a" + std::to_string(i), std::to_string(i), std::to_string(i + 1), 0});
    return p;
}

// ---------------------------------------------------------------------------
// FinDimGradedAlgebra
// ---------------------------------------------------------------------------

FinDimGradedAlgebra::FinDimGradedAlgebra(std::vector<std::string> vertices, std::vector<BasisElement> basis,
                                         std::vector<std::size_t> idempotents)
    : vertices_(std::move(vertices)),
      basis_(std::move(basis)),
      idempotents_(std::move(idempotents)),
      mult_(basis_.size() * basis_.size()),
      diff_(basis_.size(), basis_.size()) {
    if (idempotents_.size() != vertices_.size()) throw DimensionError("one idempotent per vertex required");
}

void FinDimGradedAlgebra::set_product(std::size_t i, std::size_t j, SparseVec v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const auto& e) { return e.second.is_zero(); }), v.end());
    mult_[i * dim() + j] = std::move(v);
}

void FinDimGradedAlgebra::set_differential(Matrix d) {
    if (d.rows() != dim() || d.cols() != dim()) throw DimensionError("differential must be N x N");
    diff_ = std::move(d);
}

Matrix FinDimGradedAlgebra::multiply(const Matrix& x, const Matrix& y) const {
    Matrix out(dim(), 1);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x(i, 0).is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y(j, 0).is_zero()) continue;
            const Scalar c = x(i, 0) * y(j, 0);
            for (const auto& [k, v] : product(i, j)) out(k, 0) += c * v;
        }
    }
    return out;
}

Matrix FinDimGradedAlgebra::left_mult(std::size_t i) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
        for (const auto& [k, v] : product(i, j)) m(k, j) = v;
    return m;
}

Matrix FinDimGradedAlgebra::right_mult(std::size_t j) const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (const auto& [k, v] : product(i, j)) m(k, i) = v;
    return m;
}

std::vector<std::size_t> FinDimGradedAlgebra::degree_part(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (basis_[i].degree == p) out.push_back(i);
    return out;
}

std::vector<int> FinDimGradedAlgebra::degrees() const {
    std::set<int> s;
    for (const auto& b : basis_) s.insert(b.degree);
    return std::vector<int>(s.rbegin(), s.rend());
}

std::map<int, std::size_t> FinDimGradedAlgebra::graded_dims() const {
    std::map<int, std::size_t> out;
    for (const auto& b : basis_) out[b.degree]++;
    return out;
}

CochainComplex FinDimGradedAlgebra::underlying_complex() const {
    std::map<int, std::size_t> dims = graded_dims();
    std::map<int, Matrix> diffs;
    for (int p : degrees()) {
        auto src = degree_part(p), tgt = degree_part(p + 1);
        if (!src.empty() && !tgt.empty()) diffs[p] = diff_.select_rows(tgt).select_cols(src);
    }
    return CochainComplex(dims, diffs);
}

Json FinDimGradedAlgebra::to_json() const {
    Json basis = Json::array();
    for (const auto& b : basis_)
        basis.push_back({{"label", b.label}, {"source", vertices_[b.source]}, {"target", vertices_[b.target]}, {"degree", b.degree}});
    Json products = Json::array();
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (product(i, j).empty()) continue;
            Json terms = Json::array();
            for (const auto& [k, v] : product(i, j)) terms.push_back({{"coef", v.str()}, {"element", basis_[k].label}});
            products.push_back({{"left", basis_[i].label}, {"right", basis_[j].label}, {"value", terms}});
        }
    Json dims = Json::object();
    for (auto [p, n] : graded_dims()) dims[std::to_string(p)] = n;
    return Json{{"vertices", vertices_}, {"basis", basis}, {"graded_dims", dims}, {"products", products},
                {"differential", dext::to_json(diff_)}, {"zero_differential", has_zero_differential()}};
}

// ---------------------------------------------------------------------------
// Basis enumeration
// ---------------------------------------------------------------------------

namespace {

struct Path {
    int source, target, degree;
    std::vector<int> arrows;  // composition order
};

// Paths of bounded length and their normal forms modulo the relation ideal.
class PathContext {
public:
    PathContext(const GradedQuiverPresentation& p, int bound) : p_(p), bound_(bound) {
        if (bound < 1) throw DimensionError("length bound must be >= 1");
        enumerate_paths();
        reduce();
    }

    const std::vector<std::size_t>& basis_paths() const { return basis_paths_; }
    const Path& path(std::size_t i) const { return paths_[i]; }
    std::size_t path_count() const { return paths_.size(); }

    // Normal form (in basis coordinates) of an arbitrary arrow word; words
    // longer than the bound lie in the ideal.
    FinDimGradedAlgebra::SparseVec normal_form(const std::vector<int>& arrows, int trivial_vertex) const {
        if (static_cast<int>(arrows.size()) > bound_) return {};
        for (std::size_t k = 0; k + 1 < arrows.size(); ++k)
            if (p_.arrows[arrows[k]].source != p_.arrows[arrows[k + 1]].target) return {};
        auto it = index_.find(key(arrows, trivial_vertex));
        if (it == index_.end()) return {};
        return nf_[it->second];
    }

    // Coordinates of a path combination in basis coordinates.
    FinDimGradedAlgebra::SparseVec normal_form(const PathCombination& c) const {
        std::map<std::size_t, Scalar> acc;
        for (const auto& t : c) {
            std::vector<int> arrows;
            for (const auto& a : t.path) arrows.push_back(arrow_index(p_, a));
            int v = t.path.empty() ? vertex_index(p_, t.vertex) : -1;
            for (const auto& [k, val] : normal_form(arrows, v)) acc[k] += t.coef * val;
        }
        FinDimGradedAlgebra::SparseVec out;
        for (auto& [k, v] : acc)
            if (!v.is_zero()) out.emplace_back(k, v);
        return out;
    }

    // d of an arrow word by the Leibniz rule, as a list of (sign*coef, word).
    std::vector<std::pair<Scalar, std::vector<int>>> differential_words(const std::vector<int>& word) const {
        std::vector<std::pair<Scalar, std::vector<int>>> out;
        int deg = 0;
        for (std::size_t j = 0; j < word.size(); ++j) {
            auto it = p_.differential.find(p_.arrows[word[j]].name);
            if (it != p_.differential.end()) {
                const Scalar sgn((deg % 2 == 0) ? 1 : -1);
                for (const auto& t : it->second) {
                    std::vector<int> w(word.begin(), word.begin() + j);
                    for (const auto& a : t.path) w.push_back(arrow_index(p_, a));
                    w.insert(w.end(), word.begin() + j + 1, word.end());
                    out.emplace_back(sgn * t.coef, std::move(w));
                }
            }
            deg += p_.arrows[word[j]].degree;
        }
        return out;
    }

    int bound() const { return bound_; }

private:
    const GradedQuiverPresentation& p_;
    int bound_;
    std::vector<Path> paths_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<std::size_t> basis_paths_;              // path index per basis element
    std::vector<FinDimGradedAlgebra::SparseVec> nf_;  // per path

    static std::vector<int> key(const std::vector<int>& arrows, int trivial_vertex) {
        if (arrows.empty()) return {-1 - trivial_vertex};
        return arrows;
    }

    void add_path(Path p, int trivial_vertex) {
        index_[key(p.arrows, trivial_vertex)] = paths_.size();
        paths_.push_back(std::move(p));
    }

    void enumerate_paths() {
        for (std::size_t v = 0; v < p_.vertices.size(); ++v)
            add_path(Path{static_cast<int>(v), static_cast<int>(v), 0, {}}, static_cast<int>(v));
        std::size_t begin = 0;
        for (int len = 1; len <= bound_; ++len) {
            std::size_t end = paths_.size();
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t a = 0; a < p_.arrows.size(); ++a) {
                    const Arrow& arr = p_.arrows[a];
                    if (vertex_index(p_, arr.source) != paths_[i].target) continue;
                    Path q = paths_[i];
                    q.arrows.insert(q.arrows.begin(), static_cast<int>(a));
                    q.target = vertex_index(p_, arr.target);
                    q.degree += arr.degree;
                    add_path(std::move(q), -1);
                }
            begin = end;
        }
    }

    void reduce() {
        // Ideal generators u * r * v, grouped by cell (source, target, degree).
        using Cell = std::tuple<int, int, int>;
        std::map<Cell, std::vector<std::size_t>> cell_paths;
        for (std::size_t i = 0; i < paths_.size(); ++i)
            cell_paths[{paths_[i].source, paths_[i].target, paths_[i].degree}].push_back(i);
        std::map<Cell, std::vector<std::map<std::size_t, Scalar>>> gens;
        for (const auto& r : p_.relations) {
            std::size_t maxlen = 0;
            for (const auto& t : r) maxlen = std::max(maxlen, t.path.size());
            TermShape s = shape_of(p_, r.front());
            for (std::size_t u = 0; u < paths_.size(); ++u) {
                if (paths_[u].source != s.target) continue;
                for (std::size_t v = 0; v < paths_.size(); ++v) {
                    if (paths_[v].target != s.source) continue;
                    if (paths_[u].arrows.size() + maxlen + paths_[v].arrows.size() > static_cast<std::size_t>(bound_)) continue;
                    std::map<std::size_t, Scalar> g;
                    for (const auto& t : r) {
                        std::vector<int> w = paths_[u].arrows;
                        for (const auto& a : t.path) w.push_back(arrow_index(p_, a));
                        w.insert(w.end(), paths_[v].arrows.begin(), paths_[v].arrows.end());
                        int tv = w.empty() ? s.source : -1;
                        g[index_.at(key(w, tv))] += t.coef;
                    }
                    int deg = paths_[u].degree + s.degree + paths_[v].degree;
                    gens[{paths_[v].source, paths_[u].target, deg}].push_back(std::move(g));
                }
            }
        }
        nf_.assign(paths_.size(), {});
        std::map<Cell, std::pair<Matrix, std::vector<std::size_t>>> cell_data;
        for (const auto& [cell, idx] : cell_paths) {
            std::map<std::size_t, std::size_t> local;
            for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = k;
            const auto& gl = gens[cell];
            Matrix g(idx.size(), gl.size());
            for (std::size_t c = 0; c < gl.size(); ++c)
                for (const auto& [pi, v] : gl[c]) g(local.at(pi), c) += v;
            const Matrix gb = column_space_basis(g);
            // Stabilization witness: the two longest lengths must vanish.
            std::vector<std::size_t> long_paths;
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (static_cast<int>(paths_[idx[k]].arrows.size()) >= bound_ - 1) long_paths.push_back(k);
            if (!long_paths.empty()) {
                Matrix e = Matrix::identity(idx.size()).select_cols(long_paths);
                if (!in_column_space(gb, e))
                    throw NotStabilized("paths of length " + std::to_string(bound_ - 1) + ".." + std::to_string(bound_) +
                                        " survive; raise the length bound above " + std::to_string(bound_));
            }
            std::vector<std::size_t> chosen;
            for (auto c : independent_columns(hstack(gb, Matrix::identity(idx.size()))))
                if (c >= gb.cols()) chosen.push_back(c - gb.cols());
            cell_data[cell] = {gb, chosen};
            for (auto k : chosen) basis_paths_.push_back(idx[k]);
        }
        // Global basis order: length, then enumeration order (trivial paths first).
        std::sort(basis_paths_.begin(), basis_paths_.end(), [&](std::size_t a, std::size_t b) {
            if (paths_[a].arrows.size() != paths_[b].arrows.size()) return paths_[a].arrows.size() < paths_[b].arrows.size();
            return a < b;
        });
        std::map<std::size_t, std::size_t> global;
        for (std::size_t k = 0; k < basis_paths_.size(); ++k) global[basis_paths_[k]] = k;
        for (const auto& [cell, idx] : cell_paths) {
            const auto& [gb, chosen] = cell_data[cell];
            if (chosen.empty()) continue;
            Matrix s = hstack(Matrix::identity(idx.size()).select_cols(chosen), gb);
            auto x = solve(s, Matrix::identity(idx.size()));
            require(x.has_value(), "normal form system must be solvable");
            for (std::size_t k = 0; k < idx.size(); ++k)
                for (std::size_t c = 0; c < chosen.size(); ++c)
                    if (!(*x)(c, k).is_zero()) nf_[idx[k]].emplace_back(global.at(idx[chosen[c]]), (*x)(c, k));
        }
        for (auto& v : nf_) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }
};

std::string path_label(const GradedQuiverPresentation& p, const Path& path) {
    if (path.arrows.empty()) return "e" + p.vertices[path.source];
    std::string s;
    for (std::size_t k = 0; k < path.arrows.size(); ++k) s += (k ? "*" : "") + p.arrows[path.arrows[k]].name;
    return s;
}

}  // namespace

FinDimGradedAlgebra enumerate_basis(const GradedQuiverPresentation& p, int length_bound) {
    p.check();
    PathContext ctx(p, length_bound);
    std::vector<BasisElement> basis;
    for (auto pi : ctx.basis_paths()) {
        const Path& path = ctx.path(pi);
        basis.push_back(BasisElement{path_label(p, path), path.source, path.target, path.degree});
    }
    std::vector<std::size_t> idem(p.vertices.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (ctx.path(ctx.basis_paths()[k]).arrows.empty()) idem[ctx.path(ctx.basis_paths()[k]).source] = k;
    FinDimGradedAlgebra a(p.vertices, basis, idem);
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Path& pi = ctx.path(ctx.basis_paths()[i]);
            const Path& pj = ctx.path(ctx.basis_paths()[j]);
            if (pi.source != pj.target) continue;
            std::vector<int> w = pi.arrows;
            w.insert(w.end(), pj.arrows.begin(), pj.arrows.end());
            a.set_product(i, j, ctx.normal_form(w, pj.source));
        }
    Matrix d(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Path& pj = ctx.path(ctx.basis_paths()[j]);
        for (const auto& [c, w] : ctx.differential_words(pj.arrows)) {
            int tv = w.empty() ? pj.source : -1;
            for (const auto& [k, v] : ctx.normal_form(w, tv)) d(k, j) += c * v;
        }
    }
    a.set_differential(d);
    return a;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

bool ValidationReport::ok() const {
    for (const auto& [k, v] : checks)
        if (!v) return false;
    return true;
}

namespace {

Matrix unit_vec(std::size_t n, std::size_t i) {
    Matrix e(n, 1);
    e(i, 0) = Scalar(1);
    return e;
}

Matrix sparse_col(std::size_t n, const FinDimGradedAlgebra::SparseVec& v) {
    Matrix e(n, 1);
    for (const auto& [k, x] : v) e(k, 0) += x;
    return e;
}

}  // namespace

ValidationReport validate(const FinDimGradedAlgebra& a) {
    ValidationReport r;
    const std::size_t n = a.dim();
    auto fail = [&](const std::string& axiom, const std::string& msg) {
        r.checks[axiom] = false;
        if (r.failures.size() < 50) r.failures.push_back(axiom + ": " + msg);
    };
    for (const char* k : {"associativity", "unitality", "grading", "leibniz", "d_squared", "d_degree", "connective"})
        r.checks[k] = true;
    const auto& b = a.basis();
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i].degree > 0) fail("connective", b[i].label + " has positive degree");
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, v] : a.product(i, j)) {
                if (b[k].degree != b[i].degree + b[j].degree || b[k].source != b[j].source || b[k].target != b[i].target)
                    fail("grading", b[i].label + " * " + b[j].label);
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix bij = sparse_col(n, a.product(i, j));
            for (std::size_t k = 0; k < n; ++k) {
                const Matrix lhs = a.multiply(bij, unit_vec(n, k));
                const Matrix rhs = a.multiply(unit_vec(n, i), sparse_col(n, a.product(j, k)));
                if (lhs != rhs) fail("associativity", "(" + b[i].label + " " + b[j].label + ") " + b[k].label);
            }
        }
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        const std::size_t e = a.idempotent(v);
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix left = sparse_col(n, a.product(e, j));
            const Matrix right = sparse_col(n, a.product(j, e));
            const Matrix expect_l = (static_cast<std::size_t>(b[j].target) == v) ? unit_vec(n, j) : Matrix(n, 1);
            const Matrix expect_r = (static_cast<std::size_t>(b[j].source) == v) ? unit_vec(n, j) : Matrix(n, 1);
            if (left != expect_l || right != expect_r) fail("unitality", "e_" + a.vertices()[v] + " and " + b[j].label);
        }
    }
    const Matrix& d = a.differential();
    if (!(d * d).is_zero()) fail("d_squared", "d o d != 0");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (!d(k, j).is_zero() && b[k].degree != b[j].degree + 1) fail("d_degree", "d(" + b[j].label + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix lhs = d * sparse_col(n, a.product(i, j));
            const Scalar sgn((b[i].degree % 2 == 0) ? 1 : -1);
            const Matrix rhs = a.multiply(d.col(i), unit_vec(n, j)) + sgn * a.multiply(unit_vec(n, i), d.col(j));
            if (lhs != rhs) fail("leibniz", b[i].label + " * " + b[j].label);
        }
    return r;
}

ValidationReport validate(const GradedQuiverPresentation& p, const FinDimGradedAlgebra& a) {
    ValidationReport r = validate(a);
    r.checks["ideal_closed_under_d"] = true;
    // Find the smallest bound for which the presentation stabilizes.
    std::optional<PathContext> ctx;
    for (int bound = 2; bound <= 32 && !ctx; ++bound) {
        try {
            ctx.emplace(p, bound);
        } catch (const NotStabilized&) {
        }
    }
    if (!ctx) {
        r.checks["ideal_closed_under_d"] = false;
        r.failures.push_back("ideal_closed_under_d: presentation does not stabilize");
        return r;
    }
    if (ctx->basis_paths().size() != a.dim()) {
        r.checks["dimension_matches"] = false;
        r.failures.push_back("dimension_matches: algebra was not built from this presentation");
    }
    for (std::size_t ri = 0; ri < p.relations.size(); ++ri) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& t : p.relations[ri]) {
            std::vector<int> w;
            for (const auto& name : t.path) w.push_back(arrow_index(p, name));
            for (const auto& [c, word] : ctx->differential_words(w))
                for (const auto& [k, v] : ctx->normal_form(word, -1)) acc[k] += t.coef * c * v;
        }
        for (const auto& [k, v] : acc)
            if (!v.is_zero()) {
                r.checks["ideal_closed_under_d"] = false;
                r.failures.push_back("ideal_closed_under_d: d(relation " + std::to_string(ri) + ") not in the ideal");
                break;
            }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Truncation
// ---------------------------------------------------------------------------

AlgebraTruncation truncate_algebra(const FinDimGradedAlgebra& a, int d) {
    if (d < 1) throw DimensionError("truncation needs d >= 1");
    const std::size_t n = a.dim();
    const int edge = -d + 1;
    const auto top = a.degree_part(edge), low = a.degree_part(-d);
    // Image of d(A^{-d}) inside A^{-d+1}, and a complement spanned by basis elements.
    Matrix img = column_space_basis(a.differential().select_rows(top).select_cols(low));
    Matrix comp = complement_columns(img);
    std::vector<std::size_t> keep_top;
    for (std::size_t c = 0; c < comp.cols(); ++c)
        for (std::size_t r = 0; r < comp.rows(); ++r)
            if (!comp(r, c).is_zero()) keep_top.push_back(top[r]);
    std::set<std::size_t> keep_set(keep_top.begin(), keep_top.end());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
        if (a.element(i).degree > edge || keep_set.count(i)) kept.push_back(i);
    std::map<std::size_t, std::size_t> new_index;
    for (std::size_t k = 0; k < kept.size(); ++k) new_index[kept[k]] = k;

    Matrix proj(kept.size(), n);
    for (std::size_t k = 0; k < kept.size(); ++k)
        if (a.element(kept[k]).degree > edge) proj(k, kept[k]) = Scalar(1);
    if (!top.empty()) {
        const Matrix inv = inverse(hstack(img, comp));
        for (std::size_t c = 0; c < comp.cols(); ++c) {
            const std::size_t row = new_index.at(keep_top[c]);
            for (std::size_t r = 0; r < top.size(); ++r) proj(row, top[r]) = inv(img.cols() + c, r);
        }
    }
    Matrix lift(n, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) lift(kept[k], k) = Scalar(1);

    std::vector<BasisElement> basis;
    for (auto i : kept) basis.push_back(a.element(i));
    std::vector<std::size_t> idem;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) idem.push_back(new_index.at(a.idempotent(v)));
    FinDimGradedAlgebra t(a.vertices(), basis, idem);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) {
            const Matrix prod = proj * sparse_col(n, a.product(kept[i], kept[j]));
            FinDimGradedAlgebra::SparseVec v;
            for (std::size_t k = 0; k < kept.size(); ++k)
                if (!prod(k, 0).is_zero()) v.emplace_back(k, prod(k, 0));
            t.set_product(i, j, std::move(v));
        }
    t.set_differential(proj * a.differential() * lift);
    return {t, proj};
}

}  // namespace dext
