#pragma once
// Right DG-modules over a finite-dimensional connective graded DG-algebra
// and the d-extended module category dem(Lambda): semifree resolutions,
// windowed derived Hom, kernels / cokernels of 3-term data, loop and
// suspension objects, n-mono / n-epi predicates, projective presentations,
// d-iterated cokernels and kernels, k-duality and the self-injectivity probe.
//
// Conventions:
//   * modules are right modules; a basis element m carries a degree and a
//     vertex v with m = m e_v. The action of an algebra element x : u -> v
//     maps M e_v to M e_u and has degree |x|;
//   * action(j) is the matrix of m |-> m * b_j on the whole space; the
//     Leibniz rule reads d(m a) = d(m) a + (-1)^{|m|} m d(a);
//   * shifts: (M[k])^i = M^{i+k}, differential (-1)^k d, action unchanged;
//   * cone(f) = X[1] (+) Y with d(x, y) = (-dx, f x + dy), cocone = cone[-1];
//   * a map of degree p is Lambda-linear when f(m a) = f(m) a.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dext/complex.hpp"
#include "dext/quiver.hpp"

namespace dext {

using AlgebraPtr = std::shared_ptr<const FinDimGradedAlgebra>;

class DGModule {
public:
    DGModule() = default;
    // Validates shapes, homogeneity, d^2 = 0, unitality, associativity and
    // the Leibniz rule; throws NotClosed / DimensionError.
    DGModule(AlgebraPtr alg, std::vector<int> degrees, std::vector<int> vertices, Matrix differential,
             std::vector<Matrix> action);

    static DGModule zero(AlgebraPtr alg);
    // e_v Lambda, shifted: (e_v Lambda)[shift].
    static DGModule free(AlgebraPtr alg, int vertex, int shift = 0);
    static DGModule regular(AlgebraPtr alg);  // Lambda_Lambda = (+)_v e_v Lambda
    // The simple module at v concentrated in the given degree.
    static DGModule simple(AlgebraPtr alg, int vertex, int degree = 0);

    const FinDimGradedAlgebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    std::size_t dim() const { return deg_.size(); }
    int degree(std::size_t i) const { return deg_[i]; }
    int vertex(std::size_t i) const { return vert_[i]; }
    const std::vector<int>& degrees() const { return deg_; }
    const std::vector<int>& vertices() const { return vert_; }
    const Matrix& differential() const { return diff_; }
    const Matrix& action(std::size_t j) const { return act_[j]; }
    const std::vector<Matrix>& actions() const { return act_; }
    bool has_zero_differential() const { return diff_.is_zero(); }

    // Basis indices of the given degree (and vertex), ascending.
    std::vector<std::size_t> indices(int degree) const;
    std::vector<std::size_t> indices(int degree, int vertex) const;
    int min_degree() const;  // of the support; 0 when zero
    int max_degree() const;

    // Underlying complex (blocks by degree in index order) and its e_v part.
    CochainComplex complex() const;
    CochainComplex complex(int vertex) const;
    std::map<int, std::size_t> graded_dims() const;
    // degree -> dims of H^degree(M) e_v per vertex.
    std::map<int, std::vector<std::size_t>> cohomology_table() const;
    std::map<int, std::size_t> cohomology_dims() const;
    std::size_t total_cohomology() const;
    bool is_acyclic() const { return total_cohomology() == 0; }
    // H^i(M) = 0 for i <= -d and i > 0.
    bool in_dem(int d) const;

    Json to_json() const;

private:
    AlgebraPtr alg_;
    std::vector<int> deg_, vert_;
    Matrix diff_;
    std::vector<Matrix> act_;
};

// A homogeneous map of right modules; matrix is target.dim() x source.dim().
struct ModuleMap {
    DGModule source;
    DGModule target;
    int degree = 0;
    Matrix matrix;

    bool respects_grading() const;
    bool is_linear() const;
    bool is_closed() const;  // d f = (-1)^p f d
    ChainMap chain_map() const;
};

ModuleMap identity_map(const DGModule& m);
ModuleMap zero_map(const DGModule& x, const DGModule& y, int degree = 0);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
bool is_quasi_iso(const ModuleMap& f);

DGModule shift(const DGModule& m, int k);
ModuleMap shift(const ModuleMap& f, int k);
DGModule direct_sum(const std::vector<DGModule>& parts);
ModuleMap sum_inclusion(const std::vector<DGModule>& parts, std::size_t which);
ModuleMap sum_projection(const std::vector<DGModule>& parts, std::size_t which);
DGModule cone(const ModuleMap& f);
DGModule cocone(const ModuleMap& f);
ModuleMap cone_inclusion(const ModuleMap& f);   // Y -> Cone f
ModuleMap cocone_projection(const ModuleMap& f);  // Cocone f -> X

// Submodule spanned by the given homogeneous columns (must be closed under
// d and the action) and quotient by such a submodule.
struct ModuleInclusion {
    DGModule module;
    ModuleMap map;  // sub -> M, or M -> quotient
    // Linear splitting of map (not a module map): a left inverse of the
    // inclusion, or a right inverse of the projection.
    Matrix section;
};
ModuleInclusion submodule(const DGModule& m, const Matrix& columns);
ModuleInclusion quotient(const DGModule& m, const Matrix& columns);
// Smart truncations: tau_le(M, k) is a submodule, tau_gt(M, k) a quotient.
ModuleInclusion tau_le(const DGModule& m, int k);
ModuleInclusion tau_gt(const DGModule& m, int k);

// Graded Lambda-linear maps of degree p (not up to homotopy), as a basis.
std::vector<ModuleMap> linear_maps(const DGModule& x, const DGModule& y, int p);
// Closed degree-0 maps X -> Y (basis).
std::vector<ModuleMap> closed_maps(const DGModule& x, const DGModule& y);

// ---- semifree modules --------------------------------------------------

struct Generator {
    int degree = 0;
    int vertex = 0;
    // d(g) as coordinates in the module spanned by the earlier generators.
    Matrix differential;
};

class SemiFreeModule {
public:
    SemiFreeModule() = default;
    explicit SemiFreeModule(AlgebraPtr alg);

    // Appends a generator; d must be a cycle of degree deg + 1 in the
    // current module, vertex-homogeneous at v (ShapeError otherwise).
    void add_generator(int degree, int vertex, const Matrix& d);

    const std::vector<Generator>& generators() const { return gens_; }
    const DGModule& module() const { return module_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    // Basis index of g_k = g_k e_{v_k} in module().
    std::size_t generator_index(std::size_t k) const { return gen_index_[k]; }
    // Basis index of g_k b_j, or none when b_j does not start at v_k.
    std::optional<std::size_t> index_of(std::size_t k, std::size_t j) const;
    // Generator of each basis element and the algebra basis element.
    std::pair<std::size_t, std::size_t> origin(std::size_t i) const { return origin_[i]; }
    int min_generator_degree() const;
    int max_generator_degree() const;

    // The sub-semifree module on the generators with degree >= lo, as a
    // submodule of module() (generator order is kept).
    SemiFreeModule generators_from(int lo) const;

private:
    AlgebraPtr alg_;
    std::vector<Generator> gens_;
    DGModule module_;
    std::vector<std::size_t> gen_index_;
    std::vector<std::pair<std::size_t, std::size_t>> origin_;
    void rebuild();
};

struct Resolution {
    SemiFreeModule p;
    ModuleMap comparison;  // P -> M, quasi-iso on H^i for i >= -depth
    int depth = 0;
};

// Hom complex from a semifree module to an arbitrary module, coordinates
// = values on generators.
class SemiFreeHom {
public:
    SemiFreeHom(const SemiFreeModule& p, const DGModule& n);
    std::size_t dim(int p) const;
    Matrix differential(int p) const;  // Hom^p -> Hom^{p+1}
    ModuleMap to_map(int p, const Matrix& coords) const;
    Matrix to_coords(const ModuleMap& f) const;
    Cohomology cohomology(int p) const;

private:
    SemiFreeModule p_;
    DGModule n_;
    std::vector<std::size_t> slots(std::size_t k, int p) const;
};

struct RHom {
    std::map<int, std::size_t> dims;  // degree -> dim H^degree
    int depth = 0;
    int lo = 0, hi = 0;
};

// Verdict of the self-injectivity probe for one shift.
struct ShiftProbe {
    int shift = 0;
    bool supports_match = false;  // graded dims per vertex agree
    bool quasi_iso_found = false;
    std::string detail;
};
struct SelfInjectivityReport {
    std::vector<ShiftProbe> probes;
    bool positive() const;
    Json to_json() const;
};

// Result of checking the two iterated-cokernel implementations.
struct IteratedResult {
    DGModule direct;
    DGModule inductive;
    ModuleMap comparison;  // direct -> inductive (or inductive -> direct for kernels)
    bool agree = false;
};

struct PresentationStage {
    DGModule free;      // P^{-i}
    DGModule target;    // M^{-i}
    ModuleMap epi;      // P^{-i} -> M^{-i}, a d-epimorphism
    ModuleMap kernel;   // M^{-(i+1)} -> P^{-i}
};
struct ProjectivePresentation {
    std::vector<PresentationStage> stages;  // i = 0..d
    SemiFreeModule band;                    // generators in degrees [-d, 0]
    ModuleMap band_map;                     // band -> M
};

class DemCategory {
public:
    // Lambda must be connective; d >= 1. Throws DimensionError when Lambda
    // has cohomology in degrees <= -d.
    DemCategory(AlgebraPtr alg, int d);

    const FinDimGradedAlgebra& algebra() const { return *alg_; }
    const AlgebraPtr& algebra_ptr() const { return alg_; }
    int d() const { return d_; }
    int default_depth() const { return d_ + 2; }

    DGModule free(int vertex) const { return DGModule::free(alg_, vertex); }
    DGModule simple(int vertex, int degree = 0) const { return DGModule::simple(alg_, vertex, degree); }

    Resolution resolve(const DGModule& m, int depth) const;
    Resolution resolve(const DGModule& m) const { return resolve(m, default_depth()); }
    // dims of H^i RHom(M, N) for lo <= i <= hi; WindowTooDeep if the
    // resolution depth cannot certify hi.
    RHom rhom(const DGModule& m, const DGModule& n, int lo, int hi, int depth) const;
    RHom rhom(const DGModule& m, const DGModule& n, int lo, int hi) const {
        return rhom(m, n, lo, hi, default_depth());
    }
    // Cocycle representatives P_M -> N of a basis of H^0 RHom(M, N).
    std::vector<ModuleMap> derived_hom0_basis(const Resolution& rm, const DGModule& n) const;

    // kernel3(f) = tau_{<=0} Cocone(f) with k : K -> X; cokernel3(f) =
    // tau_{>-d} Cone(f) with c : Y -> C.
    ModuleInclusion kernel3(const ModuleMap& f) const;
    ModuleInclusion cokernel3(const ModuleMap& f) const;
    DGModule omega(const DGModule& m) const;
    DGModule sigma(const DGModule& m) const;
    DGModule omega_power(const DGModule& m, int k) const;
    DGModule sigma_power(const DGModule& m, int k) const;

    // Definition with * over the indecomposable projectives (n-mono) or
    // over the shifted simples S_v[j], 0 <= j < d (n-epi), cross-checked
    // against Omega^{n-1} Ker = 0 resp. Sigma^{n-1} Cok = 0; disagreement
    // throws CharacterizationMismatch.
    bool is_n_mono(const ModuleMap& f, int n) const;
    bool is_n_epi(const ModuleMap& f, int n) const;

    // A d-epimorphism from a free module covering H^0(M).
    ModuleMap projective_cover(const DGModule& m) const;
    ProjectivePresentation projective_presentation(const DGModule& m) const;

    // Cok_d of a band with generators in degrees [-d, 0] and Ker_d of one
    // with generators in [0, d]; both implementations, compared by an
    // explicit quasi-isomorphism. ShapeError outside the band.
    IteratedResult iterated_cokernel(const SemiFreeModule& c) const;
    IteratedResult iterated_kernel(const SemiFreeModule& c) const;

    // Isomorphism in D(Lambda): equal cohomology tables, then a direct closed
    // quasi-iso search in both directions, then a search through the
    // resolution of X.
    bool is_quasi_isomorphic(const DGModule& x, const DGModule& y) const;

    // Lambda -> D(Lambda)[s] quasi-iso search for each s.
    SelfInjectivityReport self_injectivity_probe(const std::vector<int>& shifts) const;
    SelfInjectivityReport self_injectivity_probe() const { return self_injectivity_probe({d_ - 1, d_}); }

private:
    AlgebraPtr alg_;
    int d_;
    mutable std::mt19937 rng_{20240611u};
    std::optional<ModuleMap> find_quasi_iso(const DGModule& x, const DGModule& y) const;
};

// ---- duality -----------------------------------------------------------

// Opposite algebra: same basis and vertices, b_i *op b_j = (-1)^{|i||j|} b_j b_i,
// arrows reversed.
FinDimGradedAlgebra opposite_algebra(const FinDimGradedAlgebra& a);
// D(M)^i = (M^{-i})^*, a right module over alg_op (which must be
// opposite_algebra(M.algebra())): (phi * a)(m) = (-1)^{|phi||a|} phi(m a).
DGModule k_dual(const DGModule& m, AlgebraPtr alg_op);
// D(Lambda) as a right Lambda-module: (phi * a)(x) = phi(a x).
DGModule dual_regular(AlgebraPtr alg);

// Radical of a basic connective algebra (basis minus idempotents); throws
// DimensionError when some e_v Lambda^0 e_v is not one-dimensional.
std::vector<std::size_t> radical_basis(const FinDimGradedAlgebra& a);

// ---- brute force ---------------------------------------------------------

// All indecomposable graded modules with zero differential, degrees in
// (-d, 0] and total dimension <= bound, up to isomorphism, enumerated over
// the session field, which must be a small prime field.
std::vector<DGModule> enumerate_indecomposables(AlgebraPtr alg, int d, int bound);
// Graded module isomorphism / indecomposability for zero-differential modules
// by exhaustive search over a small prime field.
bool graded_isomorphic(const DGModule& x, const DGModule& y);
bool graded_indecomposable(const DGModule& m);

}  // namespace dext
