#pragma once
// The bridge from the cluster category to d-extended modules: the graded
// endomorphism algebra Lambda = tau^{>-d} End(M) of a cluster-tilting object,
// the transport F_M(X) = tau^{>-d} Hom(M[-d], X) with its action by
// precomposition, an exact calculus of degree-0 morphisms in D(Lambda)
// between finitely many modules (composition through lifted resolutions),
// and the verification report comparing both sides.
//
// The transport is graded: the image modules carry zero differential. This
// is validated by the independent dimension and composition comparisons,
// never assumed by them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dext/dem.hpp"
#include "dext/quotient.hpp"

namespace dext {

// An isomorphism from the algebra presented by a quiver to a given algebra:
// vertex_map[i] is the target vertex of presented vertex i, and matrix maps
// the presented basis (enumerate_basis order) to the target basis.
struct AlgebraIsomorphism {
    std::vector<int> vertex_map;
    std::vector<std::string> arrow_images;  // per arrow: target basis label
    Matrix matrix;
};
// Tries every vertex bijection; arrows are sent to complements of rad^2 in
// the matching (source, target, degree) block. The candidate map is checked
// to be bijective, grading-preserving and multiplicative on all basis pairs.
std::optional<AlgebraIsomorphism> find_algebra_isomorphism(const GradedQuiverPresentation& p,
                                                           const FinDimGradedAlgebra& target);

// Degree-0 morphisms in D(Lambda) between a fixed list of modules in dem:
// bases of H^0 RHom, composition, radicals, and the AR quiver they define.
class DerivedHomCalculus {
public:
    DerivedHomCalculus(const DemCategory& c, std::vector<DGModule> objects);

    std::size_t size() const { return objects_.size(); }
    const DGModule& object(std::size_t i) const { return objects_[i]; }
    // dim H^p RHom(X_i, X_j) for -d < p <= 0.
    std::map<int, std::size_t> dims(std::size_t i, std::size_t j) const;
    std::size_t hom0_dim(std::size_t i, std::size_t j) const { return h0_[i][j].dim; }
    // Class coordinates of g o f for f in H^0(i, j), g in H^0(j, k).
    Matrix compose(std::size_t i, std::size_t j, std::size_t k, const Matrix& g, const Matrix& f) const;
    Matrix identity(std::size_t i) const;
    // sum_p tr H^p(f) on cohomology, for f in H^0(i, i).
    Scalar trace(std::size_t i, const Matrix& f) const;
    // The scalar c with f = c + (nilpotent) when End(X_i) is local: the
    // normalized trace on the first block H^p(X_i) e_v whose dimension is
    // invertible in the field (so the test also works in characteristic p).
    Scalar scalar_part(std::size_t i, const Matrix& f) const;
    // Radical of H^0(i, j) as class-coordinate columns: everything for
    // i != j, the endomorphisms of scalar part zero for i == j (valid when
    // End is local).
    Matrix radical(std::size_t i, std::size_t j) const;
    // End(X_i) is local: the scalar-part-zero endomorphisms form a nilpotent
    // ideal and the identity has scalar part one.
    bool local_endomorphisms(std::size_t i) const;
    // For objects with local endomorphism rings: some g o f has nonzero scalar part.
    bool isomorphic(std::size_t i, std::size_t j) const;
    // Irreducible-map multiplicities dim rad / rad^2 (no translation).
    QuiverGraph ar_quiver(const std::vector<std::string>& names) const;

private:
    const DemCategory* c_;
    std::vector<DGModule> objects_;
    std::vector<Resolution> res_;          // full resolutions (lifting targets)
    std::vector<SemiFreeModule> sub_;      // generators of degree >= -d-1
    std::vector<std::vector<Cohomology>> h0_;
    // lifts_[i][j][b]: matrix of a lift of basis class b to P_i^{sub} -> P_j.
    mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Matrix>> lifts_;
    const std::vector<Matrix>& lifts(std::size_t i, std::size_t j) const;
};

// Lambda = tau^{>-d} End(M) and the transport of objects and morphisms.
class MoritaContext {
public:
    explicit MoritaContext(const QuotientCategory& q);

    const QuotientCategory& quotient() const { return *q_; }
    const ClusterCategory& base() const { return q_->base(); }
    int d() const { return q_->d(); }
    const AlgebraPtr& lambda() const { return lambda_; }
    const DemCategory& dem() const { return dem_; }
    // The morphism of the cluster category behind basis element j of Lambda.
    const ClusterMorphism& lambda_element(std::size_t j) const { return elements_[j]; }

    // F_M(X): component of degree -j at vertex v is Hom(M_v, X[d - j]),
    // 0 <= j < d, in the hom_basis order; action by precomposition.
    DGModule transport(ObjectId x) const;
    // F_M(f) for a degree-0 morphism f : X -> Y (postcomposition).
    ModuleMap transport(const ClusterMorphism& f) const;

    // {"vertices", "objects", "graded_dims", "basis", "products", ...}
    Json lambda_json() const;

private:
    const QuotientCategory* q_;
    std::vector<ClusterMorphism> elements_;
    AlgebraPtr lambda_;
    DemCategory dem_;
    mutable std::map<ObjectId, DGModule> cache_;
    // Basis elements of the component of F(X) at (v, j).
    std::vector<ClusterMorphism> component_basis(ObjectId x, std::size_t v, int j) const;
    static AlgebraPtr build_lambda(const QuotientCategory& q, std::vector<ClusterMorphism>& elements);
};

struct BridgePair {
    std::string source, target;
    std::map<int, std::size_t> quotient_dims, lambda_dims;
    bool agree() const { return quotient_dims == lambda_dims; }
};

struct VerificationReport {
    std::vector<BridgePair> pairs;
    bool hom_dims_agree = true;
    bool images_indecomposable = true;
    bool images_pairwise_nonisomorphic = true;
    bool add_m_killed = true;
    bool functorial = true;
    std::size_t functoriality_samples = 0;
    bool projectives_match = true;   // F(M_v[-d]) ~ e_v Lambda
    bool injectives_match = true;    // (+) F(M_v[d]) ~ D(Lambda)[d-1]
    bool ar_quiver_matches = true;   // arrows of the Lambda-side AR quiver
    bool round_trip = true;          // presentation + Cok_d recovers F(X)
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    Json to_json() const;
};

// The full comparison; the brute-force essential surjectivity part is run
// separately (it needs a small prime field).
VerificationReport verify_equivalence(const MoritaContext& ctx);

// Every brute-force indecomposable dem module of dimension <= bound over
// the context's Lambda is graded-isomorphic to a transported object. Needs a
// small prime session field (the context must be built inside it).
struct SurjectivityReport {
    std::size_t found = 0;
    std::size_t matched = 0;
    std::vector<std::string> matches;  // transported object per found module, "" if none
    bool ok() const { return found == matched; }
};
SurjectivityReport essential_surjectivity(const MoritaContext& ctx, int bound);

}  // namespace dext
