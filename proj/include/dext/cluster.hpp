#pragma once
// The (d+1)-cluster category of linear A_n, realized as the orbit category
// D^b(kA_n) / F with F = nu^{-1}[d+1] = tau^{-1}[d].
//
// Every indecomposable is represented by one "domain" stalk: M[a,b][s]
// with 0 <= s < d, or a projective P_a[d]. For a domain object Y the orbit
// keys S_m(Y) (m in Z) are the stalks isomorphic to F^m(Y); S_0(Y) = Y.
//
// A morphism X -> Y[p] in the orbit category is a finite family of homotopy
// classes f_m in Hom_{D^b}(X, S_m(Y)[p]) ("target tagged"), stored as
// coordinates in the cohomology basis of the corresponding hom complex.
// Composition uses the transport Phi(phi) = r o F(phi) o e, where
// e : S(FA) -> F(S(A)) and r : F(S(B)) -> S(FB) are fixed quasi-isomorphisms
// between chosen stalks and the strict image under the totalized functor F.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dext/hereditary.hpp"
#include "dext/json_io.hpp"

namespace dext {

using ObjectId = std::size_t;

struct ClusterMorphism {
    ObjectId source = 0;
    ObjectId target = 0;
    int degree = 0;
    std::map<int, Matrix> components;  // m -> class coordinates (dim x 1)
    bool is_zero() const;
};

// A directed graph with multiplicities and a partial translation.
struct QuiverGraph {
    std::vector<std::string> vertices;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrows;  // (from, to) -> multiplicity
    std::vector<std::pair<std::size_t, std::size_t>> tau;               // (X, tau X)

    // {"vertices": [...], "arrows": [[from, to], ...], "tau": [[X, tauX], ...]}
    // with arrows repeated by multiplicity and all lists sorted.
    Json to_json() const;
    std::string to_dot(const std::string& name) const;
};

// One step of a splicing tower: the approximation C -> K_{i-1} and the
// resulting cocone K_i.
struct ApproximationTerm {
    std::size_t summand;  // index into M
    int m;                // the D^b source is S_{-m}(M_summand)
};

struct RightApproximation {
    std::vector<ApproximationTerm> terms;  // summands of C, in order
    ProjectiveComplex source;              // (+) of the stalks S_{-m}(M_j)
    ProjectiveComplex target;              // (+) of the stalks of the target objects
    ProjectiveMap map;                     // source -> target, closed of degree 0
    std::vector<ObjectId> cocone;          // decomposition of the cocone, canonicalized
};

// Target-tagged left approximation: a single D^b map source -> (+) S_m(M_j).
struct LeftApproximation {
    std::vector<ApproximationTerm> terms;  // summands of C, in order (target S_m(M_summand))
    ProjectiveComplex source;
    ProjectiveComplex target;
    ProjectiveMap map;
};

struct SplicingTower {
    std::vector<std::vector<ObjectId>> k;            // K_0 = {Y}, ..., K_d
    std::vector<RightApproximation> approximations;  // C_i -> K_{i-1}, i = 1..d
    std::vector<bool> in_add_m;                      // flag per K_i
};

struct ClusterTiltingReport {
    bool ok = true;
    // (object, degree i, side) where side is "right" for Hom(X, M[i]) and
    // "left" for Hom(M, X[i]); the object either lies in add M with a
    // nonvanishing hom, or lies outside add M with all homs vanishing.
    struct Violation {
        ObjectId object;
        int degree;
        std::string side;
        std::string reason;
    };
    std::vector<Violation> violations;
};

class ClusterCategory {
public:
    // Enumerates the domain, names objects P(j,k) by walking tau^{-1} from
    // the projectives, and certifies End^0 is local for each object.
    // Throws ScanWindowExceeded if orbit folding does not stabilize.
    ClusterCategory(int n, int d, int scan_cap = 16);

    int n() const { return n_; }
    int d() const { return d_; }
    std::size_t size() const { return keys_.size(); }
    const StalkKey& key(ObjectId x) const { return keys_.at(x); }
    const std::string& name(ObjectId x) const { return names_.at(x); }
    ObjectId find(const std::string& name) const;  // throws UnknownObject
    // Parses "P(0,1)+P(2,1)" (also accepts "P_0^1" style).
    std::vector<ObjectId> parse_objects(const std::string& spec) const;
    ProjectiveComplex lift(ObjectId x) const { return stalk(n_, keys_.at(x)); }

    bool in_domain(const StalkKey& k) const;
    // The object isomorphic to the given stalk, and m with stalk = S_m(object).
    std::pair<ObjectId, int> canonical(const StalkKey& k) const;
    // Objects (with multiplicity) of an arbitrary complex of projectives.
    std::vector<ObjectId> objects_of(const ProjectiveComplex& x) const;
    StalkKey orbit_key(ObjectId y, int m) const;
    // Stalk key of F(k) / F^{-1}(k), computed through the complexes.
    StalkKey apply_f(const StalkKey& k) const;
    StalkKey apply_f_inverse(const StalkKey& k) const;

    ObjectId shift_object(ObjectId x, int k = 1) const;
    ObjectId tau_object(ObjectId x) const;
    ObjectId tau_inverse_object(ObjectId x) const;

    // ---- morphisms -------------------------------------------------------
    const ProjectiveHom& db_hom(const StalkKey& a, const StalkKey& b) const;
    // Orbit powers m with Hom_{D^b}(X, S_m(Y)[p]) nonzero (checked window).
    std::vector<int> hom_orbits(ObjectId x, ObjectId y, int p) const;
    std::size_t hom_dim(ObjectId x, ObjectId y, int p) const;
    std::vector<ClusterMorphism> hom_basis(ObjectId x, ObjectId y, int p) const;
    // Coordinates of f in hom_basis(f.source, f.target, f.degree).
    Matrix coords(const ClusterMorphism& f) const;
    ClusterMorphism from_coords(ObjectId x, ObjectId y, int p, const Matrix& c) const;
    ClusterMorphism identity(ObjectId x) const;
    ClusterMorphism zero(ObjectId x, ObjectId y, int p) const;
    // g o f for f : X -> Y[p], g : Y -> Z[q].
    ClusterMorphism compose(const ClusterMorphism& g, const ClusterMorphism& f) const;
    ClusterMorphism add(const ClusterMorphism& f, const ClusterMorphism& g) const;
    ClusterMorphism scale(const Scalar& s, const ClusterMorphism& f) const;
    // The D^b representative of component m.
    ProjectiveMap component_map(const ClusterMorphism& f, int m) const;
    // Phi^steps : Hom^p(A, B) -> Hom^p(F^steps A, F^steps B) on class coordinates.
    Matrix transport(const StalkKey& a, const StalkKey& b, int p, int steps) const;

    // Source-tagged homs from a domain object into an arbitrary complex:
    // the orbit powers m with Hom_{D^b}(S_{-m}(X), T[p]) nonzero.
    std::vector<int> source_orbits(ObjectId x, const ProjectiveComplex& t, int p) const;
    // Dually, the orbit powers m with Hom_{D^b}(T, S_m(X)[p]) nonzero.
    std::vector<int> target_orbits(ObjectId x, const ProjectiveComplex& t, int p) const;

    // f o - : Hom_C(M_j, source) -> Hom_C(M_j, target) surjective for all j.
    bool is_epic_for(const std::vector<ObjectId>& m, const ProjectiveMap& f) const;
    // - o f : Hom_C(target, M_j) -> Hom_C(source, M_j) surjective for all j.
    bool is_monic_for(const std::vector<ObjectId>& m, const ProjectiveMap& f) const;
    // Whether the closed degree-0 map h : A -> B lies in the ideal of C
    // generated by the given objects.
    bool factors_through(const ProjectiveMap& h, const std::vector<ObjectId>& objects) const;

    // ---- cluster tilting, approximations, towers, AR quiver ---------------
    ClusterTiltingReport cluster_tilting_report(const std::vector<ObjectId>& m) const;
    bool is_cluster_tilting(const std::vector<ObjectId>& m) const {
        return cluster_tilting_report(m).ok;
    }
    // Full-basis right add(M)-approximation of the object (+) targets; with
    // prune = true, redundant summands are removed greedily.
    RightApproximation right_approximation(const std::vector<ObjectId>& m,
                                           const std::vector<ObjectId>& targets, bool prune = false) const;
    RightApproximation right_approximation_of(const std::vector<ObjectId>& m, const ProjectiveComplex& target,
                                              bool prune = false) const;
    // Full-basis left add(M)-approximation of an arbitrary complex.
    LeftApproximation left_approximation(const std::vector<ObjectId>& m, const ProjectiveComplex& source) const;
    // Verifies surjectivity of Hom_C(M_j, C) -> Hom_C(M_j, K) for all j.
    bool approximation_is_surjective(const std::vector<ObjectId>& m, const RightApproximation& a) const;
    SplicingTower splicing_tower(const std::vector<ObjectId>& m, ObjectId y, bool prune = false) const;

    // Radical of Hom^0(X, Y) as coordinate columns (everything except the
    // identity component when X = Y).
    Matrix radical(ObjectId x, ObjectId y) const;
    QuiverGraph ar_quiver() const;
    Json objects_json() const;

private:
    int n_, d_, cap_;
    std::vector<StalkKey> keys_;
    std::vector<std::string> names_;
    std::map<StalkKey, ObjectId> index_;

    mutable std::map<StalkKey, StalkKey> f_cache_, finv_cache_;
    mutable std::map<std::pair<StalkKey, StalkKey>, std::unique_ptr<ProjectiveHom>> hom_cache_;
    struct Identification {
        ProjectiveComplex f_of_stalk;  // F(S(A)), strict image
        ProjectiveMap e;               // S(FA) -> F(S(A))
        ProjectiveMap r;               // F(S(A)) -> S(FA), r e = id
    };
    mutable std::map<StalkKey, Identification> ident_cache_;
    mutable std::map<std::tuple<StalkKey, StalkKey, int>, Matrix> phi_cache_;

    const Identification& identification(const StalkKey& a) const;
    Matrix phi_step(const StalkKey& a, const StalkKey& b, int p) const;
    std::vector<int> orbit_range(ObjectId y, int s_lo, int s_hi) const;
};

}  // namespace dext
