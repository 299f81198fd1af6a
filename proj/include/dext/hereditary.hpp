#pragma once
// The bounded derived category of the linearly oriented path algebra
// kA_n (1 -> 2 -> ... -> n), modelled by bounded complexes of
// indecomposable projectives.
//
// Conventions:
//   * P_i is the projective at vertex i; as a representation it is the
//     interval [i, n]. Hom(P_a, P_b) = k exactly when b <= a, spanned by the
//     inclusion [a, n] in [b, n]; composites of inclusions are inclusions.
//   * A differential entry (s, t) of d^i is the scalar multiplying the
//     inclusion from the t-th summand of degree i to the s-th summand of
//     degree i + 1. So the underlying scalar matrices compose like the maps.
//   * The interval module M[a, b] has support a..b. Its projective
//     resolution is P_{b+1} -> P_a (just P_a when b = n).
//   * StalkKey{a, b, s} stands for M[a, b][s], i.e. the module placed in
//     cohomological degree -s.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dext/complex.hpp"
#include "dext/json_io.hpp"

namespace dext {

struct StalkKey {
    int a = 1;
    int b = 1;
    int s = 0;
    auto operator<=>(const StalkKey&) const = default;
    std::string str() const;
};

// True when there is a nonzero map P_from -> P_to.
inline bool has_path(int from, int to) { return to <= from; }

class ProjectiveComplex {
public:
    ProjectiveComplex() = default;
    explicit ProjectiveComplex(int n) : n_(n) {}
    // labels[i] lists the projective labels (1..n) in degree i; diffs[i] is
    // |labels[i+1]| x |labels[i]|. Validates the path pattern and d^2 = 0.
    ProjectiveComplex(int n, std::map<int, std::vector<int>> labels, std::map<int, Matrix> diffs);

    int n() const { return n_; }
    const std::vector<int>& labels(int i) const;
    const std::map<int, std::vector<int>>& all_labels() const { return labels_; }
    Matrix d(int i) const { return scalar_.d(i); }
    // The scalar matrices as a complex of vector spaces. Chain maps between
    // projective complexes are ChainMaps between these whose blocks respect
    // the path pattern.
    const CochainComplex& scalar() const { return scalar_; }
    bool is_zero() const { return scalar_.is_zero(); }
    std::size_t num_terms() const { return scalar_.total_dim(); }
    // No differential entry is an isomorphism P_l -> P_l.
    bool is_minimal() const;
    // Evaluation at vertex v: the complex of vector spaces X e_v.
    CochainComplex at_vertex(int v) const;

private:
    int n_ = 0;
    std::map<int, std::vector<int>> labels_;
    CochainComplex scalar_;
};

struct ProjectiveMap {
    ProjectiveComplex source;
    ProjectiveComplex target;
    ChainMap map;
    int degree() const { return map.degree; }
    bool respects_paths() const;
};

ProjectiveMap identity_map(const ProjectiveComplex& x);
ProjectiveMap compose(const ProjectiveMap& g, const ProjectiveMap& f);

ProjectiveComplex projective_stalk(int n, int i, int degree = 0);
ProjectiveComplex stalk(int n, const StalkKey& k);
ProjectiveComplex shift(const ProjectiveComplex& x, int k);
ProjectiveMap shift(const ProjectiveMap& f, int k);
ProjectiveComplex direct_sum(const std::vector<ProjectiveComplex>& parts);
// Summand inclusions / projections for direct_sum(parts).
ProjectiveMap sum_inclusion(const std::vector<ProjectiveComplex>& parts, std::size_t which);
ProjectiveMap sum_projection(const std::vector<ProjectiveComplex>& parts, std::size_t which);

ProjectiveComplex cone(const ProjectiveMap& f);
ProjectiveComplex cocone(const ProjectiveMap& f);
// Y -> Cone(f), Cone(f) -> X[1], and the cocone maps X[-1] <- Cocone(f) -> ... :
// cocone_projection : Cocone(f) -> X.
ProjectiveMap cone_inclusion(const ProjectiveMap& f);
ProjectiveMap cone_projection(const ProjectiveMap& f);
ProjectiveMap cocone_projection(const ProjectiveMap& f);

// Gaussian cancellation of isomorphism entries P_l -> P_l in differentials.
// The result is homotopy equivalent to the input and minimal.
ProjectiveComplex minimize(const ProjectiveComplex& x);

// The hom complex restricted to path-respecting maps; its cohomology in
// degree p is Hom_{D^b}(X, Y[p]).
class ProjectiveHom {
public:
    ProjectiveHom(const ProjectiveComplex& x, const ProjectiveComplex& y);

    const ProjectiveComplex& source() const { return x_; }
    const ProjectiveComplex& target() const { return y_; }
    const CochainComplex& complex() const { return complex_; }

    ProjectiveMap to_map(int p, const Matrix& coords) const;
    Matrix to_coords(const ProjectiveMap& f) const;

    // Hom_{D^b}(X, Y[p]) with chosen basis; cached.
    const Cohomology& cohomology(int p) const;
    std::size_t dim(int p) const { return cohomology(p).dim; }
    // Representative of the class with the given coordinates (dim x 1).
    ProjectiveMap representative(int p, const Matrix& class_coords) const;
    ProjectiveMap basis_map(int p, std::size_t j) const;
    // Coordinates of the homotopy class of a closed map in the basis.
    Matrix class_of(const ProjectiveMap& f) const;
    // True if the closed map f is null-homotopic.
    bool is_null_homotopic(const ProjectiveMap& f) const;

private:
    struct Entry {
        int degree;  // source degree
        std::size_t row, col;
    };
    ProjectiveComplex x_, y_;
    std::map<int, std::vector<Entry>> coords_;  // per hom degree p
    CochainComplex complex_;
    mutable std::map<int, Cohomology> cache_;
};

// Decomposition into shifted interval modules via hereditary formality.
std::vector<StalkKey> decompose(const ProjectiveComplex& x);
// Dimension vector (index v - 1) of H^i(X).
std::vector<long> cohomology_dimension_vector(const ProjectiveComplex& x, int i);
// Isomorphism test in D^b: equal decompositions.
bool isomorphic(const ProjectiveComplex& x, const ProjectiveComplex& y);

// Additive functors given on projectives and extended by totalization:
// Tot^m = (+)_k G(X^k)^{m-k}, d = G(d_X) + (-1)^k d_G, maps applied
// blockwise. This is a strict DG functor and commutes with shifts.
ProjectiveComplex nakayama(const ProjectiveComplex& x);          // nu
ProjectiveComplex nakayama_inverse(const ProjectiveComplex& x);  // nu^{-1}
ProjectiveMap nakayama(const ProjectiveMap& f);
ProjectiveMap nakayama_inverse(const ProjectiveMap& f);
// AR translate tau = nu[-1] and its inverse nu^{-1}[1].
ProjectiveComplex ar_translate(const ProjectiveComplex& x);
ProjectiveComplex ar_translate_inverse(const ProjectiveComplex& x);

Json to_json(const ProjectiveComplex& x);

}  // namespace dext
