#pragma once
// The ideal quotient of the cluster category by add M for a cluster-tilting
// object M, with its graded structure:
//   * degree 0: Hom_C(X, Y) modulo the maps factoring through add M;
//   * degree -i: Hom^0 of the quotient into the i-th loop object, which is
//     the image of K_i in a splicing tower of Y;
//   * an independent oracle: the cone of the composition map out of the
//     reduced two-sided bar construction over add M, truncated by length.
// Also: projective/injective recognition, the Frobenius test, d-mono and
// d-epi witnesses through two independent characterizations, and the
// AR quiver of the quotient.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dext/cluster.hpp"

namespace dext {

struct DMorphismWitness {
    // Connecting morphism of the associated triangle factors through the
    // objects of C_0^{d-1} (mono) or C_{-d+1}^0 (epi).
    bool via_factorization = false;
    // Restricted hom map (g o -, pi o -) (mono) or (- o f, - o iota) (epi)
    // is surjective on add M.
    bool via_restricted_homs = false;
    bool holds() const { return via_factorization && via_restricted_homs; }
};

class QuotientCategory {
public:
    // Throws NotClusterTilting unless force is set.
    QuotientCategory(const ClusterCategory& base, std::vector<ObjectId> m, bool force = false);

    const ClusterCategory& base() const { return *base_; }
    int d() const { return base_->d(); }
    // Indecomposable summands of M (sorted, without repetition).
    const std::vector<ObjectId>& m() const { return m_; }
    bool in_add_m(ObjectId x) const { return m_set_.count(x) > 0; }
    const std::vector<ObjectId>& surviving() const { return surviving_; }

    // Column basis (coordinates in base().hom_basis(x, y, 0)) of the maps
    // X -> Y that factor through add M.
    Matrix factoring_subspace(ObjectId x, ObjectId y) const;
    std::size_t quotient_hom0(ObjectId x, ObjectId y) const;
    // The loop object Omega^i(Y) as objects of C (K_i of the splicing tower).
    const std::vector<ObjectId>& loop_object(ObjectId y, int i) const;
    // dim H^degree of the quotient hom complex, degree <= 0.
    std::size_t quotient_hom(ObjectId x, ObjectId y, int degree) const;

    // Whether Y lies in C_0^n = add M * add M[1] * ... * add M[n].
    bool in_c0(ObjectId y, int n) const;

    // Bar oracle: dims of H^k of the cone of the composition map
    // B(X, T) -> Hom(X, T) for lowest <= k <= 0, where B keeps bar words of
    // length <= bar_length. Requires bar_length >= 2 (WindowTooSmall).
    std::map<int, std::size_t> bar_quotient_homs(ObjectId x, ObjectId t, int bar_length, int lowest) const;
    std::size_t bar_quotient_hom0(ObjectId x, ObjectId t, int bar_length) const;
    // Total dimension of the truncated bar complex in degrees [lowest-1, 0]
    // (diagnostics) and the d^2 = 0 check is performed on construction.
    std::size_t bar_complex_size(ObjectId x, ObjectId t, int bar_length, int lowest) const;

    // Projectives are add(M[-d]), injectives add(M[d]).
    std::vector<ObjectId> projectives() const;
    std::vector<ObjectId> injectives() const;
    bool is_projective(ObjectId x) const;
    bool is_injective(ObjectId x) const;
    bool is_frobenius() const { return projectives() == injectives(); }

    // Witnesses for Qf being a d-monomorphism / Qg a d-epimorphism, for a
    // closed degree-0 map of complexes of projectives. Both characterizations
    // are evaluated; disagreement throws EquivalenceViolation.
    DMorphismWitness d_mono_witness(const ProjectiveMap& f) const;
    DMorphismWitness d_epi_witness(const ProjectiveMap& g) const;
    // Same for a single-component morphism of the cluster category.
    DMorphismWitness d_mono_witness(const ClusterMorphism& f) const;
    DMorphismWitness d_epi_witness(const ClusterMorphism& g) const;
    ProjectiveMap lift_morphism(const ClusterMorphism& f) const;

    QuiverGraph quotient_ar_quiver() const;
    // [{"source", "target", "dims": {"0": .., "-1": ..}}] over surviving pairs.
    Json hom_table_json() const;

private:
    const ClusterCategory* base_;
    std::vector<ObjectId> m_;
    std::set<ObjectId> m_set_;
    std::vector<ObjectId> surviving_;
    mutable std::map<ObjectId, SplicingTower> towers_;
    mutable std::map<std::pair<ObjectId, ObjectId>, Matrix> fac_cache_;

    struct BarData;
    const SplicingTower& tower(ObjectId y) const;
    std::vector<ObjectId> c0_objects(int n) const;
};

// add(M[d]) == add(M[-d]) as object sets.
bool frobenius_check(const ClusterCategory& c, const std::vector<ObjectId>& m);

}  // namespace dext
