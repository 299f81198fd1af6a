#pragma once
// Finite cochain complexes of vector spaces and maps between them.
//
// Conventions (used consistently by every module):
//   * differentials raise degree: d^i : X^i -> X^{i+1}, stored as a
//     dim(i+1) x dim(i) matrix;
//   * shift: (X[k])^i = X^{i+k} with differential (-1)^k d;
//   * cone of a closed degree-0 map f : X -> Y is X[1] (+) Y with
//     d(x, y) = (-d x, f x + d y); cocone(f) = cone(f)[-1].

#include <map>
#include <vector>

#include "dext/matrix.hpp"

namespace dext {

class CochainComplex {
public:
    CochainComplex() = default;
    // Validates shapes and d^{i+1} d^i = 0; throws NotClosed / DimensionError.
    CochainComplex(std::map<int, std::size_t> dims, std::map<int, Matrix> diffs);

    std::size_t dim(int i) const;
    // d^i with shape dim(i+1) x dim(i) (a zero matrix when not stored).
    Matrix d(int i) const;
    const std::map<int, std::size_t>& dims() const { return dims_; }
    // Degrees with nonzero component, ascending.
    std::vector<int> support() const;
    bool is_zero() const { return support().empty(); }
    int min_degree() const;  // of the support; 0 for the zero complex
    int max_degree() const;
    std::size_t total_dim() const;

    // Re-validate d^2 = 0 (called by the constructor).
    void validate() const;

private:
    std::map<int, std::size_t> dims_;  // zero entries are dropped
    std::map<int, Matrix> diffs_;      // only between nonzero components
};

// A graded map of degree p: blocks[i] : X^i -> Y^{i+p}.
struct ChainMap {
    CochainComplex source;
    CochainComplex target;
    int degree = 0;
    std::map<int, Matrix> blocks;

    // Block at source degree i, zero of the right shape if absent.
    Matrix at(int i) const;
    // Checks d_Y f = (-1)^p f d_X in every degree.
    bool is_closed() const;
    bool is_zero() const;
};

ChainMap identity_map(const CochainComplex& x);
ChainMap zero_map(const CochainComplex& x, const CochainComplex& y, int degree = 0);
// g o f (degrees add).
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator+(const ChainMap& f, const ChainMap& g);
ChainMap operator*(const Scalar& s, const ChainMap& f);

struct Cohomology {
    std::size_t dim = 0;
    Matrix reps;       // dim(X^i) x dim : cocycle representatives
    Matrix projector;  // dim x dim(X^i) : coordinates of a cocycle's class
};
Cohomology cohomology(const CochainComplex& x, int i);
std::map<int, std::size_t> cohomology_dims(const CochainComplex& x);
// Induced map H^i(X) -> H^{i+p}(Y) in the chosen bases.
Matrix induced_map(const ChainMap& f, int i);
Matrix induced_map(const ChainMap& f, int i, const Cohomology& hx, const Cohomology& hy);

CochainComplex shift(const CochainComplex& x, int k);
// f[k] : X[k] -> Y[k]; a degree-p map picks up the sign (-1)^{pk}.
ChainMap shift(const ChainMap& f, int k);

CochainComplex cone(const ChainMap& f);
CochainComplex cocone(const ChainMap& f);
// Y -> Cone(f) and Cone(f) -> X[1].
ChainMap cone_inclusion(const ChainMap& f);
ChainMap cone_projection(const ChainMap& f);

// Smart truncations. tau_le(X, m) keeps degrees <= m (degree m becomes
// ker d^m); tau_gt(X, m) keeps degrees > m (degree m+1 becomes coker d^m).
struct Truncation {
    CochainComplex complex;
    ChainMap map;  // inclusion tau_le -> X, or projection X -> tau_gt
};
Truncation tau_le(const CochainComplex& x, int m);
Truncation tau_gt(const CochainComplex& x, int m);

// The total hom complex Hom(X, Y): Hom^p = (+)_i Hom(X^i, Y^{i+p}) with
// D f = d_Y f - (-1)^p f d_X. Coordinates of a degree-p element are the
// blocks for ascending source degree i, each flattened row-major.
struct HomComplex {
    CochainComplex source;
    CochainComplex target;
    CochainComplex complex;

    ChainMap to_map(int p, const Matrix& coords) const;  // coords: column vector
    Matrix to_coords(const ChainMap& f) const;
};
HomComplex hom_complex(const CochainComplex& x, const CochainComplex& y);

// H^i(f) invertible for every i in the joint support.
bool is_quasi_iso(const ChainMap& f);
// Same, restricted to degrees lo <= i <= hi.
bool is_quasi_iso(const ChainMap& f, int lo, int hi);

}  // namespace dext
