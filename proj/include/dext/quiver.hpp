#pragma once
// Graded quivers with relations and an optional differential, and the
// finite-dimensional graded (DG-)algebras they present.
//
// Paths are written in composition order: the path "beta alpha" (alpha
// first, then beta) is {"beta", "alpha"}. The product p * q of two paths is
// the concatenation p ++ q, nonzero only when source(p) == target(q); an
// element x : u -> v satisfies x = e_v x e_u.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dext/json_io.hpp"
#include "dext/matrix.hpp"

namespace dext {

struct Arrow {
    std::string name;
    std::string source;
    std::string target;
    int degree = 0;  // <= 0
};

struct PathTerm {
    Scalar coef;
    std::vector<std::string> path;  // arrow names in composition order; empty = e_v
    std::string vertex;             // only used for trivial paths
};
using PathCombination = std::vector<PathTerm>;

struct GradedQuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<PathCombination> relations;
    std::map<std::string, PathCombination> differential;  // arrow -> d(arrow)

    // Structural checks done at parse time: arrows have degree <= 0 and
    // known endpoints; relations and differentials are homogeneous and
    // composable. Throws ParseError.
    void check() const;
};

// Schema: vertices: [..]; arrows: [{name, from, to, degree}];
// relations: [[{coef, path: [...]}, ...], ...]; differential: {arrow: [{coef, path}]}.
GradedQuiverPresentation presentation_from_json(const Json& j);
GradedQuiverPresentation presentation_from_toml(const std::string& text);
GradedQuiverPresentation load_presentation(const std::string& file);  // .json or .toml
Json to_json(const GradedQuiverPresentation& p);

// Linearly oriented A_n: vertices "1".."n", arrows a_i : i -> i+1 of degree 0.
GradedQuiverPresentation linear_a_presentation(int n);

struct BasisElement {
    std::string label;
    int source = 0;  // vertex index
    int target = 0;
    int degree = 0;
};

// A finite-dimensional graded algebra with a degree +1 differential, given by
// structure constants on a basis that is homogeneous for degree and for the
// vertex idempotents. mult(i, j) = b_i * b_j (b_j first).
class FinDimGradedAlgebra {
public:
    using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

    FinDimGradedAlgebra() = default;
    FinDimGradedAlgebra(std::vector<std::string> vertices, std::vector<BasisElement> basis,
                        std::vector<std::size_t> idempotents);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(std::size_t i) const { return basis_[i]; }
    std::size_t idempotent(std::size_t v) const { return idempotents_[v]; }

    const SparseVec& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
    void set_product(std::size_t i, std::size_t j, SparseVec v);
    // N x N differential (column j = d(b_j)).
    const Matrix& differential() const { return diff_; }
    void set_differential(Matrix d);
    bool has_zero_differential() const { return diff_.is_zero(); }

    // Products of general elements given as N x 1 coordinate columns.
    Matrix multiply(const Matrix& x, const Matrix& y) const;
    // Matrix of y |-> b_i * y and of y |-> y * b_j.
    Matrix left_mult(std::size_t i) const;
    Matrix right_mult(std::size_t j) const;

    // Basis indices of degree p, in basis order.
    std::vector<std::size_t> degree_part(int p) const;
    std::vector<int> degrees() const;  // distinct, descending
    std::map<int, std::size_t> graded_dims() const;
    // The underlying cochain complex (one coordinate per basis element).
    CochainComplex underlying_complex() const;
    Json to_json() const;

private:
    std::vector<std::string> vertices_;
    std::vector<BasisElement> basis_;
    std::vector<std::size_t> idempotents_;
    std::vector<SparseVec> mult_;
    Matrix diff_;
};

// Basis of paths modulo the relation ideal. Throws NotStabilized when some
// path of length length_bound - 1 or length_bound survives.
FinDimGradedAlgebra enumerate_basis(const GradedQuiverPresentation& p, int length_bound);

struct ValidationReport {
    std::map<std::string, bool> checks;  // axiom -> pass
    std::vector<std::string> failures;   // human-readable details
    bool ok() const;
};
ValidationReport validate(const FinDimGradedAlgebra& a);
// Additionally checks that the presentation's differential preserves the relation ideal.
ValidationReport validate(const GradedQuiverPresentation& p, const FinDimGradedAlgebra& a);

struct AlgebraTruncation {
    FinDimGradedAlgebra algebra;
    Matrix projection;  // dim(result) x dim(A), an algebra morphism
};
// Quotient by A^{<= -d} + d(A^{-d}); the result is d-truncated.
AlgebraTruncation truncate_algebra(const FinDimGradedAlgebra& a, int d);

}  // namespace dext
