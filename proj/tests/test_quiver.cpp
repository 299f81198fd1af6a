#include <doctest.h>

#include <set>

#include "dext/errors.hpp"
#include "dext/quiver.hpp"

using namespace dext;

namespace {

std::string data(const std::string& f) { return std::string(DEXT_DATA_DIR) + "/presentations/" + f; }

std::map<int, std::size_t> dims(const FinDimGradedAlgebra& a) { return a.graded_dims(); }

std::set<std::string> labels(const FinDimGradedAlgebra& a, int degree) {
    std::set<std::string> s;
    for (auto i : a.degree_part(degree)) s.insert(a.element(i).label);
    return s;
}

// 1 -> 2 with x in degree -1 and y in degree -2, d(y) = x.
GradedQuiverPresentation contractible_pair() {
    GradedQuiverPresentation p;
    p.vertices = {"1", "2"};
    p.arrows = {{"x", "1", "2", -1}, {"y", "1", "2", -2}};
    p.differential["y"] = {PathTerm{Scalar(1), {"x"}, ""}};
    return p;
}

}  // namespace

TEST_CASE("path algebra of linear A_n") {
    FinDimGradedAlgebra a2 = enumerate_basis(linear_a_presentation(2), 3);
    CHECK(a2.dim() == 3);
    CHECK(labels(a2, 0) == std::set<std::string>{"e1", "e2", "a1"});
    for (int n = 1; n <= 5; ++n) {
        FinDimGradedAlgebra a = enumerate_basis(linear_a_presentation(n), n + 2);
        CHECK(a.dim() == static_cast<std::size_t>(n * (n + 1) / 2));
        CHECK(validate(a).ok());
    }
}

TEST_CASE("two-cycle presentation with zero differential") {
    GradedQuiverPresentation p = load_presentation(data("cycle2.toml"));
    FinDimGradedAlgebra a = enumerate_basis(p, 4);
    CHECK(dims(a) == std::map<int, std::size_t>{{-1, 2}, {0, 2}});
    CHECK(labels(a, -1) == std::set<std::string>{"alpha", "beta"});
    CHECK(a.has_zero_differential());
    ValidationReport r = validate(p, a);
    CHECK(r.ok());
    for (const auto& f : r.failures) MESSAGE(f);
}

TEST_CASE("A_1 attached to a two-cycle") {
    GradedQuiverPresentation p = load_presentation(data("a1_cycle.toml"));
    FinDimGradedAlgebra a = enumerate_basis(p, 4);
    CHECK(labels(a, 0) == std::set<std::string>{"e1", "e2", "e3", "alpha"});
    CHECK(labels(a, -1) == std::set<std::string>{"beta", "gamma", "beta*alpha"});
    CHECK(dims(a) == std::map<int, std::size_t>{{-1, 3}, {0, 4}});
    CHECK(validate(p, a).ok());
}

TEST_CASE("stabilization witness") {
    GradedQuiverPresentation loop;
    loop.vertices = {"1"};
    loop.arrows = {{"x", "1", "1", -1}};
    CHECK_THROWS_AS(enumerate_basis(loop, 5), NotStabilized);
    // x^3 = 0 stabilizes once the bound clears length 3.
    loop.relations = {{PathTerm{Scalar(1), {"x", "x", "x"}, ""}}};
    CHECK_THROWS_AS(enumerate_basis(loop, 3), NotStabilized);
    FinDimGradedAlgebra a = enumerate_basis(loop, 5);
    CHECK(dims(a) == std::map<int, std::size_t>{{-2, 1}, {-1, 1}, {0, 1}});
    CHECK(validate(a).ok());
    CHECK_THROWS_AS(enumerate_basis(linear_a_presentation(2), 2), NotStabilized);
}

TEST_CASE("non-monomial relations") {
    // Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with ba = dc.
    GradedQuiverPresentation p;
    p.vertices = {"1", "2", "3", "4"};
    p.arrows = {{"a", "1", "2", 0}, {"b", "2", "4", 0}, {"c", "1", "3", 0}, {"d", "3", "4", 0}};
    p.relations = {{PathTerm{Scalar(1), {"b", "a"}, ""}, PathTerm{Scalar(-1), {"d", "c"}, ""}}};
    FinDimGradedAlgebra a = enumerate_basis(p, 4);
    CHECK(a.dim() == 9);
    CHECK(validate(p, a).ok());
}

TEST_CASE("validation catches a corrupted structure constant") {
    FinDimGradedAlgebra a = enumerate_basis(load_presentation(data("cycle2.toml")), 4);
    // alpha * e1 = alpha; replace by 2 alpha.
    std::size_t alpha = 0, e1 = a.idempotent(0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.element(i).label == "alpha") alpha = i;
    a.set_product(alpha, e1, {{alpha, Scalar(2)}});
    ValidationReport r = validate(a);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.checks.at("associativity"));
}

TEST_CASE("differential: Leibniz, d^2 and ideal closure") {
    GradedQuiverPresentation p = contractible_pair();
    FinDimGradedAlgebra a = enumerate_basis(p, 3);
    CHECK(a.dim() == 4);
    CHECK_FALSE(a.has_zero_differential());
    CHECK(validate(p, a).ok());

    // d does not preserve the ideal (c a) when d(c) = b.
    GradedQuiverPresentation q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", "1", "2", 0}, {"b", "2", "3", -1}, {"c", "2", "3", -2}};
    q.differential["c"] = {PathTerm{Scalar(1), {"b"}, ""}};
    q.relations = {{PathTerm{Scalar(1), {"c", "a"}, ""}}};
    FinDimGradedAlgebra bad = enumerate_basis(q, 4);
    ValidationReport r = validate(q, bad);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.checks.at("ideal_closed_under_d"));
    CHECK_FALSE(r.checks.at("leibniz"));
}

TEST_CASE("truncate_algebra") {
    // Already 2-truncated: unchanged.
    FinDimGradedAlgebra a = enumerate_basis(load_presentation(data("cycle2.toml")), 4);
    AlgebraTruncation t = truncate_algebra(a, 2);
    CHECK(dims(t.algebra) == dims(a));
    CHECK(validate(t.algebra).ok());

    // Zero differential with components in degrees 0..-2: degree -2 dropped.
    GradedQuiverPresentation loop;
    loop.vertices = {"1"};
    loop.arrows = {{"x", "1", "1", -1}};
    loop.relations = {{PathTerm{Scalar(1), {"x", "x", "x"}, ""}}};
    FinDimGradedAlgebra l = enumerate_basis(loop, 5);
    AlgebraTruncation tl = truncate_algebra(l, 2);
    CHECK(dims(tl.algebra) == std::map<int, std::size_t>{{-1, 1}, {0, 1}});
    CHECK(validate(tl.algebra).ok());

    // Nonzero differential: d(A^{-2}) is killed in degree -1 too.
    FinDimGradedAlgebra c = enumerate_basis(contractible_pair(), 3);
    AlgebraTruncation tc = truncate_algebra(c, 2);
    CHECK(dims(tc.algebra) == std::map<int, std::size_t>{{0, 2}});
    CHECK(validate(tc.algebra).ok());

    // The projection is a DG-algebra morphism and an H-isomorphism above -d.
    for (const FinDimGradedAlgebra* src : {&a, &l, &c}) {
        for (int d = 1; d <= 3; ++d) {
            AlgebraTruncation tr = truncate_algebra(*src, d);
            const std::size_t n = src->dim();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Matrix ei(n, 1), ej(n, 1);
                    ei(i, 0) = Scalar(1);
                    ej(j, 0) = Scalar(1);
                    CHECK(tr.projection * src->multiply(ei, ej) ==
                          tr.algebra.multiply(tr.projection * ei, tr.projection * ej));
                }
            CHECK(tr.projection * src->differential() == tr.algebra.differential() * tr.projection);
            auto h_src = cohomology_dims(src->underlying_complex());
            auto h_tr = cohomology_dims(tr.algebra.underlying_complex());
            for (auto [i, h] : h_tr) CHECK(i > -d);
            for (int i = -d + 1; i <= 0; ++i) CHECK(h_src[i] == h_tr[i]);
        }
    }
}

TEST_CASE("presentation parsing") {
    Json j = Json::parse(R"({
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "from": "1", "to": "2", "degree": 1}]
    })");
    CHECK_THROWS_AS(presentation_from_json(j), ParseError);
    Json k = Json::parse(R"({
      "vertices": ["1", "2"],
      "arrows": [{"name": "a", "from": "1", "to": "2", "degree": 0},
                 {"name": "b", "from": "1", "to": "2", "degree": -1}],
      "relations": [[{"coef": 1, "path": ["a"]}, {"coef": "1/2", "path": ["b"]}]]
    })");
    CHECK_THROWS_AS(presentation_from_json(k), ParseError);  // not homogeneous
    GradedQuiverPresentation p = load_presentation(data("cycle2.toml"));
    GradedQuiverPresentation q = presentation_from_json(to_json(p));
    CHECK(enumerate_basis(q, 4).dim() == 4);
    CHECK_THROWS_AS(presentation_from_toml("vertices = [1"), ParseError);
}
