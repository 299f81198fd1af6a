#include <doctest.h>
#include <set>

#include "dext/errors.hpp"
#include "dext/morita.hpp"

using namespace dext;

namespace {

std::string data(const std::string& f) { return std::string(DEXT_DATA_DIR) + "/presentations/" + f; }

struct Setup {
    ClusterCategory c;
    QuotientCategory q;
    MoritaContext ctx;
    Setup(int n, int d, const std::string& m) : c(n, d), q(c, c.parse_objects(m)), ctx(q) {}
};

const Setup& ex1() {
    static const Setup s(2, 2, "P(0,1)+P(2,1)");
    return s;
}
const Setup& ex2() {
    static const Setup s(3, 2, "P(0,1)+P(0,2)+P(3,1)");
    return s;
}

std::size_t count_idempotent_like(const FinDimGradedAlgebra& a) {
    std::size_t k = 0;
    for (std::size_t v = 0; v < a.num_vertices(); ++v) {
        const auto i = a.idempotent(v);
        const auto& p = a.product(i, i);
        k += (p.size() == 1 && p.front().first == i && p.front().second == Scalar(1)) ? 1 : 0;
    }
    return k;
}

}  // namespace

TEST_CASE("the truncated endomorphism algebra of the first example") {
    const auto& lam = *ex1().ctx.lambda();
    CHECK(lam.graded_dims() == std::map<int, std::size_t>{{-1, 2}, {0, 2}});
    CHECK(lam.has_zero_differential());
    CHECK(count_idempotent_like(lam) == 2);
    const auto iso = find_algebra_isomorphism(load_presentation(data("cycle2.toml")), lam);
    REQUIRE(iso.has_value());
    CHECK(iso->matrix.rows() == 4);
    // The wrong presentation is rejected.
    CHECK_FALSE(find_algebra_isomorphism(load_presentation(data("a1_cycle.toml")), lam).has_value());
    GradedQuiverPresentation wrong_degree = load_presentation(data("cycle2.toml"));
    wrong_degree.arrows[0].degree = 0;
    CHECK_FALSE(find_algebra_isomorphism(wrong_degree, lam).has_value());
}

TEST_CASE("the truncated endomorphism algebra of the second example") {
    const auto& lam = *ex2().ctx.lambda();
    CHECK(lam.graded_dims() == std::map<int, std::size_t>{{-1, 3}, {0, 4}});
    CHECK(lam.has_zero_differential());
    CHECK(count_idempotent_like(lam) == 3);
    REQUIRE(find_algebra_isomorphism(load_presentation(data("a1_cycle.toml")), lam).has_value());
    CHECK_FALSE(find_algebra_isomorphism(load_presentation(data("cycle2.toml")), lam).has_value());
    // Without the relations the algebra is larger and no longer matches.
    GradedQuiverPresentation free_cycle = load_presentation(data("a1_cycle.toml"));
    free_cycle.relations.pop_back();
    bool matched = false;
    try {
        matched = find_algebra_isomorphism(free_cycle, lam).has_value();
    } catch (const std::exception&) {
        // An infinite-dimensional presentation cannot match either.
    }
    CHECK_FALSE(matched);
}

TEST_CASE("transport kills add M and sends M[-d] to the projectives") {
    for (const Setup* s : {&ex1(), &ex2()}) {
        const auto& m = s->q.m();
        for (ObjectId x : m) CHECK(s->ctx.transport(x).dim() == 0);
        for (std::size_t v = 0; v < m.size(); ++v) {
            const DGModule p = s->ctx.transport(s->c.shift_object(m[v], -s->c.d()));
            const DGModule e = DGModule::free(s->ctx.lambda(), static_cast<int>(v));
            CHECK(p.graded_dims() == e.graded_dims());
            CHECK(p.cohomology_table() == e.cohomology_table());
            CHECK(s->ctx.dem().is_quasi_isomorphic(p, e));
        }
        for (ObjectId x = 0; x < s->c.size(); ++x) CHECK(s->ctx.transport(x).in_dem(s->c.d()));
    }
}

TEST_CASE("the six transported modules of the first example") {
    const Setup& s = ex1();
    REQUIRE(s.q.surviving().size() == 6);
    std::map<std::size_t, int> by_dim;
    int two_layer = 0;
    for (ObjectId x : s.q.surviving()) {
        const DGModule m = s.ctx.transport(x);
        ++by_dim[m.dim()];
        // A two-layer column: top in degree 0, socle in degree -1.
        if (m.graded_dims() == std::map<int, std::size_t>{{-1, 1}, {0, 1}}) ++two_layer;
    }
    CHECK(by_dim == std::map<std::size_t, int>{{1, 4}, {2, 2}});
    CHECK(two_layer == 2);
}

TEST_CASE("the bridge: hom dimensions, indecomposability, functoriality, AR quivers") {
    const std::vector<std::pair<const Setup*, std::size_t>> cases{{&ex1(), 36}, {&ex2(), 144}};
    for (const auto& [s, pairs] : cases) {
        const VerificationReport r = verify_equivalence(s->ctx);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.ok());
        CHECK(r.pairs.size() == pairs);
        std::size_t negative = 0;
        for (const auto& p : r.pairs) {
            CHECK(p.agree());
            CHECK(p.lambda_dims.size() == static_cast<std::size_t>(s->c.d()));
            negative += p.quotient_dims.at(-1);
        }
        CHECK(negative > 0);
        CHECK(r.functoriality_samples > 20);
    }
}

TEST_CASE("derived hom calculus: identities, composition and radicals") {
    const Setup& s = ex2();
    std::vector<DGModule> objs;
    for (ObjectId x : s.q.surviving()) objs.push_back(s.ctx.transport(x));
    const DerivedHomCalculus calc(s.ctx.dem(), objs);
    for (std::size_t i = 0; i < calc.size(); ++i) {
        const Matrix id = calc.identity(i);
        CHECK(calc.trace(i, id) == Scalar(static_cast<long long>(objs[i].total_cohomology())));
        for (std::size_t j = 0; j < calc.size(); ++j) {
            const std::size_t n = calc.hom0_dim(i, j);
            for (std::size_t b = 0; b < n; ++b) {
                Matrix f(n, 1);
                f(b, 0) = Scalar(1);
                CHECK(calc.compose(i, j, j, calc.identity(j), f) == f);
                CHECK(calc.compose(i, i, j, f, id) == f);
            }
        }
    }
    // Associativity on a chain of nonzero maps.
    int chains = 0;
    for (std::size_t i = 0; i < calc.size(); ++i)
        for (std::size_t j = 0; j < calc.size(); ++j)
            for (std::size_t k = 0; k < calc.size(); ++k)
                for (std::size_t l = 0; l < calc.size(); ++l) {
                    if (!calc.hom0_dim(i, j) || !calc.hom0_dim(j, k) || !calc.hom0_dim(k, l)) continue;
                    auto e = [](std::size_t n) {
                        Matrix m(n, 1);
                        m(0, 0) = Scalar(1);
                        return m;
                    };
                    const Matrix f = e(calc.hom0_dim(i, j)), g = e(calc.hom0_dim(j, k)), h = e(calc.hom0_dim(k, l));
                    CHECK(calc.compose(i, k, l, h, calc.compose(i, j, k, g, f)) ==
                          calc.compose(i, j, l, calc.compose(j, k, l, h, g), f));
                    ++chains;
                }
    CHECK(chains > 0);
}

TEST_CASE("homs out of M[-d] are unchanged by the quotient") {
    for (const Setup* s : {&ex1(), &ex2()}) {
        const int d = s->c.d();
        for (ObjectId m : s->q.m()) {
            const ObjectId x = s->c.shift_object(m, -d);
            for (ObjectId y = 0; y < s->c.size(); ++y)
                for (int i = -d + 1; i <= 0; ++i) CHECK(s->q.quotient_hom(x, y, i) == s->c.hom_dim(x, y, i));
        }
    }
}

TEST_CASE("presentation round trip on every transported module") {
    for (const Setup* s : {&ex1(), &ex2()})
        for (ObjectId x : s->q.surviving()) {
            const DGModule m = s->ctx.transport(x);
            const ProjectivePresentation p = s->ctx.dem().projective_presentation(m);
            const IteratedResult r = s->ctx.dem().iterated_cokernel(p.band);
            CHECK(r.agree);
            CHECK(s->ctx.dem().is_quasi_isomorphic(r.direct, m));
        }
}

TEST_CASE("essential surjectivity by brute force over F_2") {
    FieldScope f2(2);
    const Setup s(2, 2, "P(0,1)+P(2,1)");
    const SurjectivityReport r = essential_surjectivity(s.ctx, 3);
    CHECK(r.found == 6);
    CHECK(r.ok());
    std::set<std::string> hit(r.matches.begin(), r.matches.end());
    CHECK(hit.size() == 6);
}

TEST_CASE("the bridge in the classical case d = 1") {
    ClusterCategory c(2, 1);
    std::vector<ObjectId> m;
    for (ObjectId a = 0; a < c.size() && m.empty(); ++a)
        for (ObjectId b = a + 1; b < c.size() && m.empty(); ++b)
            if (c.is_cluster_tilting({a, b})) m = {a, b};
    REQUIRE(m.size() == 2);
    const QuotientCategory q(c, m);
    const MoritaContext ctx(q);
    CHECK(ctx.lambda()->degrees() == std::vector<int>{0});
    const VerificationReport r = verify_equivalence(ctx);
    for (const auto& f : r.failures) MESSAGE(f);
    CHECK(r.ok());
    CHECK(r.pairs.size() == 9);
}

TEST_CASE("the bridge over small prime fields") {
    // Block dimensions of the transported modules can vanish modulo p, so
    // locality must not depend on the total trace.
    for (std::uint32_t p : {2u, 3u}) {
        FieldScope scope(p);
        const Setup s(3, 2, "P(0,1)+P(0,2)+P(3,1)");
        const VerificationReport r = verify_equivalence(s.ctx);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.ok());
        CHECK(r.pairs.size() == 144);
    }
}
