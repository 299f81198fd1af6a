#include <doctest.h>

#include <random>

#include "dext/errors.hpp"
#include "dext/hereditary.hpp"
#include "interval_oracle.hpp"
#include "test_util.hpp"

using namespace dext;
using namespace dext::testing;

namespace {

ProjectiveMap random_closed(std::mt19937& rng, const ProjectiveComplex& x, const ProjectiveComplex& y) {
    ProjectiveHom h(x, y);
    const std::size_t dim0 = h.complex().dim(0);
    if (dim0 == 0) return h.to_map(0, Matrix(0, 1));
    Matrix z = kernel_basis(h.complex().d(0));
    if (z.cols() == 0) return h.to_map(0, Matrix(dim0, 1));
    return h.to_map(0, z * random_matrix(rng, z.cols(), 1));
}

// A random complex of projectives: iterated cones of random closed maps
// between sums of stalks.
ProjectiveComplex random_projective_complex(std::mt19937& rng, int n) {
    auto all = interval_stalks(n, 1);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::vector<ProjectiveComplex> xs, ys;
    for (int i = 0; i < 2; ++i) xs.push_back(stalk(n, all[pick(rng)]));
    for (int i = 0; i < 2; ++i) ys.push_back(shift(stalk(n, all[pick(rng)]), -1 + static_cast<int>(rng() % 2)));
    ProjectiveComplex x = direct_sum(xs), y = direct_sum(ys);
    return cone(random_closed(rng, x, y));
}

std::vector<long> dimvec(int n, const StalkKey& k) {
    std::vector<long> v(n, 0);
    for (int u = k.a; u <= k.b; ++u) v[u - 1] = 1;
    return v;
}

// Alternating sum of dimension vectors over all cohomology.
std::vector<long> euler_from_decomposition(int n, const std::vector<StalkKey>& ks) {
    std::vector<long> v(n, 0);
    for (const auto& k : ks) {
        auto d = dimvec(n, k);
        for (int u = 0; u < n; ++u) v[u] += ((-k.s) % 2 == 0 ? 1 : -1) * d[u];
    }
    return v;
}

std::vector<long> euler_from_cohomology(const ProjectiveComplex& x) {
    std::vector<long> v(x.n(), 0);
    for (int i = x.scalar().min_degree() - 1; i <= x.scalar().max_degree() + 1; ++i) {
        auto d = cohomology_dimension_vector(x, i);
        for (int u = 0; u < x.n(); ++u) v[u] += (i % 2 == 0 ? 1 : -1) * d[u];
    }
    return v;
}

}  // namespace

TEST_CASE("hom between projectives") {
    for (int n = 1; n <= 4; ++n)
        for (int i = 1; i <= n; ++i) {
            ProjectiveHom h(projective_stalk(n, i), projective_stalk(n, i));
            CHECK(h.dim(0) == 1);
        }
    CHECK(ProjectiveHom(projective_stalk(2, 2), projective_stalk(2, 1)).dim(0) == 1);
    CHECK(ProjectiveHom(projective_stalk(2, 1), projective_stalk(2, 2)).dim(0) == 0);
    CHECK_THROWS_AS(ProjectiveComplex(2, {{0, {1}}, {1, {2}}}, {{0, Matrix{{1}}}}), DimensionError);
}

TEST_CASE("Ext^1(S_1, S_2) in kA_2 from the resolution P_2 -> P_1") {
    ProjectiveComplex s1 = stalk(2, {1, 1, 0});
    ProjectiveComplex s2 = stalk(2, {2, 2, 0});
    CHECK(ProjectiveHom(s1, s2).dim(1) == 1);
    CHECK(ProjectiveHom(s1, s2).dim(0) == 0);
    CHECK(ProjectiveHom(s2, s1).dim(1) == 0);
}

TEST_CASE("hom dims agree with the interval oracle on A_2..A_4") {
    for (int n = 2; n <= 4; ++n) {
        auto all = interval_stalks(n, 2);
        for (const auto& x : all)
            for (const auto& y : all) {
                ProjectiveHom h(stalk(n, x), stalk(n, y));
                for (int p = -3; p <= 3; ++p) {
                    INFO(n, " ", x.str(), " -> ", y.str(), " p=", p);
                    CHECK(static_cast<int>(h.dim(p)) == oracle_db(n, x, y, p));
                }
            }
    }
}

TEST_CASE("composition of homotopy classes is associative and unital") {
    const int n = 3;
    auto all = interval_stalks(n, 1);
    std::size_t triples = 0;
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) {
                ProjectiveComplex xa = stalk(n, a), xb = stalk(n, b), xc = stalk(n, c);
                ProjectiveHom hab(xa, xb), hbc(xb, xc), hac(xa, xc);
                for (int p = 0; p <= 1; ++p)
                    for (int q = 0; q <= 1 - p; ++q)
                        for (std::size_t i = 0; i < hab.dim(p); ++i)
                            for (std::size_t j = 0; j < hbc.dim(q); ++j) {
                                ProjectiveMap f = hab.basis_map(p, i), g = hbc.basis_map(q, j);
                                ProjectiveMap gf = compose(g, f);
                                CHECK(gf.map.is_closed());
                                CHECK(gf.respects_paths());
                                // Changing f by a null-homotopic map does not change the class.
                                if (hab.complex().dim(p - 1) > 0) {
                                    Matrix hcoord(hab.complex().dim(p - 1), 1);
                                    hcoord(0, 0) = Scalar(1);
                                    Matrix bump = hab.complex().d(p - 1) * hcoord;
                                    ProjectiveMap f2 = hab.to_map(p, hab.to_coords(f) + bump);
                                    CHECK(hac.class_of(compose(g, f2)) == hac.class_of(gf));
                                }
                                ++triples;
                            }
                ProjectiveMap id = identity_map(xa);
                for (std::size_t i = 0; i < hab.dim(0); ++i) {
                    ProjectiveMap f = hab.basis_map(0, i);
                    CHECK(hab.class_of(compose(f, id)) == hab.class_of(f));
                    CHECK(hab.class_of(compose(identity_map(xb), f)) == hab.class_of(f));
                }
            }
    CHECK(triples > 100);

    // Associativity over sums of stalks with random closed maps.
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        ProjectiveComplex x = random_projective_complex(rng, n);
        ProjectiveComplex y = random_projective_complex(rng, n);
        ProjectiveComplex z = random_projective_complex(rng, n);
        ProjectiveComplex w = random_projective_complex(rng, n);
        ProjectiveMap f = random_closed(rng, x, y), g = random_closed(rng, y, z), h = random_closed(rng, z, w);
        ProjectiveHom hxw(x, w);
        CHECK(hxw.class_of(compose(h, compose(g, f))) == hxw.class_of(compose(compose(h, g), f)));
    }
}

TEST_CASE("cones") {
    std::mt19937 rng(7);
    const int n = 3;
    for (int trial = 0; trial < 10; ++trial) {
        ProjectiveComplex x = random_projective_complex(rng, n);
        CHECK(decompose(cone(identity_map(x))).empty());
        CHECK(minimize(cone(identity_map(x))).is_zero());
        ProjectiveComplex y = random_projective_complex(rng, n);
        ProjectiveHom h(x, y);
        auto ks = decompose(cone(h.to_map(0, Matrix(h.complex().dim(0), 1))));
        auto expect = decompose(direct_sum({shift(x, 1), y}));
        CHECK(ks == expect);
    }
    // The nonzero map P_2 -> P_1 in kA_2 has cone S_1.
    ProjectiveHom h(projective_stalk(2, 2), projective_stalk(2, 1));
    ProjectiveComplex c = cone(h.basis_map(0, 0));
    CHECK(decompose(c) == std::vector<StalkKey>{{1, 1, 0}});
    CHECK(cone_inclusion(h.basis_map(0, 0)).map.is_closed());
    CHECK(cone_projection(h.basis_map(0, 0)).map.is_closed());
    CHECK(cocone_projection(h.basis_map(0, 0)).map.is_closed());
}

TEST_CASE("rotation preserves hom dims") {
    // Cone(f) ~ Cone(Y -> Cone f)[-1] up to isomorphism: check Cone(g) for
    // g : Y -> Cone(f) is isomorphic to X[1].
    std::mt19937 rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        ProjectiveComplex x = random_projective_complex(rng, 3);
        ProjectiveComplex y = random_projective_complex(rng, 3);
        ProjectiveMap f = random_closed(rng, x, y);
        ProjectiveComplex c2 = cone(cone_inclusion(f));
        CHECK(isomorphic(c2, shift(x, 1)));
    }
}

TEST_CASE("decompose") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& k : interval_stalks(n, 2)) CHECK(decompose(stalk(n, k)) == std::vector<StalkKey>{k});
    CHECK(decompose(projective_stalk(3, 1)) == std::vector<StalkKey>{{1, 3, 0}});
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        ProjectiveComplex x = random_projective_complex(rng, 4);
        auto kx = decompose(x);
        auto ks = decompose(direct_sum({x, shift(x, 1)}));
        std::vector<StalkKey> expect = kx;
        for (auto k : kx) expect.push_back({k.a, k.b, k.s + 1});
        std::sort(expect.begin(), expect.end());
        CHECK(ks == expect);
        // Dimension vectors of the pieces match H^i evaluated at each vertex.
        for (int i = x.scalar().min_degree(); i <= x.scalar().max_degree(); ++i) {
            std::vector<long> v(4, 0);
            for (const auto& k : kx)
                if (-k.s == i)
                    for (int u = k.a; u <= k.b; ++u) ++v[u - 1];
            CHECK(v == cohomology_dimension_vector(x, i));
        }
        CHECK(isomorphic(x, minimize(x)));
        CHECK(minimize(x).is_minimal());
    }
}

TEST_CASE("Euler relation for cones") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        ProjectiveComplex x = random_projective_complex(rng, n);
        ProjectiveComplex y = random_projective_complex(rng, n);
        ProjectiveMap f = random_closed(rng, x, y);
        auto lhs = euler_from_decomposition(n, decompose(cone(f)));
        auto ey = euler_from_cohomology(y), ex = euler_from_cohomology(x);
        std::vector<long> rhs(n);
        for (int u = 0; u < n; ++u) rhs[u] = ey[u] - ex[u];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Nakayama functor") {
    // nu(P_n) = I_n, which is P_1.
    for (int n = 1; n <= 4; ++n) {
        CHECK(decompose(nakayama(projective_stalk(n, n))) == std::vector<StalkKey>{{1, n, 0}});
        // nu(P_i) = I_i = M[1, i].
        for (int i = 1; i <= n; ++i)
            CHECK(decompose(nakayama(projective_stalk(n, i))) == std::vector<StalkKey>{{1, i, 0}});
    }
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 3;
        ProjectiveComplex x = random_projective_complex(rng, n);
        CHECK(isomorphic(nakayama(nakayama_inverse(x)), x));
        CHECK(isomorphic(nakayama_inverse(nakayama(x)), x));
        // Strict compatibility with shifts.
        for (int k = -2; k <= 2; ++k) {
            ProjectiveComplex a = nakayama(shift(x, k)), b = shift(nakayama(x), k);
            CHECK(a.all_labels() == b.all_labels());
            for (const auto& [i, l] : a.all_labels()) CHECK(a.d(i) == b.d(i));
        }
        // Strict functoriality on closed maps.
        ProjectiveComplex y = random_projective_complex(rng, n), z = random_projective_complex(rng, n);
        ProjectiveMap f = random_closed(rng, x, y), g = random_closed(rng, y, z);
        ProjectiveMap lhs = nakayama(compose(g, f)), rhs = compose(nakayama(g), nakayama(f));
        for (const auto& [i, l] : lhs.source.all_labels()) CHECK(lhs.map.at(i) == rhs.map.at(i));
        CHECK(nakayama_inverse(f).map.is_closed());
        CHECK(nakayama(f).respects_paths());
    }
}

TEST_CASE("Serre duality dims on A_2 and A_3") {
    for (int n = 2; n <= 3; ++n) {
        auto all = interval_stalks(n, 1);
        for (const auto& x : all) {
            ProjectiveComplex nx = nakayama(stalk(n, x));
            for (const auto& y : all) {
                ProjectiveHom lhs(stalk(n, x), stalk(n, y));
                ProjectiveHom rhs(stalk(n, y), nx);
                for (int p = -2; p <= 2; ++p) CHECK(lhs.dim(p) == rhs.dim(-p));
            }
        }
    }
}

TEST_CASE("AR translate agrees with the interval oracle") {
    for (int n = 2; n <= 4; ++n)
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) {
                auto t = decompose(ar_translate(stalk(n, {a, b, 0})));
                if (b < n)
                    CHECK(t == std::vector<StalkKey>{{a + 1, b + 1, 0}});
                else
                    CHECK(t == std::vector<StalkKey>{{1, a, -1}});  // tau P_a = I_a[-1]
                CHECK(decompose(ar_translate_inverse(ar_translate(stalk(n, {a, b, 0})))) ==
                      std::vector<StalkKey>{{a, b, 0}});
            }
}

TEST_CASE("json dump of a complex") {
    Json j = to_json(stalk(3, {1, 2, 0}));
    CHECK(j["n"] == 3);
    CHECK(j["terms"]["-1"] == Json::array({3}));
    CHECK(j["terms"]["0"] == Json::array({1}));
}
