#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include "dext/cluster.hpp"
#include "dext/errors.hpp"
#include "interval_oracle.hpp"

using namespace dext;
using namespace dext::testing;

namespace {

Json golden(const std::string& f) {
    std::ifstream in(std::string(DEXT_GOLDEN_DIR) + "/" + f);
    REQUIRE(in.good());
    return Json::parse(in);
}

std::string P(int j, int k) { return "P(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

const ClusterCategory& cat22() {
    static const ClusterCategory c(2, 2);
    return c;
}
const ClusterCategory& cat32() {
    static const ClusterCategory c(3, 2);
    return c;
}

}  // namespace

TEST_CASE("object counts") {
    CHECK(cat22().size() == 8);
    CHECK(cat32().size() == 15);
    CHECK(ClusterCategory(2, 1).size() == 5);
    CHECK(ClusterCategory(1, 3).size() == 4);
}

TEST_CASE("names follow tau^{-1}-orbits of the projectives") {
    const auto& c = cat22();
    CHECK(c.key(c.find(P(0, 1))) == StalkKey{2, 2, 0});
    CHECK(c.key(c.find(P(0, 2))) == StalkKey{1, 2, 0});
    CHECK(c.find("P_2^1") == c.find(P(2, 1)));
    CHECK_THROWS_AS(c.find("P(9,9)"), UnknownObject);
    auto m = c.parse_objects("P(0,1)+P(2,1)");
    CHECK(m == std::vector<ObjectId>{c.find(P(0, 1)), c.find(P(2, 1))});
}

TEST_CASE("shift permutation, n = 2, d = 2") {
    const auto& c = cat22();
    for (int j = 0; j < 4; ++j) {
        CHECK(c.shift_object(c.find(P(j, 1))) == c.find(P((j + 1) % 4, 2)));
        CHECK(c.shift_object(c.find(P(j, 2))) == c.find(P((j + 2) % 4, 1)));
    }
    for (ObjectId x = 0; x < c.size(); ++x) {
        CHECK(c.tau_object(x) == c.shift_object(c.shift_object(x)));
        CHECK(c.tau_inverse_object(c.tau_object(x)) == x);
        CHECK(c.shift_object(c.shift_object(x, 1), -1) == x);
    }
}

TEST_CASE("shift permutation, n = 3, d = 2") {
    const auto& c = cat32();
    for (int i = 0; i < 5; ++i) {
        CHECK(c.shift_object(c.find(P(i, 1))) == c.find(P((i + 1) % 5, 3)));
        CHECK(c.shift_object(c.find(P(i, 2))) == c.find(P((i + 2) % 5, 2)));
        CHECK(c.shift_object(c.find(P(i, 3))) == c.find(P((i + 3) % 5, 1)));
    }
    for (ObjectId x = 0; x < c.size(); ++x) {
        CHECK(c.tau_object(x) == c.shift_object(c.shift_object(x)));
        CHECK(c.tau_inverse_object(x) == c.shift_object(x, -2));
    }
}

TEST_CASE("AR quivers match the golden figures") {
    CHECK(cat22().ar_quiver().to_json() == golden("ar_2_2.json"));
    CHECK(cat32().ar_quiver().to_json() == golden("ar_3_2.json"));
}

TEST_CASE("AR quivers are stable translation quivers") {
    for (auto nd : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 3}}) {
        ClusterCategory c(nd.first, nd.second);
        QuiverGraph g = c.ar_quiver();
        std::vector<std::size_t> in(c.size()), out(c.size());
        for (const auto& [e, mult] : g.arrows) {
            out[e.first] += mult;
            in[e.second] += mult;
        }
        for (ObjectId x = 0; x < c.size(); ++x) {
            CHECK(in[x] == out[x]);
            CHECK(in[x] >= 1);
            // Mesh shape: arrows into X come from the objects that tau X maps to.
            ObjectId t = c.tau_object(x);
            for (const auto& [e, mult] : g.arrows)
                if (e.second == x) CHECK(g.arrows.count({t, e.first}) == 1);
        }
    }
    // The classical cluster category of A_2 is a 5-cycle of arrows.
    ClusterCategory c21(2, 1);
    CHECK(c21.ar_quiver().arrows.size() == 5);
}

TEST_CASE("graded hom dims agree with the interval/orbit oracle") {
    for (auto* c : {&cat22(), &cat32()}) {
        for (ObjectId x = 0; x < c->size(); ++x)
            for (ObjectId y = 0; y < c->size(); ++y)
                for (int p = -4; p <= c->d(); ++p) {
                    INFO(c->name(x), " -> ", c->name(y), " degree ", p);
                    CHECK(static_cast<int>(c->hom_dim(x, y, p)) ==
                          oracle_orbit_hom(c->n(), c->d(), c->key(x), c->key(y), p));
                }
    }
    ClusterCategory c(2, 1);
    for (ObjectId x = 0; x < c.size(); ++x)
        for (ObjectId y = 0; y < c.size(); ++y)
            for (int p = -3; p <= 1; ++p)
                CHECK(static_cast<int>(c.hom_dim(x, y, p)) == oracle_orbit_hom(2, 1, c.key(x), c.key(y), p));
}

TEST_CASE("Serre-type symmetry dim Hom(X, Y[p]) = dim Hom(Y, tau X[1-p])") {
    for (auto* c : {&cat22(), &cat32()})
        for (ObjectId x = 0; x < c->size(); ++x)
            for (ObjectId y = 0; y < c->size(); ++y)
                for (int p = -2; p <= 2; ++p)
                    CHECK(c->hom_dim(x, y, p) == c->hom_dim(y, c->tau_object(x), 1 - p));
}

TEST_CASE("orbit transport is functorial and invertible") {
    const auto& c = cat32();
    for (ObjectId x = 0; x < c.size(); ++x)
        for (ObjectId y = 0; y < c.size(); ++y)
            for (ObjectId z = 0; z < c.size(); z += 2)
                for (int p = -1; p <= 0; ++p) {
                    const StalkKey a = c.key(x), b = c.key(y), e = c.key(z);
                    const ProjectiveHom& hab = c.db_hom(a, b);
                    const ProjectiveHom& hbe = c.db_hom(b, e);
                    if (hab.dim(p) == 0 || hbe.dim(0) == 0) continue;
                    for (int steps : {1, -1, 2}) {
                        Matrix tab = c.transport(a, b, p, steps);
                        Matrix tbe = c.transport(b, e, 0, steps);
                        Matrix tae = c.transport(a, e, p, steps);
                        StalkKey fa = c.orbit_key(x, steps), fb = c.orbit_key(y, steps), fe = c.orbit_key(z, steps);
                        CHECK(c.transport(fa, fb, p, -steps) * tab == Matrix::identity(hab.dim(p)));
                        for (std::size_t i = 0; i < hab.dim(p); ++i)
                            for (std::size_t j = 0; j < hbe.dim(0); ++j) {
                                ProjectiveMap f = hab.basis_map(p, i), g = hbe.basis_map(0, j);
                                Matrix lhs = tae * c.db_hom(a, e).class_of(compose(g, f));
                                ProjectiveMap tf = c.db_hom(fa, fb).representative(p, tab.col(i));
                                ProjectiveMap tg = c.db_hom(fb, fe).representative(0, tbe.col(j));
                                Matrix rhs = c.db_hom(fa, fe).class_of(compose(tg, tf));
                                CHECK(lhs == rhs);
                            }
                    }
                }
}

TEST_CASE("composition: units and associativity on basis triples (n = 2, d = 2)") {
    const auto& c = cat22();
    const std::size_t N = c.size();
    for (ObjectId x = 0; x < N; ++x) {
        ClusterMorphism id = c.identity(x);
        CHECK_FALSE(id.is_zero());
        for (ObjectId y = 0; y < N; ++y)
            for (int p = -1; p <= 0; ++p)
                for (const auto& f : c.hom_basis(x, y, p)) {
                    CHECK(c.coords(c.compose(f, id)) == c.coords(f));
                    CHECK(c.coords(c.compose(c.identity(y), f)) == c.coords(f));
                }
    }
    std::size_t checked = 0, nonzero = 0;
    for (ObjectId x = 0; x < N; ++x)
        for (ObjectId y = 0; y < N; ++y)
            for (ObjectId z = 0; z < N; ++z)
                for (ObjectId w = 0; w < N; ++w)
                    for (int p = -1; p <= 0; ++p)
                        for (const auto& f : c.hom_basis(x, y, p))
                            for (const auto& g : c.hom_basis(y, z, 0))
                                for (const auto& h : c.hom_basis(z, w, 0)) {
                                    Matrix l = c.coords(c.compose(h, c.compose(g, f)));
                                    Matrix r = c.coords(c.compose(c.compose(h, g), f));
                                    CHECK(l == r);
                                    ++checked;
                                    if (!l.is_zero()) ++nonzero;
                                }
    CHECK(checked > 100);
    CHECK(nonzero > 0);
}

TEST_CASE("cluster tilting") {
    const auto& c = cat22();
    auto m1 = c.parse_objects("P(0,1)+P(2,1)");
    CHECK(c.is_cluster_tilting(m1));
    // Hom(M_i, M_j[i]) = 0 for 1 <= i <= d.
    for (ObjectId a : m1)
        for (ObjectId b : m1)
            for (int i = 1; i <= 2; ++i) CHECK(c.hom_dim(a, b, i) == 0);
    ClusterTiltingReport r = c.cluster_tilting_report(c.parse_objects("P(0,1)"));
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().object != c.find(P(0, 1)));
    CHECK(cat32().is_cluster_tilting(cat32().parse_objects("P(0,1)+P(0,2)+P(3,1)")));
    CHECK_FALSE(cat32().is_cluster_tilting(cat32().parse_objects("P(0,1)+P(0,2)")));
}

TEST_CASE("right approximations and splicing towers") {
    for (auto [c, spec] : {std::pair{&cat22(), "P(0,1)+P(2,1)"}, std::pair{&cat32(), "P(0,1)+P(0,2)+P(3,1)"}}) {
        auto m = c->parse_objects(spec);
        std::set<ObjectId> ms(m.begin(), m.end());
        for (ObjectId y = 0; y < c->size(); ++y) {
            RightApproximation a = c->right_approximation(m, {y});
            CHECK(c->approximation_is_surjective(m, a));
            std::size_t expect = 0;
            for (ObjectId mj : m) expect += c->hom_dim(mj, y, 0);
            CHECK(a.terms.size() == expect);
            CHECK(a.map.map.is_closed());

            SplicingTower t = c->splicing_tower(m, y);
            REQUIRE(t.k.size() == static_cast<std::size_t>(c->d() + 1));
            CHECK(t.in_add_m.back());
            if (ms.count(y))
                for (int i = 1; i <= c->d(); ++i) CHECK(t.in_add_m[i]);

            RightApproximation pruned = c->right_approximation(m, {y}, true);
            CHECK(c->approximation_is_surjective(m, pruned));
            CHECK(pruned.terms.size() <= a.terms.size());
        }
    }
    // Non-cluster-tilting M can break the splicing property.
    const auto& c = cat22();
    bool failed = false;
    for (ObjectId y = 0; y < c.size(); ++y) {
        try {
            c.splicing_tower(c.parse_objects("P(0,1)"), y);
        } catch (const SplicingFailure&) {
            failed = true;
        }
    }
    CHECK(failed);
}

TEST_CASE("DOT and object tables") {
    const auto& c = cat22();
    std::string dot = c.ar_quiver().to_dot("ar");
    CHECK(dot.find("\"P(0,1)\" -> \"P(0,2)\";") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    Json o = c.objects_json();
    CHECK(o.size() == 8);
    CHECK(o[0]["name"] == "P(0,1)");
}
