#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "bjlab/bjlab.hpp"
#include "oracles.hpp"

using namespace bjlab;

namespace {

Vec vec(std::vector<long> xs) {
    std::vector<Rat> c;
    for (long v : xs) c.emplace_back(v);
    return Vec(c);
}

std::map<int, int> faces_per_dim(const PolyhedralSpace& s) {
    std::map<int, int> counts;
    for (const auto& f : face_lattice(s)) ++counts[f.dim];
    return counts;
}

}  // namespace

TEST_CASE("face lattice has the right census per dimension") {
    auto c = faces_per_dim(make_linf(3));
    CHECK(c[0] == 8);
    CHECK(c[1] == 12);
    CHECK(c[2] == 6);

    c = faces_per_dim(make_l1(3));
    CHECK(c[0] == 6);
    CHECK(c[1] == 12);
    CHECK(c[2] == 8);

    c = faces_per_dim(make_linf(2));
    CHECK(c[0] == 4);
    CHECK(c[1] == 4);
}

TEST_CASE("lattice faces are consistent polytope faces") {
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        for (const auto& f : face_lattice(s)) {
            // Vertex ids determine the dimension, and every active facet
            // functional evaluates to 1 on every vertex of the face.
            std::vector<Vec> pts;
            for (int v : f.vertex_ids) pts.push_back(s.vertices()[v]);
            CHECK(affine_dim(pts) == static_cast<std::size_t>(f.dim));
            for (int h : f.active_facet_ids)
                for (const auto& p : pts) CHECK(pairing(s.facets()[h], p) == 1);
        }
    }
}

TEST_CASE("minimal face classifies points of the cube ball") {
    const auto s = make_linf(3);

    const auto& corner = minimal_face(s, vec({1, 1, 1}));
    CHECK(corner.dim == 0);

    // (2,2,0) sits on the edge where the first two coordinates agree
    // with the norm.
    const auto& edge = minimal_face(s, vec({2, 2, 0}));
    CHECK(edge.dim == 1);
    CHECK(edge.vertex_ids.size() == 2);

    const Vec inner({Rat(1), Rat(1) / Rat(2), Rat(-1) / Rat(3)});
    const auto& facet = minimal_face(s, inner);
    CHECK(facet.dim == 2);
    CHECK(facet.vertex_ids.size() == 4);

    CHECK_THROWS_AS(minimal_face(s, vec({0, 0, 0})), ZeroVector);
}

TEST_CASE("smoothness order equals codimension of the minimal face") {
    const auto s = make_linf(3);
    CHECK(smoothness_order(s, vec({1, 1, 1})) == 3);
    CHECK(smoothness_order(s, vec({2, 2, 0})) == 2);
    CHECK(smoothness_order(s, Vec({Rat(1), Rat(1) / Rat(2), Rat(-1) / Rat(3)})) == 1);
    // Scale invariance.
    CHECK(smoothness_order(s, vec({5, 5, 5})) == 3);
}

TEST_CASE("both smoothness routes agree with the rank oracle everywhere") {
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        for (const auto& f : face_lattice(s)) {
            const std::size_t expect = s.dim() - static_cast<std::size_t>(f.dim);
            for (const auto& p : relative_interior_samples(s, f)) {
                CHECK(smoothness_order(s, p) == expect);
                CHECK(generator_span_dim(s, p) == expect);
                CHECK(oracles::smooth_order_oracle(s, p) == expect);
            }
        }
    }
}

TEST_CASE("relative interior points have exactly the face's active set") {
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        for (const auto& f : face_lattice(s)) {
            for (const auto& p : relative_interior_samples(s, f)) {
                CHECK(s.norm(p) == 1);
                CHECK(active_facets(s, p) == f.active_facet_ids);
                CHECK(minimal_face(s, p) == f);
            }
        }
    }
}

TEST_CASE("subface of an extreme point steps down one dimension") {
    const auto s = make_l1(3);
    const Vec e1 = vec({1, 0, 0});
    // The positive-orthant facet of the cross polytope.
    const Face* facet = nullptr;
    for (const auto& f : face_lattice(s)) {
        if (f.dim != 2) continue;
        bool pos = true;
        for (int v : f.vertex_ids)
            for (const Rat& c : s.vertices()[v].c)
                if (c < 0) pos = false;
        if (pos) facet = &f;
    }
    REQUIRE(facet != nullptr);

    const auto& edge = subface_of_extreme(s, *facet, e1);
    CHECK(edge.dim == 1);

    // The tie-break picks the lexicographically smallest qualifying
    // vertex-id tuple among all dim-1 subfaces containing e1.
    int e1_id = -1;
    for (std::size_t v = 0; v < s.vertices().size(); ++v)
        if (s.vertices()[v] == e1) e1_id = static_cast<int>(v);
    REQUIRE(e1_id >= 0);
    std::vector<std::vector<int>> qualifying;
    for (const auto& g : face_lattice(s)) {
        if (g.dim != 1) continue;
        bool has_x = false, inside = true;
        for (int v : g.vertex_ids)
            if (v == e1_id) has_x = true;
        for (int v : g.vertex_ids)
            if (!std::binary_search(facet->vertex_ids.begin(), facet->vertex_ids.end(), v))
                inside = false;
        if (has_x && inside) qualifying.push_back(g.vertex_ids);
    }
    REQUIRE(qualifying.size() == 2);
    std::sort(qualifying.begin(), qualifying.end());
    CHECK(edge.vertex_ids == qualifying.front());

    CHECK_THROWS_AS(subface_of_extreme(s, *facet, vec({2, 0, 0})), NotAnExtremePoint);
    CHECK_THROWS_AS(subface_of_extreme(s, *facet, vec({0, 0, -1})), NotAnExtremePoint);
    const auto& corner = minimal_face(s, e1);
    CHECK_THROWS_AS(subface_of_extreme(s, corner, e1), NoSuchSubface);
}

TEST_CASE("descending subfaces reach every dimension") {
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        const auto& facet = face_lattice(s).back();
        REQUIRE(facet.dim == static_cast<int>(s.dim()) - 1);
        const Vec x = s.vertices()[facet.vertex_ids.front()];
        const Face* g = &facet;
        while (g->dim > 0) {
            const Face& h = subface_of_extreme(s, *g, x);
            CHECK(h.dim == g->dim - 1);
            g = &h;
        }
        CHECK(s.vertices()[g->vertex_ids.front()] == x);
    }
}

TEST_CASE("witness sequence marches toward a corner at the stated rate") {
    const auto s = make_linf(3);
    const Vec x = vec({1, 1, 1});
    const Face* facet = nullptr;
    for (const auto& f : face_lattice(s))
        if (f.dim == 2 && pairing(s.facets()[f.active_facet_ids.front()], x) == 1 &&
            s.facets()[f.active_facet_ids.front()].c == std::vector<Rat>{Rat(1), Rat(0), Rat(0)})
            facet = &f;
    REQUIRE(facet != nullptr);

    const auto seq = ksmooth_witness_sequence(s, *facet, x, 2, 3);
    REQUIRE(seq.size() == 3);
    const Rat dist1 = s.norm(sub(seq[0], x));
    for (std::size_t j = 1; j <= seq.size(); ++j) {
        const Vec& p = seq[j - 1];
        CHECK(smoothness_order(s, p) == 2);
        CHECK(pairing(s.facets()[facet->active_facet_ids.front()], p) == s.norm(p));
        CHECK(s.norm(sub(p, x)) == dist1 / Rat(static_cast<long>(j)));
    }

    const auto smooth_seq = ksmooth_witness_sequence(s, *facet, x, 1, 4);
    for (const auto& p : smooth_seq) CHECK(smoothness_order(s, p) == 1);

    CHECK_THROWS_AS(ksmooth_witness_sequence(s, *facet, x, 0, 3), NoSuchSubface);
    CHECK_THROWS_AS(ksmooth_witness_sequence(s, *facet, x, 3, 3), NoSuchSubface);
    const auto& corner = minimal_face(s, x);
    CHECK_THROWS_AS(ksmooth_witness_sequence(s, corner, x, 1, 3), NoSuchSubface);
}

TEST_CASE("witness sequences exist for every intermediate order") {
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        if (s.dim() < 2) continue;
        const auto& facet = face_lattice(s).back();
        const Vec x = s.vertices()[facet.vertex_ids.front()];
        for (std::size_t k = 1; k < s.dim(); ++k) {
            const auto seq = ksmooth_witness_sequence(s, facet, x, k, 3);
            REQUIRE(seq.size() == 3);
            for (const auto& p : seq) {
                CHECK(smoothness_order(s, p) == k);
                CHECK(oracles::smooth_order_oracle(s, p) == k);
            }
        }
    }
}
