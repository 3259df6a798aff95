#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

inline const std::vector<Face>& face_lattice(const PolyhedralSpace& s) {
    return s.face_lattice();
}

// Facet indices where x attains its norm. For x on the sphere these are the
// supporting facets; the definition is scale-invariant.
inline std::vector<int> active_facets(const PolyhedralSpace& s, const Vec& x) {
    if (is_zero(x)) throw ZeroVector("active facets of the zero vector are undefined");
    const Rat nx = s.norm(x);
    std::vector<int> act;
    for (std::size_t h = 0; h < s.facets().size(); ++h)
        if (pairing(s.facets()[h], x) == nx) act.push_back(static_cast<int>(h));
    return act;
}

// Smallest face of the ball containing x/norm(x).
inline const Face& minimal_face(const PolyhedralSpace& s, const Vec& x) {
    const auto act = active_facets(s, x);
    std::vector<int> verts = s.facet_vertex_ids(act.front());
    for (std::size_t i = 1; i < act.size(); ++i)
        verts = detail::sorted_intersection(verts, s.facet_vertex_ids(act[i]));
    const int idx = s.face_index_by_vertex_set(verts);
    if (idx < 0) throw std::logic_error("minimal face missing from the lattice");
    return s.face_lattice()[idx];
}

// Smoothness order of x: the number of independent directions in which the
// supporting functional is pinned down; equals n minus the dimension of the
// minimal face, and also the linear span dimension of the support functionals.
inline std::size_t smoothness_order(const PolyhedralSpace& s, const Vec& x) {
    return s.dim() - static_cast<std::size_t>(minimal_face(s, x).dim);
}

// Cross-check route for the smoothness order: rank of the supporting
// functionals of x. Agrees with smoothness_order on every input.
inline std::size_t generator_span_dim(const PolyhedralSpace& s, const Vec& x) {
    Matrix rows;
    for (int h : active_facets(s, x)) rows.push_back(s.facets()[h].c);
    return rank(std::move(rows));
}

// Vertex centroid: an exact relative-interior point of the face.
inline Vec relative_interior_point(const PolyhedralSpace& s, const Face& f) {
    if (f.vertex_ids.empty()) throw Error("face has no vertices");
    std::vector<Rat> c(s.dim(), Rat(0));
    for (int v : f.vertex_ids) c = add(c, s.vertices()[v].c);
    const Rat inv = Rat(1) / Rat(static_cast<long>(f.vertex_ids.size()));
    return Vec(scale(inv, c));
}

// Deterministic sample sequence through the relative interior of a face:
// the centroid first, then points pulled toward each vertex at weights
// 1/2, 3/4, 63/64. The sharpest pull matters: on box-like balls a diagonal
// operator whose entry magnitudes have ratio r preserves orthogonality at a
// facet sample pulled to weight w iff r >= w, and two distinct rationals of
// height <= 8 (the search's perturbation height) never have a magnitude
// ratio in [63/64, 1) since numerator and denominator products stay <= 64
// and 63 is not such a product. So 63/64 pulls separate every non-isometric
// diagonal the search families can draw; 17/18 demonstrably did not.
inline std::vector<Vec> relative_interior_samples(const PolyhedralSpace& s, const Face& f,
                                                  std::size_t max_count = SIZE_MAX) {
    std::vector<Vec> out;
    const Vec c = relative_interior_point(s, f);
    out.push_back(c);
    if (f.vertex_ids.size() > 1) {
        const Rat weights[] = {Rat(1) / 2, Rat(3) / 4, Rat(63) / 64};
        for (const Rat& w : weights) {
            for (int v : f.vertex_ids) {
                if (out.size() >= max_count) return out;
                out.push_back(add(scale(Rat(1) - w, c), scale(w, s.vertices()[v])));
            }
        }
    }
    if (out.size() > max_count) out.resize(max_count);
    return out;
}

// The (dim-1)-subface of `f` containing the extreme point x; ties broken by
// the lexicographically smallest vertex-id tuple.
inline const Face& subface_of_extreme(const PolyhedralSpace& s, const Face& f, const Vec& x) {
    int xid = -1;
    for (std::size_t v = 0; v < s.vertices().size(); ++v)
        if (s.vertices()[v] == x) xid = static_cast<int>(v);
    if (xid < 0) throw NotAnExtremePoint("point is not an extreme point of the ball");
    if (!std::binary_search(f.vertex_ids.begin(), f.vertex_ids.end(), xid))
        throw NotAnExtremePoint("point is not an extreme point of the face");
    if (f.dim == 0) throw NoSuchSubface("a vertex has no proper subface");
    for (const Face& g : s.face_lattice()) {
        if (g.dim != f.dim - 1) continue;
        if (!std::binary_search(g.vertex_ids.begin(), g.vertex_ids.end(), xid)) continue;
        if (!detail::sorted_contains_all(f.vertex_ids, g.vertex_ids)) continue;
        return g;  // lattice order is (dim, lex), so the first hit is the tie-break winner
    }
    throw NoSuchSubface("no subface of the requested dimension contains the point");
}

// m points x_j = (1-1/j) x + (1/j) y marching toward the extreme point x
// through the relative interior of an (n-k)-face G with x in G and G inside
// the given facet. Every x_j has smoothness order exactly k, and
// norm(x_j - x) = (1/j) norm(y - x).
inline std::vector<Vec> ksmooth_witness_sequence(const PolyhedralSpace& s, const Face& facet,
                                                 const Vec& x, std::size_t k, std::size_t m) {
    const std::size_t n = s.dim();
    if (facet.dim != static_cast<int>(n) - 1)
        throw NoSuchSubface("witness sequence requires a facet");
    if (k < 1 || k >= n)
        throw NoSuchSubface("smoothness order must lie strictly between 0 and n");
    const Face* g = &facet;
    while (g->dim > static_cast<int>(n - k)) g = &subface_of_extreme(s, *g, x);
    const Vec y = relative_interior_point(s, *g);
    std::vector<Vec> seq;
    for (std::size_t j = 1; j <= m; ++j) {
        const Rat t = Rat(1) / Rat(static_cast<long>(j));
        seq.push_back(add(scale(Rat(1) - t, x), scale(t, y)));
    }
    return seq;
}

}  // namespace bjlab
