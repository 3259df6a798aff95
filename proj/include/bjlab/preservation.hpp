#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/faces.hpp"
#include "bjlab/operators.hpp"
#include "bjlab/orthogonality.hpp"
#include "bjlab/simplex.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

// Certificate for "T maps directions Birkhoff-James orthogonal to x onto
// directions orthogonal to Tx".
//
// Criterion: with r = norm(Tx)/norm(x), T preserves at x iff Tx = 0 or every
// support generator f of x satisfies r*f in T*(support face of Tx). The
// forward direction composes supporting functionals through T*; the converse
// runs through the subspace form of orthogonality: if T(ker f) stays
// orthogonal to Tx it lies in the kernel of some supporting functional of Tx,
// which forces r*f to be its pullback. Both reductions are exact, so the
// verdict is a decision, not an approximation.
//
// A positive certificate stores, per generator of x, convex coefficients over
// the pulled-back generators of Tx reproducing r*f. A negative certificate
// stores a generator f and a direction y in ker f (so x is orthogonal to y)
// with Tx not orthogonal to Ty.
struct NegativeWitness {
    Covec functional;
    Vec direction;
};

struct ContainmentRow {
    int generator_id;                  // facet index of the generator of x
    Covec functional;                  // that generator
    std::vector<Rat> coefficients;     // over support_face(Tx).generators, in order
};

struct PreservationCertificate {
    Vec point;
    bool verdict = false;
    bool degenerate = false;  // x = 0 or Tx = 0: trivially preserved
    Rat ratio;                // norm(Tx)/norm(x) when defined
    std::optional<NegativeWitness> witness;
    std::vector<ContainmentRow> containment;
};

namespace detail {

// Pullbacks of the support generators of Tx, as plain coordinate rows.
inline std::vector<std::vector<Rat>> pulled_back_generators(const LinearOperator& t,
                                                            const SupportFace& sf_tx) {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(sf_tx.generators.size());
    for (const auto& phi : sf_tx.generators) rows.push_back(adjoint_apply(t, phi).c);
    return rows;
}

}  // namespace detail

inline PreservationCertificate preserves_bj_at(const PolyhedralSpace& s,
                                               const LinearOperator& t, const Vec& x) {
    if (t.n != s.dim()) throw DimensionMismatch("operator dimension differs from space");
    if (x.dim() != s.dim()) throw DimensionMismatch("point dimension differs from space");
    PreservationCertificate cert;
    cert.point = x;
    if (is_zero(x)) {
        cert.verdict = true;
        cert.degenerate = true;
        return cert;
    }
    const Vec tx = apply(t, x);
    if (is_zero(tx)) {
        cert.verdict = true;
        cert.degenerate = true;
        return cert;
    }
    const SupportFace sfx = support_face(s, x);
    const SupportFace sftx = support_face(s, tx);
    cert.ratio = sftx.value / sfx.value;
    const auto pulled = detail::pulled_back_generators(t, sftx);

    for (std::size_t i = 0; i < sfx.generators.size(); ++i) {
        const Covec& f = sfx.generators[i];
        const auto combo = convex_combination(pulled, scale(cert.ratio, f).c);
        if (combo) {
            cert.containment.push_back({sfx.generator_ids[i], f, *combo});
            continue;
        }
        // No pullback reproduces r*f, so T(ker f) leaves the orthogonal set
        // of Tx; a direction with every Tx-generator strictly positive on its
        // image exists, and scaling turns "strictly positive" into ">= 1".
        const auto y = linear_feasible(s.dim(), {f.c}, {Rat(0)}, pulled,
                                       std::vector<Rat>(pulled.size(), Rat(1)));
        if (!y) throw std::logic_error("containment failed but no witness direction exists");
        cert.verdict = false;
        cert.containment.clear();
        cert.witness = NegativeWitness{f, Vec(*y)};
        return cert;
    }
    cert.verdict = true;
    return cert;
}

// Support data of a fixed point, precomputed once when many operators are
// tested against the same candidate set.
struct PointSupport {
    Vec x;
    Rat norm;
    std::vector<Covec> generators;
};

inline PointSupport point_support(const PolyhedralSpace& s, const Vec& x) {
    const SupportFace sf = support_face(s, x);
    return PointSupport{x, sf.value, sf.generators};
}

// Verdict-only fast path over precomputed support data. Single-generator
// image faces (the generic case under random operators) reduce to exact
// vector equality and never touch the simplex.
inline bool preserves_bj_at_fast(const PolyhedralSpace& s, const LinearOperator& t,
                                 const PointSupport& px) {
    const Vec tx = apply(t, px.x);
    if (is_zero(tx)) return true;
    const SupportFace sftx = support_face(s, tx);
    const Rat ratio = sftx.value / px.norm;
    const auto pulled = detail::pulled_back_generators(t, sftx);
    for (const Covec& f : px.generators) {
        const auto target = scale(ratio, f).c;
        if (pulled.size() == 1) {
            if (pulled.front() != target) return false;
            continue;
        }
        if (!convex_combination(pulled, target)) return false;
    }
    return true;
}

struct PreservationOnResult {
    bool all = true;
    std::vector<PreservationCertificate> certificates;
};

// Conjunction over a finite candidate set. By default stops at the first
// violation; collect_all gathers a certificate per point either way.
inline PreservationOnResult preserves_bj_on(const PolyhedralSpace& s, const LinearOperator& t,
                                            const std::vector<Vec>& points,
                                            bool collect_all = false) {
    PreservationOnResult out;
    for (const auto& x : points) {
        PreservationCertificate cert = preserves_bj_at(s, t, x);
        if (!cert.verdict) out.all = false;
        out.certificates.push_back(std::move(cert));
        if (!out.all && !collect_all) return out;
    }
    return out;
}

enum class RhoVariant { Both, Plus, Minus };

// Preservation of rho-type orthogonality at x: does rho'(x, v) = 0 force
// rho'(Tx, Tv) = 0 (variant-wise)? The null set of each derivative is a
// finite union of polyhedral cones, one per attaining generator (or ordered
// generator pair for the symmetric variant), and on every cone the image
// derivative is a fixed linear functional once its own attainment pattern is
// pinned; vanishing of each piece is decided by exact cone feasibility.
// Tx = 0 counts as preserved (the degenerate convention of the BJ check).
inline bool preserves_rho_at(const PolyhedralSpace& s, const LinearOperator& t, const Vec& x,
                             RhoVariant variant) {
    if (t.n != s.dim()) throw DimensionMismatch("operator dimension differs from space");
    if (is_zero(x)) throw ZeroVector("rho preservation at the zero vector is undefined");
    const Vec tx = apply(t, x);
    if (is_zero(tx)) return true;

    const std::size_t n = s.dim();
    const SupportFace gx = support_face(s, x);
    const SupportFace gtx = support_face(s, tx);
    const auto pulled = detail::pulled_back_generators(t, gtx);
    const std::size_t a = gx.generators.size();
    const std::size_t b = pulled.size();

    // feasibility of {v : eqs = 0, ges >= 0, extra >= 1}; cones make strict
    // positivity and ">= 1" interchangeable.
    const auto cone_feasible = [&](const std::vector<std::vector<Rat>>& eqs,
                                   std::vector<std::vector<Rat>> ges,
                                   const std::vector<std::vector<Rat>>& extra) {
        std::vector<Rat> ge_rhs(ges.size(), Rat(0));
        for (const auto& e : extra) {
            ges.push_back(e);
            ge_rhs.push_back(Rat(1));
        }
        return linear_feasible(n, eqs, std::vector<Rat>(eqs.size(), Rat(0)), ges, ge_rhs)
            .has_value();
    };

    if (variant == RhoVariant::Plus || variant == RhoVariant::Minus) {
        const Rat sgn = variant == RhoVariant::Plus ? Rat(1) : Rat(-1);
        // One-sided case. Null cone piece i: g_i attains the extreme value
        // and equals zero. On it the image derivative must vanish
        // identically: no pullback may reach the extreme side, and the
        // opposite side may not swallow all pullbacks at once.
        for (std::size_t i = 0; i < a; ++i) {
            std::vector<std::vector<Rat>> eqs{gx.generators[i].c};
            std::vector<std::vector<Rat>> ges;
            for (std::size_t k = 0; k < a; ++k)
                ges.push_back(scale(-sgn, gx.generators[k]).c);
            for (std::size_t j = 0; j < b; ++j)
                if (cone_feasible(eqs, ges, {scale(sgn, Covec(pulled[j])).c})) return false;
            std::vector<std::vector<Rat>> all_opposite;
            for (std::size_t j = 0; j < b; ++j)
                all_opposite.push_back(scale(-sgn, Covec(pulled[j])).c);
            if (cone_feasible(eqs, ges, all_opposite)) return false;
        }
        return true;
    }

    // Symmetric variant: null pieces are indexed by (max attainer, min
    // attainer) pairs with their sum pinned to zero; the image side is
    // subdivided the same way, leaving one linear functional per sub-piece.
    for (std::size_t i1 = 0; i1 < a; ++i1) {
        for (std::size_t i2 = 0; i2 < a; ++i2) {
            std::vector<std::vector<Rat>> eqs{
                add(gx.generators[i1].c, gx.generators[i2].c)};
            std::vector<std::vector<Rat>> ges;
            for (std::size_t k = 0; k < a; ++k) {
                ges.push_back(sub(gx.generators[i1].c, gx.generators[k].c));
                ges.push_back(sub(gx.generators[k].c, gx.generators[i2].c));
            }
            for (std::size_t j1 = 0; j1 < b; ++j1) {
                for (std::size_t j2 = 0; j2 < b; ++j2) {
                    auto q = ges;
                    for (std::size_t j = 0; j < b; ++j) {
                        q.push_back(sub(pulled[j1], pulled[j]));
                        q.push_back(sub(pulled[j], pulled[j2]));
                    }
                    const auto lin = add(pulled[j1], pulled[j2]);
                    if (cone_feasible(eqs, q, {lin})) return false;
                    if (cone_feasible(eqs, q, {scale(Rat(-1), Covec(lin)).c})) return false;
                }
            }
        }
    }
    return true;
}

// Transport of a spherical patch: preservation at every point of A (a finite
// subset of a face F intersected with the unit sphere) forces the images to
// share one norm k; when k > 0 the normalized images land in a common face.
struct FaceTransport {
    Rat scale;                       // the common image norm
    bool zero = false;               // T annihilates A
    std::optional<Face> image_face;  // smallest face containing all normalized images
    bool convex_hull_checked = false;
};

inline FaceTransport face_transport(const PolyhedralSpace& s, const LinearOperator& t,
                                    const Face& f, const std::vector<Vec>& a) {
    if (a.empty()) throw HypothesisViolated("transport needs at least one point");
    for (const auto& p : a) {
        if (s.norm(p) != 1)
            throw HypothesisViolated("transport points must lie on the unit sphere");
        for (int h : f.active_facet_ids)
            if (pairing(s.facets()[h], p) != 1)
                throw HypothesisViolated("transport point lies outside the face");
        if (!preserves_bj_at(s, t, p).verdict)
            throw HypothesisViolated("operator does not preserve orthogonality on the set");
    }

    FaceTransport out;
    out.scale = s.norm(apply(t, a.front()));
    for (const auto& p : a)
        if (s.norm(apply(t, p)) != out.scale)
            throw std::logic_error("equal-norm law failed on a common face");
    if (out.scale == 0) {
        out.zero = true;
        return out;
    }

    const Rat inv = Rat(1) / out.scale;
    std::vector<int> common;
    bool first = true;
    std::vector<Vec> images;
    for (const auto& p : a) {
        const Vec w = scale(inv, apply(t, p));
        images.push_back(w);
        const auto act = active_facets(s, w);
        common = first ? act : detail::sorted_intersection(common, act);
        first = false;
    }
    if (common.empty())
        throw std::logic_error("normalized images share no supporting facet");
    std::vector<int> verts = s.facet_vertex_ids(common.front());
    for (std::size_t i = 1; i < common.size(); ++i)
        verts = detail::sorted_intersection(verts, s.facet_vertex_ids(common[i]));
    const int idx = s.face_index_by_vertex_set(verts);
    if (idx < 0) throw std::logic_error("image face missing from the lattice");
    out.image_face = s.face_lattice()[idx];

    // Convex-hull extension: preservation also holds at interior mixtures.
    if (a.size() > 1) {
        std::vector<Rat> c(s.dim(), Rat(0));
        for (const auto& p : a) c = add(c, p.c);
        Vec centroid(scale(Rat(1) / Rat(static_cast<long>(a.size())), c));
        out.convex_hull_checked = preserves_bj_at(s, t, centroid).verdict;
        for (std::size_t i = 0; i + 1 < a.size() && out.convex_hull_checked; ++i) {
            const Vec mid = scale(Rat(1) / 2, add(a[i], a[i + 1]));
            out.convex_hull_checked = preserves_bj_at(s, t, mid).verdict;
        }
    } else {
        out.convex_hull_checked = true;
    }
    return out;
}

// Facet-to-facet transport for bijective operators. The hypothesis
// (preservation on the whole relative interior of F) is sampled, not
// certified: preservation is checked at finitely many interior points, and
// any failure of the conclusion at sample scale is reported loudly as a
// hypothesis failure rather than patched over.
struct IntFacetTransport {
    Face image_facet;
    Rat scale;
    std::vector<Vec> samples;
};

inline IntFacetTransport int_facet_transport(const PolyhedralSpace& s, const LinearOperator& t,
                                             const Face& f) {
    if (f.dim != static_cast<int>(s.dim()) - 1)
        throw HypothesisViolated("interior transport requires a facet");
    if (!is_bijective(t)) throw NotBijective("interior facet transport requires a bijection");

    IntFacetTransport out;
    out.samples = relative_interior_samples(s, f);
    for (const auto& p : out.samples)
        if (!preserves_bj_at(s, t, p).verdict)
            throw HypothesisViolated("operator does not preserve orthogonality on the facet interior");

    out.scale = s.norm(apply(t, out.samples.front()));
    for (const auto& p : out.samples)
        if (s.norm(apply(t, p)) != out.scale)
            throw std::logic_error("equal-norm law failed on a facet interior");

    const Rat inv = Rat(1) / out.scale;
    const Face* g = nullptr;
    for (const auto& p : out.samples) {
        const Face& mf = minimal_face(s, scale(inv, apply(t, p)));
        if (g == nullptr) g = &mf;
        if (!(mf == *g) || mf.dim != static_cast<int>(s.dim()) - 1)
            throw HypothesisViolated(
                "sampled preservation did not extend: images do not fill one facet interior");
    }
    out.image_facet = *g;
    return out;
}

// Support functionals of extreme points outside a proper subspace span the
// whole dual space. Y is given by a spanning set; the check collects the
// support generators of every vertex not in span(Y) and ranks them.
inline bool span_theorem_check(const PolyhedralSpace& s, const std::vector<Vec>& y_basis) {
    Matrix yrows;
    for (const auto& y : y_basis) {
        if (y.dim() != s.dim())
            throw DimensionMismatch("subspace basis dimension differs from space");
        yrows.push_back(y.c);
    }
    const std::size_t r = rank(yrows);
    if (r >= s.dim()) throw NotProperSubspace("subspace must be proper");

    Matrix gens;
    for (const auto& v : s.vertices()) {
        Matrix with = yrows;
        with.push_back(v.c);
        if (rank(std::move(with)) == r) continue;  // v in span(Y)
        for (int h : active_facets(s, v)) gens.push_back(s.facets()[h].c);
    }
    if (gens.empty())
        throw std::logic_error("no extreme point outside a proper subspace");
    return rank(std::move(gens)) == s.dim();
}

// If T preserves orthogonality at x and Tx is a smooth point, x must have
// been smooth. Vacuously true when Tx is not smooth.
inline bool inverse_image_smoothness_check(const PolyhedralSpace& s, const LinearOperator& t,
                                           const Vec& x) {
    if (is_zero(x)) throw ZeroVector("smoothness transfer at the zero vector is undefined");
    const Vec tx = apply(t, x);
    if (is_zero(tx)) throw HypothesisViolated("smoothness transfer requires Tx != 0");
    if (!preserves_bj_at(s, t, x).verdict)
        throw HypothesisViolated("operator does not preserve orthogonality at the point");
    if (smoothness_order(s, tx) != 1) return true;
    return smoothness_order(s, x) == 1;
}

// Face-by-face preservation scan. Every lattice face contributes interior
// samples (the vertex itself for 0-faces); the anomaly list pairs facets
// whose sampled interior is fully preserved with incident vertices that are
// not, the pattern of a preserving set that is not closed.
struct FaceScanEntry {
    int face_index = 0;
    int dim = 0;
    std::vector<int> vertex_ids;
    std::size_t samples = 0;
    bool all_preserved = true;
    std::vector<Vec> failures;
};

struct ScanReport {
    std::vector<FaceScanEntry> entries;
    std::vector<std::pair<int, int>> interior_vs_vertex_anomalies;  // (facet, vertex) faces
    bool all_preserved = true;
};

inline ScanReport preserving_set_scan(const PolyhedralSpace& s, const LinearOperator& t,
                                      std::size_t samples_per_face = 8) {
    ScanReport rep;
    const auto& faces = s.face_lattice();
    std::vector<bool> vertex_face_ok(s.vertices().size(), true);
    for (std::size_t i = 0; i < faces.size(); ++i) {
        FaceScanEntry e;
        e.face_index = static_cast<int>(i);
        e.dim = faces[i].dim;
        e.vertex_ids = faces[i].vertex_ids;
        for (const auto& p : relative_interior_samples(s, faces[i], samples_per_face)) {
            ++e.samples;
            if (!preserves_bj_at(s, t, p).verdict) {
                e.all_preserved = false;
                e.failures.push_back(p);
            }
        }
        if (faces[i].dim == 0) vertex_face_ok[faces[i].vertex_ids.front()] = e.all_preserved;
        if (!e.all_preserved) rep.all_preserved = false;
        rep.entries.push_back(std::move(e));
    }
    for (const auto& e : rep.entries) {
        if (e.dim != static_cast<int>(s.dim()) - 1 || !e.all_preserved) continue;
        for (int v : e.vertex_ids)
            if (!vertex_face_ok[v])
                rep.interior_vs_vertex_anomalies.push_back({e.face_index, v});
    }
    return rep;
}

}  // namespace bjlab
