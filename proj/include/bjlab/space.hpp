#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/linalg.hpp"
#include "bjlab/rational.hpp"
#include "bjlab/simplex.hpp"

namespace bjlab {

// A proper face of the unit ball. vertex_ids lists every extreme point on the
// face; active_facet_ids is canonical: every facet containing all of them.
// Faces are identified by their vertex set, so the lattice holds each one once.
struct Face {
    std::vector<int> vertex_ids;        // sorted
    std::vector<int> active_facet_ids;  // sorted
    int dim = 0;

    bool operator==(const Face& o) const {
        return vertex_ids == o.vertex_ids && active_facet_ids == o.active_facet_ids &&
               dim == o.dim;
    }
};

namespace detail {

inline std::vector<int> sorted_intersection(const std::vector<int>& a,
                                            const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool sorted_contains_all(const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Double-description vertex enumeration of {x : row . x <= 1 for all rows}.
// Preconditions (caller's): rows are nonzero, exactly deduplicated, closed
// under negation, and span the space, so the region is a bounded symmetric
// polytope with 0 in its interior.
//
// Starts from a parallelotope cut out by n independent row pairs, then adds
// the remaining rows one at a time, keeping the exact vertex set throughout.
inline std::vector<Vec> enumerate_vertices(std::size_t n, const std::vector<Covec>& rows) {
    const std::size_t m = rows.size();
    std::map<std::vector<Rat>, int> row_index;
    for (std::size_t i = 0; i < m; ++i) row_index[rows[i].c] = static_cast<int>(i);

    // Greedy independent subset of n rows.
    std::vector<int> basis;
    Matrix picked;
    for (std::size_t i = 0; i < m && basis.size() < n; ++i) {
        picked.push_back(rows[i].c);
        if (rank(picked) == basis.size() + 1) {
            basis.push_back(static_cast<int>(i));
        } else {
            picked.pop_back();
        }
    }
    if (basis.size() < n)
        throw UnboundedBall("constraint rows do not span the space");

    std::vector<bool> processed(m, false);
    for (int b : basis) {
        processed[b] = true;
        const auto neg = row_index.find(negate(rows[b]).c);
        if (neg == row_index.end())
            throw std::logic_error("row set not closed under negation");
        processed[neg->second] = true;
    }

    struct DDVert {
        Vec x;
        std::vector<int> active;  // processed rows tight at x, sorted
    };

    const auto active_rows = [&](const Vec& x) {
        std::vector<int> act;
        for (std::size_t i = 0; i < m; ++i)
            if (processed[i] && pairing(rows[i], x) == 1) act.push_back(static_cast<int>(i));
        return act;
    };

    Matrix basis_rows;
    for (int b : basis) basis_rows.push_back(rows[b].c);
    std::vector<DDVert> verts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Rat> rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = (mask >> j) & 1 ? Rat(1) : Rat(-1);
        const LinearSolve sol = solve_linear(basis_rows, rhs);
        if (!sol.consistent || !sol.unique)
            throw std::logic_error("initial parallelotope solve failed");
        DDVert v{Vec(sol.solution), {}};
        v.active = active_rows(v.x);
        verts.push_back(std::move(v));
    }

    for (std::size_t h = 0; h < m; ++h) {
        if (processed[h]) continue;
        processed[h] = true;

        std::vector<Rat> vals(verts.size());
        bool any_outside = false;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            vals[i] = pairing(rows[h], verts[i].x);
            if (vals[i] > 1) any_outside = true;
        }
        if (!any_outside) {
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (vals[i] == 1)
                    verts[i].active.insert(
                        std::lower_bound(verts[i].active.begin(), verts[i].active.end(),
                                         static_cast<int>(h)),
                        static_cast<int>(h));
            continue;
        }

        // u, v of the current polytope are adjacent iff no third vertex is
        // incident to every constraint tight at both (combinatorial test;
        // valid because the vertex list is complete at every step).
        const auto adjacent = [&](std::size_t a, std::size_t b) {
            const auto common = sorted_intersection(verts[a].active, verts[b].active);
            for (std::size_t w = 0; w < verts.size(); ++w) {
                if (w == a || w == b) continue;
                if (sorted_contains_all(verts[w].active, common)) return false;
            }
            return true;
        };

        std::vector<DDVert> next;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (vals[i] > 1) continue;
            DDVert kept = verts[i];
            if (vals[i] == 1)
                kept.active.insert(
                    std::lower_bound(kept.active.begin(), kept.active.end(),
                                     static_cast<int>(h)),
                    static_cast<int>(h));
            next.push_back(std::move(kept));
        }
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (vals[i] >= 1) continue;
            for (std::size_t j = 0; j < verts.size(); ++j) {
                if (vals[j] <= 1) continue;
                if (!adjacent(i, j)) continue;
                const Rat t = (Rat(1) - vals[i]) / (vals[j] - vals[i]);
                Vec p = add(verts[i].x, scale(t, sub(verts[j].x, verts[i].x)));
                DDVert nv{std::move(p), {}};
                nv.active = active_rows(nv.x);
                next.push_back(std::move(nv));
            }
        }
        verts = std::move(next);
    }

    std::vector<Vec> out;
    out.reserve(verts.size());
    for (auto& v : verts) out.push_back(std::move(v.x));
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Symmetrize (close under negation), drop zeros and exact duplicates, sort.
template <typename T>
std::vector<T> symmetrize_sorted(std::size_t n, const std::vector<T>& in,
                                 const char* what) {
    std::vector<T> out;
    for (const auto& v : in) {
        if (v.dim() != n)
            throw DimensionMismatch(std::string(what) + ": entry dimension differs from space");
        if (is_zero(v)) continue;
        out.push_back(v);
        out.push_back(negate(v));
    }
    std::sort(out.begin(), out.end(), [](const T& a, const T& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// A finite-dimensional space whose unit ball is a symmetric polytope, kept in
// both representations at once: extreme points (vertices) and facet
// functionals. Construction canonicalizes to lexicographic order, so two
// spaces describing the same ball compare equal componentwise.
class PolyhedralSpace {
public:
    static PolyhedralSpace from_vertices(std::size_t n, const std::vector<Vec>& points) {
        if (n == 0) throw DimensionMismatch("space dimension must be at least 1");
        const auto sym = detail::symmetrize_sorted(n, points, "vertices");
        if (sym.empty()) throw DegenerateBall("no nonzero vertices given");
        Matrix rows;
        for (const auto& v : sym) rows.push_back(v.c);
        if (rank(std::move(rows)) < n)
            throw DegenerateBall("vertices do not span the space");

        // Polar step one: vertices of {f : f(v) <= 1 for all v} are exactly
        // the facet functionals of the ball. Polar step two recovers the
        // extreme points, silently dropping non-extreme input points.
        std::vector<Covec> polar_rows;
        for (const auto& v : sym) polar_rows.push_back(Covec(v.c));
        const auto facet_pts = detail::enumerate_vertices(n, polar_rows);

        std::vector<Covec> facets;
        for (const auto& f : facet_pts) facets.push_back(Covec(f.c));
        const auto verts = detail::enumerate_vertices(n, facets);

        PolyhedralSpace s;
        s.dim_ = n;
        s.verts_ = verts;
        s.facets_ = facets;
        s.finalize();
        return s;
    }

    static PolyhedralSpace from_facets(std::size_t n, const std::vector<Covec>& functionals) {
        if (n == 0) throw DimensionMismatch("space dimension must be at least 1");
        const auto sym = detail::symmetrize_sorted(n, functionals, "facets");
        if (sym.empty()) throw UnboundedBall("no nonzero facet functionals given");
        Matrix rows;
        for (const auto& f : sym) rows.push_back(f.c);
        if (rank(std::move(rows)) < n)
            throw UnboundedBall("facet functionals do not bound the ball");

        const auto verts = detail::enumerate_vertices(n, sym);

        // Keep only rows that are genuine facets: tight on an (n-1)-dimensional
        // vertex set. Redundant input functionals are dropped here.
        std::vector<Covec> facets;
        for (const auto& f : sym) {
            std::vector<Vec> tight;
            for (const auto& v : verts)
                if (pairing(f, v) == 1) tight.push_back(v);
            if (!tight.empty() && affine_dim(tight) == n - 1) facets.push_back(f);
        }

        PolyhedralSpace s;
        s.dim_ = n;
        s.verts_ = verts;
        s.facets_ = facets;
        s.finalize();
        return s;
    }

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const std::vector<Covec>& facets() const { return facets_; }

    bool incident(std::size_t v, std::size_t h) const { return inc_[v][h] != 0; }
    const std::vector<int>& vertex_active_facets(std::size_t v) const { return vert_active_[v]; }
    const std::vector<int>& facet_vertex_ids(std::size_t h) const { return facet_verts_[h]; }

    // Polytope norm: the gauge of the unit ball.
    Rat norm(const Vec& x) const {
        if (x.dim() != dim_) throw DimensionMismatch("norm: point dimension differs from space");
        Rat best(0);
        for (const auto& f : facets_) {
            const Rat v = pairing(f, x);
            if (v > best) best = v;
        }
        return best;
    }

    // Polar duality swaps the two representations; no recomputation involved.
    PolyhedralSpace dual() const {
        PolyhedralSpace d;
        d.dim_ = dim_;
        for (const auto& f : facets_) d.verts_.push_back(Vec(f.c));
        for (const auto& v : verts_) d.facets_.push_back(Covec(v.c));
        d.finalize();
        return d;
    }

    // All proper nonempty faces, sorted by (dim, vertex ids). Built on first
    // use and cached; the cache box is shared by copies of the space and is
    // safe to hit from several readers at once.
    const std::vector<Face>& face_lattice() const {
        std::call_once(lattice_->once, [this] { build_lattice(); });
        return lattice_->faces;
    }

    // Index into face_lattice() of the face with exactly this vertex set,
    // or -1 when no face matches.
    int face_index_by_vertex_set(const std::vector<int>& vertex_ids) const {
        face_lattice();
        const auto it = lattice_->by_vertices.find(vertex_ids);
        return it == lattice_->by_vertices.end() ? -1 : it->second;
    }

    bool operator==(const PolyhedralSpace& o) const {
        return dim_ == o.dim_ && verts_ == o.verts_ && facets_ == o.facets_;
    }
    bool operator!=(const PolyhedralSpace& o) const { return !(*this == o); }

private:
    PolyhedralSpace() = default;

    void finalize() {
        if (verts_.empty()) throw DegenerateBall("ball has no extreme points");
        if (facets_.empty()) throw UnboundedBall("ball has no facets");

        inc_.assign(verts_.size(), std::vector<char>(facets_.size(), 0));
        vert_active_.assign(verts_.size(), {});
        facet_verts_.assign(facets_.size(), {});
        for (std::size_t v = 0; v < verts_.size(); ++v) {
            Rat nv(0);
            for (std::size_t h = 0; h < facets_.size(); ++h) {
                const Rat val = pairing(facets_[h], verts_[v]);
                if (val > 1)
                    throw std::logic_error("vertex outside its own ball");
                if (val == 1) {
                    inc_[v][h] = 1;
                    vert_active_[v].push_back(static_cast<int>(h));
                    facet_verts_[h].push_back(static_cast<int>(v));
                }
                if (val > nv) nv = val;
            }
            if (nv != 1) throw std::logic_error("vertex does not lie on the unit sphere");
        }

        for (std::size_t h = 0; h < facets_.size(); ++h) {
            std::vector<Vec> tight;
            for (int v : facet_verts_[h]) tight.push_back(verts_[v]);
            if (tight.empty() || affine_dim(tight) != dim_ - 1)
                throw std::logic_error("facet contact set is not (n-1)-dimensional");
        }

        Matrix vm;
        for (const auto& v : verts_) vm.push_back(v.c);
        if (rank(std::move(vm)) != dim_)
            throw DegenerateBall("extreme points do not span the space");

        std::map<std::vector<Rat>, int> vidx;
        for (std::size_t v = 0; v < verts_.size(); ++v) vidx[verts_[v].c] = static_cast<int>(v);
        for (const auto& v : verts_)
            if (!vidx.count(negate(v).c))
                throw std::logic_error("vertex set is not symmetric");

        // Extremality: no vertex is a convex combination of the others.
        for (std::size_t v = 0; v < verts_.size(); ++v) {
            std::vector<std::vector<Rat>> others;
            for (std::size_t w = 0; w < verts_.size(); ++w)
                if (w != v) others.push_back(verts_[w].c);
            if (!others.empty() && convex_combination(others, verts_[v].c))
                throw std::logic_error("stored vertex is not an extreme point");
        }
    }

    struct LatticeBox {
        std::once_flag once;
        std::vector<Face> faces;
        std::map<std::vector<int>, int> by_vertices;
    };

    void build_lattice() const {
        std::map<std::vector<int>, bool> seen;
        std::vector<std::vector<int>> queue;
        for (const auto& fv : facet_verts_) {
            if (!seen.count(fv)) {
                seen[fv] = true;
                queue.push_back(fv);
            }
        }
        // Close the facet vertex sets under intersection; every proper face
        // is an intersection of the facets containing it.
        while (!queue.empty()) {
            const auto s = queue.back();
            queue.pop_back();
            for (const auto& fv : facet_verts_) {
                auto w = detail::sorted_intersection(s, fv);
                if (w.empty() || seen.count(w)) continue;
                seen[w] = true;
                queue.push_back(w);
            }
        }

        std::vector<Face> faces;
        for (const auto& [vset, unused] : seen) {
            (void)unused;
            Face f;
            f.vertex_ids = vset;
            for (std::size_t h = 0; h < facets_.size(); ++h)
                if (detail::sorted_contains_all(facet_verts_[h], vset))
                    f.active_facet_ids.push_back(static_cast<int>(h));
            std::vector<Vec> pts;
            for (int v : vset) pts.push_back(verts_[v]);
            f.dim = static_cast<int>(affine_dim(pts));
            faces.push_back(std::move(f));
        }
        std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
            if (a.dim != b.dim) return a.dim < b.dim;
            return a.vertex_ids < b.vertex_ids;
        });
        lattice_->faces = std::move(faces);
        for (std::size_t i = 0; i < lattice_->faces.size(); ++i)
            lattice_->by_vertices[lattice_->faces[i].vertex_ids] = static_cast<int>(i);
    }

    std::size_t dim_ = 0;
    std::vector<Vec> verts_;
    std::vector<Covec> facets_;
    std::vector<std::vector<char>> inc_;
    std::vector<std::vector<int>> vert_active_;
    std::vector<std::vector<int>> facet_verts_;
    std::shared_ptr<LatticeBox> lattice_ = std::make_shared<LatticeBox>();
};

inline PolyhedralSpace space_from_vertices(std::size_t n, const std::vector<Vec>& pts) {
    return PolyhedralSpace::from_vertices(n, pts);
}
inline PolyhedralSpace space_from_facets(std::size_t n, const std::vector<Covec>& fs) {
    return PolyhedralSpace::from_facets(n, fs);
}
inline PolyhedralSpace dual_space(const PolyhedralSpace& s) { return s.dual(); }

}  // namespace bjlab
