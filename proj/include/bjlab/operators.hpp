#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

// Linear map in column convention: (apply(T, x))_i = sum_j m[i][j] x_j.
struct LinearOperator {
    std::size_t n = 0;
    Matrix m;

    static LinearOperator identity(std::size_t n) {
        LinearOperator t;
        t.n = n;
        t.m = make_matrix(n, n);
        for (std::size_t i = 0; i < n; ++i) t.m[i][i] = 1;
        return t;
    }

    static LinearOperator from_rows(std::vector<std::vector<Rat>> rows) {
        LinearOperator t;
        t.n = rows.size();
        for (const auto& r : rows)
            if (r.size() != t.n) throw DimensionMismatch("operator matrix must be square");
        t.m = std::move(rows);
        return t;
    }

    bool operator==(const LinearOperator& o) const { return n == o.n && m == o.m; }
};

inline Vec apply(const LinearOperator& t, const Vec& x) {
    if (x.dim() != t.n) throw DimensionMismatch("apply: point dimension differs from operator");
    Vec y(t.n);
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) y[i] += t.m[i][j] * x[j];
    return y;
}

// The adjoint acts on functionals by composition: adjoint_apply(T, f) = f . T,
// which in coordinates is the transpose.
inline Covec adjoint_apply(const LinearOperator& t, const Covec& f) {
    if (f.dim() != t.n)
        throw DimensionMismatch("adjoint: functional dimension differs from operator");
    Covec g(t.n);
    for (std::size_t j = 0; j < t.n; ++j)
        for (std::size_t i = 0; i < t.n; ++i) g[j] += t.m[i][j] * f[i];
    return g;
}

inline LinearOperator adjoint(const LinearOperator& t) {
    LinearOperator a;
    a.n = t.n;
    a.m = make_matrix(t.n, t.n);
    for (std::size_t i = 0; i < t.n; ++i)
        for (std::size_t j = 0; j < t.n; ++j) a.m[i][j] = t.m[j][i];
    return a;
}

// Operator norm of T on the space: the maximum of norm(Tv) over the extreme
// points, which is where a convex function on the ball attains its maximum.
inline Rat operator_norm(const PolyhedralSpace& s, const LinearOperator& t) {
    if (t.n != s.dim()) throw DimensionMismatch("operator dimension differs from space");
    Rat best(0);
    for (const auto& v : s.vertices()) {
        const Rat nv = s.norm(apply(t, v));
        if (nv > best) best = nv;
    }
    return best;
}

inline bool is_bijective(const LinearOperator& t) { return det(t.m) != 0; }

// Scalar-isometry test: decides whether norm(Tx) = lambda * norm(x) for every
// x and some lambda > 0. Two routes are checked and must agree: all vertex
// images share norm lambda, and the vertex image set equals lambda times the
// vertex set. When the answer is no, a concrete witness with
// norm(T w) != lambda * norm(w) is produced (a vertex when one fails the norm
// route, otherwise the preimage of an unmatched scaled vertex).
struct ScalarIsometryCheck {
    std::optional<Rat> lambda;
    std::optional<Vec> witness;
    bool singular = false;
};

inline ScalarIsometryCheck scalar_isometry_check(const PolyhedralSpace& s,
                                                 const LinearOperator& t) {
    if (t.n != s.dim()) throw DimensionMismatch("operator dimension differs from space");
    ScalarIsometryCheck out;
    if (!is_bijective(t)) {
        out.singular = true;  // a scalar isometry is injective, so T cannot be one
        return out;
    }
    const Rat lambda = s.norm(apply(t, s.vertices().front()));
    for (const auto& v : s.vertices()) {
        if (s.norm(apply(t, v)) != lambda) {
            out.witness = v;
            return out;
        }
    }
    std::vector<Vec> images;
    for (const auto& v : s.vertices()) images.push_back(apply(t, v));
    std::sort(images.begin(), images.end(),
              [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    std::vector<Vec> scaled;
    for (const auto& v : s.vertices()) scaled.push_back(scale(lambda, v));
    std::sort(scaled.begin(), scaled.end(),
              [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    if (images == scaled) {
        out.lambda = lambda;
        return out;
    }
    // Vertex norms all equal lambda yet the image set differs: some scaled
    // vertex has a preimage off the unit sphere, and that preimage witnesses
    // the norm-ratio failure.
    for (const auto& w : scaled) {
        if (std::binary_search(images.begin(), images.end(), w,
                               [](const Vec& a, const Vec& b) { return lex_less(a, b); }))
            continue;
        const LinearSolve sol = solve_linear(t.m, w.c);
        if (!sol.consistent || !sol.unique)
            throw std::logic_error("bijective operator failed to invert");
        Vec x(sol.solution);
        if (s.norm(x) == 1)
            throw std::logic_error("unmatched scaled vertex has a unit-norm preimage");
        out.witness = std::move(x);
        return out;
    }
    throw std::logic_error("image set mismatch without an unmatched scaled vertex");
}

inline std::optional<Rat> is_scalar_isometry(const PolyhedralSpace& s, const LinearOperator& t) {
    return scalar_isometry_check(s, t).lambda;
}

}  // namespace bjlab
