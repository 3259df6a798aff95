#pragma once

#include <cstddef>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/faces.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

// The face of the dual ball supporting x: all extreme dual points attaining
// norm(x) at x. Its generators are facet functionals of the primal ball, so
// each has dual norm exactly 1.
struct SupportFace {
    Rat value;                       // norm(x)
    std::vector<int> generator_ids;  // facet indices, sorted
    std::vector<Covec> generators;
};

inline SupportFace support_face(const PolyhedralSpace& s, const Vec& x) {
    if (is_zero(x)) throw ZeroVector("support face of the zero vector is undefined");
    SupportFace sf;
    sf.value = s.norm(x);
    sf.generator_ids = active_facets(s, x);
    for (int h : sf.generator_ids) sf.generators.push_back(s.facets()[h]);
    return sf;
}

// One-sided Gateaux derivatives of the norm at u in direction v, scaled by
// norm(u). On a polytope ball they are attained by support generators:
// the right derivative is the largest generator value at v, the left the
// smallest, and rho is their mean.
inline Rat rho_plus(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    if (is_zero(u)) throw ZeroVector("norm derivative at the zero vector is undefined");
    const SupportFace sf = support_face(s, u);
    Rat best = pairing(sf.generators.front(), v);
    for (std::size_t i = 1; i < sf.generators.size(); ++i) {
        const Rat val = pairing(sf.generators[i], v);
        if (val > best) best = val;
    }
    return sf.value * best;
}

inline Rat rho_minus(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    if (is_zero(u)) throw ZeroVector("norm derivative at the zero vector is undefined");
    const SupportFace sf = support_face(s, u);
    Rat best = pairing(sf.generators.front(), v);
    for (std::size_t i = 1; i < sf.generators.size(); ++i) {
        const Rat val = pairing(sf.generators[i], v);
        if (val < best) best = val;
    }
    return sf.value * best;
}

inline Rat rho(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    return (rho_plus(s, u, v) + rho_minus(s, u, v)) / 2;
}

// Birkhoff-James orthogonality: norm(u + t v) >= norm(u) for every scalar t,
// equivalently rho_minus <= 0 <= rho_plus. Degenerate arguments are
// orthogonal by convention.
inline bool is_bj_orthogonal(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    if (is_zero(u) || is_zero(v)) return true;
    return rho_minus(s, u, v) <= 0 && rho_plus(s, u, v) >= 0;
}

inline bool is_rho_plus_orthogonal(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    return rho_plus(s, u, v) == 0;
}

inline bool is_rho_minus_orthogonal(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    return rho_minus(s, u, v) == 0;
}

inline bool is_rho_orthogonal(const PolyhedralSpace& s, const Vec& u, const Vec& v) {
    return rho(s, u, v) == 0;
}

// For each support generator g of x, an exact basis of ker g: the directions
// y with x Birkhoff-James orthogonal to y through that generator.
struct GeneratorKernel {
    int generator_id;
    Covec functional;
    std::vector<Vec> basis;  // n-1 vectors
};

inline std::vector<GeneratorKernel> orthogonal_kernel_basis(const PolyhedralSpace& s,
                                                            const Vec& x) {
    const SupportFace sf = support_face(s, x);
    std::vector<GeneratorKernel> out;
    for (std::size_t i = 0; i < sf.generators.size(); ++i) {
        GeneratorKernel gk;
        gk.generator_id = sf.generator_ids[i];
        gk.functional = sf.generators[i];
        for (auto& row : kernel_basis_rows(Matrix{sf.generators[i].c}, s.dim()))
            gk.basis.push_back(Vec(std::move(row)));
        out.push_back(std::move(gk));
    }
    return out;
}

}  // namespace bjlab
