#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/rational.hpp"

namespace bjlab {

// Points of the space and functionals on it are kept as distinct strong
// types; mixing them up is a unit error, not a shape error, so the type
// system has to catch it.
struct Vec {
    std::vector<Rat> c;

    Vec() = default;
    explicit Vec(std::vector<Rat> coords) : c(std::move(coords)) {}
    explicit Vec(std::size_t n) : c(n, Rat(0)) {}

    std::size_t dim() const { return c.size(); }
    const Rat& operator[](std::size_t i) const { return c[i]; }
    Rat& operator[](std::size_t i) { return c[i]; }
    bool operator==(const Vec& o) const { return c == o.c; }
    bool operator!=(const Vec& o) const { return c != o.c; }
};

struct Covec {
    std::vector<Rat> c;

    Covec() = default;
    explicit Covec(std::vector<Rat> coords) : c(std::move(coords)) {}
    explicit Covec(std::size_t n) : c(n, Rat(0)) {}

    std::size_t dim() const { return c.size(); }
    const Rat& operator[](std::size_t i) const { return c[i]; }
    Rat& operator[](std::size_t i) { return c[i]; }
    bool operator==(const Covec& o) const { return c == o.c; }
    bool operator!=(const Covec& o) const { return c != o.c; }
};

inline Rat pairing(const Covec& f, const Vec& x) {
    if (f.dim() != x.dim())
        throw DimensionMismatch("pairing: functional and point dimensions differ");
    Rat s(0);
    for (std::size_t i = 0; i < x.dim(); ++i) s += f[i] * x[i];
    return s;
}

inline bool is_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}
inline bool is_zero(const Vec& v) { return is_zero(v.c); }
inline bool is_zero(const Covec& f) { return is_zero(f.c); }

inline std::vector<Rat> add(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline std::vector<Rat> sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline std::vector<Rat> scale(const Rat& s, const std::vector<Rat>& a) {
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) { return Vec(add(a.c, b.c)); }
inline Vec sub(const Vec& a, const Vec& b) { return Vec(sub(a.c, b.c)); }
inline Vec scale(const Rat& s, const Vec& a) { return Vec(scale(s, a.c)); }
inline Vec negate(const Vec& a) { return scale(Rat(-1), a); }
inline Covec add(const Covec& a, const Covec& b) { return Covec(add(a.c, b.c)); }
inline Covec scale(const Rat& s, const Covec& a) { return Covec(scale(s, a.c)); }
inline Covec negate(const Covec& a) { return scale(Rat(-1), a); }

// Lexicographic order on coordinate lists; the canonical storage order for
// vertices and facets, so equal spaces compare equal componentwise.
inline bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}
inline bool lex_less(const Vec& a, const Vec& b) { return lex_less(a.c, b.c); }
inline bool lex_less(const Covec& a, const Covec& b) { return lex_less(a.c, b.c); }

using Matrix = std::vector<std::vector<Rat>>;

inline Matrix make_matrix(std::size_t rows, std::size_t cols) {
    return Matrix(rows, std::vector<Rat>(cols, Rat(0)));
}

// In-place Gauss-Jordan reduction to reduced row echelon form.
// Returns the pivot column of each pivot row, in order.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        const Rat inv = Rat(1) / m[r][col];
        for (std::size_t j = col; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col] == 0) continue;
            const Rat factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

inline std::size_t rank_of_rows(const std::vector<std::vector<Rat>>& rows) {
    return rank(Matrix(rows));
}

inline Rat det(Matrix m) {
    const std::size_t n = m.size();
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[col], m[piv]);
            d = -d;
        }
        d *= m[col][col];
        const Rat inv = Rat(1) / m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            const Rat factor = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
        }
    }
    return d;
}

struct LinearSolve {
    bool consistent = false;
    bool unique = false;
    std::vector<Rat> solution;  // one solution when consistent
};

// Solves A x = b exactly. When the system is underdetermined the returned
// solution sets every free variable to zero.
inline LinearSolve solve_linear(const Matrix& a, const std::vector<Rat>& b) {
    LinearSolve out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    Matrix aug = make_matrix(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    const auto pivots = rref(aug);
    for (std::size_t i = pivots.size(); i < rows; ++i)
        if (aug[i][cols] != 0) return out;  // 0 = nonzero row: inconsistent
    if (!pivots.empty() && pivots.back() == cols) return out;
    out.consistent = true;
    out.unique = pivots.size() == cols;
    out.solution.assign(cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) out.solution[pivots[i]] = aug[i][cols];
    return out;
}

// Basis of {x : A x = 0} via the free columns of the RREF. Deterministic:
// one basis vector per free column in increasing column order.
inline std::vector<std::vector<Rat>> kernel_basis_rows(Matrix a, std::size_t cols) {
    if (a.empty()) {
        std::vector<std::vector<Rat>> id;
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<Rat> e(cols, Rat(0));
            e[j] = 1;
            id.push_back(std::move(e));
        }
        return id;
    }
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Affine dimension of a point set: rank of the differences to the first point.
inline std::size_t affine_dim(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Matrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i].c, pts[0].c));
    return rank(std::move(diffs));
}

}  // namespace bjlab
