#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bjlab/linalg.hpp"
#include "bjlab/rational.hpp"

namespace bjlab {

// Exact phase-I simplex. Decides whether {z >= 0 : M z = b} is nonempty and
// produces a point of it. Bland's rule (smallest entering index, smallest
// basic index on ratio ties) guarantees termination; every pivot is a
// rational operation, so the verdict carries no tolerance.
inline std::optional<std::vector<Rat>> solve_nonnegative(Matrix m, std::vector<Rat> b) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    if (rows == 0) return std::vector<Rat>(cols, Rat(0));

    for (std::size_t i = 0; i < rows; ++i) {
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& x : m[i]) x = -x;
        }
    }

    // Tableau over columns [z | artificials]; the objective row starts as
    // minus the sum of the constraint rows, so it prices out the artificial
    // basis (phase-I cost = sum of artificials).
    const std::size_t total = cols + rows;
    Matrix t = make_matrix(rows, total);
    std::vector<Rat> rhs = b;
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = m[i][j];
        t[i][cols + i] = 1;
        basis[i] = cols + i;
    }
    std::vector<Rat> obj(total, Rat(0));
    Rat obj_rhs(0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) obj[j] -= t[i][j];
        obj_rhs -= rhs[i];
    }

    for (;;) {
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == total) break;  // optimal

        std::size_t leave = rows;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter] <= 0) continue;
            if (leave == rows) {
                leave = i;
                continue;
            }
            const Rat cur = rhs[i] / t[i][enter];
            const Rat best = rhs[leave] / t[leave][enter];
            if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
        }
        if (leave == rows)
            throw std::logic_error("phase-I simplex objective unbounded");

        const Rat inv = Rat(1) / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        rhs[leave] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rat f = t[i][enter];
            for (std::size_t j = 0; j < total; ++j) t[i][j] -= f * t[leave][j];
            rhs[i] -= f * rhs[leave];
        }
        if (obj[enter] != 0) {
            const Rat f = obj[enter];
            for (std::size_t j = 0; j < total; ++j) obj[j] -= f * t[leave][j];
            obj_rhs -= f * rhs[leave];
        }
        basis[leave] = enter;
    }

    if (obj_rhs != 0) return std::nullopt;  // optimum > 0: infeasible
    std::vector<Rat> z(cols, Rat(0));
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) z[basis[i]] = rhs[i];
    return z;
}

// Coefficients expressing `target` as a convex combination of `points`
// (rows of equal dimension), or nullopt when no such combination exists.
// Unique-solution systems take the direct elimination path; everything else
// goes through the simplex.
inline std::optional<std::vector<Rat>> convex_combination(
    const std::vector<std::vector<Rat>>& points, const std::vector<Rat>& target) {
    if (points.empty()) return std::nullopt;
    const std::size_t n = target.size();
    const std::size_t k = points.size();
    if (k == 1) {
        if (points[0] == target) return std::vector<Rat>{Rat(1)};
        return std::nullopt;
    }

    Matrix sys = make_matrix(n + 1, k);
    std::vector<Rat> rhs(n + 1, Rat(0));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) sys[i][j] = points[j][i];
        sys[n][j] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = target[i];
    rhs[n] = 1;

    const LinearSolve direct = solve_linear(sys, rhs);
    if (!direct.consistent) return std::nullopt;
    if (direct.unique) {
        for (const auto& x : direct.solution)
            if (x < 0) return std::nullopt;
        return direct.solution;
    }
    return solve_nonnegative(std::move(sys), std::move(rhs));
}

// Feasibility of {y in R^n : eq_i . y = eq_rhs_i, ge_j . y >= ge_rhs_j},
// solved exactly through the split y = p - q with slack variables.
inline std::optional<std::vector<Rat>> linear_feasible(
    std::size_t n,
    const std::vector<std::vector<Rat>>& eqs, const std::vector<Rat>& eq_rhs,
    const std::vector<std::vector<Rat>>& ges, const std::vector<Rat>& ge_rhs) {
    const std::size_t rows = eqs.size() + ges.size();
    const std::size_t cols = 2 * n + ges.size();
    Matrix m = make_matrix(rows, cols);
    std::vector<Rat> b(rows, Rat(0));
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = eqs[i][j];
            m[i][n + j] = -eqs[i][j];
        }
        b[i] = eq_rhs[i];
    }
    for (std::size_t i = 0; i < ges.size(); ++i) {
        const std::size_t r = eqs.size() + i;
        for (std::size_t j = 0; j < n; ++j) {
            m[r][j] = ges[i][j];
            m[r][n + j] = -ges[i][j];
        }
        m[r][2 * n + i] = -1;  // ge - slack = rhs
        b[r] = ge_rhs[i];
    }
    const auto z = solve_nonnegative(std::move(m), std::move(b));
    if (!z) return std::nullopt;
    std::vector<Rat> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = (*z)[j] - (*z)[n + j];
    return y;
}

}  // namespace bjlab
