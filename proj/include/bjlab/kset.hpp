#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bjlab/errors.hpp"
#include "bjlab/faces.hpp"
#include "bjlab/operators.hpp"
#include "bjlab/preservation.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

// Deterministic rational source. mt19937_64 has a standard-specified output
// sequence, and draws reduce by modulo, so identical seeds give identical
// streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    long below(long n) {  // uniform-ish in [0, n); bias at 2^64 scale is irrelevant here
        return static_cast<long>(raw() % static_cast<std::uint64_t>(n));
    }

    long range(long lo, long hi) { return lo + below(hi - lo + 1); }

    bool flip() { return (raw() & 1u) != 0; }

    Rat rat(long height) {  // p/q with |p| <= height, 1 <= q <= height
        const long p = range(-height, height);
        const long q = range(1, height);
        return Rat(Int(p)) / Rat(Int(q));
    }

    Rat nonzero_rat(long height) {
        for (;;) {
            Rat r = rat(height);
            if (r != 0) return r;
        }
    }

  private:
    std::mt19937_64 eng_;
};

inline PolyhedralSpace make_linf(std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Rat> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? Rat(-1) : Rat(1);
        vs.push_back(Vec(c));
    }
    return space_from_vertices(n, vs);
}

inline PolyhedralSpace make_l1(std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> c(n, Rat(0));
        c[i] = 1;
        vs.push_back(Vec(c));
    }
    return space_from_vertices(n, vs);
}

// Cross-polytope core plus `extra` random symmetrized vertices; the core
// keeps the hull full-dimensional, so construction never degenerates.
inline PolyhedralSpace random_polyhedral_space(std::uint64_t seed, std::size_t n,
                                               std::size_t extra, long height = 3) {
    Rng rng(seed);
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> c(n, Rat(0));
        c[i] = 1;
        vs.push_back(Vec(c));
    }
    while (extra-- > 0) {
        std::vector<Rat> c(n);
        bool nonzero = false;
        for (auto& x : c) {
            x = rng.rat(height);
            if (x != 0) nonzero = true;
        }
        if (!nonzero) {
            ++extra;
            continue;
        }
        vs.push_back(Vec(c));
    }
    return space_from_vertices(n, vs);
}

struct NamedSpace {
    std::string name;
    PolyhedralSpace space;
};

inline const std::vector<NamedSpace>& bundled_spaces() {
    static const std::vector<NamedSpace> spaces = [] {
        std::vector<NamedSpace> out;
        out.push_back({"linf2", make_linf(2)});
        out.push_back({"l1_2", make_l1(2)});
        out.push_back({"linf3", make_linf(3)});
        out.push_back({"l1_3", make_l1(3)});
        out.push_back({"rnd2a", random_polyhedral_space(11, 2, 2)});
        out.push_back({"rnd2b", random_polyhedral_space(12, 2, 2)});
        out.push_back({"rnd2c", random_polyhedral_space(13, 2, 3)});
        out.push_back({"rnd3a", random_polyhedral_space(21, 3, 2)});
        out.push_back({"rnd3b", random_polyhedral_space(22, 3, 2)});
        return out;
    }();
    return spaces;
}

inline const PolyhedralSpace* bundled_space_by_name(const std::string& name) {
    for (const auto& ns : bundled_spaces())
        if (ns.name == name) return &ns.space;
    return nullptr;
}

// Where preservation gets tested. ksmooth(k) realizes to interior samples of
// every (n-k)-face, the finite stand-in for the k-smooth stratum; hyperplane
// scales face samples onto {y : c(y) = 1}.
struct CandidateSet {
    enum class Kind { ExtremePoints, KSmooth, FacetInterior, Points, Hyperplane };

    Kind kind = Kind::ExtremePoints;
    int k = 0;                    // KSmooth only
    std::vector<Vec> points;      // Points only
    std::vector<Rat> functional;  // Hyperplane only
    std::size_t count = 0;        // Hyperplane only; 0 = all

    static CandidateSet ext() { return {}; }
    static CandidateSet ksmooth(int k) {
        CandidateSet c;
        c.kind = Kind::KSmooth;
        c.k = k;
        return c;
    }
    static CandidateSet facet_interior() {
        CandidateSet c;
        c.kind = Kind::FacetInterior;
        return c;
    }
    static CandidateSet explicit_points(std::vector<Vec> pts) {
        CandidateSet c;
        c.kind = Kind::Points;
        c.points = std::move(pts);
        return c;
    }
    static CandidateSet hyperplane(std::vector<Rat> c0, std::size_t count) {
        CandidateSet c;
        c.kind = Kind::Hyperplane;
        c.functional = std::move(c0);
        c.count = count;
        return c;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::ExtremePoints: return "ext";
            case Kind::KSmooth: return "ksmooth:" + std::to_string(k);
            case Kind::FacetInterior: return "facet-interior";
            case Kind::Points: return "points:" + std::to_string(points.size());
            case Kind::Hyperplane: return "hyperplane:" + std::to_string(count);
        }
        return "?";
    }

    std::vector<Vec> realize(const PolyhedralSpace& s) const {
        std::vector<Vec> out;
        switch (kind) {
            case Kind::ExtremePoints:
                out = s.vertices();
                break;
            case Kind::KSmooth: {
                if (k < 1 || k > static_cast<int>(s.dim()))
                    throw EmptyCandidateSet("no k-smooth points for this k");
                const int want = static_cast<int>(s.dim()) - k;
                for (const Face& f : s.face_lattice())
                    if (f.dim == want)
                        for (auto& p : relative_interior_samples(s, f))
                            out.push_back(std::move(p));
                break;
            }
            case Kind::FacetInterior: {
                const int want = static_cast<int>(s.dim()) - 1;
                for (const Face& f : s.face_lattice())
                    if (f.dim == want)
                        for (auto& p : relative_interior_samples(s, f))
                            out.push_back(std::move(p));
                break;
            }
            case Kind::Points:
                out = points;
                break;
            case Kind::Hyperplane: {
                const Covec c{functional};
                for (const Face& f : s.face_lattice()) {
                    for (const auto& p : relative_interior_samples(s, f)) {
                        const Rat v = pairing(c, p);
                        if (v == 0) continue;
                        out.push_back(scale(Rat(1) / v, p));
                    }
                }
                std::sort(out.begin(), out.end(),
                          [](const Vec& a, const Vec& b) { return lex_less(a.c, b.c); });
                out.erase(std::unique(out.begin(), out.end()), out.end());
                if (count > 0 && out.size() > count) out.resize(count);
                break;
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const Vec& a, const Vec& b) { return lex_less(a.c, b.c); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.empty()) throw EmptyCandidateSet("candidate set is empty for this space");
        return out;
    }
};

namespace detail {

inline Matrix zero_matrix(std::size_t n) {
    return Matrix(n, std::vector<Rat>(n, Rat(0)));
}

inline bool is_zero_matrix(const Matrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

// Signed permutation: T e_i = eps_i e_{sigma(i)}, i.e. column i has a single
// signed unit in row sigma(i).
inline Matrix random_signed_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(static_cast<long>(i)))]);
    Matrix m = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i) m[perm[i]][i] = rng.flip() ? Rat(1) : Rat(-1);
    return m;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

// Rank-one map x -> f(x) * y with f a facet functional and y an interior
// point of that facet. Such a map fixes the support structure along ker-f
// slices: it preserves orthogonality exactly at the smooth points whose only
// generator is f, while being maximally far from a bijection. Cycling the
// facet by trial index guarantees every facet gets tried within one pass.
inline Matrix support_rank_one(Rng& rng, const PolyhedralSpace& s, std::size_t trial) {
    const std::size_t fi = trial % s.facets().size();
    const Covec& f = s.facets()[fi];
    const int face_idx = s.face_index_by_vertex_set(s.facet_vertex_ids(static_cast<int>(fi)));
    if (face_idx < 0) throw std::logic_error("facet missing from the lattice");
    const auto samples = relative_interior_samples(s, s.face_lattice()[face_idx]);
    const Vec& y = samples[static_cast<std::size_t>(rng.below(static_cast<long>(samples.size())))];
    Matrix m = zero_matrix(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.dim(); ++j) m[i][j] = y[i] * f[j];
    return m;
}

// Trial families, cycled by trial index. Dense random operators essentially
// never preserve orthogonality; the structured families (diagonal,
// permutation-composed, rank-perturbed, rank-one support maps) concentrate
// the search near the preserving locus.
inline Matrix draw_operator(Rng& rng, const PolyhedralSpace& s, std::size_t trial, long height) {
    const std::size_t n = s.dim();
    switch (trial % 7) {
        case 0: {  // dense random; the all-zero draw is redrawn (theorems assume T != 0)
            for (;;) {
                Matrix m(n, std::vector<Rat>(n));
                for (auto& row : m)
                    for (auto& x : row) x = rng.rat(height);
                if (!is_zero_matrix(m)) return m;
            }
        }
        case 1: {  // diagonal
            Matrix m = zero_matrix(n);
            for (std::size_t i = 0; i < n; ++i) m[i][i] = rng.nonzero_rat(height);
            return m;
        }
        case 2:
            return random_signed_permutation(rng, n);
        case 3: {  // signed permutation composed with an elementary shear
            Matrix shear = zero_matrix(n);
            for (std::size_t i = 0; i < n; ++i) shear[i][i] = 1;
            const auto i = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
            auto j = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
            if (j == i) j = (j + 1) % n;
            shear[i][j] = rng.nonzero_rat(height);
            return mat_mul(random_signed_permutation(rng, n), shear);
        }
        case 4: {  // signed permutation composed with a diagonal
            Matrix d = zero_matrix(n);
            for (std::size_t i = 0; i < n; ++i) d[i][i] = rng.nonzero_rat(height);
            return mat_mul(random_signed_permutation(rng, n), d);
        }
        case 5: {  // signed permutation plus a rank-one entry bump
            Matrix m = random_signed_permutation(rng, n);
            const auto i = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
            const auto j = static_cast<std::size_t>(rng.below(static_cast<long>(n)));
            m[i][j] += rng.nonzero_rat(height);
            if (is_zero_matrix(m)) m[i][j] += 1;
            return m;
        }
        default:
            return support_rank_one(rng, s, trial);
    }
}

}  // namespace detail

struct SearchConfig {
    std::string space_name;  // label echoed into the report
    CandidateSet set;
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
    long perturbation_height = 8;
};

struct FoundOperator {
    Matrix matrix;
    std::optional<Rat> lambda;  // scalar-isometry factor when one exists
};

struct SearchReport {
    static constexpr std::size_t kMaxStoredPreserving = 32;

    SearchConfig config;
    std::size_t trials = 0;
    std::size_t distinct_operators = 0;
    std::size_t candidate_points = 0;
    std::size_t preserving_total = 0;      // preserving operators that are scalar isometries
    std::vector<FoundOperator> preserving; // first kMaxStoredPreserving of them
    std::vector<FoundOperator> counterexamples;  // preserving, yet not scalar isometries
    std::int64_t wall_time_ms = 0;  // excluded from the canonical serialized form
};

// Randomized refutation search: draw operators, keep those preserving BJ
// orthogonality at every candidate point, and classify the survivors. Every
// reported counterexample is re-validated through the certificate-producing
// path before it is written; a fast-path/certificate disagreement is a
// build-stopping defect, not a report entry.
inline SearchReport falsification_search(const PolyhedralSpace& s, const SearchConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.config = cfg;

    const std::vector<Vec> pts = cfg.set.realize(s);
    rep.candidate_points = pts.size();
    std::vector<PointSupport> supports;
    supports.reserve(pts.size());
    for (const auto& p : pts) supports.push_back(point_support(s, p));

    Rng rng(cfg.seed);
    std::set<Matrix> seen;
    for (std::size_t trial = 0; trial < cfg.budget; ++trial) {
        ++rep.trials;
        Matrix m = detail::draw_operator(rng, s, trial, cfg.perturbation_height);
        if (!seen.insert(m).second) continue;
        ++rep.distinct_operators;
        const LinearOperator t{s.dim(), m};

        bool preserves = true;
        for (const auto& ps : supports) {
            if (!preserves_bj_at_fast(s, t, ps)) {
                preserves = false;
                break;
            }
        }
        if (!preserves) continue;

        const auto lambda = is_scalar_isometry(s, t);
        if (lambda) {
            ++rep.preserving_total;
            if (rep.preserving.size() < SearchReport::kMaxStoredPreserving)
                rep.preserving.push_back({m, lambda});
            continue;
        }

        // Soundness gate: the certified path must agree before anything is
        // reported as a counterexample.
        if (!preserves_bj_on(s, t, pts).all)
            throw std::logic_error("soundness gate: fast path and certificates disagree");
        if (is_scalar_isometry(s, t))
            throw std::logic_error("soundness gate: isometry verdict is unstable");
        rep.counterexamples.push_back({m, std::nullopt});
    }

    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

// Bundled counterexamples, asserted exactly.
//
// (a) On the sup-norm square, T(x,y) = (x+y, y-x) preserves rho-orthogonality
//     at every extreme point and is not a scalar isometry, yet fails BJ
//     preservation at (1,1): rho-preservation at non-smooth points does not
//     imply BJ preservation.
// (b) T(x,y) = (2x,y) preserves BJ orthogonality along (1,t) for t up to
//     99/100 but not at the vertex (1,1): the preserving set is not closed.
// (c) Control: the identity passes the same rho checks and IS a scalar
//     isometry, so scenario (a)'s conclusion hinges on the isometry verdict.
struct ReproReport {
    bool rho_preserving_non_isometry = false;
    bool preserving_set_not_closed = false;
    bool identity_control = false;
};

inline ReproReport reproduce_counterexamples() {
    const PolyhedralSpace s = make_linf(2);
    ReproReport rep;

    const LinearOperator t1{2, {{Rat(1), Rat(1)}, {Rat(-1), Rat(1)}}};
    bool ok = true;
    for (const auto& v : s.vertices())
        ok = ok && preserves_rho_at(s, t1, v, RhoVariant::Both);
    ok = ok && !is_scalar_isometry(s, t1).has_value();
    ok = ok && !preserves_bj_at(s, t1, Vec({Rat(1), Rat(1)})).verdict;
    rep.rho_preserving_non_isometry = ok;

    const LinearOperator t2{2, {{Rat(2), Rat(0)}, {Rat(0), Rat(1)}}};
    ok = true;
    for (const Rat& t : {Rat(0), Rat(1) / 2, Rat(9) / 10, Rat(99) / 100})
        ok = ok && preserves_bj_at(s, t2, Vec({Rat(1), t})).verdict;
    ok = ok && !preserves_bj_at(s, t2, Vec({Rat(1), Rat(1)})).verdict;
    rep.preserving_set_not_closed = ok;

    const LinearOperator id = LinearOperator::identity(2);
    ok = true;
    for (const auto& v : s.vertices())
        ok = ok && preserves_rho_at(s, id, v, RhoVariant::Both);
    const auto lam = is_scalar_isometry(s, id);
    ok = ok && lam.has_value() && *lam == 1;
    rep.identity_control = ok;

    if (!rep.rho_preserving_non_isometry || !rep.preserving_set_not_closed ||
        !rep.identity_control)
        throw ReproductionFailure("bundled counterexample scenario failed to reproduce");
    return rep;
}

// Experiment-scale row of the equivalence theorem: BJ preservation on each
// k-smooth sample, BJ preservation on a dense surrogate (every face's
// interior samples plus all vertices), the three rho-type preservations on
// the smooth sample, and the scalar-isometry verdict. The theorem says the
// columns agree; a disagreeing row is either an implementation defect or a
// refutation, and both must surface.
struct EquivalenceRow {
    std::vector<std::pair<std::string, bool>> columns;
    std::optional<Rat> lambda;
    bool violation = false;
};

inline EquivalenceRow equivalence_matrix(const PolyhedralSpace& s, const LinearOperator& t) {
    if (detail::is_zero_matrix(t.m))
        throw HypothesisViolated("the equivalence theorem assumes a non-zero operator");
    EquivalenceRow row;
    const std::size_t n = s.dim();

    for (int k = 1; k <= static_cast<int>(n); ++k) {
        const auto pts = CandidateSet::ksmooth(k).realize(s);
        row.columns.push_back({"bj_ksmooth_" + std::to_string(k),
                               preserves_bj_on(s, t, pts).all});
    }
    {
        std::vector<Vec> dense;
        for (const Face& f : s.face_lattice())
            for (auto& p : relative_interior_samples(s, f)) dense.push_back(std::move(p));
        std::sort(dense.begin(), dense.end(),
                  [](const Vec& a, const Vec& b) { return lex_less(a.c, b.c); });
        dense.erase(std::unique(dense.begin(), dense.end()), dense.end());
        row.columns.push_back({"bj_dense_sample", preserves_bj_on(s, t, dense).all});
    }
    {
        const auto smooth = CandidateSet::ksmooth(1).realize(s);
        const auto all_rho = [&](RhoVariant v) {
            for (const auto& x : smooth)
                if (!preserves_rho_at(s, t, x, v)) return false;
            return true;
        };
        row.columns.push_back({"rho_smooth", all_rho(RhoVariant::Both)});
        row.columns.push_back({"rho_plus_smooth", all_rho(RhoVariant::Plus)});
        row.columns.push_back({"rho_minus_smooth", all_rho(RhoVariant::Minus)});
    }
    row.lambda = is_scalar_isometry(s, t);
    row.columns.push_back({"scalar_isometry", row.lambda.has_value()});

    bool all_true = true, all_false = true;
    for (const auto& [name, v] : row.columns) (v ? all_false : all_true) = false;
    row.violation = !all_true && !all_false;
    // A scalar isometry preserves every orthogonality relation everywhere;
    // that direction is a theorem of the exact arithmetic, not a sample.
    if (row.lambda.has_value() && !all_true)
        throw std::logic_error("scalar isometry failed a preservation column");
    return row;
}

}  // namespace bjlab
