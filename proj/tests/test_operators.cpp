#include <catch2/catch_amalgamated.hpp>

#include "bjlab/bjlab.hpp"
#include "oracles.hpp"

using namespace bjlab;

namespace {

Vec vec(std::vector<long> xs) {
    std::vector<Rat> c;
    for (long v : xs) c.emplace_back(v);
    return Vec(c);
}

LinearOperator op(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rat>> m;
    for (auto& r : rows) {
        std::vector<Rat> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return LinearOperator::from_rows(std::move(m));
}

Vec random_nonzero(Rng& rng, std::size_t n, int height) {
    for (;;) {
        std::vector<Rat> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(rng.rat(height));
        if (!is_zero(c)) return Vec(c);
    }
}

LinearOperator random_signed_perm_op(Rng& rng, std::size_t n) {
    return LinearOperator::from_rows(detail::random_signed_permutation(rng, n));
}

}  // namespace

TEST_CASE("adjoint satisfies the pairing identity") {
    Rng rng(301);
    for (std::size_t n : {2u, 3u}) {
        for (int i = 0; i < 40; ++i) {
            std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n));
            for (auto& r : rows)
                for (auto& c : r) c = rng.rat(4);
            const auto t = LinearOperator::from_rows(rows);
            const Vec x = random_nonzero(rng, n, 4);
            const Covec f(random_nonzero(rng, n, 4).c);
            CHECK(pairing(adjoint_apply(t, f), x) == pairing(f, apply(t, x)));
            // adjoint() materializes the same map as adjoint_apply.
            CHECK(apply(adjoint(t), Vec(f.c)).c == adjoint_apply(t, f).c);
            CHECK(adjoint(adjoint(t)) == t);
        }
    }
}

TEST_CASE("operator norm values on the square ball") {
    const auto s = make_linf(2);
    CHECK(operator_norm(s, op({{2, 0}, {0, 1}})) == 2);
    CHECK(operator_norm(s, LinearOperator::identity(2)) == 1);
    CHECK(operator_norm(s, op({{1, 1}, {0, 1}})) == 2);
    CHECK(operator_norm(s, op({{0, -1}, {1, 0}})) == 1);
    CHECK(operator_norm(s, op({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("operator norm bounds every image norm and is attained") {
    Rng rng(302);
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        const std::size_t n = s.dim();
        for (int i = 0; i < 15; ++i) {
            std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n));
            for (auto& r : rows)
                for (auto& c : r) c = rng.rat(3);
            const auto t = LinearOperator::from_rows(rows);
            const Rat nt = operator_norm(s, t);
            for (int j = 0; j < 10; ++j) {
                const Vec x = random_nonzero(rng, n, 4);
                CHECK(s.norm(apply(t, x)) <= nt * s.norm(x));
            }
            bool attained = false;
            for (const auto& v : s.vertices())
                if (s.norm(apply(t, v)) == nt) attained = true;
            CHECK(attained);
        }
    }
}

TEST_CASE("bijectivity is determined by the determinant") {
    CHECK(is_bijective(op({{1, 1}, {-1, 1}})));
    CHECK(is_bijective(LinearOperator::identity(3)));
    CHECK_FALSE(is_bijective(op({{1, 0}, {1, 0}})));
    CHECK_FALSE(is_bijective(op({{1, 2}, {2, 4}})));
}

TEST_CASE("identity and scaled permutations are scalar isometries") {
    const auto s = make_linf(2);
    auto chk = scalar_isometry_check(s, LinearOperator::identity(2));
    REQUIRE(chk.lambda.has_value());
    CHECK(*chk.lambda == 1);
    CHECK_FALSE(chk.witness.has_value());
    CHECK_FALSE(chk.singular);

    // Swap followed by scaling by 3.
    chk = scalar_isometry_check(s, op({{0, 3}, {3, 0}}));
    REQUIRE(chk.lambda.has_value());
    CHECK(*chk.lambda == 3);

    // Signed permutation on the cross polytope ball.
    const auto l1_3 = make_l1(3);
    chk = scalar_isometry_check(l1_3, op({{0, -1, 0}, {1, 0, 0}, {0, 0, -1}}));
    REQUIRE(chk.lambda.has_value());
    CHECK(*chk.lambda == 1);

    CHECK(is_scalar_isometry(s, LinearOperator::identity(2)).has_value());
}

TEST_CASE("the rotation by 45 degrees is not a scalar isometry of the square") {
    const auto s = make_linf(2);
    const auto t = op({{1, 1}, {-1, 1}});
    const auto chk = scalar_isometry_check(s, t);
    CHECK_FALSE(chk.lambda.has_value());
    CHECK_FALSE(chk.singular);
    REQUIRE(chk.witness.has_value());
    // The witness breaks the norm ratio suggested by the first vertex.
    const Rat lambda_candidate = s.norm(apply(t, s.vertices().front()));
    CHECK(s.norm(apply(t, *chk.witness)) != lambda_candidate * s.norm(*chk.witness));
    CHECK_FALSE(is_scalar_isometry(s, t).has_value());
}

TEST_CASE("singular operators are rejected with the singular flag") {
    const auto s = make_linf(2);
    const auto chk = scalar_isometry_check(s, op({{1, 0}, {1, 0}}));
    CHECK(chk.singular);
    CHECK_FALSE(chk.lambda.has_value());
    CHECK_FALSE(chk.witness.has_value());
}

TEST_CASE("scalar isometries scale every norm exactly") {
    Rng rng(303);
    for (const auto& named : bundled_spaces()) {
        INFO(named.name);
        const auto& s = named.space;
        for (int i = 0; i < 20; ++i) {
            const auto t = random_signed_perm_op(rng, s.dim());
            const auto lam = is_scalar_isometry(s, t);
            if (!lam) continue;  // random balls need not have this symmetry
            for (int j = 0; j < 50; ++j) {
                const Vec x = random_nonzero(rng, s.dim(), 4);
                CHECK(s.norm(apply(t, x)) == *lam * s.norm(x));
            }
        }
    }
    // The cube and cross polytope admit every signed permutation.
    for (const char* name : {"linf3", "l1_3"}) {
        const auto* sp = bundled_space_by_name(name);
        REQUIRE(sp != nullptr);
        const auto& s = *sp;
        for (int i = 0; i < 10; ++i) {
            const auto t = random_signed_perm_op(rng, 3);
            REQUIRE(is_scalar_isometry(s, t).has_value());
            CHECK(*is_scalar_isometry(s, t) == 1);
        }
    }
}

TEST_CASE("operator dimension mismatches are rejected") {
    const auto s = make_linf(3);
    CHECK_THROWS_AS(operator_norm(s, LinearOperator::identity(2)), DimensionMismatch);
    CHECK_THROWS_AS(apply(LinearOperator::identity(2), vec({1, 2, 3})), DimensionMismatch);
    CHECK_THROWS_AS(scalar_isometry_check(s, LinearOperator::identity(2)), DimensionMismatch);
    CHECK_THROWS_AS(LinearOperator::from_rows({{Rat(1), Rat(2)}}), DimensionMismatch);
}

TEST_CASE("operator json round trip is exact") {
    Rng rng(304);
    for (int i = 0; i < 10; ++i) {
        std::vector<std::vector<Rat>> rows(3, std::vector<Rat>(3));
        for (auto& r : rows)
            for (auto& c : r) c = rng.rat(5);
        const auto t = LinearOperator::from_rows(rows);
        const auto back = operator_from_json(operator_to_json(t));
        CHECK(back == t);
    }
}
