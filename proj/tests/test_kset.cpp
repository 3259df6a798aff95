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

LinearOperator op(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rat>> m;
    for (auto& r : rows) {
        std::vector<Rat> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return LinearOperator::from_rows(std::move(m));
}

std::map<std::string, bool> column_map(const EquivalenceRow& row) {
    return {row.columns.begin(), row.columns.end()};
}

}  // namespace

TEST_CASE("the bundled space catalog is fixed and valid") {
    const auto& all = bundled_spaces();
    REQUIRE(all.size() == 9);
    std::vector<std::string> names;
    for (const auto& ns : all) names.push_back(ns.name);
    CHECK(names == std::vector<std::string>{"linf2", "l1_2", "linf3", "l1_3", "rnd2a",
                                            "rnd2b", "rnd2c", "rnd3a", "rnd3b"});
    for (const auto& ns : all) {
        INFO(ns.name);
        CHECK((ns.space.dim() == 2 || ns.space.dim() == 3));
        for (const auto& v : ns.space.vertices()) CHECK(ns.space.norm(v) == 1);
    }
    CHECK(bundled_space_by_name("linf2") != nullptr);
    CHECK(bundled_space_by_name("no-such-space") == nullptr);
}

TEST_CASE("random space generation is deterministic in the seed") {
    const auto a = random_polyhedral_space(77, 2, 3);
    const auto b = random_polyhedral_space(77, 2, 3);
    REQUIRE(a.vertices().size() == b.vertices().size());
    for (std::size_t i = 0; i < a.vertices().size(); ++i)
        CHECK(a.vertices()[i] == b.vertices()[i]);
    // Contains the cross polytope core, so at least 2n vertices.
    CHECK(a.vertices().size() >= 4);

    const auto c = random_polyhedral_space(78, 2, 3);
    bool same = a.vertices().size() == c.vertices().size();
    if (same)
        for (std::size_t i = 0; i < a.vertices().size(); ++i)
            if (!(a.vertices()[i] == c.vertices()[i])) same = false;
    CHECK_FALSE(same);
}

TEST_CASE("seeded rng streams are reproducible") {
    Rng a(7), b(7);
    for (int i = 0; i < 200; ++i) {
        CHECK(a.below(1000) == b.below(1000));
        CHECK(a.rat(5) == b.rat(5));
        CHECK(a.nonzero_rat(3) == b.nonzero_rat(3));
    }
    for (int i = 0; i < 200; ++i) CHECK(Rng(9).nonzero_rat(4) != 0);
}

TEST_CASE("candidate sets realize to the advertised points") {
    const auto s = make_linf(2);

    const auto ext = CandidateSet::ext().realize(s);
    CHECK(ext.size() == 4);
    for (const auto& p : ext) CHECK(s.norm(p) == 1);

    const auto corners = CandidateSet::ksmooth(2).realize(s);
    CHECK(corners == ext);  // 2-smooth points of a 2d ball are its vertices

    const auto smooth = CandidateSet::ksmooth(1).realize(s);
    CHECK(smooth.size() == 4 * 7);  // four facets, seven interior samples each
    for (const auto& p : smooth) {
        CHECK(smoothness_order(s, p) == 1);
        CHECK(s.norm(p) == 1);
    }
    CHECK(CandidateSet::facet_interior().realize(s) == smooth);

    const auto pts = CandidateSet::explicit_points({vec({1, 1}), vec({1, 1})}).realize(s);
    CHECK(pts.size() == 1);  // deduplicated

    CHECK_THROWS_AS(CandidateSet::ksmooth(0).realize(s), EmptyCandidateSet);
    CHECK_THROWS_AS(CandidateSet::ksmooth(3).realize(s), EmptyCandidateSet);
    CHECK_THROWS_AS(CandidateSet::explicit_points({}).realize(s), EmptyCandidateSet);

    const auto hyper = CandidateSet::hyperplane({Rat(1), Rat(1)}, 0).realize(s);
    REQUIRE_FALSE(hyper.empty());
    for (const auto& p : hyper) CHECK(p.c[0] + p.c[1] == 1);
    const auto capped = CandidateSet::hyperplane({Rat(1), Rat(1)}, 3).realize(s);
    CHECK(capped.size() <= 3);

    CHECK(CandidateSet::ext().describe() == "ext");
    CHECK(CandidateSet::ksmooth(2).describe() == "ksmooth:2");
    CHECK(CandidateSet::facet_interior().describe() == "facet-interior");
}

TEST_CASE("search over the extreme points finds isometries and nothing else") {
    SearchConfig cfg;
    cfg.space_name = "linf2";
    cfg.set = CandidateSet::ext();
    cfg.budget = 600;
    cfg.seed = 1;
    const auto rep = falsification_search(make_linf(2), cfg);
    CHECK(rep.trials == 600);
    CHECK(rep.distinct_operators > 100);
    CHECK(rep.candidate_points == 4);
    CHECK(rep.counterexamples.empty());
    CHECK(rep.preserving_total > 0);
    CHECK(rep.preserving.size() <= SearchReport::kMaxStoredPreserving);
    for (const auto& f : rep.preserving) {
        REQUIRE(f.lambda.has_value());
        CHECK(*f.lambda > 0);
        const auto t = LinearOperator::from_rows(f.matrix);
        const auto lam = is_scalar_isometry(make_linf(2), t);
        REQUIRE(lam.has_value());
        CHECK(*lam == *f.lambda);
    }
}

TEST_CASE("search at a single smooth point exposes non isometries") {
    const auto s = make_linf(2);
    SearchConfig cfg;
    cfg.space_name = "linf2";
    cfg.set = CandidateSet::explicit_points({Vec({Rat(1), Rat(1) / Rat(2)})});
    cfg.budget = 400;
    cfg.seed = 1;
    const auto rep = falsification_search(s, cfg);
    REQUIRE_FALSE(rep.counterexamples.empty());
    for (const auto& f : rep.counterexamples) CHECK_FALSE(f.lambda.has_value());
    // Re-validate the first find end to end.
    const auto t = LinearOperator::from_rows(rep.counterexamples.front().matrix);
    CHECK(preserves_bj_at(s, t, Vec({Rat(1), Rat(1) / Rat(2)})).verdict);
    CHECK_FALSE(is_scalar_isometry(s, t).has_value());
}

TEST_CASE("search reports are deterministic given the seed") {
    SearchConfig cfg;
    cfg.space_name = "l1_2";
    cfg.set = CandidateSet::ksmooth(1);
    cfg.budget = 300;
    cfg.seed = 42;
    const auto s = make_l1(2);
    const auto a = falsification_search(s, cfg);
    const auto b = falsification_search(s, cfg);
    CHECK(dump_json(search_report_canonical_json(a)) ==
          dump_json(search_report_canonical_json(b)));
    // Wall time lives only in the full form.
    CHECK_FALSE(search_report_canonical_json(a).contains("wall_time_ms"));
    CHECK(search_report_to_json(a).contains("wall_time_ms"));
}

TEST_CASE("bundled counterexample scenarios reproduce") {
    const auto rep = reproduce_counterexamples();
    CHECK(rep.rho_preserving_non_isometry);
    CHECK(rep.preserving_set_not_closed);
    CHECK(rep.identity_control);
}

TEST_CASE("equivalence rows are all or nothing on the square ball") {
    const auto s = make_linf(2);

    const auto id_row = equivalence_matrix(s, LinearOperator::identity(2));
    CHECK_FALSE(id_row.violation);
    REQUIRE(id_row.lambda.has_value());
    CHECK(*id_row.lambda == 1);
    for (const auto& [name, v] : id_row.columns) {
        INFO(name);
        CHECK(v);
    }
    const auto cols = column_map(id_row);
    CHECK(cols.count("bj_ksmooth_1") == 1);
    CHECK(cols.count("bj_ksmooth_2") == 1);
    CHECK(cols.count("bj_dense_sample") == 1);
    CHECK(cols.count("rho_smooth") == 1);
    CHECK(cols.count("rho_plus_smooth") == 1);
    CHECK(cols.count("rho_minus_smooth") == 1);
    CHECK(cols.count("scalar_isometry") == 1);

    for (const auto t : {op({{2, 0}, {0, 1}}), op({{1, 1}, {-1, 1}})}) {
        const auto row = equivalence_matrix(s, t);
        CHECK_FALSE(row.violation);
        CHECK_FALSE(row.lambda.has_value());
        for (const auto& [name, v] : row.columns) {
            INFO(name);
            CHECK_FALSE(v);
        }
    }

    const auto scaled = equivalence_matrix(s, op({{0, 5}, {5, 0}}));
    CHECK_FALSE(scaled.violation);
    REQUIRE(scaled.lambda.has_value());
    CHECK(*scaled.lambda == 5);

    CHECK_THROWS_AS(equivalence_matrix(s, op({{0, 0}, {0, 0}})), HypothesisViolated);
}

TEST_CASE("equivalence rows stay consistent on a random bundled space") {
    const auto* sp = bundled_space_by_name("rnd2b");
    REQUIRE(sp != nullptr);
    Rng rng(501);
    for (int i = 0; i < 12; ++i) {
        Matrix m = detail::random_signed_permutation(rng, 2);
        const auto row = equivalence_matrix(*sp, LinearOperator::from_rows(m));
        // Identity and negation are isometries of every symmetric ball; other
        // signed permutations may or may not be. Either way no partial rows.
        CHECK_FALSE(row.violation);
    }
}
