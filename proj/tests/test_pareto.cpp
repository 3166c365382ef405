#include "fixtures.hpp"

#include "mobdd/error.hpp"
#include "mobdd/pareto.hpp"

#include <doctest.h>

#include <random>

using namespace mobdd;

namespace {

using Vecs = std::vector<ObjectiveVector>;

/// Quadratic oracle: keep v iff no other vector dominates it; then dedupe.
ParetoFrontier oracle_nd(const Vecs& vs, Sense sense) {
    Vecs out;
    for (const auto& v : vs) {
        bool dominated = false;
        for (const auto& u : vs) {
            bool ge = true, gt = false;
            for (std::size_t k = 0; k < v.size(); ++k) {
                const bool better = sense == Sense::Maximize ? u[k] > v[k] : u[k] < v[k];
                const bool worse = sense == Sense::Maximize ? u[k] < v[k] : u[k] > v[k];
                if (worse) ge = false;
                if (better) gt = true;
            }
            if (ge && gt) dominated = true;
        }
        if (!dominated) out.push_back(v);
    }
    return make_frontier(out);
}

ParetoFrontier frontier_of(std::initializer_list<ObjectiveVector> pts) { return make_frontier(Vecs(pts)); }

}  // namespace

TEST_CASE("dominance") {
    const ObjectiveVector a{1, 2}, b{1, 3}, c{3, 1};
    CHECK(dominates(a, b, Sense::Minimize));
    CHECK_FALSE(dominates(b, a, Sense::Minimize));
    CHECK(dominates(b, a, Sense::Maximize));
    CHECK_FALSE(dominates(a, a, Sense::Minimize));
    CHECK_FALSE(dominates(a, a, Sense::Maximize));
    CHECK_FALSE(dominates(c, b, Sense::Maximize));
    CHECK_FALSE(dominates(b, c, Sense::Maximize));
    CHECK_THROWS_AS(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2, 3}, Sense::Maximize), Error);
}

TEST_CASE("nd filter") {
    std::uint64_t checks = 0;
    CHECK(make_frontier(nd_filter({{1, 1}, {2, 2}, {1, 3}}, Sense::Maximize, checks)) == frontier_of({{2, 2}, {1, 3}}));
    CHECK(checks == 2);

    checks = 0;
    CHECK(nd_filter({}, Sense::Maximize, checks).empty());
    CHECK(checks == 0);

    CHECK(nd_filter({{4, 5, 6}}, Sense::Maximize, checks) == Vecs{{4, 5, 6}});
    CHECK(nd_filter({{4, 5}, {4, 5}, {4, 5}}, Sense::Maximize, checks) == Vecs{{4, 5}});
    CHECK_THROWS_AS(nd_filter({{1, 2}, {1}}, Sense::Maximize, checks), Error);
}

TEST_CASE("nd filter agrees with the quadratic oracle, is idempotent and mutually non-dominated") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Value> coord(0, 12);
    for (int t = 0; t < 400; ++t) {
        const int p = 2 + t % 4;
        const auto sense = t % 2 ? Sense::Maximize : Sense::Minimize;
        Vecs vs(static_cast<std::size_t>(1 + t % 60), ObjectiveVector(p));
        for (auto& v : vs) {
            for (auto& x : v) x = coord(rng);
        }
        std::uint64_t checks = 0;
        const auto once = nd_filter(vs, sense, checks);
        CHECK(make_frontier(once) == oracle_nd(vs, sense));
        std::uint64_t again_checks = 0;
        CHECK(make_frontier(nd_filter(once, sense, again_checks)) == make_frontier(once));
        for (const auto& a : once) {
            for (const auto& b : once) {
                if (&a != &b) CHECK_FALSE(dominates(a, b, sense));
            }
        }
        std::uint64_t repeat = 0;
        nd_filter(vs, sense, repeat);
        CHECK(repeat == checks);
    }
}

TEST_CASE("fixture frontier and counters") {
    const auto inst = testing::t2();
    const auto expected = frontier_of({{3, 1}, {1, 3}, {2, 2}});
    CHECK(brute_force_pf(inst) == expected);

    const auto report = enumerate_pf(compile(inst, lex_order(3)), inst);
    CHECK(report.frontier == expected);
    CHECK(report.checks == 5);
    CHECK(report.intermediate_per_layer == std::vector<long long>{2, 3, 3});
    CHECK(report.enumeration_cost == 5.0);
    CHECK(report.solved);

    for (int s = 0; s < 6; ++s) CHECK(enumerate_pf(compile(inst, random_order(3, s)), inst).frontier == expected);
}

TEST_CASE("unconstrained single objective takes everything") {
    auto inst = generate_instance(3, 1, 10);
    inst.capacity = inst.total_weight();
    Value total = 0;
    for (auto a : inst.values[0]) total += a;
    const auto report = enumerate_pf(compile(inst, random_order(10, 4)), inst);
    CHECK(report.frontier == frontier_of({{total}}));
}

TEST_CASE("nothing fits: frontier is the origin") {
    auto inst = generate_instance(6, 3, 8);
    for (auto& w : inst.weights) w += 10;
    inst.capacity = 5;
    CHECK(brute_force_pf(inst) == frontier_of({{0, 0, 0}}));
    CHECK(enumerate_pf(compile(inst, lex_order(8)), inst).frontier == frontier_of({{0, 0, 0}}));
}

TEST_CASE("brute force refuses large instances") {
    CHECK_THROWS_AS(brute_force_pf(generate_instance(1, 2, kBruteForceMaxVars + 1)), Error);
}

TEST_CASE("enumeration matches brute force under several orders") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 200; ++t) {
        const auto inst = testing::random_instance(rng, 2 + t % 3, 1, 12);
        const auto oracle = brute_force_pf(inst);
        for (const auto& order : {lex_order(inst.n), heuristic_order(inst, "min_weight"), random_order(inst.n, rng())}) {
            const auto report = enumerate_pf(compile(inst, order), inst);
            REQUIRE(report.frontier == oracle);
            long long last = report.intermediate_per_layer.back();
            CHECK(last >= static_cast<long long>(oracle.size()));
        }
    }
}

TEST_CASE("checks are deterministic and the cap marks runs unsolved") {
    const auto inst = generate_instance(77, 3, 18);
    const auto bdd = compile(inst, random_order(18, 3));
    const auto a = enumerate_pf(bdd, inst);
    const auto b = enumerate_pf(bdd, inst);
    CHECK(a.checks == b.checks);
    CHECK(a.intermediate_per_layer == b.intermediate_per_layer);

    EnumerationOptions capped;
    capped.check_limit = a.checks / 2;
    CHECK_FALSE(enumerate_pf(bdd, inst, capped).solved);
    capped.check_limit = a.checks;
    CHECK(enumerate_pf(bdd, inst, capped).solved);

    EnumerationOptions timed;
    timed.cost_mode = CostMode::WallTime;
    const auto c = enumerate_pf(bdd, inst, timed);
    CHECK(c.enumeration_cost == c.seconds);
    CHECK(c.checks == a.checks);
}

TEST_CASE("enumeration rejects a diagram from another instance") {
    const auto bdd = compile(testing::t2(), lex_order(3));
    CHECK_THROWS_AS(enumerate_pf(bdd, generate_instance(1, 2, 4)), Error);
}

TEST_CASE("frontier csv") {
    CHECK(frontier_csv(frontier_of({{3, 1}, {1, 3}, {2, 2}}), 2) == "z1,z2\n1,3\n2,2\n3,1\n");
}
