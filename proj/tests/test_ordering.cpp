#include "fixtures.hpp"

#include "mobdd/error.hpp"
#include "mobdd/ordering.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace mobdd;

namespace {
VariableOrder ord(std::initializer_list<int> one_based) {
    VariableOrder o;
    for (int v : one_based) o.order.push_back(v - 1);
    return o;
}
}  // namespace

TEST_CASE("property matrix follows the property definitions") {
    const auto m = property_matrix(testing::t2());
    const double expected[] = {3, 2, 3, 1, 2.0 / 3, 1, 1.0 / 3};
    for (int k = 0; k < kNumProperties; ++k) CHECK(m(0, k) == doctest::Approx(expected[k]));
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < kNumProperties; ++k) CHECK(m(i, k) > 0);
    }
}

TEST_CASE("single objective collapses value statistics") {
    auto inst = generate_instance(3, 1, 12);
    const auto m = property_matrix(inst);
    for (int i = 0; i < inst.n; ++i) {
        CHECK(m(i, Property::AvgValue) == m(i, Property::MaxValue));
        CHECK(m(i, Property::AvgValue) == m(i, Property::MinValue));
        CHECK(m(i, Property::AvgValueByWeight) == m(i, Property::MinValueByWeight));
    }
}

TEST_CASE("identical variables give identical property rows") {
    MkpInstance inst{"same", 3, 5, {4, 4, 4, 4, 4}, {{7, 7, 7, 7, 7}, {7, 7, 7, 7, 7}, {7, 7, 7, 7, 7}}, 10};
    const auto m = property_matrix(inst);
    for (int i = 1; i < inst.n; ++i) {
        for (int k = 0; k < kNumProperties; ++k) CHECK(m(i, k) == m(0, k));
    }
}

TEST_CASE("score order") {
    SUBCASE("zero weights keep the index order") {
        auto inst = generate_instance(9, 3, 10);
        CHECK(score_order(inst, PropertyWeights{}) == lex_order(10));
    }
    SUBCASE("min-weight warm start on the fixture") {
        const auto inst = testing::t2();
        const auto scores = variable_scores(property_matrix(inst), PropertyWeights::min_weight_start());
        CHECK(scores[0] == doctest::Approx(-0.3));
        CHECK(scores[1] == doctest::Approx(-0.3));
        CHECK(scores[2] == doctest::Approx(-0.4));
        CHECK(score_order(inst, PropertyWeights::min_weight_start()) == ord({1, 2, 3}));
    }
    SUBCASE("a unit weight sorts by that property") {
        auto inst = generate_instance(11, 4, 25);
        const auto m = property_matrix(inst);
        for (int k = 0; k < kNumProperties; ++k) {
            PropertyWeights pw;
            pw.w[k] = 1.0;
            std::vector<double> col(inst.n);
            for (int i = 0; i < inst.n; ++i) col[i] = m(i, k);
            CHECK(score_order(inst, pw) == order_by_descending(col));
        }
    }
}

TEST_CASE("score order is invariant under positive scaling") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> box(-1, 1);
    std::uniform_real_distribution<double> factor(0.05, 1.0);
    for (int t = 0; t < 200; ++t) {
        auto inst = generate_instance(t, 3, 15);
        PropertyWeights pw;
        for (auto& x : pw.w) x = box(rng);
        // Powers of two scale exactly, so ties survive scaling bit-for-bit.
        PropertyWeights half = pw;
        for (auto& x : half.w) x *= 0.5;
        CHECK(score_order(inst, pw) == score_order(inst, half));
        const double f = factor(rng);
        PropertyWeights scaled = pw;
        for (auto& x : scaled.w) x *= f;
        const auto a = variable_scores(property_matrix(inst), pw);
        const auto b = variable_scores(property_matrix(inst), scaled);
        const auto oa = score_order(inst, pw).order;
        const auto ob = score_order(inst, scaled).order;
        // Orders agree except possibly among numerically tied scores.
        for (int k = 0; k < inst.n; ++k) {
            if (oa[k] != ob[k]) CHECK(std::abs(a[oa[k]] - a[ob[k]]) < 1e-12);
        }
    }
}

TEST_CASE("heuristic orders") {
    const auto inst = testing::t2();
    CHECK(heuristic_order(inst, "min_weight") == ord({1, 2, 3}));
    CHECK(heuristic_order(inst, "max_min-value-by-weight") == ord({3, 1, 2}));
    CHECK(heuristic_order(generate_instance(1, 3, 4), "lex") == ord({1, 2, 3, 4}));
    CHECK(heuristic_order(inst, "random:7") == random_order(3, 7));
    CHECK(heuristic_order(inst, "random") == random_order(3, 0));

    try {
        heuristic_order(inst, "min_min-value-by-weight");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("max_avg-value-by-weight") != std::string::npos);
    }
    CHECK_THROWS_AS(heuristic_order(inst, "bogus"), Error);
}

TEST_CASE("every named heuristic yields a permutation") {
    for (int s = 0; s < 20; ++s) {
        auto inst = generate_instance(s, 2 + s % 5, 1 + s * 3);
        for (const auto& name : rank_feature_heuristics()) CHECK(is_permutation(heuristic_order(inst, name).order, 0));
        CHECK(is_permutation(heuristic_order(inst, "max_min-value-by-weight").order, 0));
        CHECK(is_permutation(heuristic_order(inst, "random:" + std::to_string(s)).order, 0));
    }
}

TEST_CASE("min_weight heuristic equals the warm-start score order, ties included") {
    for (int s = 0; s < 300; ++s) {
        auto inst = generate_instance(s, 3, 30);
        if (s % 3 == 0) {
            for (auto& w : inst.weights) w = 1 + w % 4;  // force many ties
        }
        CHECK(heuristic_order(inst, "min_weight") == score_order(inst, PropertyWeights::min_weight_start()));
    }
}

TEST_CASE("order and rank conversions") {
    CHECK(order_to_ranks(ord({2, 1, 4, 3})).ranks == std::vector<int>{3, 4, 1, 2});
    CHECK(order_to_ranks(lex_order(5)).ranks == std::vector<int>{5, 4, 3, 2, 1});
    CHECK_THROWS_AS(order_to_ranks(VariableOrder{{0, 0, 1}}), Error);
    CHECK_THROWS_AS(ranks_to_order(RankVector{{0, 1, 2}}), Error);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 500; ++t) {
        const auto o = random_order(1 + t % 50, rng());
        const auto r = order_to_ranks(o);
        CHECK(is_permutation(r.ranks, 1));
        CHECK(ranks_to_order(r) == o);
        CHECK(order_to_ranks(ranks_to_order(r)) == r);
    }
}

TEST_CASE("order text form is 1-based") {
    CHECK(format_order(ord({3, 1, 2})) == "3 1 2");
    CHECK(parse_order("3 1 2") == ord({3, 1, 2}));
    CHECK_THROWS_AS(parse_order("1 1 2"), Error);
}
