#include "fixtures.hpp"

#include "mobdd/error.hpp"
#include "mobdd/tuner.hpp"

#include <doctest.h>

#include <cmath>

using namespace mobdd;

namespace {

double lex_checks(const MkpInstance& inst) {
    return static_cast<double>(enumerate_pf(compile(inst, lex_order(inst.n)), inst).checks);
}

}  // namespace

TEST_CASE("budget of one returns the warm start") {
    const auto inst = generate_instance(4, 3, 12);
    TunerConfig cfg;
    cfg.budget = 1;
    const auto inc = tune_instance(inst, cfg);
    CHECK(inc.weights == PropertyWeights::min_weight_start());
    CHECK(inc.trajectory.size() == 1);
    CHECK(inc.objective_value == evaluate_weights(inst, cfg.warm_start, CostMode::Checks));
}

TEST_CASE("warm start on the fixture costs the same as lex") {
    // min_weight scores on (3,3,4) order the variables 1,2,3.
    const auto inst = testing::t2();
    CHECK(score_order(inst, PropertyWeights::min_weight_start()) == lex_order(3));
    CHECK(evaluate_weights(inst, PropertyWeights::min_weight_start(), CostMode::Checks) == lex_checks(inst));
}

TEST_CASE("trajectory is a running minimum and weights stay in the box") {
    const auto inst = generate_instance(8, 3, 16);
    TunerConfig cfg;
    cfg.budget = 60;
    cfg.seeds = {3, 4};
    int calls = 0;
    bool in_box = true;
    const auto inc = search_weights(
        [&](const PropertyWeights& pw) {
            ++calls;
            for (double w : pw.w) in_box = in_box && w >= -1.0 && w <= 1.0;
            return evaluate_weights(inst, pw, CostMode::Checks);
        },
        cfg);
    CHECK(in_box);
    CHECK(calls <= 2 * cfg.budget);
    REQUIRE(inc.trajectory.size() == static_cast<std::size_t>(2 * cfg.budget));
    for (std::size_t i = 1; i < inc.trajectory.size(); ++i) {
        CHECK(inc.trajectory[i].first == inc.trajectory[i - 1].first + 1);
        CHECK(inc.trajectory[i].second <= inc.trajectory[i - 1].second);
    }
    CHECK(inc.trajectory.back().second == inc.objective_value);
    CHECK(inc.objective_value <= inc.trajectory.front().second);
    CHECK(evaluate_weights(inst, inc.weights, CostMode::Checks) == inc.objective_value);
}

TEST_CASE("search is deterministic and improves a smooth objective") {
    TunerConfig cfg;
    cfg.budget = 150;
    auto bowl = [](const PropertyWeights& pw) {
        double s = 0;
        for (double w : pw.w) s += (w - 0.3) * (w - 0.3);
        return s;
    };
    const auto a = search_weights(bowl, cfg);
    const auto b = search_weights(bowl, cfg);
    CHECK(a.weights == b.weights);
    CHECK(a.trajectory == b.trajectory);
    CHECK(a.objective_value < bowl(cfg.warm_start));
}

TEST_CASE("dataset tuning") {
    const auto inst = generate_instance(12, 3, 12);
    TunerConfig cfg;
    cfg.budget = 20;
    const auto single = tune_dataset({inst}, cfg);
    const auto direct = tune_instance(inst, cfg);
    CHECK(single.weights == direct.weights);
    CHECK(single.objective_value == doctest::Approx(direct.objective_value));
    CHECK_THROWS_AS(tune_dataset({}, cfg), Error);
}

TEST_CASE("config validation") {
    TunerConfig cfg;
    cfg.budget = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.seeds.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.restart_fraction = 1.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("label and weight csv round trip") {
    LabelRecord a{"kp_3_5_1_train", {{0.5, -1, 0, 0.25, 1, -0.125, 0.1}}, 42, {{4, 3, 2, 1, 0}}};
    LabelRecord b{"kp_3_5_2_train", PropertyWeights::min_weight_start(), 7.5, {{0, 1, 2, 3, 4}}};
    const auto text = labels_csv({a, b});
    CHECK(text.rfind("instance_id,w_1,w_2,w_3,w_4,w_5,w_6,w_7,objective_value,order\n", 0) == 0);
    const auto back = parse_labels_csv(text, "labels");
    REQUIRE(back.size() == 2);
    CHECK(back[0].instance_id == a.instance_id);
    CHECK(back[0].weights == a.weights);
    CHECK(back[0].order == a.order);
    CHECK(back[1].objective_value == 7.5);

    CHECK_THROWS_AS(parse_labels_csv("instance_id,w_1\nx,1\n", "bad"), ParseError);

    const auto w = parse_weights_csv(weights_csv(a.weights, 3.0), "w");
    CHECK(w == a.weights);
}
