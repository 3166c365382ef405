#include "fixtures.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"
#include "mobdd/pipeline.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace mobdd;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(MOBDD_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf;
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("mobdd_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto c = config_from_json(R"({"sizes": [[3, 15]], "splits": {"train": 30, "validation": 10, "test": 10},
        "seed": 4, "tuner": {"budget": 12, "seeds": [1, 2]},
        "candidates": [{"kind": "gbt_pairwise", "name": "g", "hyperparams": "rounds=5"}],
        "methods": ["lex", "ml"]})");
    CHECK(c.sizes == std::vector<std::pair<int, int>>{{3, 15}});
    CHECK(c.train_count == 30);
    CHECK(c.seed == 4);
    CHECK(c.tuner.budget == 12);
    CHECK(c.tuner.seeds == std::vector<std::uint64_t>{1, 2});
    REQUIRE(c.candidates.size() == 1);
    CHECK(c.candidates[0].hyperparams.rounds == 5);
    CHECK(c.candidates[0].features == FeatureSet::All);
    CHECK(c.methods.size() == 2);

    CHECK_THROWS_AS(config_from_json("{"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"splits": {"train": 0}})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"candidates": [{"kind": "forest"}]})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"cost_mode": "energy"})"), Error);
}

TEST_CASE("seeds and split names") {
    CHECK(split_name(0) == "train");
    CHECK(split_name(2) == "test");
    CHECK_THROWS_AS(split_name(3), Error);
    CHECK(instance_seed(0, 1, 7) != instance_seed(0, 2, 7));
    CHECK(instance_seed(1, 0, 0) != instance_seed(0, 0, 0));
}

TEST_CASE("method specs") {
    CHECK(parse_method("lex").label == "lex");
    CHECK(parse_method("max_ratio").heuristic == "max_min-value-by-weight");
    CHECK(parse_method("max_ratio").label == "max_ratio");
    CHECK(parse_method("MinWt=min_weight").label == "MinWt");
    CHECK_THROWS_AS(parse_method("fastest"), Error);
    CHECK_THROWS_AS(parse_method("smacd"), Error);
    CHECK_THROWS(parse_method("ml:/nonexistent/model"));

    const auto dir = scratch("methods");
    write_file_atomic(dir / "w.csv", weights_csv(PropertyWeights::min_weight_start(), 1.0));
    const auto m = parse_method("smacd:" + (dir / "w.csv").string());
    CHECK(m.has_weights);
    const auto inst = generate_instance(2, 3, 9);
    CHECK(m.order(inst) == heuristic_order(inst, "min_weight"));
}

TEST_CASE("cli solve prints the fixture frontier") {
    const auto dir = scratch("solve");
    write_file_atomic(dir / "t2.txt", testing::kT2File);
    const auto r = cli("solve " + (dir / "t2.txt").string() + " --order lex");
    CHECK(r.status == 0);
    CHECK(r.out == "z1,z2\n1,3\n2,2\n3,1\n");

    CHECK(cli("solve " + (dir / "missing.txt").string()).status != 0);
    CHECK(cli("solve " + (dir / "t2.txt").string() + " --order nonsense").status != 0);

    write_file_atomic(dir / "order.txt", "3 1 2\n");
    const auto f = cli("solve " + (dir / "t2.txt").string() + " --order " + (dir / "order.txt").string() +
                       " --frontier " + (dir / "pf.csv").string());
    CHECK(f.status == 0);
    CHECK(read_file(dir / "pf.csv") == "z1,z2\n1,3\n2,2\n3,1\n");
}

TEST_CASE("cli eval with only lex is its own baseline") {
    const auto dir = scratch("eval");
    for (int i = 0; i < 4; ++i) write_instance(generate_instance(i, 3, 10, "test"), dir / "corpus" / (instance_id(3, 10, i, "test") + ".txt"));
    const auto r = cli("eval --corpus " + (dir / "corpus").string() + " --methods lex --out-dir " + (dir / "rep").string());
    REQUIRE(r.status == 0);
    const auto t5 = read_file(dir / "rep" / "table5.csv");
    CHECK(t5 == "size,method,nodes_pct,width_pct,checks_pct,gmean_pct\n3x10,lex,100.00,100.00,100.00,100.00\n");
    CHECK(fs::exists(dir / "rep" / "table4.csv"));
    CHECK(fs::exists(dir / "rep" / "fig5.csv"));
    CHECK(cli("eval --corpus " + (dir / "corpus").string() + " --methods fastest --out-dir " + (dir / "rep").string())
              .status != 0);
}

TEST_CASE("micro pipeline") {
    PipelineConfig c;
    c.sizes = {{3, 15}};
    c.train_count = 30;
    c.validation_count = 10;
    c.test_count = 10;
    c.tuner.budget = 15;
    c.dataset_tuner.budget = 10;
    c.candidates = {{"lin", ModelKind::LinearPairwise, FeatureSet::Variable, {}},
                    {"gbt", ModelKind::GbtPairwise, FeatureSet::All, Hyperparams::parse("rounds=10 max_depth=3")}};
    c.output_dir = scratch("pipeline");
    const auto summary = run_pipeline(c);
    const Layout layout{c.output_dir};
    for (const auto& f : {layout.labels("3x15", "train"), layout.smacd("3x15"), layout.dataset("3x15", "validation"),
                          layout.selection("3x15"), layout.models("3x15") / "selected.model",
                          layout.reports() / "records.csv", layout.reports() / "table2.csv",
                          layout.reports() / "table4.csv", layout.reports() / "table5.csv",
                          layout.reports() / "fig5.csv"}) {
        CHECK_MESSAGE(fs::exists(f), f.string());
    }
    CHECK(load_corpus(layout.corpus("3x15", "test")).size() == 10);
    CHECK(summary.table4.size() == c.methods.size());
    CHECK(summary.records.size() == c.methods.size() * 10);
    const auto& sel = summary.selections.at("3x15");
    CHECK((sel.winner == "lin" || sel.winner == "gbt"));
}
