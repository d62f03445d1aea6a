#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "namegauge/harness.hpp"
#include "namegauge/synthetic.hpp"

using namespace namegauge;

namespace {

Corpus harness_corpus(std::uint64_t seed = 2) {
    SynthConfig cfg;
    cfg.profile = SynthProfile::ForenameSeparable;
    cfg.authors = 15;
    cfg.papers_per_author = 4;
    cfg.authors_per_block = 5;
    cfg.seed = seed;
    return generate_synthetic(cfg);
}

ExperimentSpec quick_spec() {
    ExperimentSpec spec;
    spec.iterations = 2;
    spec.seed = 11;
    spec.ratios = {0.0, 1.0};
    return spec;
}

bool rows_equal(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].method != b[i].method || a[i].sweep_value != b[i].sweep_value ||
            a[i].iteration != b[i].iteration || a[i].score.f1 != b[i].score.f1 ||
            a[i].score.precision != b[i].score.precision ||
            a[i].score.recall != b[i].score.recall)
            return false;
    }
    return true;
}

std::string temp_path(const char* stem, const char* ext) {
    static int counter = 0;
    char path[96];
    std::snprintf(path, sizeof path, "/tmp/namegauge_h_%s_%d_%d.%s", stem, getpid(),
                  counter++, ext);
    return path;
}

}  // namespace

TEST_CASE("ratio sweep emits one row per method, value, iteration") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    SweepResult result = run_ratio_sweep(c, spec);
    // 4 methods x 2 ratios x 2 iterations
    REQUIRE(result.rows.size() == 16);
    std::map<std::string, int> by_method;
    for (const auto& row : result.rows) {
        ++by_method[row.method];
        CHECK(row.sweep_kind == "ratio");
        CHECK(row.score.f1 >= 0.0);
        CHECK(row.score.f1 <= 1.0);
        CHECK(row.has_importance == (row.method == "rf"));
    }
    CHECK(by_method["heuristic"] == 4);
    CHECK(by_method["rf"] == 4);
    CHECK(by_method["lr"] == 4);
    CHECK(by_method["gnb"] == 4);
    // deterministic rerun
    CHECK(rows_equal(result.rows, run_ratio_sweep(c, spec).rows));
}

TEST_CASE("rf importances on sweep rows sum to one") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    spec.classifiers = {ClassifierKind::RandomForest};
    spec.include_heuristic = false;
    SweepResult result = run_ratio_sweep(c, spec);
    REQUIRE(result.rows.size() == 4);
    for (const auto& row : result.rows) {
        REQUIRE(row.has_importance);
        double sum = 0.0;
        for (double v : row.importance) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        // fully initialized corpora give the forename no splitting power
        if (row.sweep_value == "0") CHECK(row.importance[0] == 0.0);
    }
}

TEST_CASE("ngram sweep value 1 equals ratio sweep value 0") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    spec.ratios = {0.0};
    SweepResult ratio = run_ratio_sweep(c, spec);
    ExperimentSpec nspec = quick_spec();
    nspec.ngram_values = {1};
    SweepResult ngram = run_ngram_sweep(c, nspec);
    REQUIRE(ratio.rows.size() == ngram.rows.size());
    for (std::size_t i = 0; i < ratio.rows.size(); ++i) {
        CHECK(ratio.rows[i].method == ngram.rows[i].method);
        CHECK(ngram.rows[i].sweep_kind == "ngram");
        CHECK(ngram.rows[i].sweep_value == "1");
        CHECK(ratio.rows[i].score.f1 == doctest::Approx(ngram.rows[i].score.f1).epsilon(1e-12));
    }
}

TEST_CASE("threaded and sequential runs agree") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    SweepResult seq = run_ratio_sweep(c, spec);
    spec.threads = 3;
    SweepResult par = run_ratio_sweep(c, spec);
    CHECK(rows_equal(seq.rows, par.rows));
}

TEST_CASE("restore experiment reports ini and full points") {
    Corpus donor = harness_corpus(8);
    Corpus src = apply_full_ratio(donor, 0.0, 1);
    ExperimentSpec spec = quick_spec();
    spec.kind = SweepKind::Restore;
    spec.classifiers = {ClassifierKind::RandomForest};
    SweepResult result = run_restore_experiment(src, donor, spec);
    // 2 methods x 2 points x 2 iterations
    REQUIRE(result.rows.size() == 8);
    std::map<std::string, int> by_value;
    for (const auto& row : result.rows) {
        ++by_value[row.sweep_value];
        CHECK(row.sweep_kind == "restore");
    }
    CHECK(by_value["ini"] == 4);
    CHECK(by_value["full"] == 4);
}

TEST_CASE("scheme comparison runs rf across all three schemes") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    spec.kind = SweepKind::Scheme;
    spec.iterations = 1;
    auto results = run_scheme_comparison(c, spec);
    REQUIRE(results.size() == 3);
    CHECK(results[0].first == SimilarityScheme::AllNGram);
    CHECK(results[1].first == SimilarityScheme::Distinct1);
    CHECK(results[2].first == SimilarityScheme::Distinct2);
    for (const auto& [scheme, result] : results) {
        CHECK(result.rows.size() == 2);  // rf only, 2 ratios, 1 iteration
        for (const auto& row : result.rows) CHECK(row.method == "rf");
    }
}

TEST_CASE("csv output format") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    spec.iterations = 1;
    SweepResult result = run_ratio_sweep(c, spec);
    std::string path = temp_path("rows", "csv");
    write_csv(result, path);
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header ==
          "method,sweep_kind,sweep_value,iteration,b3_precision,b3_recall,b3_f1,"
          "imp_forename,imp_coauthor,imp_title,imp_venue,"
          "frac_homonym,frac_synonym,frac_snsa,frac_dnda");
    std::size_t body = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++body;
        std::size_t commas = 0;
        for (char ch : line) commas += ch == ',';
        CHECK(commas == 14);
        // importance fields are empty unless the method is rf
        std::stringstream ss(line);
        std::vector<std::string> fields;
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        fields.resize(15);
        if (fields[0] == "rf") {
            CHECK_FALSE(fields[7].empty());
        } else {
            CHECK(fields[7].empty());
            CHECK(fields[8].empty());
        }
    }
    CHECK(body == result.rows.size());
}

TEST_CASE("manifest echoes the run configuration") {
    ExperimentSpec spec = quick_spec();
    spec.kind = SweepKind::Ratio;
    spec.fixed_threshold = 0.25;
    std::string path = temp_path("manifest", "json");
    write_manifest(spec, "corpus.jsonl", {"results.csv"}, path);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["kind"] == "ratio");
    CHECK(j["corpus"] == "corpus.jsonl");
    CHECK(j["iterations"] == 2);
    CHECK(j["seed"] == 11);
    CHECK(j["split_fraction"] == 0.5);
    CHECK(j["scheme"] == "all-ngram");
    CHECK(j["coauthor_agg"] == "pool");
    CHECK(j["linkage"] == "average");
    CHECK(j["ratio_scope"] == "all");
    CHECK(j["fixed_threshold"] == 0.25);
    CHECK(j["outputs"][0] == "results.csv");
    CHECK(j["classifiers"].size() == 3);
    CHECK(j["ratios"].size() == 2);
}

TEST_CASE("fixed threshold skips the oracle sweep") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    spec.classifiers = {ClassifierKind::RandomForest};
    spec.include_heuristic = false;
    spec.fixed_threshold = 0.5;
    SweepResult result = run_ratio_sweep(c, spec);
    REQUIRE(result.rows.size() == 4);
    for (const auto& row : result.rows) {
        CHECK(row.score.f1 >= 0.0);
        CHECK(row.score.f1 <= 1.0);
    }
}

TEST_CASE("ambiguity fractions ride along on every row") {
    Corpus c = harness_corpus();
    ExperimentSpec spec = quick_spec();
    SweepResult result = run_ratio_sweep(c, spec);
    for (const auto& row : result.rows) {
        double sum = 0.0;
        for (double v : row.ambiguity) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        if (row.sweep_value == "0") {
            // fully initialized: every in-block pair has the same name string
            CHECK(row.ambiguity[1] == 0.0);
            CHECK(row.ambiguity[3] == 0.0);
        }
    }
}

TEST_CASE("training pair collection and truth clustering preconditions") {
    Corpus c = harness_corpus();
    FeatureContext ctx(c);
    std::vector<TrainingPair> pairs = collect_training_pairs(c, ctx);
    CHECK(!pairs.empty());
    Clustering truth = truth_clustering(c);
    CHECK(truth.assignment.size() == corpus_stats(c).focal_instances);
    Corpus unlabeled = c;
    for (auto& r : unlabeled.records)
        for (auto& a : r.authors) a.author_label.reset();
    CHECK_THROWS_AS(truth_clustering(unlabeled), std::invalid_argument);
    CHECK_THROWS_AS(collect_training_pairs(unlabeled, FeatureContext(unlabeled)),
                    std::invalid_argument);
}
