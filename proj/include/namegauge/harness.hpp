#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "namegauge/blocking.hpp"
#include "namegauge/classify.hpp"
#include "namegauge/cluster.hpp"
#include "namegauge/corpus.hpp"
#include "namegauge/evaluate.hpp"
#include "namegauge/features.hpp"
#include "namegauge/simulate.hpp"

namespace namegauge {

enum class SweepKind { Ratio, Ngram, Scheme, Restore };

// n-gram sweep value meaning "no truncation".
inline constexpr int kNgramAll = 0;

struct ExperimentSpec {
    SweepKind kind = SweepKind::Ratio;
    std::vector<ClassifierKind> classifiers = {ClassifierKind::RandomForest,
                                               ClassifierKind::LogisticRegression,
                                               ClassifierKind::GaussianNB};
    bool include_heuristic = true;
    FeatureOptions features;
    int iterations = 10;
    std::uint64_t seed = 0;
    double split_fraction = 0.5;
    RatioScope ratio_scope = RatioScope::All;
    Linkage linkage = Linkage::Average;
    // When set, clustering cuts at this fixed threshold instead of the
    // per-block oracle sweep.
    std::optional<double> fixed_threshold;
    // Empty = full grids (ratio 0.0..1.0 in steps of 0.1; n-gram 1..10 + All).
    std::vector<double> ratios;
    std::vector<int> ngram_values;
    int threads = 1;
};

struct SweepRow {
    std::string method;       // "heuristic", "rf", "lr", "gnb"
    std::string sweep_kind;   // "ratio", "ngram", "restore"
    std::string sweep_value;  // "0.4", "3", "all", "ini", "full"
    int iteration = 0;
    B3Score score;
    bool has_importance = false;
    std::array<double, 4> importance{};  // forename, coauthor, title, venue
    std::array<double, 4> ambiguity{};   // homonym, synonym, snsa, dnda fractions
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

SweepResult run_ratio_sweep(const Corpus& corpus, const ExperimentSpec& spec);
SweepResult run_ngram_sweep(const Corpus& corpus, const ExperimentSpec& spec);

// Appendix-style restoration comparison: the source corpus as-is ("ini")
// versus after title-linked forename restoration from the donor ("full"),
// iterated over seeded splits.
SweepResult run_restore_experiment(const Corpus& src, const Corpus& donor,
                                   const ExperimentSpec& spec);

// Ratio sweep repeated once per similarity scheme with the random forest
// only; one result per scheme, in declaration order.
std::vector<std::pair<SimilarityScheme, SweepResult>> run_scheme_comparison(
    const Corpus& corpus, const ExperimentSpec& spec);

void write_csv(const SweepResult& result, const std::string& path);

// Echo of the configuration plus output file list, as JSON.
void write_manifest(const ExperimentSpec& spec, const std::string& corpus_source,
                    const std::vector<std::string>& outputs, const std::string& path);

const char* scheme_name(SimilarityScheme scheme);
const char* sweep_kind_name(SweepKind kind);
const char* linkage_name(Linkage linkage);

// Shared plumbing, exposed for the CLI's train/eval commands.
std::vector<TrainingPair> collect_training_pairs(const Corpus& corpus,
                                                 const FeatureContext& ctx);
Clustering truth_clustering(const Corpus& corpus);
Clustering cluster_with_model(const Corpus& corpus, const FeatureContext& ctx,
                              const PairClassifier& model, const Clustering& truth,
                              Linkage linkage, std::optional<double> fixed_threshold);
Clustering heuristic_clustering(const Corpus& corpus);

}  // namespace namegauge
