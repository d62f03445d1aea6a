#include "namegauge/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "namegauge/linkage.hpp"
#include "namegauge/rng.hpp"
#include "namegauge/version.hpp"

namespace namegauge {

const char* scheme_name(SimilarityScheme scheme) {
    switch (scheme) {
        case SimilarityScheme::AllNGram: return "all-ngram";
        case SimilarityScheme::Distinct1: return "distinct1";
        case SimilarityScheme::Distinct2: return "distinct2";
    }
    return "?";
}

const char* sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::Ratio: return "ratio";
        case SweepKind::Ngram: return "ngram";
        case SweepKind::Scheme: return "scheme";
        case SweepKind::Restore: return "restore";
    }
    return "?";
}

const char* linkage_name(Linkage linkage) {
    switch (linkage) {
        case Linkage::Average: return "average";
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
    }
    return "?";
}

std::vector<TrainingPair> collect_training_pairs(const Corpus& corpus,
                                                 const FeatureContext& ctx) {
    CorpusIndex index(corpus);
    std::vector<TrainingPair> pairs;
    for (const auto& block : make_blocks(corpus)) {
        std::vector<const std::string*> labels;
        labels.reserve(block.members.size());
        for (const auto& id : block.members) {
            const NameInstance& inst = index.instance(id);
            if (!inst.author_label)
                throw std::invalid_argument("training corpus: focal instance " + id +
                                            " has no author label");
            labels.push_back(&*inst.author_label);
        }
        for (std::size_t i = 0; i < block.members.size(); ++i) {
            for (std::size_t j = i + 1; j < block.members.size(); ++j) {
                TrainingPair p;
                p.features = ctx.pair(block.members[i], block.members[j]);
                p.match = *labels[i] == *labels[j];
                pairs.push_back(p);
            }
        }
    }
    return pairs;
}

Clustering truth_clustering(const Corpus& corpus) {
    Clustering truth;
    for (const auto& rec : corpus.records) {
        for (const auto& inst : rec.authors) {
            if (!inst.focal) continue;
            if (!inst.author_label)
                throw std::invalid_argument("evaluation corpus: focal instance " +
                                            inst.instance_id + " has no author label");
            truth.assignment.emplace(inst.instance_id, *inst.author_label);
        }
    }
    if (truth.assignment.empty())
        throw std::invalid_argument("evaluation corpus has no focal instances");
    return truth;
}

Clustering heuristic_clustering(const Corpus& corpus) {
    std::vector<std::pair<std::string, std::string>> members;
    for (const auto& rec : corpus.records)
        for (const auto& inst : rec.authors)
            if (inst.focal) members.emplace_back(inst.instance_id, full_name_string(inst));
    return heuristic_cluster(members);
}

Clustering cluster_with_model(const Corpus& corpus, const FeatureContext& ctx,
                              const PairClassifier& model, const Clustering& truth,
                              Linkage linkage, std::optional<double> fixed_threshold) {
    Clustering pred;
    for (const auto& block : make_blocks(corpus)) {
        if (block.members.size() == 1) {
            pred.assignment.emplace(block.members[0], "c:" + block.members[0]);
            continue;
        }
        DistanceMatrix dm(block.members);
        for (std::size_t i = 0; i < block.members.size(); ++i) {
            for (std::size_t j = i + 1; j < block.members.size(); ++j) {
                double p = model.predict_proba(ctx.pair(block.members[i], block.members[j]));
                dm.set(i, j, 1.0 - p);
            }
        }
        Clustering block_clusters = fixed_threshold
                                        ? hac(dm, *fixed_threshold, linkage)
                                        : sweep_threshold(dm, truth, linkage).clustering;
        for (auto& [id, cid] : block_clusters.assignment)
            pred.assignment.emplace(id, cid);
    }
    return pred;
}

namespace {

// One sweep point: a label and the transformation it applies to the base
// corpus for a given iteration seed.
struct Point {
    std::string value;
    std::function<Corpus(const Corpus&, std::uint64_t iter_seed)> transform;
};

std::string format_ratio(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r);
    return buf;
}

std::vector<SweepRow> run_condition(const Corpus& transformed, const ExperimentSpec& spec,
                                    const std::string& kind_label, const std::string& value,
                                    int iteration) {
    std::uint64_t iter_seed = spec.seed + std::uint64_t(iteration);
    auto [train, test] = split_train_test(transformed, spec.split_fraction, iter_seed);
    if (train.records.empty() || test.records.empty())
        throw std::runtime_error("split produced an empty side; corpus too small for fraction");

    Clustering truth = truth_clustering(test);
    std::array<double, 4> ambiguity = ambiguity_profile(make_blocks(test), test).fractions();

    std::vector<SweepRow> rows;
    auto add_row = [&](const std::string& method, const B3Score& score) -> SweepRow& {
        SweepRow row;
        row.method = method;
        row.sweep_kind = kind_label;
        row.sweep_value = value;
        row.iteration = iteration;
        row.score = score;
        row.ambiguity = ambiguity;
        rows.push_back(std::move(row));
        return rows.back();
    };

    if (spec.include_heuristic)
        add_row("heuristic", b3(heuristic_clustering(test), truth));

    if (!spec.classifiers.empty()) {
        FeatureContext train_ctx(train, spec.features);
        FeatureContext test_ctx(test, spec.features);
        std::vector<TrainingPair> pairs = collect_training_pairs(train, train_ctx);
        std::uint64_t train_seed = mix_seed(iter_seed, SALT_TRAIN);
        for (ClassifierKind kind : spec.classifiers) {
            PairClassifier model = PairClassifier::train(kind, pairs, train_seed);
            Clustering pred = cluster_with_model(test, test_ctx, model, truth, spec.linkage,
                                                 spec.fixed_threshold);
            SweepRow& row = add_row(classifier_name(kind), b3(pred, truth));
            if (kind == ClassifierKind::RandomForest) {
                row.has_importance = true;
                row.importance = model.feature_importance();
            }
        }
    }
    return rows;
}

SweepResult run_points(const Corpus& corpus, const ExperimentSpec& spec,
                       const std::string& kind_label, const std::vector<Point>& points) {
    if (spec.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    struct Task {
        const Point* point;
        int iteration;
    };
    std::vector<Task> tasks;
    for (const auto& point : points)
        for (int it = 0; it < spec.iterations; ++it) tasks.push_back({&point, it});

    std::vector<std::vector<SweepRow>> outputs(tasks.size());
    auto run_task = [&](std::size_t t) {
        std::uint64_t iter_seed = spec.seed + std::uint64_t(tasks[t].iteration);
        Corpus transformed = tasks[t].point->transform(corpus, iter_seed);
        outputs[t] = run_condition(transformed, spec, kind_label, tasks[t].point->value,
                                   tasks[t].iteration);
    };

    int threads = std::max(1, spec.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&] {
            while (true) {
                std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                try {
                    run_task(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    SweepResult result;
    for (auto& rows : outputs)
        for (auto& row : rows) result.rows.push_back(std::move(row));
    return result;
}

}  // namespace

SweepResult run_ratio_sweep(const Corpus& corpus, const ExperimentSpec& spec) {
    std::vector<double> ratios = spec.ratios;
    if (ratios.empty())
        for (int i = 0; i <= 10; ++i) ratios.push_back(double(i) / 10.0);
    std::vector<Point> points;
    for (double r : ratios) {
        if (r < 0.0 || r > 1.0) throw std::invalid_argument("ratio out of range");
        points.push_back({format_ratio(r), [r, &spec](const Corpus& c, std::uint64_t iter_seed) {
                              return apply_full_ratio(c, r, iter_seed, spec.ratio_scope);
                          }});
    }
    return run_points(corpus, spec, "ratio", points);
}

SweepResult run_ngram_sweep(const Corpus& corpus, const ExperimentSpec& spec) {
    std::vector<int> values = spec.ngram_values;
    if (values.empty()) {
        for (int n = 1; n <= 10; ++n) values.push_back(n);
        values.push_back(kNgramAll);
    }
    std::vector<Point> points;
    for (int n : values) {
        if (n != kNgramAll && (n < 1 || n > 10))
            throw std::invalid_argument("ngram value out of range");
        std::string label = n == kNgramAll ? "all" : std::to_string(n);
        points.push_back({label, [n](const Corpus& c, std::uint64_t) {
                              return n == kNgramAll ? c : truncate_forenames(c, n);
                          }});
    }
    return run_points(corpus, spec, "ngram", points);
}

SweepResult run_restore_experiment(const Corpus& src, const Corpus& donor,
                                   const ExperimentSpec& spec) {
    Corpus restored = restore_forenames(src, link_by_title(src, donor), donor).first;
    std::vector<Point> points;
    points.push_back({"ini", [](const Corpus& c, std::uint64_t) { return c; }});
    points.push_back({"full", [&restored](const Corpus&, std::uint64_t) { return restored; }});
    return run_points(src, spec, "restore", points);
}

std::vector<std::pair<SimilarityScheme, SweepResult>> run_scheme_comparison(
    const Corpus& corpus, const ExperimentSpec& spec) {
    std::vector<std::pair<SimilarityScheme, SweepResult>> out;
    for (SimilarityScheme scheme : {SimilarityScheme::AllNGram, SimilarityScheme::Distinct1,
                                    SimilarityScheme::Distinct2}) {
        ExperimentSpec sub = spec;
        sub.features.scheme = scheme;
        sub.classifiers = {ClassifierKind::RandomForest};
        sub.include_heuristic = false;
        out.emplace_back(scheme, run_ratio_sweep(corpus, sub));
    }
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "method,sweep_kind,sweep_value,iteration,b3_precision,b3_recall,b3_f1,"
           "imp_forename,imp_coauthor,imp_title,imp_venue,"
           "frac_homonym,frac_synonym,frac_snsa,frac_dnda\n";
    for (const auto& row : result.rows) {
        out << row.method << ',' << row.sweep_kind << ',' << row.sweep_value << ','
            << row.iteration << ',' << fmt_double(row.score.precision) << ','
            << fmt_double(row.score.recall) << ',' << fmt_double(row.score.f1) << ',';
        if (row.has_importance) {
            for (int f = 0; f < 4; ++f) out << fmt_double(row.importance[f]) << ',';
        } else {
            out << ",,,,";
        }
        out << fmt_double(row.ambiguity[0]) << ',' << fmt_double(row.ambiguity[1]) << ','
            << fmt_double(row.ambiguity[2]) << ',' << fmt_double(row.ambiguity[3]) << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_manifest(const ExperimentSpec& spec, const std::string& corpus_source,
                    const std::vector<std::string>& outputs, const std::string& path) {
    nlohmann::json j;
    j["version"] = NAMEGAUGE_VERSION;
    j["kind"] = sweep_kind_name(spec.kind);
    j["corpus"] = corpus_source;
    nlohmann::json classifiers = nlohmann::json::array();
    for (ClassifierKind kind : spec.classifiers) classifiers.push_back(classifier_name(kind));
    j["classifiers"] = std::move(classifiers);
    j["include_heuristic"] = spec.include_heuristic;
    j["scheme"] = scheme_name(spec.features.scheme);
    j["coauthor_agg"] =
        spec.features.coauthor_agg == CoauthorAgg::Pool ? "pool" : "mean";
    j["iterations"] = spec.iterations;
    j["seed"] = spec.seed;
    j["split_fraction"] = spec.split_fraction;
    j["ratio_scope"] = spec.ratio_scope == RatioScope::All ? "all" : "focal";
    j["linkage"] = linkage_name(spec.linkage);
    if (spec.fixed_threshold) j["fixed_threshold"] = *spec.fixed_threshold;
    if (!spec.ratios.empty()) j["ratios"] = spec.ratios;
    if (!spec.ngram_values.empty()) j["ngram_values"] = spec.ngram_values;
    j["threads"] = spec.threads;
    j["outputs"] = outputs;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write_manifest: write failed for " + path);
}

}  // namespace namegauge
